use std::fmt;

use crate::error::{rejected, resource, Result};
use crate::f2::BitVec;
use crate::reductions::PointValueSet;
use crate::{binomial, binomial_sum, for_each_combination};

/// The affine function z ↦ Σ_{i ∈ support} z_i + constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityForm {
    pub support: Vec<usize>,
    pub constant: bool,
}

impl fmt::Display for ParityForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self.support.iter().map(|i| format!("x{}", i + 1)).collect();
        if self.constant || terms.is_empty() {
            terms.push(if self.constant { "1" } else { "0" }.into());
        }
        f.write_str(&terms.join(" + "))
    }
}

fn columns(n: usize, points: &[BitVec]) -> Vec<BitVec> {
    let mut cols = vec![BitVec::zeros(points.len()); n];
    for (i, p) in points.iter().enumerate() {
        for j in p.iter_ones() {
            cols[j].set(i, true);
        }
    }
    cols
}

/// Every form on at most `k` variables (constant-free forms only when
/// `homogeneous_only`), in order of support size, then support, then constant,
/// paired with its agreement fraction on `pv`. The zero form is included.
pub fn parity_agreements(
    pv: &PointValueSet,
    k: usize,
    homogeneous_only: bool,
    cap: u64,
) -> Result<Vec<(ParityForm, f64)>> {
    if pv.is_empty() {
        return Err(rejected("agreement over an empty set is undefined"));
    }
    let n = pv.n;
    let s = k.min(n);
    let forms = binomial_sum(n, s).saturating_mul(if homogeneous_only { 1 } else { 2 });
    if forms > cap {
        return Err(resource(format!("{forms} parity forms exceed the enumeration cap {cap}")));
    }
    let cols = columns(n, &pv.points);
    let m = pv.len();
    let mut out = Vec::with_capacity(forms as usize);
    for size in 0..=s {
        for_each_combination(n, size, |sup| {
            let mut pred = BitVec::zeros(m);
            for &j in sup {
                pred.xor_assign(&cols[j]);
            }
            pred.xor_assign(&pv.values);
            let agree = m - pred.weight();
            out.push((
                ParityForm {
                    support: sup.to_vec(),
                    constant: false,
                },
                agree as f64 / m as f64,
            ));
            if !homogeneous_only {
                out.push((
                    ParityForm {
                        support: sup.to_vec(),
                        constant: true,
                    },
                    (m - agree) as f64 / m as f64,
                ));
            }
            true
        });
    }
    Ok(out)
}

/// Exact maximum agreement over forms on at most `k` variables; the first
/// maximizer in [`parity_agreements`] order.
pub fn best_parity_agreement(
    pv: &PointValueSet,
    k: usize,
    homogeneous_only: bool,
    cap: u64,
) -> Result<(ParityForm, f64)> {
    let all = parity_agreements(pv, k, homogeneous_only, cap)?;
    let mut best = all[0].clone();
    for (f, a) in all.into_iter().skip(1) {
        if a > best.1 {
            best = (f, a);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq)]
pub struct JuntaAgreement {
    pub support: Vec<usize>,
    pub fraction: f64,
}

/// Exact maximum agreement of any function of at most `k` variables: per support
/// the majority label of each pattern is optimal, and supports of size min(k, n)
/// dominate their subsets.
pub fn best_junta_agreement(pv: &PointValueSet, k: usize, cap: u64) -> Result<JuntaAgreement> {
    if pv.is_empty() {
        return Err(rejected("agreement over an empty set is undefined"));
    }
    let n = pv.n;
    let s = k.min(n);
    if s > 20 {
        return Err(resource(format!("junta support {s} too large to tabulate")));
    }
    let m = pv.len();
    let work = binomial(n, s).saturating_mul((m as u64).saturating_add(1 << s));
    if work > cap {
        return Err(resource(format!("{work} junta evaluations exceed the enumeration cap {cap}")));
    }
    let mut best = JuntaAgreement {
        support: Vec::new(),
        fraction: -1.0,
    };
    let mut best_count = 0usize;
    let mut counts = vec![[0usize; 2]; 1 << s];
    for_each_combination(n, s, |sup| {
        counts.iter_mut().for_each(|c| *c = [0, 0]);
        for (i, p) in pv.points.iter().enumerate() {
            let pat = sup
                .iter()
                .enumerate()
                .fold(0usize, |acc, (b, &j)| acc | (usize::from(p.get(j)) << b));
            counts[pat][usize::from(pv.values.get(i))] += 1;
        }
        let total: usize = counts.iter().map(|c| c[0].max(c[1])).sum();
        if best.fraction < 0.0 || total > best_count {
            best_count = total;
            best = JuntaAgreement {
                support: sup.to_vec(),
                fraction: total as f64 / m as f64,
            };
        }
        true
    });
    Ok(best)
}

/// A polynomial over F2 given by its monomials (each a sorted variable list; the
/// empty monomial is the constant 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub monomials: Vec<Vec<usize>>,
}

impl Polynomial {
    #[must_use]
    pub fn eval(&self, z: &BitVec) -> bool {
        self.monomials
            .iter()
            .filter(|mono| mono.iter().all(|&v| z.get(v)))
            .count()
            % 2
            == 1
    }

    #[must_use]
    pub fn degree(&self) -> usize {
        self.monomials.iter().map(Vec::len).max().unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|mono| {
                if mono.is_empty() {
                    "1".to_string()
                } else {
                    mono.iter().map(|v| format!("x{}", v + 1)).collect::<Vec<_>>().join("*")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyAdvantage {
    pub support: Vec<usize>,
    pub poly: Polynomial,
    /// Pr_points[P = 0] − Pr_uniform[P = 0].
    pub advantage: f64,
}

/// Exact maximum over nonzero polynomials of degree ≤ d on at most k variables of
/// the excess probability of P = 0 on `points` over uniform inputs.
pub fn poly_agreement_bound(points: &[BitVec], k: usize, d: usize, cap: u64) -> Result<PolyAdvantage> {
    if points.is_empty() {
        return Err(rejected("advantage over an empty point set is undefined"));
    }
    let n = points[0].len();
    if points.iter().any(|p| p.len() != n) {
        return Err(rejected("points have different lengths"));
    }
    let s = k.min(n);
    if s > 6 {
        return Err(resource(format!("support size {s} exceeds the truth-table limit 6")));
    }
    // Monomials on s local variables of degree ≤ d, as variable masks.
    let mut monos: Vec<u32> = (0u32..1 << s).filter(|m| m.count_ones() as usize <= d).collect();
    monos.sort_by_key(|m| (m.count_ones(), *m));
    let nm = monos.len();
    let polys = 1u64 << nm;
    let work = binomial(n, s).saturating_mul(polys.saturating_mul(1 << s));
    if nm >= 40 || work > cap {
        return Err(resource(format!("{work} polynomial evaluations exceed the enumeration cap {cap}")));
    }
    let patterns = 1usize << s;
    let full: u64 = if patterns == 64 { u64::MAX } else { (1u64 << patterns) - 1 };
    // Truth table of each monomial: bit p set iff the monomial is 1 on pattern p.
    let mono_tt: Vec<u64> = monos
        .iter()
        .map(|&mono| (0..patterns).filter(|&p| p as u32 & mono == mono).fold(0u64, |t, p| t | 1 << p))
        .collect();
    let m = points.len() as i128;
    let mut best: Option<(i128, Vec<usize>, u64)> = None;
    let mut hist = vec![0i128; patterns];
    for_each_combination(n, s, |sup| {
        hist.iter_mut().for_each(|h| *h = 0);
        for p in points {
            let pat = sup
                .iter()
                .enumerate()
                .fold(0usize, |acc, (b, &j)| acc | (usize::from(p.get(j)) << b));
            hist[pat] += 1;
        }
        let mut tt = 0u64;
        let mut coef = 0u64;
        for i in 1..polys {
            let bit = i.trailing_zeros() as usize;
            coef ^= 1 << bit;
            tt ^= mono_tt[bit];
            let zeros_tt = full & !tt;
            let mut zp = 0i128;
            let mut z = zeros_tt;
            while z != 0 {
                zp += hist[z.trailing_zeros() as usize];
                z &= z - 1;
            }
            let zu = i128::from(zeros_tt.count_ones());
            // advantage = zp/m − zu/2^s, scaled by m·2^s.
            let num = zp * patterns as i128 - zu * m;
            let better = match &best {
                None => true,
                Some((bn, bs, bc)) => {
                    num > *bn || (num == *bn && (sup < bs.as_slice() || (sup == bs.as_slice() && coef < *bc)))
                }
            };
            if better {
                best = Some((num, sup.to_vec(), coef));
            }
        }
        true
    });
    let (num, support, coef) = best.expect("at least one nonzero polynomial");
    let monomials = (0..nm)
        .filter(|&i| coef >> i & 1 == 1)
        .map(|i| (0..s).filter(|&b| monos[i] >> b & 1 == 1).map(|b| support[b]).collect())
        .collect();
    Ok(PolyAdvantage {
        support,
        poly: Polynomial { monomials },
        advantage: num as f64 / (m as f64 * patterns as f64),
    })
}
