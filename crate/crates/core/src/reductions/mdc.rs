use super::PointValueSet;
use crate::error::{rejected, resource, Error, Result};
use crate::f2::{BitMat, BitVec};
use crate::graphs::{count_walks, enumerate_walks, sample_walk, Graph};
use crate::{binomial, for_each_combination};

/// Parameters of the distance-gap amplification chain. ζ is a free constant in
/// (0, 1/5); t = ⌈1/(2^K·ζ^K)⌉ and D = ⌈(4/(5^K·ζ^K))^10⌉.
#[derive(Clone, Debug, PartialEq)]
pub struct MdcParams {
    pub zeta: f64,
    pub kexp: usize,
    pub t: usize,
    pub degree: u64,
    pub d: usize,
}

impl MdcParams {
    pub fn new(zeta: f64, kexp: usize, d: usize) -> Result<Self> {
        if !(zeta > 0.0 && zeta < 0.2) {
            return Err(Error::Config(format!("zeta = {zeta} must lie in (0, 1/5)")));
        }
        if kexp == 0 || d == 0 {
            return Err(Error::Config("tensor exponent and degree must be positive".into()));
        }
        let k = kexp as i32;
        let t = (1.0 / (2f64.powi(k) * zeta.powi(k))).ceil();
        let degree = (4.0 / (5f64.powi(k) * zeta.powi(k))).powi(10).ceil();
        if !t.is_finite() || !degree.is_finite() || t > u32::MAX as f64 || degree > (1u64 << 62) as f64 {
            return Err(resource(format!(
                "walk length {t} or degree {degree} is out of range for zeta = {zeta}, K = {kexp}"
            )));
        }
        Ok(Self {
            zeta,
            kexp,
            t: (t as usize).max(1),
            degree: (degree as u64).max(2),
            d,
        })
    }

    /// YES-side relative weight bound ζ^K after tensoring.
    #[must_use]
    pub fn yes_weight(&self) -> f64 {
        self.zeta.powi(self.kexp as i32)
    }

    /// NO-side relative weight bound (5ζ)^K after tensoring.
    #[must_use]
    pub fn no_weight(&self) -> f64 {
        (5.0 * self.zeta).powi(self.kexp as i32)
    }
}

/// (√(1−μ) + λ/D)^t: walks of length t avoiding a set of density μ.
#[must_use]
pub fn walk_avoidance_bound(mu: f64, lambda: f64, degree: usize, t: usize) -> f64 {
    ((1.0 - mu).sqrt() + lambda / degree as f64).powi(t as i32)
}

/// K-fold Kronecker power of the generator A.
pub fn mdc_tensor(a: &BitMat, kexp: usize, cap: u64) -> Result<BitMat> {
    if kexp == 0 {
        return Err(rejected("tensor exponent must be at least 1"));
    }
    let pow = |x: usize| (0..kexp).try_fold(1u64, |acc, _| acc.checked_mul(x as u64));
    match (pow(a.nrows()), pow(a.ncols())) {
        (Some(r), Some(c)) if r <= cap && c <= cap => {}
        _ => {
            return Err(resource(format!(
                "a {}×{} generator to the power {kexp} exceeds the cap {cap}",
                a.nrows(),
                a.ncols()
            )))
        }
    }
    let mut out = a.clone();
    for _ in 1..kexp {
        out = out.kron(a);
    }
    Ok(out)
}

fn walk_rows(a: &BitMat, walk: &[usize], out: &mut Vec<BitVec>) {
    let t = walk.len();
    let mut acc = BitVec::zeros(a.ncols());
    let start = out.len();
    out.resize(start + (1 << t), acc.clone());
    // Walk s in Gray order, storing each sum at its natural position.
    for g in 1usize..1 << t {
        let bit = g.trailing_zeros() as usize;
        acc.xor_assign(a.row(walk[bit]));
        let s = g ^ (g >> 1);
        out[start + s] = acc.clone();
    }
}

fn check_walk_input(a: &BitMat, g: &Graph, t: usize) -> Result<()> {
    if a.nrows() != g.n() {
        return Err(rejected(format!(
            "A has {} rows but the graph has {} vertices",
            a.nrows(),
            g.n()
        )));
    }
    if t == 0 || t >= usize::BITS as usize - 1 {
        return Err(rejected(format!("walk length {t} out of range")));
    }
    Ok(())
}

/// For each t-vertex walk [i_1..i_t] in lexicographic order, the 2^t rows
/// Σ_j s_j·A_{i_j} for s = 0..2^t (s_1 is the lowest bit of s).
pub fn mdc_walk_amplify(a: &BitMat, g: &Graph, t: usize, cap: u64) -> Result<BitMat> {
    check_walk_input(a, g, t)?;
    let degree = g
        .regular_degree()
        .ok_or_else(|| rejected("walk amplification needs a regular graph"))?;
    let rows = count_walks(g.n(), degree, t).saturating_mul(1u64 << t);
    if rows > cap {
        return Err(resource(format!(
            "{rows} output rows exceed the enumeration cap {cap}; use sampling mode"
        )));
    }
    let walks = enumerate_walks(g, t, cap)?;
    let mut out = Vec::with_capacity(rows as usize);
    for w in &walks {
        walk_rows(a, w, &mut out);
    }
    BitMat::from_rows(a.ncols(), out)
}

/// Like [`mdc_walk_amplify`] over `samples` random walks.
pub fn mdc_walk_amplify_sampled(a: &BitMat, g: &Graph, t: usize, samples: usize, seed: u64) -> Result<BitMat> {
    check_walk_input(a, g, t)?;
    if g.regular_degree().is_none_or(|d| d == 0) {
        return Err(rejected("walk amplification needs a regular graph of positive degree"));
    }
    let nbrs: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v)).collect();
    let mut rng = crate::rng(seed);
    let mut out = Vec::new();
    for _ in 0..samples {
        let w = sample_walk(&nbrs, t, &mut rng);
        walk_rows(a, &w, &mut out);
    }
    BitMat::from_rows(a.ncols(), out)
}

/// For each d-subset of rows of B (lexicographic), with r their sum: point
/// (r_2..r_n) and value r_1.
pub fn mdc_to_learning(b: &BitMat, d: usize, cap: u64) -> Result<PointValueSet> {
    let n = b.ncols();
    if n == 0 {
        return Err(rejected("B needs at least one column"));
    }
    if d == 0 || d > b.nrows() {
        return Err(rejected(format!("d = {d} must lie in 1..={}", b.nrows())));
    }
    let total = binomial(b.nrows(), d);
    if total > cap {
        return Err(resource(format!("C({}, {d}) = {total} exceeds the cap {cap}", b.nrows())));
    }
    let mut points = Vec::with_capacity(total as usize);
    let mut values = Vec::with_capacity(total as usize);
    for_each_combination(b.nrows(), d, |idx| {
        let mut r = BitVec::zeros(n);
        for &i in idx {
            r.xor_assign(b.row(i));
        }
        values.push(r.get(0));
        points.push(r.slice(1, n - 1));
        true
    });
    PointValueSet::new(n - 1, points, BitVec::from_bools(&values), 0)
}
