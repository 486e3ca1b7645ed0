use rand::Rng as _;

use super::linear::{weights_balanced, BiasCert, CertMethod, DistanceCert, LinearCode};
use crate::error::{rejected, Error, Result};
use crate::f2::{BitMat, BitVec};

/// Knobs for [`balanced_code`].
#[derive(Clone, Debug, PartialEq)]
pub struct BalancedConfig {
    /// Row-count multiplier: lengths never exceed ⌈c_bal·dim/eps³⌉.
    pub c_bal: f64,
    /// Fixed code length; chosen automatically when absent.
    pub length: Option<usize>,
    pub max_tries: usize,
    /// Additionally require every nonzero codeword to have at least this weight.
    pub min_distance: Option<usize>,
    /// Largest message length accepted (all 2^dim − 1 codewords are enumerated).
    pub dim_cap: usize,
}

impl Default for BalancedConfig {
    fn default() -> Self {
        Self {
            c_bal: 4.0,
            length: None,
            max_tries: 200,
            min_distance: None,
            dim_cap: 20,
        }
    }
}

/// Upper limit ⌈c_bal·dim/eps³⌉ on the code length.
#[must_use]
pub fn max_balanced_length(dim: usize, eps: f64, c_bal: f64) -> usize {
    (c_bal * dim as f64 / eps.powi(3)).ceil() as usize
}

/// Length at which a uniformly random generator is balanced with probability ≥ 1/2
/// by Hoeffding plus a union bound over the 2^dim − 1 messages.
fn initial_length(dim: usize, eps: f64) -> usize {
    let t = ((dim as f64 + 2.0) * std::f64::consts::LN_2 / (2.0 * eps * eps)).ceil() as usize;
    t.max(dim)
}

/// Random t×dim generator whose nonzero codewords all have normalized weight in
/// [1/2 − eps, 1/2 + eps], certified by enumerating every codeword.
pub fn balanced_code(dim: usize, eps: f64, seed: u64, cfg: &BalancedConfig) -> Result<LinearCode> {
    if dim == 0 {
        return Err(rejected("balanced code needs dim ≥ 1"));
    }
    if dim > cfg.dim_cap {
        return Err(rejected(format!(
            "dim {dim} exceeds the verification cap {}",
            cfg.dim_cap
        )));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(rejected(format!("bias {eps} must be positive")));
    }
    let t_max = max_balanced_length(dim, eps, cfg.c_bal).max(dim);
    let t_start = match cfg.length {
        Some(t) if t < dim => {
            return Err(rejected(format!("length {t} is below the dimension {dim}")))
        }
        Some(t) if t > t_max => {
            return Err(Error::Config(format!(
                "length {t} exceeds ⌈c_bal·dim/eps³⌉ = {t_max}"
            )))
        }
        Some(t) => t,
        None => initial_length(dim, eps).min(t_max),
    };
    let mut rng = crate::rng(seed);
    let mut t = t_start;
    for attempt in 0..cfg.max_tries {
        if cfg.length.is_none() && attempt > 0 && attempt % 8 == 0 {
            t = ((t as f64 * 1.25).ceil() as usize).min(t_max);
        }
        let rows: Vec<BitVec> = (0..t)
            .map(|_| BitVec::from_u64(dim, rng.gen::<u64>()))
            .collect();
        let g = BitMat::from_rows(dim, rows)?;
        if g.rank() < dim {
            continue;
        }
        let mut code = LinearCode::from_generator(g)?;
        let mut lo = usize::MAX;
        let mut hi = 0;
        let mut best: Option<BitVec> = None;
        code.for_each_codeword(|_, c| {
            let w = c.weight();
            lo = lo.min(w);
            hi = hi.max(w);
            if best.as_ref().is_none_or(|b| c.witness_cmp(b).is_lt()) {
                best = Some(c.clone());
            }
        })?;
        if !weights_balanced(t, lo, hi, eps) || cfg.min_distance.is_some_and(|d| lo < d) {
            continue;
        }
        code.bias_cert = Some(BiasCert {
            eps,
            min_weight: lo,
            max_weight: hi,
            method: CertMethod::Exhaustive,
        });
        code.dist_cert = Some(DistanceCert {
            distance: lo,
            method: CertMethod::Exhaustive,
            witness: best.expect("dim ≥ 1"),
        });
        return Ok(code);
    }
    Err(Error::Generation(format!(
        "no {eps}-balanced [{t}, {dim}] code{} after {} tries; raise the length or fall back to a simplex code",
        cfg.min_distance
            .map(|d| format!(" with distance ≥ {d}"))
            .unwrap_or_default(),
        cfg.max_tries
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_message_code() {
        let code = balanced_code(1, 0.1, 5, &BalancedConfig::default()).unwrap();
        let w = code.generator().column(0).weight();
        let t = code.length();
        assert!((2 * w).abs_diff(t) as f64 <= 0.2 * t as f64);
        // The length-1 simplex code is not balanced at this bias.
        let mut s = super::super::simplex_generator(1).unwrap();
        assert!(!s.certify_balance(0.1).unwrap());
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = BalancedConfig::default();
        let a = balanced_code(6, 0.15, 11, &cfg).unwrap();
        let b = balanced_code(6, 0.15, 11, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.length() <= max_balanced_length(6, 0.15, 4.0));
    }

    #[test]
    fn fixed_length_with_distance() {
        let cfg = BalancedConfig {
            length: Some(6),
            min_distance: Some(3),
            max_tries: 5000,
            ..BalancedConfig::default()
        };
        let code = balanced_code(3, 0.2, 1, &cfg).unwrap();
        assert_eq!(code.length(), 6);
        let (lo, hi) = code.weight_range().unwrap();
        assert!(lo >= 3 && hi <= 4);
    }

    #[test]
    fn impossible_request_fails() {
        let cfg = BalancedConfig {
            length: Some(3),
            max_tries: 50,
            ..BalancedConfig::default()
        };
        // Three nonzero codewords of length 3 cannot all sit in [1.35, 1.65].
        assert!(matches!(balanced_code(2, 0.05, 0, &cfg), Err(Error::Generation(_))));
        assert!(balanced_code(0, 0.1, 0, &BalancedConfig::default()).is_err());
        assert!(balanced_code(21, 0.1, 0, &BalancedConfig::default()).is_err());
    }
}
