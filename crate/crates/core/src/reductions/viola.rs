use rand::Rng as _;

use super::EvenSetInstance;
use crate::codes::{balanced_code, BalancedConfig};
use crate::error::{rejected, resource, Result};
use crate::f2::{BitMat, BitVec};

/// How [`viola_shift`] covers the m^d ordered tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftMode {
    /// Every tuple, refusing when m^d exceeds `cap`.
    All { cap: u64 },
    /// `count` tuples drawn uniformly with replacement.
    Sample { count: usize, seed: u64 },
}

impl Default for ShiftMode {
    fn default() -> Self {
        Self::All { cap: 1 << 24 }
    }
}

/// Coordinate-wise sums over ordered d-tuples of points, in lexicographic tuple order.
pub fn viola_shift(points: &[BitVec], d: usize, mode: ShiftMode) -> Result<Vec<BitVec>> {
    if d == 0 {
        return Err(rejected("shift degree must be at least 1"));
    }
    let Some(first) = points.first() else {
        return Err(rejected("cannot shift an empty point set"));
    };
    let n = first.len();
    if points.iter().any(|p| p.len() != n) {
        return Err(rejected("points have different lengths"));
    }
    let m = points.len();
    match mode {
        ShiftMode::All { cap } => {
            let total = (0..d).try_fold(1u64, |acc, _| acc.checked_mul(m as u64));
            let total = match total {
                Some(t) if t <= cap => t as usize,
                _ => {
                    return Err(resource(format!(
                        "{m}^{d} tuples exceed the enumeration cap {cap}; use sampling mode"
                    )))
                }
            };
            let mut out = Vec::with_capacity(total);
            let mut idx = vec![0usize; d];
            loop {
                let mut s = BitVec::zeros(n);
                for &i in &idx {
                    s.xor_assign(&points[i]);
                }
                out.push(s);
                // Odometer with the first index most significant.
                let mut pos = d;
                loop {
                    if pos == 0 {
                        return Ok(out);
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < m {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        ShiftMode::Sample { count, seed } => {
            let mut rng = crate::rng(seed);
            Ok((0..count)
                .map(|_| {
                    let mut s = BitVec::zeros(n);
                    for _ in 0..d {
                        s.xor_assign(&points[rng.gen_range(0..m)]);
                    }
                    s
                })
                .collect())
        }
    }
}

/// Rows of B = W·M followed by the degree-d shift.
pub fn fooling_points_with_generator(e: &EvenSetInstance, w: &BitMat, d: usize, mode: ShiftMode) -> Result<Vec<BitVec>> {
    let b = w.mul(&e.m)?;
    viola_shift(b.rows(), d, mode)
}

/// [`fooling_points_with_generator`] with W a random eps-balanced code over the rows of M.
/// A kernel vector v of M gives a parity that vanishes on every output point.
pub fn evenset_to_fooling_points(
    e: &EvenSetInstance,
    eps: f64,
    d: usize,
    seed: u64,
    mode: ShiftMode,
    cfg: &BalancedConfig,
) -> Result<Vec<BitVec>> {
    let code = balanced_code(e.m.nrows(), eps, seed, cfg)?;
    fooling_points_with_generator(e, code.generator(), d, mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_identity() {
        let pts: Vec<BitVec> = vec!["101".parse().unwrap(), "011".parse().unwrap()];
        assert_eq!(viola_shift(&pts, 1, ShiftMode::default()).unwrap(), pts);
    }

    #[test]
    fn ordered_pairs() {
        let pts: Vec<BitVec> = vec!["10".parse().unwrap(), "01".parse().unwrap()];
        let out: Vec<String> = viola_shift(&pts, 2, ShiftMode::default())
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(out, ["00", "11", "11", "00"]);
    }

    #[test]
    fn cap_and_sampling() {
        let pts = vec![BitVec::zeros(2); 10];
        assert!(matches!(
            viola_shift(&pts, 3, ShiftMode::All { cap: 999 }),
            Err(crate::Error::Resource(_))
        ));
        let s = viola_shift(&pts, 3, ShiftMode::Sample { count: 7, seed: 1 }).unwrap();
        assert_eq!(s.len(), 7);
    }

    #[test]
    fn kernel_parity_vanishes() {
        let m = BitMat::from_rows(4, vec!["1100".parse().unwrap(), "0110".parse().unwrap(), "1010".parse().unwrap()]).unwrap();
        let e = EvenSetInstance::new(m, 3).unwrap();
        let v: BitVec = "1110".parse().unwrap();
        let pts = evenset_to_fooling_points(&e, 0.2, 2, 4, ShiftMode::default(), &BalancedConfig::default()).unwrap();
        assert!(pts.iter().all(|p| !p.dot(&v)));
        let id = fooling_points_with_generator(&e, &BitMat::identity(3), 1, ShiftMode::default()).unwrap();
        assert_eq!(id, e.m.rows());
    }
}
