use super::gf2m::Gf2m;
use crate::bits_for;
use crate::error::{rejected, Result};
use crate::f2::BitMat;

/// Number of odd-power syndrome blocks needed for designed distance `delta`.
#[must_use]
pub fn bch_blocks(delta: usize) -> usize {
    delta.saturating_sub(1).div_ceil(2)
}

/// Parity check with `blocks` row blocks α^((2i+1)j), i < blocks, over GF(2^m) with
/// m = ⌈log2(n+1)⌉, truncated to `n` columns. Every nonzero x of weight at most
/// 2·blocks has a nonzero syndrome.
pub fn bch_syndrome_blocks(n: usize, blocks: usize) -> Result<BitMat> {
    if n < 2 {
        return Err(rejected("BCH parity check needs n ≥ 2"));
    }
    let m = bits_for(n).max(2);
    let field = Gf2m::new(m)?;
    let mut r = BitMat::zeros(blocks * m, n);
    for i in 0..blocks {
        for j in 0..n {
            let v = field.alpha_pow((2 * i + 1) * j);
            for b in 0..m {
                if v >> b & 1 == 1 {
                    r.set(i * m + b, j, true);
                }
            }
        }
    }
    Ok(r)
}

/// Binary BCH parity check of length `n` and designed distance `delta`:
/// Rx ≠ 0 whenever 0 < wt(x) < delta.
pub fn bch_parity_check(n: usize, delta: usize) -> Result<BitMat> {
    if n < 2 {
        return Err(rejected("BCH parity check needs n ≥ 2"));
    }
    if delta < 2 || delta > n {
        return Err(rejected(format!("designed distance {delta} outside 2..={n}")));
    }
    bch_syndrome_blocks(n, bch_blocks(delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2::BitVec;
    use crate::for_each_combination;

    fn light_kernel_vector(r: &BitMat, below: usize) -> Option<Vec<usize>> {
        let mut hit = None;
        for w in 1..below {
            for_each_combination(r.ncols(), w, |s| {
                let x = BitVec::from_indices(r.ncols(), s.iter().copied());
                if r.mul_vec(&x).unwrap().is_zero() {
                    hit = Some(s.to_vec());
                    return false;
                }
                true
            });
        }
        hit
    }

    #[test]
    fn small_examples() {
        let r = bch_parity_check(7, 3).unwrap();
        assert_eq!((r.nrows(), r.ncols()), (3, 7));
        assert_eq!(light_kernel_vector(&r, 3), None);

        let r = bch_parity_check(15, 5).unwrap();
        assert!(r.nrows() <= 8);
        assert_eq!(light_kernel_vector(&r, 5), None);

        let r = bch_parity_check(6, 2).unwrap();
        assert!((0..6).all(|j| !r.column(j).is_zero()));
    }

    #[test]
    fn designed_distance_is_tight_for_hamming() {
        // Length 7, δ = 3 is the Hamming code: some weight-3 codeword exists.
        let r = bch_parity_check(7, 3).unwrap();
        assert!(light_kernel_vector(&r, 4).is_some());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(bch_parity_check(7, 8).is_err());
        assert!(bch_parity_check(7, 1).is_err());
        assert!(bch_parity_check(1, 1).is_err());
    }
}
