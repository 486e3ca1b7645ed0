//! Sparse solutions of linear systems over F2.
//!
//! The crate implements the hardness reductions between k-Clique, k-VectorSum,
//! k-EvenSet and sparse parity learning as executable instance transformers,
//! along with the code constructions they rely on and exact brute-force oracles
//! that check every reduction's YES/NO behaviour on small instances.

pub mod codes;
pub mod error;
pub mod f2;
pub mod graphs;
pub mod reductions;
pub mod solvers;

pub use error::{Error, Result};
pub use f2::{BitMat, BitVec};

/// Deterministic generator used for every seeded construction.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Seeds the crate's generator.
#[must_use]
pub fn rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}

/// Binomial coefficient saturating at `u64::MAX`.
#[must_use]
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// `Σ_{i ≤ k} C(n, i)`, saturating.
#[must_use]
pub fn binomial_sum(n: usize, k: usize) -> u64 {
    (0..=k.min(n)).fold(0u64, |acc, i| acc.saturating_add(binomial(n, i)))
}

/// Smallest `N` with `2^N ≥ n + 1`, i.e. the number of bits needed for the labels 1..=n.
#[must_use]
pub fn bits_for(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order, stopping
/// early when `f` returns `false`.
pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(57, 6), 36_288_252);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial_sum(4, 2), 11);
        assert_eq!(binomial(10_000, 5_000), u64::MAX);
    }

    #[test]
    fn bit_widths() {
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(3), 2);
        assert_eq!(bits_for(4), 3);
        assert_eq!(bits_for(7), 3);
        assert_eq!(bits_for(15), 4);
    }

    #[test]
    fn combinations_lex() {
        let mut all = Vec::new();
        for_each_combination(4, 2, |c| {
            all.push(c.to_vec());
            true
        });
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut count = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
        for_each_combination(2, 3, |_| panic!("no 3-subsets of a 2-set"));
    }
}
