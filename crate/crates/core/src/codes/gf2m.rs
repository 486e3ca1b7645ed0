use crate::error::{rejected, Result};

/// Primitive polynomials over F2 for m = 2..=16, bit i holding the coefficient of x^i.
pub const PRIMITIVE_POLYS: [u32; 15] = [
    0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003,
    0x1100B,
];

/// GF(2^m) through exponent/logarithm tables of a primitive element α.
#[derive(Clone, Debug)]
pub struct Gf2m {
    m: usize,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf2m {
    pub fn new(m: usize) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(rejected(format!("GF(2^{m}) unsupported; need 2 ≤ m ≤ 16")));
        }
        let poly = PRIMITIVE_POLYS[m - 2];
        let order = (1usize << m) - 1;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![u32::MAX; order + 1];
        let mut x = 1u32;
        for e in 0..order {
            exp.push(x);
            log[x as usize] = e as u32;
            x <<= 1;
            if x >> m & 1 == 1 {
                x ^= poly;
            }
        }
        Ok(Self { m, exp, log })
    }

    #[must_use]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Multiplicative order 2^m − 1.
    #[must_use]
    pub fn order(&self) -> usize {
        self.exp.len()
    }

    /// α^e for any exponent.
    #[must_use]
    pub fn alpha_pow(&self, e: usize) -> u32 {
        self.exp[e % self.exp.len()]
    }

    #[must_use]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.exp[e % self.exp.len()]
    }

    /// Discrete logarithm of a nonzero element.
    #[must_use]
    pub fn log(&self, a: u32) -> Option<usize> {
        match self.log.get(a as usize) {
            Some(&l) if l != u32::MAX => Some(l as usize),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_polynomial_is_primitive() {
        for m in 2..=16 {
            let f = Gf2m::new(m).unwrap();
            // α generates all 2^m − 1 nonzero elements exactly once.
            let mut seen = vec![false; 1 << m];
            for e in 0..f.order() {
                let x = f.alpha_pow(e) as usize;
                assert!(x != 0 && x < (1 << m) && !seen[x], "m={m} repeats at {e}");
                seen[x] = true;
            }
            assert_eq!(f.alpha_pow(f.order()), 1);
        }
    }

    #[test]
    fn mul_matches_shift_and_add() {
        let f = Gf2m::new(4).unwrap();
        let slow = |a: u32, b: u32| {
            let mut acc = 0u32;
            for i in 0..4 {
                if b >> i & 1 == 1 {
                    acc ^= a << i;
                }
            }
            for bit in (4..8).rev() {
                if acc >> bit & 1 == 1 {
                    acc ^= 0x13 << (bit - 4);
                }
            }
            acc
        };
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(f.mul(a, b), slow(a, b));
            }
        }
        assert!(Gf2m::new(1).is_err());
        assert!(Gf2m::new(17).is_err());
    }
}
