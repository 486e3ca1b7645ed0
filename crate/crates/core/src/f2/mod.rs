//! Packed linear algebra over F2.

mod bitmat;
mod bitvec;

pub use bitmat::{BitMat, Echelon};
pub use bitvec::BitVec;

use crate::error::Result;

/// `M·x` over F2.
pub fn mat_vec_mul(m: &BitMat, x: &BitVec) -> Result<BitVec> {
    m.mul_vec(x)
}

/// Number of ones in `x`.
#[must_use]
pub fn weight(x: &BitVec) -> usize {
    x.weight()
}

/// Basis of the kernel of `m`; its size is `cols − rank`.
#[must_use]
pub fn nullspace_basis(m: &BitMat) -> Vec<BitVec> {
    m.nullspace_basis()
}

/// Any solution of `Mx = b`, or `None` if there is none.
pub fn gauss_solve(m: &BitMat, b: &BitVec) -> Result<Option<BitVec>> {
    m.solve(b)
}

/// Calls `f` on every vector of the span of `basis` except zero, walking a Gray code
/// so that each step costs one vector addition. The first argument is the
/// combination mask (bit i selects `basis[i]`).
pub fn for_each_span_vector(basis: &[BitVec], len: usize, mut f: impl FnMut(u64, &BitVec)) {
    assert!(basis.len() < 64, "span enumeration limited to 63 generators");
    let mut acc = BitVec::zeros(len);
    let mut gray = 0u64;
    for i in 1u64..(1u64 << basis.len()) {
        let bit = i.trailing_zeros() as usize;
        gray ^= 1 << bit;
        acc.xor_assign(&basis[bit]);
        f(gray, &acc);
    }
}
