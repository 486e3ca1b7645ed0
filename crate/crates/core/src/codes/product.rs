use super::linear::{min_distance, LinearCode};
use crate::error::{rejected, resource, Result};
use crate::f2::{BitMat, BitVec};

/// Default cap on the number of message matrices X enumerated.
pub const DENSITY_ENUM_CAP: u64 = 1 << 20;

/// The product code C⊗2 of n×n matrices whose rows and columns all lie in C.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductCode {
    pub base: LinearCode,
    /// Parity check acting on the row-major flattening vec(Y)[i·n + j] = Y_ij.
    pub q: BitMat,
}

impl ProductCode {
    #[must_use]
    pub fn new(base: LinearCode) -> Self {
        let q = tensor_parity_check(&base);
        Self { base, q }
    }
}

/// Q = [H ⊗ I; I ⊗ H] on the row-major flattening of an n×n matrix; its kernel is C⊗2.
#[must_use]
pub fn tensor_parity_check(code: &LinearCode) -> BitMat {
    let h = code.parity_check();
    let id = BitMat::identity(code.length());
    h.kron(&id)
        .vstack(&id.kron(h))
        .expect("both blocks have n² columns")
}

/// Y ∈ C⊗2 iff H·Y = 0 and Y·Hᵀ = 0.
pub fn tensor_membership(p: &ProductCode, y: &BitMat) -> Result<bool> {
    let n = p.base.length();
    if y.nrows() != n || y.ncols() != n {
        return Err(rejected(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            y.nrows(),
            y.ncols()
        )));
    }
    let h = p.base.parity_check();
    Ok(h.mul(y)?.is_zero() && y.mul(&h.transpose())?.is_zero())
}

/// Row-major flattening of a matrix.
#[must_use]
pub fn flatten(y: &BitMat) -> BitVec {
    let n = y.ncols();
    BitVec::from_indices(
        y.nrows() * n,
        (0..y.nrows()).flat_map(|i| y.row(i).iter_ones().map(move |j| i * n + j)),
    )
}

/// Inverse of [`flatten`] for an `n`-column matrix.
#[must_use]
pub fn unflatten(v: &BitVec, n: usize) -> BitMat {
    let mut y = BitMat::zeros(v.len() / n, n);
    for idx in v.iter_ones() {
        y.set(idx / n, idx % n, true);
    }
    y
}

/// Outcome of checking the weight bound on symmetric zero-diagonal product codewords.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub holds: bool,
    /// Minimum distance d of the base code.
    pub distance: usize,
    /// ⌈1.5·d²⌉.
    pub bound: usize,
    /// Number of nonzero symmetric zero-diagonal codewords found.
    pub candidates: u64,
    pub min_weight: Option<usize>,
    /// Lexicographically least minimal-weight candidate Y.
    pub witness: Option<BitMat>,
}

/// ⌈1.5·d²⌉ in integer arithmetic.
#[must_use]
pub fn density_bound(d: usize) -> usize {
    (3 * d * d).div_ceil(2)
}

/// Enumerates every X ∈ F2^{k×k}, forms Y = G·X·Gᵀ, keeps the nonzero symmetric
/// zero-diagonal ones and checks that each has weight ≥ ⌈1.5·d²⌉.
pub fn product_density_check(code: &LinearCode, cap: u64) -> Result<DensityReport> {
    let k = code.dim();
    let n = code.length();
    let cells = k * k;
    if cells >= 63 || (1u64 << cells) > cap {
        return Err(resource(format!(
            "2^{cells} message matrices exceed the enumeration cap {cap}"
        )));
    }
    let distance = match &code.dist_cert {
        Some(c) => c.distance,
        None => min_distance(code, None)?.distance,
    };
    let bound = density_bound(distance);
    let cols = code.generator().columns();
    // Rank-one pieces g_a g_bᵀ and their transposes, flattened.
    let mut pieces = Vec::with_capacity(cells);
    let mut pieces_t = Vec::with_capacity(cells);
    for a in 0..k {
        for b in 0..k {
            let outer = |u: &BitVec, v: &BitVec| {
                BitVec::from_indices(
                    n * n,
                    u.iter_ones().flat_map(|i| v.iter_ones().map(move |j| i * n + j)),
                )
            };
            pieces.push(outer(&cols[a], &cols[b]));
            pieces_t.push(outer(&cols[b], &cols[a]));
        }
    }
    let diag = BitVec::from_indices(n * n, (0..n).map(|i| i * n + i));
    let mut y = BitVec::zeros(n * n);
    let mut yt = BitVec::zeros(n * n);
    let mut candidates = 0u64;
    let mut best: Option<BitVec> = None;
    for i in 1u64..(1u64 << cells) {
        let bit = i.trailing_zeros() as usize;
        y.xor_assign(&pieces[bit]);
        yt.xor_assign(&pieces_t[bit]);
        if y.is_zero() || y != yt || !y.and(&diag).is_zero() {
            continue;
        }
        candidates += 1;
        if best.as_ref().is_none_or(|b| y.witness_cmp(b).is_lt()) {
            best = Some(y.clone());
        }
    }
    let min_weight = best.as_ref().map(BitVec::weight);
    Ok(DensityReport {
        holds: min_weight.is_none_or(|w| w >= bound),
        distance,
        bound,
        candidates,
        min_weight,
        witness: best.map(|b| unflatten(&b, n)),
    })
}
