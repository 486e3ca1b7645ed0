use crate::error::{rejected, resource, Result};
use crate::f2::{for_each_span_vector, BitMat, BitVec};
use crate::{binomial_sum, for_each_combination};

/// Largest dimension for which codewords are enumerated exhaustively.
pub const EXHAUSTIVE_DIM_CAP: usize = 24;
/// Default budget for sparse kernel searches.
pub const DEFAULT_SEARCH_CAP: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertMethod {
    /// Every nonzero codeword was enumerated.
    Exhaustive,
    /// Every vector of weight up to the given cap was tested against the parity check.
    SparseSearch(usize),
    /// Follows from the construction (simplex codes).
    Construction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceCert {
    pub distance: usize,
    pub method: CertMethod,
    /// A minimum-weight codeword; the lexicographically least one unless the
    /// certificate comes from the construction.
    pub witness: BitVec,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BiasCert {
    pub eps: f64,
    pub min_weight: usize,
    pub max_weight: usize,
    pub method: CertMethod,
}

/// A binary linear code with generator G (n×k, columns span the code) and
/// parity check H (kernel is the code).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearCode {
    length: usize,
    dim: usize,
    generator: BitMat,
    parity_check: BitMat,
    pub dist_cert: Option<DistanceCert>,
    pub bias_cert: Option<BiasCert>,
}

impl LinearCode {
    /// Code spanned by the columns of `g`, which must be linearly independent.
    pub fn from_generator(g: BitMat) -> Result<Self> {
        let dim = g.ncols();
        if g.rank() != dim {
            return Err(rejected(format!(
                "generator columns are dependent (rank {} < {dim})",
                g.rank()
            )));
        }
        let h_rows = g.transpose().nullspace_basis();
        let parity_check = BitMat::from_rows(g.nrows(), h_rows)?;
        Ok(Self {
            length: g.nrows(),
            dim,
            generator: g,
            parity_check,
            dist_cert: None,
            bias_cert: None,
        })
    }

    /// Kernel of `h`.
    pub fn from_parity_check(h: BitMat) -> Result<Self> {
        let basis = h.nullspace_basis();
        let generator = BitMat::from_columns(h.ncols(), &basis)?;
        Ok(Self {
            length: h.ncols(),
            dim: basis.len(),
            generator,
            parity_check: h,
            dist_cert: None,
            bias_cert: None,
        })
    }

    /// [n, 1, n] repetition code.
    #[must_use]
    pub fn repetition(n: usize) -> Self {
        Self::from_generator(BitMat::from_rows(1, vec![BitVec::ones(1); n]).expect("rows have length 1"))
            .expect("a nonzero column is independent")
    }

    #[must_use]
    pub fn length(&self) -> usize {
        self.length
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub fn generator(&self) -> &BitMat {
        &self.generator
    }

    #[must_use]
    pub fn parity_check(&self) -> &BitMat {
        &self.parity_check
    }

    pub fn encode(&self, message: &BitVec) -> Result<BitVec> {
        self.generator.mul_vec(message)
    }

    pub fn contains(&self, word: &BitVec) -> Result<bool> {
        Ok(self.parity_check.mul_vec(word)?.is_zero())
    }

    /// Calls `f(message_mask, codeword)` on every nonzero codeword.
    pub fn for_each_codeword(&self, f: impl FnMut(u64, &BitVec)) -> Result<()> {
        if self.dim > EXHAUSTIVE_DIM_CAP {
            return Err(resource(format!(
                "dimension {} exceeds the exhaustive enumeration cap {EXHAUSTIVE_DIM_CAP}",
                self.dim
            )));
        }
        for_each_span_vector(&self.generator.columns(), self.length, f);
        Ok(())
    }

    /// Minimum and maximum weight over nonzero codewords.
    pub fn weight_range(&self) -> Result<(usize, usize)> {
        if self.dim == 0 {
            return Err(rejected("zero-dimensional code has no nonzero codeword"));
        }
        let (mut lo, mut hi) = (usize::MAX, 0);
        self.for_each_codeword(|_, c| {
            let w = c.weight();
            lo = lo.min(w);
            hi = hi.max(w);
        })?;
        Ok((lo, hi))
    }

    /// Computes (and caches) the minimum distance; see [`min_distance`].
    pub fn certify_distance(&mut self, weight_cap: Option<usize>) -> Result<usize> {
        let cert = min_distance(self, weight_cap)?;
        let d = cert.distance;
        self.dist_cert = Some(cert);
        Ok(d)
    }

    /// Normalized weights of every nonzero codeword lie in [1/2 − eps, 1/2 + eps].
    pub fn certify_balance(&mut self, eps: f64) -> Result<bool> {
        let (lo, hi) = self.weight_range()?;
        let ok = weights_balanced(self.length, lo, hi, eps);
        if ok {
            self.bias_cert = Some(BiasCert {
                eps,
                min_weight: lo,
                max_weight: hi,
                method: CertMethod::Exhaustive,
            });
        }
        Ok(ok)
    }
}

/// `lo/t` and `hi/t` lie in [1/2 − eps, 1/2 + eps].
#[must_use]
pub fn weights_balanced(t: usize, lo: usize, hi: usize, eps: f64) -> bool {
    let slack = 2.0 * eps * t as f64 + 1e-9 * t as f64;
    let dev = |w: usize| (2.0 * w as f64 - t as f64).abs();
    dev(lo) <= slack && dev(hi) <= slack
}

/// Minimum weight of a nonzero codeword with the lexicographically least witness.
///
/// Codes of dimension at most [`EXHAUSTIVE_DIM_CAP`] are enumerated in full. Larger
/// codes need `weight_cap`: every vector up to that weight is tested against the
/// parity check.
pub fn min_distance(code: &LinearCode, weight_cap: Option<usize>) -> Result<DistanceCert> {
    if code.dim == 0 {
        return Err(rejected("zero-dimensional code has no nonzero codeword"));
    }
    if code.dim <= EXHAUSTIVE_DIM_CAP {
        let mut best: Option<BitVec> = None;
        code.for_each_codeword(|_, c| {
            let better = match &best {
                None => true,
                Some(b) => c.witness_cmp(b).is_lt(),
            };
            if better {
                best = Some(c.clone());
            }
        })?;
        let witness = best.expect("dim ≥ 1 has a nonzero codeword");
        return Ok(DistanceCert {
            distance: witness.weight(),
            method: CertMethod::Exhaustive,
            witness,
        });
    }
    let cap = weight_cap.ok_or_else(|| {
        resource(format!(
            "dimension {} exceeds {EXHAUSTIVE_DIM_CAP}; supply a weight cap",
            code.dim
        ))
    })?;
    let n = code.length;
    let work = binomial_sum(n, cap);
    if work > DEFAULT_SEARCH_CAP {
        return Err(resource(format!(
            "{work} candidate supports up to weight {cap} exceed the search cap {DEFAULT_SEARCH_CAP}"
        )));
    }
    let cols = code.parity_check.columns();
    let rows = code.parity_check.nrows();
    for w in 1..=cap {
        let mut hit = None;
        for_each_combination(n, w, |s| {
            let mut syn = BitVec::zeros(rows);
            for &j in s {
                syn.xor_assign(&cols[j]);
            }
            if syn.is_zero() {
                hit = Some(BitVec::from_indices(n, s.iter().copied()));
                false
            } else {
                true
            }
        });
        if let Some(witness) = hit {
            return Ok(DistanceCert {
                distance: w,
                method: CertMethod::SparseSearch(cap),
                witness,
            });
        }
    }
    Err(resource(format!("no codeword of weight ≤ {cap}; distance exceeds the cap")))
}

/// The [2^kdim − 1, kdim] simplex code: row i of the generator is the binary
/// expansion of i + 1, so every nonzero codeword has weight 2^(kdim−1).
pub fn simplex_generator(kdim: usize) -> Result<LinearCode> {
    if kdim == 0 || kdim > 20 {
        return Err(rejected(format!("simplex dimension {kdim} outside 1..=20")));
    }
    let n = (1usize << kdim) - 1;
    let g = BitMat::from_rows(kdim, (1..=n).map(|i| BitVec::from_u64(kdim, i as u64)).collect())?;
    let mut code = LinearCode::from_generator(g)?;
    let w = 1usize << (kdim - 1);
    code.dist_cert = Some(DistanceCert {
        distance: w,
        method: CertMethod::Construction,
        witness: code.encode(&BitVec::unit(kdim, kdim - 1))?,
    });
    code.bias_cert = Some(BiasCert {
        eps: (2 * w) as f64 / (2 * n) as f64 - 0.5,
        min_weight: w,
        max_weight: w,
        method: CertMethod::Construction,
    });
    Ok(code)
}
