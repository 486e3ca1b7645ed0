use super::evenset::EvenSetLayout;
use crate::error::{rejected, Error, Result};
use crate::f2::{BitMat, BitVec};

/// k-VectorSum: is there x with wt(x) ≤ k and Mx = b?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSumInstance {
    pub m: BitMat,
    pub b: BitVec,
    pub k: usize,
    /// Free-form lineage lines (emitted as `#` comments).
    pub provenance: Vec<String>,
}

impl VectorSumInstance {
    pub fn new(m: BitMat, b: BitVec, k: usize) -> Result<Self> {
        if b.len() != m.nrows() {
            return Err(rejected(format!(
                "target has length {} but the matrix has {} rows",
                b.len(),
                m.nrows()
            )));
        }
        if k == 0 {
            return Err(rejected("sparsity k must be at least 1"));
        }
        Ok(Self {
            m,
            b,
            k,
            provenance: Vec::new(),
        })
    }

    /// Checks `Mx = b` and `wt(x) ≤ k`; x = 0 is accepted exactly when b = 0.
    pub fn verify(&self, x: &BitVec) -> Result<()> {
        let y = self.m.mul_vec(x)?;
        if y != self.b {
            return Err(Error::Witness("Mx differs from the target".into()));
        }
        if x.weight() > self.k {
            return Err(Error::Witness(format!(
                "weight {} exceeds k = {}",
                x.weight(),
                self.k
            )));
        }
        Ok(())
    }
}

/// k-EvenSet: is there a nonzero x with wt(x) ≤ k and Mx = 0?
#[derive(Clone, Debug, PartialEq)]
pub struct EvenSetInstance {
    pub m: BitMat,
    pub k: usize,
    pub layout: Option<Box<EvenSetLayout>>,
    pub provenance: Vec<String>,
}

impl EvenSetInstance {
    pub fn new(m: BitMat, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(rejected("sparsity k must be at least 1"));
        }
        Ok(Self {
            m,
            k,
            layout: None,
            provenance: Vec::new(),
        })
    }

    /// Checks that x is a nonzero kernel vector of weight at most k.
    pub fn verify(&self, x: &BitVec) -> Result<()> {
        if x.is_zero() {
            return Err(Error::Witness("an even set must be nonzero".into()));
        }
        if !self.m.mul_vec(x)?.is_zero() {
            return Err(Error::Witness("Mx ≠ 0".into()));
        }
        if x.weight() > self.k {
            return Err(Error::Witness(format!(
                "weight {} exceeds k = {}",
                x.weight(),
                self.k
            )));
        }
        Ok(())
    }
}

/// Point-value pairs (z_i, b_i) for parity, junta and polynomial learning.
#[derive(Clone, Debug, PartialEq)]
pub struct PointValueSet {
    /// Dimension of every point.
    pub n: usize,
    pub points: Vec<BitVec>,
    /// `values[i]` is the label of `points[i]`.
    pub values: BitVec,
    pub k: usize,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
}

impl PointValueSet {
    pub fn new(n: usize, points: Vec<BitVec>, values: BitVec, k: usize) -> Result<Self> {
        if points.len() != values.len() {
            return Err(rejected(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != n) {
            return Err(rejected(format!(
                "point {i} has length {}, expected {n}",
                p.len()
            )));
        }
        Ok(Self {
            n,
            points,
            values,
            k,
            eps: None,
            delta: None,
        })
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fraction of pairs with ⟨form, z_i⟩ = b_i.
    pub fn agreement(&self, form: &BitVec) -> Result<f64> {
        if form.len() != self.n {
            return Err(rejected("form length differs from the point dimension"));
        }
        if self.is_empty() {
            return Err(rejected("agreement over an empty set is undefined"));
        }
        let hits = self
            .points
            .iter()
            .enumerate()
            .filter(|(i, p)| p.dot(form) == self.values.get(*i))
            .count();
        Ok(hits as f64 / self.len() as f64)
    }
}
