use std::fmt;

use super::bitvec::BitVec;
use crate::error::{rejected, Result};

/// A dense matrix over F2 stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows of the reduced form, one per pivot.
    pub rows: Vec<BitVec>,
    /// `pivots[i]` is the leading column of `rows[i]`; strictly increasing.
    pub pivots: Vec<usize>,
}

impl BitMat {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVec::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(rejected(format!(
                "row {i} has length {}, expected {cols}",
                r.len()
            )));
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self> {
        Ok(Self::from_rows(rows, columns.to_vec())?.transpose())
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.rows[i].set(j, true);
                }
            }
        }
        m
    }

    #[must_use]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit);
    }

    #[must_use]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        &mut self.rows[i]
    }

    #[must_use]
    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    #[must_use]
    pub fn into_rows(self) -> Vec<BitVec> {
        self.rows
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.cols {
            return Err(rejected(format!(
                "row has length {}, expected {}",
                row.len(),
                self.cols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    #[must_use]
    pub fn column(&self, j: usize) -> BitVec {
        let mut c = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                c.set(i, true);
            }
        }
        c
    }

    /// All columns, computed in one pass.
    #[must_use]
    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().rows
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    /// Number of ones in the whole matrix.
    #[must_use]
    pub fn weight(&self) -> usize {
        self.rows.iter().map(BitVec::weight).sum()
    }

    /// `M·x`.
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(rejected(format!(
                "vector length {} does not match {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut y = BitVec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(x) {
                y.set(i, true);
            }
        }
        Ok(y)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.nrows() {
            return Err(rejected(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(Self {
            cols: other.cols,
            rows,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nrows() != other.nrows() || self.cols != other.cols {
            return Err(rejected("matrix sum needs equal shapes"));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut a = a.clone();
                a.xor_assign(b);
                a
            })
            .collect();
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(rejected("vstack needs equal column counts"));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            cols: self.cols,
            rows,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.nrows() != other.nrows() {
            return Err(rejected("hstack needs equal row counts"));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(Self {
            cols: self.cols + other.cols,
            rows,
        })
    }

    /// Kronecker product `self ⊗ other`.
    #[must_use]
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (other.nrows(), other.cols);
        let mut out = Self::zeros(self.nrows() * p, self.cols * q);
        for (i, ra) in self.rows.iter().enumerate() {
            for j in ra.iter_ones() {
                for (k, rb) in other.rows.iter().enumerate() {
                    let target = &mut out.rows[i * p + k];
                    for l in rb.iter_ones() {
                        target.set(j * q + l, true);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form, pivoting only on the first `limit` columns.
    #[must_use]
    pub fn echelon_limited(&self, limit: usize) -> (Vec<BitVec>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..limit.min(self.cols) {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && r.get(col) {
                    r.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        (rows, pivots)
    }

    /// Reduced row echelon form with zero rows dropped.
    #[must_use]
    pub fn echelon(&self) -> Echelon {
        let (mut rows, pivots) = self.echelon_limited(self.cols);
        rows.truncate(pivots.len());
        Echelon { rows, pivots }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of the row space (the nonzero rows of the reduced form).
    #[must_use]
    pub fn row_basis(&self) -> Self {
        Self {
            cols: self.cols,
            rows: self.echelon().rows,
        }
    }

    /// Basis of `{x : Mx = 0}` with one vector per non-pivot column.
    #[must_use]
    pub fn nullspace_basis(&self) -> Vec<BitVec> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::unit(self.cols, f);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `Mx = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.nrows() {
            return Err(rejected(format!(
                "right-hand side length {} does not match {} rows",
                b.len(),
                self.nrows()
            )));
        }
        let n = self.cols;
        let aug = Self {
            cols: n + 1,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| r.concat(&BitVec::from_bools(&[b.get(i)])))
                .collect(),
        };
        let (rows, pivots) = aug.echelon_limited(n);
        if rows[pivots.len()..].iter().any(|r| r.get(n)) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(n);
        for (r, &p) in rows.iter().zip(&pivots) {
            if r.get(n) {
                x.set(p, true);
            }
        }
        debug_assert_eq!(self.mul_vec(&x)?, *b);
        Ok(Some(x))
    }
}

impl fmt::Display for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMat {}x{} [", self.nrows(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}
