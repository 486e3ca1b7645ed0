//! Exact k-sparse solvers and best-agreement oracles.
//!
//! Every solver returns the lexicographically least minimal-weight witness and
//! re-verifies it against the instance before returning.

mod agreement;
mod evenset;
mod sparse;

use std::fmt;

pub use agreement::{
    best_junta_agreement, best_parity_agreement, parity_agreements, poly_agreement_bound,
    JuntaAgreement, ParityForm, PolyAdvantage, Polynomial,
};
pub use evenset::evenset_min_weight;
pub use sparse::{solve_bfs, solve_exhaustive, solve_mitm};

use crate::f2::BitVec;

/// Which procedure produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Exhaustive,
    Mitm,
    Bfs,
    EvenSetMin,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exhaustive => "exhaustive",
            Self::Mitm => "mitm",
            Self::Bfs => "bfs",
            Self::EvenSetMin => "evenset-min",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub feasible: bool,
    pub witness: Option<BitVec>,
    pub weight: Option<usize>,
    pub algorithm: Algorithm,
    /// Enumerated states (subsets, table entries, probes or BFS nodes).
    pub work: u64,
}

impl SolveReport {
    fn found(algorithm: Algorithm, witness: BitVec, work: u64) -> Self {
        Self {
            feasible: true,
            weight: Some(witness.weight()),
            witness: Some(witness),
            algorithm,
            work,
        }
    }

    fn infeasible(algorithm: Algorithm, work: u64) -> Self {
        Self {
            feasible: false,
            witness: None,
            weight: None,
            algorithm,
            work,
        }
    }
}

/// Resource caps shared by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    /// Maximum number of candidate subsets enumerated.
    pub enumeration_cap: u64,
    /// Maximum number of meet-in-the-middle table entries.
    pub memory_cap: u64,
    /// Maximum number of BFS states 2^m.
    pub bfs_state_cap: u64,
    /// Kernel dimensions up to this are enumerated in full by `evenset_min_weight`.
    pub kernel_dim_cap: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        Self {
            enumeration_cap: 2_000_000_000,
            memory_cap: 40_000_000,
            bfs_state_cap: 1 << 26,
            kernel_dim_cap: 24,
        }
    }
}
