use super::sparse::{column_syndromes, exhaustive_search, with_syndrome, Syndrome};
use super::{Algorithm, SolveReport, SolverLimits};
use crate::binomial_sum;
use crate::error::{resource, Error, Result};
use crate::f2::{for_each_span_vector, BitVec};
use crate::reductions::EvenSetInstance;

/// Minimum weight of a nonzero kernel vector of `E.m`.
///
/// Kernels of dimension up to `limits.kernel_dim_cap` are enumerated in full and
/// the report always carries the minimum and its witness; `feasible` says whether
/// that minimum is at most `E.k`. Larger kernels fall back to searching all
/// supports of weight ≤ `E.k`, in which case an infeasible report has no witness.
pub fn evenset_min_weight(e: &EvenSetInstance, limits: &SolverLimits) -> Result<SolveReport> {
    let n = e.m.ncols();
    let basis = e.m.nullspace_basis();
    let alg = Algorithm::EvenSetMin;
    if basis.is_empty() {
        return Ok(SolveReport::infeasible(alg, 0));
    }
    if basis.len() <= limits.kernel_dim_cap {
        let mut best: Option<BitVec> = None;
        let mut work = 0u64;
        for_each_span_vector(&basis, n, |_, v| {
            work += 1;
            if best.as_ref().is_none_or(|b| v.witness_cmp(b).is_lt()) {
                best = Some(v.clone());
            }
        });
        let w = best.expect("nonempty basis spans a nonzero vector");
        if !e.m.mul_vec(&w)?.is_zero() {
            return Err(Error::Witness("kernel enumeration produced a non-kernel vector".into()));
        }
        let weight = w.weight();
        return Ok(SolveReport {
            feasible: weight <= e.k,
            weight: Some(weight),
            witness: Some(w),
            algorithm: alg,
            work,
        });
    }
    let k = e.k.min(n);
    let total = binomial_sum(n, k);
    if total > limits.enumeration_cap {
        return Err(resource(format!(
            "kernel dimension {} and C({n}, ≤{k}) = {total} both exceed their caps",
            basis.len()
        )));
    }
    let mut work = 0;
    let support = with_syndrome!(e.m.nrows(), S => {
        let cols: Vec<S> = column_syndromes(&e.m);
        let zero = S::from_bits(&BitVec::zeros(e.m.nrows()));
        exhaustive_search(&cols, &zero, &zero, 1, k, &mut work)
    });
    match support {
        None => Ok(SolveReport::infeasible(alg, work)),
        Some(s) => {
            let x = BitVec::from_indices(n, s);
            e.verify(&x)?;
            Ok(SolveReport::found(alg, x, work))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::simplex_generator;
    use crate::f2::BitMat;

    #[test]
    fn examples() {
        let m = BitMat::from_rows(3, vec!["110".parse().unwrap(), "011".parse().unwrap()]).unwrap();
        let r = evenset_min_weight(&EvenSetInstance::new(m, 3).unwrap(), &SolverLimits::default()).unwrap();
        assert!(r.feasible);
        assert_eq!(r.weight, Some(3));
        assert_eq!(r.witness.unwrap().to_string(), "111");

        let r = evenset_min_weight(&EvenSetInstance::new(BitMat::identity(4), 4).unwrap(), &SolverLimits::default()).unwrap();
        assert!(!r.feasible);

        let h = simplex_generator(3).unwrap().parity_check().clone();
        let r = evenset_min_weight(&EvenSetInstance::new(h, 3).unwrap(), &SolverLimits::default()).unwrap();
        assert_eq!(r.weight, Some(4));
        assert!(!r.feasible);
    }

    #[test]
    fn sparse_fallback_agrees_with_enumeration() {
        let h = crate::codes::bch_parity_check(15, 5).unwrap();
        let full = evenset_min_weight(&EvenSetInstance::new(h.clone(), 6).unwrap(), &SolverLimits::default()).unwrap();
        let narrow = SolverLimits { kernel_dim_cap: 2, ..SolverLimits::default() };
        let sparse = evenset_min_weight(&EvenSetInstance::new(h.clone(), 6).unwrap(), &narrow).unwrap();
        assert_eq!(full.witness, sparse.witness);
        assert_eq!(full.weight, Some(5));
        let none = evenset_min_weight(&EvenSetInstance::new(h, 4).unwrap(), &narrow).unwrap();
        assert!(!none.feasible);
    }
}
