use super::{PointValueSet, VectorSumInstance};
use crate::codes::{balanced_code, BalancedConfig};
use crate::error::{rejected, Error, Result};
use crate::f2::{BitMat, BitVec};

/// Rows of M become the points and b the values: a form x satisfies every pair
/// exactly when Mx = b.
pub fn vectorsum_to_pointvalues(inst: &VectorSumInstance) -> Result<PointValueSet> {
    let pv = PointValueSet::new(inst.m.ncols(), inst.m.rows().to_vec(), inst.b.clone(), inst.k)?;
    if pv.is_empty() {
        return Err(rejected("VectorSum instance has no rows"));
    }
    Ok(pv)
}

/// Takes t = rows(W) combinations: z_i = Σ_j W_ij·y_j and b_i = Σ_j W_ij·a_j.
pub fn amplify_with_generator(pv: &PointValueSet, w: &BitMat) -> Result<PointValueSet> {
    if w.ncols() != pv.len() {
        return Err(rejected(format!(
            "generator has {} columns but there are {} pairs",
            w.ncols(),
            pv.len()
        )));
    }
    let mut points = Vec::with_capacity(w.nrows());
    let mut values = BitVec::zeros(w.nrows());
    for (i, row) in w.rows().iter().enumerate() {
        let mut z = BitVec::zeros(pv.n);
        for j in row.iter_ones() {
            z.xor_assign(&pv.points[j]);
            if pv.values.get(j) {
                values.flip(i);
            }
        }
        points.push(z);
    }
    let mut out = PointValueSet::new(pv.n, points, values, pv.k)?;
    out.delta = pv.delta;
    Ok(out)
}

/// Amplifies with a random eps-balanced code over the |pv| pairs. A homogeneous
/// parity that fails some input pair agrees with a fraction in [1/2 − eps, 1/2 + eps]
/// of the outputs.
pub fn amplify_pointvalues(pv: &PointValueSet, eps: f64, seed: u64, cfg: &BalancedConfig) -> Result<PointValueSet> {
    if pv.is_empty() {
        return Err(rejected("cannot amplify an empty point-value set"));
    }
    let code = balanced_code(pv.len(), eps, seed, cfg).map_err(|e| match e {
        Error::Rejected(s) | Error::Config(s) => Error::Generation(s),
        other => other,
    })?;
    let mut out = amplify_with_generator(pv, code.generator())?;
    out.eps = Some(eps);
    Ok(out)
}

/// Amplification with eps = delta·2^−k, after which no k-junta agrees with more
/// than 1/2 + delta of the pairs in the NO case.
pub fn junta_hardness_instance(
    pv: &PointValueSet,
    delta: f64,
    k: usize,
    seed: u64,
    cfg: &BalancedConfig,
) -> Result<PointValueSet> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Config(format!("delta = {delta} must lie in (0, 1/2)")));
    }
    let eps = junta_eps(delta, k);
    let mut out = amplify_pointvalues(pv, eps, seed, cfg)?;
    out.k = k;
    out.delta = Some(delta);
    Ok(out)
}

/// δ·2^−k.
#[must_use]
pub fn junta_eps(delta: f64, k: usize) -> f64 {
    delta / 2f64.powi(k as i32)
}
