use super::{EvenSetInstance, VectorSumInstance};
use crate::codes::{
    balanced_code, bch_syndrome_blocks, density_bound, product_density_check, tensor_parity_check,
    BalancedConfig, DENSITY_ENUM_CAP,
};
use crate::error::{rejected, resource, Error, Result};
use crate::f2::{BitMat, BitVec};
use crate::bits_for;

/// Largest explicit-variable count the reduction will materialize.
pub const MAX_EXPLICIT_VARIABLES: usize = 4_000_000;

/// Parameters of the VectorSum → EvenSet reduction. Unset fields take the
/// asymptotic defaults: designed distance 18k, K = ⌈20k·log n/(c·ε³)⌉, r = ⌈K²/16⌉.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenSetConfig {
    pub eps: f64,
    /// The unspecified constant in K = k'/(c·ε³).
    pub c: f64,
    /// Sketch row budget; the sketch uses as many BCH blocks as fit.
    pub sketch_rows: Option<usize>,
    /// Designed distance of the sketch (takes precedence over `sketch_rows`).
    pub sketch_delta: Option<usize>,
    pub big_k: Option<usize>,
    pub r: Option<usize>,
    /// Row multiplier of the balanced mixing code.
    pub c_bal: f64,
    pub mixing_tries: usize,
    /// Demand a mixing-code distance large enough for the exact soundness bounds.
    pub certify_soundness: bool,
    pub seed: u64,
}

impl Default for EvenSetConfig {
    fn default() -> Self {
        Self {
            eps: 0.1,
            c: 1.0,
            sketch_rows: None,
            sketch_delta: None,
            big_k: None,
            r: None,
            c_bal: 4.0,
            mixing_tries: 20_000,
            certify_soundness: true,
            seed: 0,
        }
    }
}

/// Lower bounds on the weight of a nonzero kernel vector in each case of the
/// soundness argument, for a NO source instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    /// K² + r·k + 1.
    pub target: usize,
    /// a0 = 1: x solves the source, so wt(x) ≥ k + 1 and every cell is nonzero.
    pub case_a0: usize,
    /// a0 = 0, x ≠ 0: y = CRx ≠ 0 forces weight 2 in every cell outside the zero block of y.
    pub case_x: usize,
    /// a0 = 0, x = 0: 4·wt(Y) for a nonzero symmetric zero-diagonal Y ∈ C⊗2.
    pub case_y: usize,
    /// Whether `case_y` comes from enumerating C⊗2 (otherwise the ⌈1.5·d²⌉ bound).
    pub case_y_exact: bool,
    pub holds: bool,
}

/// Variable map and parameters of an emitted EvenSet instance.
///
/// Explicit variables, in order: a0; x_1..x_n; the copies x^1..x^{r−1}; then
/// Z_ij(a,b) for (i,j) ∈ [K]² row-major and (a,b) ∈ {00, 01, 10, 11}.
#[derive(Clone, Debug, PartialEq)]
pub struct EvenSetLayout {
    pub source: VectorSumInstance,
    /// Rows of the raw BCH sketch (k').
    pub sketch_rows: usize,
    /// Designed distance of the sketch.
    pub sketch_delta: usize,
    pub big_k: usize,
    pub r: usize,
    pub eps: f64,
    pub c: f64,
    /// Independent rows of the sketch, ρ×n.
    pub sketch: BitMat,
    /// Generator of the mixing code, K×ρ.
    pub mixing: BitMat,
    /// Parity check of the product code on the row-major K² flattening.
    pub q: BitMat,
    /// C·R, so that y = (C·R)·x.
    pub cr: BitMat,
    pub mixing_distance: usize,
    pub soundness: SoundnessReport,
}

impl EvenSetLayout {
    #[must_use]
    pub fn n(&self) -> usize {
        self.source.m.ncols()
    }

    /// 4K² + r·n + 1.
    #[must_use]
    pub fn num_vars(&self) -> usize {
        4 * self.big_k * self.big_k + self.r * self.n() + 1
    }

    /// K² + r·k + 1.
    #[must_use]
    pub fn target_weight(&self) -> usize {
        self.big_k * self.big_k + self.r * self.source.k + 1
    }

    #[must_use]
    pub fn var_a0(&self) -> usize {
        0
    }

    #[must_use]
    pub fn var_x(&self, i: usize) -> usize {
        1 + i
    }

    /// Copy number `copy` ∈ 1..r of x_i.
    #[must_use]
    pub fn var_copy(&self, copy: usize, i: usize) -> usize {
        debug_assert!(copy >= 1 && copy < self.r);
        1 + copy * self.n() + i
    }

    #[must_use]
    pub fn var_z(&self, i: usize, j: usize, a: bool, b: bool) -> usize {
        1 + self.r * self.n() + (i * self.big_k + j) * 4 + 2 * usize::from(a) + usize::from(b)
    }

    fn z_base(&self) -> usize {
        1 + self.r * self.n()
    }

    /// Number of nonzero Z variables in an assignment.
    #[must_use]
    pub fn z_weight(&self, w: &BitVec) -> usize {
        w.iter_ones().filter(|&v| v >= self.z_base()).count()
    }

    /// The x block of an assignment.
    #[must_use]
    pub fn x_part(&self, w: &BitVec) -> BitVec {
        w.slice(1, self.n())
    }
}

/// Smallest mixing distance d for which the lemma-based bounds reach `target`.
fn required_mixing_distance(big_k: usize, r: usize, target: usize) -> Option<usize> {
    (1..=big_k).find(|&d| {
        let case_x = 2 * (big_k * big_k - (big_k - d) * (big_k - d)) + r;
        4 * density_bound(d) >= target && case_x >= target
    })
}

struct Params {
    blocks: usize,
    sketch_rows: usize,
    delta: usize,
    big_k: usize,
    r: usize,
}

fn resolve_params(inst: &VectorSumInstance, cfg: &EvenSetConfig) -> Result<Params> {
    let n = inst.m.ncols();
    let k = inst.k;
    if n < 2 {
        return Err(rejected("the reduction needs at least two source columns"));
    }
    if !(cfg.eps > 0.0 && cfg.eps < 0.5) {
        return Err(Error::Config(format!("eps = {} must lie in (0, 1/2)", cfg.eps)));
    }
    if !(cfg.c > 0.0 && cfg.c.is_finite()) {
        return Err(Error::Config(format!("c = {} must be positive", cfg.c)));
    }
    let m_bits = bits_for(n).max(2);
    let blocks = match (cfg.sketch_delta, cfg.sketch_rows) {
        (Some(d), _) => d.saturating_sub(1).div_ceil(2),
        (None, Some(rows)) => rows / m_bits,
        (None, None) => 9 * k,
    };
    if blocks == 0 {
        return Err(Error::Config(format!(
            "the sketch needs at least one block of {m_bits} rows"
        )));
    }
    let sketch_rows = blocks * m_bits;
    let delta = 2 * blocks + 1;
    let log_n = (n as f64).log2();
    let big_k = cfg.big_k.unwrap_or_else(|| {
        (20.0 * k as f64 * log_n / (cfg.c * cfg.eps.powi(3))).ceil() as usize
    });
    if big_k == 0 {
        return Err(Error::Config("K must be positive".into()));
    }
    let r = cfg.r.unwrap_or_else(|| (big_k * big_k).div_ceil(16)).max(1);
    Ok(Params {
        blocks,
        sketch_rows,
        delta,
        big_k,
        r,
    })
}

/// Checks (K²+1)/r + k + 1 < δ, where a δ above n means the sketch is injective;
/// the left side is then capped at n since no vector is heavier than that.
pub fn validate_sketch(big_k: usize, r: usize, k: usize, delta: usize, n: usize) -> Result<()> {
    let lhs = (big_k * big_k + 1) as f64 / r as f64 + k as f64 + 1.0;
    if lhs.min(n as f64) < delta as f64 {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "sketch validator failed: (K²+1)/r + k + 1 = {lhs:.3} is not below the designed distance {delta} (n = {n})"
        )))
    }
}

/// Emits the homogeneous system over a0, x, the copies and the Z variables.
pub fn vectorsum_to_evenset(inst: &VectorSumInstance, cfg: &EvenSetConfig) -> Result<(EvenSetInstance, EvenSetLayout)> {
    let n = inst.m.ncols();
    let k = inst.k;
    let p = resolve_params(inst, cfg)?;
    let (big_k, r) = (p.big_k, p.r);
    validate_sketch(big_k, r, k, p.delta, n)?;
    let vars = 4 * big_k * big_k + r * n + 1;
    if vars > MAX_EXPLICIT_VARIABLES {
        return Err(resource(format!(
            "{vars} explicit variables (K = {big_k}, r = {r}) exceed {MAX_EXPLICIT_VARIABLES}; use desk-scale overrides"
        )));
    }

    let sketch = bch_syndrome_blocks(n, p.blocks)?.row_basis();
    let rho = sketch.nrows();
    let target = big_k * big_k + r * k + 1;
    let min_distance = if cfg.certify_soundness {
        Some(required_mixing_distance(big_k, r, target).ok_or_else(|| {
            Error::Config(format!(
                "no mixing distance ≤ K = {big_k} meets the soundness target {target}"
            ))
        })?)
    } else {
        None
    };
    let mixing_code = balanced_code(
        rho,
        cfg.eps,
        cfg.seed,
        &BalancedConfig {
            c_bal: cfg.c_bal,
            length: Some(big_k),
            max_tries: cfg.mixing_tries,
            min_distance,
            ..BalancedConfig::default()
        },
    )?;
    let mixing = mixing_code.generator().clone();
    let mixing_distance = mixing_code.dist_cert.as_ref().map_or(0, |c| c.distance);
    let cr = mixing.mul(&sketch)?;
    let q = tensor_parity_check(&mixing_code);

    let soundness = soundness_report(&mixing_code, big_k, r, k, mixing_distance, target)?;

    let mut layout = EvenSetLayout {
        source: inst.clone(),
        sketch_rows: p.sketch_rows,
        sketch_delta: p.delta,
        big_k,
        r,
        eps: cfg.eps,
        c: cfg.c,
        sketch,
        mixing,
        q,
        cr,
        mixing_distance,
        soundness,
    };
    layout.source.provenance.clear();
    let m = build_system(&layout)?;
    let mut out = EvenSetInstance::new(m, target)?;
    out.provenance.push(format!(
        "vs2es n={n} k={k} sketch_rows={} delta={} K={big_k} r={r} eps={} c={} seed={}",
        p.sketch_rows, p.delta, cfg.eps, cfg.c, cfg.seed
    ));
    out.layout = Some(Box::new(layout.clone()));
    Ok((out, layout))
}

fn soundness_report(
    code: &crate::codes::LinearCode,
    big_k: usize,
    r: usize,
    k: usize,
    d: usize,
    target: usize,
) -> Result<SoundnessReport> {
    let case_a0 = big_k * big_k + r * (k + 1) + 1;
    let case_x = 2 * (big_k * big_k - (big_k - d) * (big_k - d)) + r;
    let (case_y, case_y_exact) = if (code.dim() * code.dim()) < 63 && (1u64 << (code.dim() * code.dim())) <= DENSITY_ENUM_CAP {
        let rep = product_density_check(code, DENSITY_ENUM_CAP)?;
        (rep.min_weight.map_or(usize::MAX, |w| 4 * w), true)
    } else {
        (4 * density_bound(d), false)
    };
    Ok(SoundnessReport {
        target,
        case_a0,
        case_x,
        case_y,
        case_y_exact,
        holds: case_a0 >= target && case_x >= target && case_y >= target,
    })
}

/// Rows of the emitted matrix:
/// (a) Mx + a0·t = 0;
/// (b) per cell, Z00+Z01+Z10+Z11 = a0, Z10+Z11 = y_i, Z01+Z11 = y_j;
/// (c) Q·vec(Z(1,1)) = 0;
/// (d) Z_ij(1,1) = Z_ji(1,1) for i < j and Z_ii(1,1) = y_i;
/// (e) x^c = x for every copy.
pub fn build_system(l: &EvenSetLayout) -> Result<BitMat> {
    let n = l.n();
    let nv = l.num_vars();
    let kk = l.big_k;
    let mut rows = Vec::new();
    let x_form = |coeffs: &BitVec| -> BitVec {
        BitVec::from_indices(nv, coeffs.iter_ones().map(|i| 1 + i))
    };
    for (i, row) in l.source.m.rows().iter().enumerate() {
        let mut eq = x_form(row);
        if l.source.b.get(i) {
            eq.flip(l.var_a0());
        }
        rows.push(eq);
    }
    for i in 0..kk {
        for j in 0..kk {
            let z = |a, b| l.var_z(i, j, a, b);
            rows.push(BitVec::from_indices(
                nv,
                [z(false, false), z(false, true), z(true, false), z(true, true), l.var_a0()],
            ));
            let mut eq = x_form(l.cr.row(i));
            eq.flip(z(true, false));
            eq.flip(z(true, true));
            rows.push(eq);
            let mut eq = x_form(l.cr.row(j));
            eq.flip(z(false, true));
            eq.flip(z(true, true));
            rows.push(eq);
        }
    }
    for qrow in l.q.rows() {
        rows.push(BitVec::from_indices(
            nv,
            qrow.iter_ones().map(|c| l.var_z(c / kk, c % kk, true, true)),
        ));
    }
    for i in 0..kk {
        for j in i + 1..kk {
            rows.push(BitVec::from_indices(
                nv,
                [l.var_z(i, j, true, true), l.var_z(j, i, true, true)],
            ));
        }
        let mut eq = x_form(l.cr.row(i));
        eq.flip(l.var_z(i, i, true, true));
        rows.push(eq);
    }
    for c in 1..l.r {
        for i in 0..n {
            rows.push(BitVec::from_indices(nv, [l.var_x(i), l.var_copy(c, i)]));
        }
    }
    BitMat::from_rows(nv, rows)
}

/// Completeness assignment for a source witness x: a0 = 1, x and its copies, and
/// in each cell the single Z_ij(y_i, y_j) = 1 with y = C·R·x.
pub fn assemble_evenset_witness(e: &EvenSetInstance, x: &BitVec) -> Result<BitVec> {
    let l = e
        .layout
        .as_deref()
        .ok_or_else(|| rejected("instance carries no reduction layout"))?;
    if x.len() != l.n() {
        return Err(Error::Witness(format!("x has length {}, expected {}", x.len(), l.n())));
    }
    if x.is_zero() {
        return Err(Error::Witness("x = 0 gives a degenerate all-zero sketch".into()));
    }
    l.source.verify(x)?;
    let y = l.cr.mul_vec(x)?;
    let mut w = BitVec::zeros(l.num_vars());
    w.set(l.var_a0(), true);
    for i in x.iter_ones() {
        w.set(l.var_x(i), true);
        for c in 1..l.r {
            w.set(l.var_copy(c, i), true);
        }
    }
    for i in 0..l.big_k {
        for j in 0..l.big_k {
            w.set(l.var_z(i, j, y.get(i), y.get(j)), true);
        }
    }
    if !e.m.mul_vec(&w)?.is_zero() {
        return Err(Error::Witness("assembled assignment violates the emitted system".into()));
    }
    Ok(w)
}
