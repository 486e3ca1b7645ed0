use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};
use sparsef2::codes::{
    balanced_code, bch_blocks, bch_parity_check, distribution_bias, product_density_check, simplex_generator,
    BalancedConfig, LinearCode, BIAS_ENUM_CAP, DENSITY_ENUM_CAP,
};
use sparsef2::graphs::{
    planted_clique, random_expander, random_graph, random_regular, spectral_certificate, Graph, SpectralCert,
};
use sparsef2::reductions::{
    amplify_pointvalues, clique_to_vectorsum, evenset_to_fooling_points, junta_hardness_instance, mdc_tensor,
    mdc_to_learning, mdc_walk_amplify, mdc_walk_amplify_sampled, vectorsum_to_evenset, vectorsum_to_pointvalues,
    viola_shift, EvenSetConfig, EvenSetInstance, PointValueSet, ShiftMode, VectorSumInstance,
};
use sparsef2::solvers::{
    best_junta_agreement, best_parity_agreement, evenset_min_weight, parity_agreements, poly_agreement_bound,
    solve_bfs, solve_exhaustive, solve_mitm, SolveReport, SolverLimits,
};
use sparsef2::{binomial_sum, BitMat, BitVec, Error};

use crate::config::{Alg, CommandTag, GraphModel, ReduceOp, ReportFormat, RunConfig, VerifyOp};
use crate::error::CliError;
use crate::format::{self, CodeForm, Document, Instance, Kind};

/// Default enumeration cap for commands without `--cap`.
pub const DEFAULT_CAP: u64 = 1 << 26;

/// Ordered key/value report lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub entries: Vec<(String, String)>,
}

impl Report {
    pub fn add(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    #[must_use]
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    #[must_use]
    pub fn render(&self, format: ReportFormat) -> String {
        let sep = match format {
            ReportFormat::Text => ": ",
            ReportFormat::Lines => "=",
        };
        let mut s = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k}{sep}{v}");
        }
        s
    }
}

/// Result of a successful run: exit status 0 (feasible/verified) or 1
/// (infeasible/refuted), the report, and the emitted file text if any.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub report: Report,
    pub emitted: Option<String>,
}

impl Outcome {
    fn verdict(ok: bool, report: Report) -> Self {
        Self {
            status: if ok { 0 } else { 1 },
            report,
            emitted: None,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Input {
    text: String,
    doc: Document,
}

impl Input {
    fn hash(&self) -> String {
        sha256_hex(self.text.as_bytes())
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    input: Option<Input>,
}

impl<'a> Ctx<'a> {
    fn load(&mut self, default: Kind) -> Result<Instance, CliError> {
        let path = self
            .cfg
            .opts
            .input
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("{} needs --in", self.cfg.command.name())))?;
        let text = read(path)?;
        let kind = self.cfg.opts.kind.or_else(|| format::sniff(&text)).unwrap_or(default);
        let doc = format::parse(&text, kind)?;
        let inst = doc.instance.clone();
        self.input = Some(Input { text, doc });
        Ok(inst)
    }

    /// Provenance for an emitted file: the input's lines, then this run.
    fn provenance(&self) -> Vec<String> {
        let mut p = self.input.as_ref().map_or_else(Vec::new, |i| i.doc.provenance.clone());
        p.push(format!("sparsef2 {}", self.cfg.command.name()));
        p.push(format!(
            "source-sha256 {}",
            self.input.as_ref().map_or_else(|| "none".to_string(), Input::hash)
        ));
        p.push(format!("config {}", self.cfg.canonical()));
        p
    }

    fn cap(&self) -> u64 {
        self.cfg.opts.cap.unwrap_or(DEFAULT_CAP)
    }

    fn limits(&self) -> SolverLimits {
        let mut l = SolverLimits::default();
        if let Some(c) = self.cfg.opts.cap {
            l.enumeration_cap = c;
        }
        if let Some(m) = self.cfg.opts.memory_cap {
            l.memory_cap = m;
        }
        l
    }

    fn balanced_cfg(&self) -> Result<BalancedConfig, CliError> {
        let mut b = BalancedConfig::default();
        if let Some(v) = self.cfg.override_value("c_bal")? {
            b.c_bal = v;
        }
        if let Some(v) = self.cfg.override_value("max_tries")? {
            b.max_tries = v;
        }
        if let Some(v) = self.cfg.override_value("length")? {
            b.length = Some(v);
        }
        Ok(b)
    }
}

const BALANCED_KEYS: &[&str] = &["c_bal", "max_tries", "length"];

fn need<T>(v: Option<T>, flag: &str, cmd: &CommandTag) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{} needs --{flag}", cmd.name())))
}

fn expect_kind<T>(inst: Instance, f: impl FnOnce(Instance) -> Option<T>, want: &str) -> Result<T, CliError> {
    let got = inst.kind();
    f(inst).ok_or_else(|| CliError::Usage(format!("expected a {want} input, got {got}")))
}

/// Executes one command. Files named by `--out` are written here.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut ctx = Ctx { cfg, input: None };
    let outcome = match cfg.command {
        CommandTag::GenGraph => gen_graph(&mut ctx)?,
        CommandTag::Reduce(op) => reduce(&mut ctx, op)?,
        CommandTag::Solve => solve(&mut ctx)?,
        CommandTag::Verify(op) => verify(&mut ctx, op)?,
    };
    if let (Some(path), Some(text)) = (&cfg.opts.output, &outcome.emitted) {
        fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(outcome)
}

fn spectral_entries(r: &mut Report, c: &SpectralCert) {
    r.add("degree", c.degree);
    r.add("lambda", format!("{:.9}", c.lambda));
    r.add("second_eigenvalue", format!("{:.9}", c.second_eigenvalue));
    r.add("spectral_tolerance", format!("{:.3e}", c.tolerance));
}

fn gen_graph(ctx: &mut Ctx<'_>) -> Result<Outcome, CliError> {
    let cfg = ctx.cfg;
    let o = &cfg.opts;
    let cmd = &cfg.command;
    let model = o.model.unwrap_or_default();
    cfg.check_overrides(if model == GraphModel::Expander { &["lambda_max", "max_tries"] } else { &[] })?;
    let n = need(o.n, "n", cmd)?;
    let mut r = Report::default();
    r.add("model", format!("{model:?}").to_lowercase());
    let g = match model {
        GraphModel::Random => random_graph(n, need(o.p, "p", cmd)?, o.seed)?,
        GraphModel::Planted => {
            let (g, clique) = planted_clique(n, need(o.k, "k", cmd)?, need(o.p, "p", cmd)?, o.seed)?;
            r.add("planted", clique.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" "));
            g
        }
        GraphModel::Regular => {
            let (g, cert) = random_regular(n, need(o.deg, "deg", cmd)?, o.seed)?;
            spectral_entries(&mut r, &cert);
            g
        }
        GraphModel::Expander => {
            let deg = need(o.deg, "deg", cmd)?;
            let lambda_max = cfg
                .override_value("lambda_max")?
                .unwrap_or(2.0 * ((deg.max(1) - 1) as f64).sqrt() + 0.5);
            let tries = cfg.override_value("max_tries")?.unwrap_or(100);
            let (g, cert) = random_expander(n, deg, lambda_max, o.seed, tries)?;
            spectral_entries(&mut r, &cert);
            g
        }
        GraphModel::Complete => Graph::complete(n),
        GraphModel::Cycle => Graph::cycle(n)?,
        GraphModel::Path => Graph::path(n),
    };
    if matches!(model, GraphModel::Complete | GraphModel::Cycle) && n >= 3 {
        let cert = spectral_certificate(&g, o.seed)?;
        spectral_entries(&mut r, &cert);
    }
    r.add("n", g.n());
    r.add("m", g.m());
    Ok(Outcome {
        status: 0,
        report: r,
        emitted: Some(format::emit_graph(&g, &ctx.provenance())),
    })
}

fn load_pointvalues(ctx: &mut Ctx<'_>) -> Result<PointValueSet, CliError> {
    match ctx.load(Kind::Vectorsum)? {
        Instance::VectorSum(v) => Ok(vectorsum_to_pointvalues(&v)?),
        Instance::PointValues(pv) => Ok(pv),
        other => Err(CliError::Usage(format!(
            "expected a vectorsum or pointvalues input, got {}",
            other.kind()
        ))),
    }
}

fn shift_mode(ctx: &Ctx<'_>) -> ShiftMode {
    match ctx.cfg.opts.samples {
        Some(count) => ShiftMode::Sample {
            count,
            seed: ctx.cfg.opts.seed,
        },
        None => ShiftMode::All { cap: ctx.cap() },
    }
}

fn load_matrix(ctx: &mut Ctx<'_>) -> Result<BitMat, CliError> {
    match ctx.load(Kind::Matrix)? {
        Instance::Matrix(m) => Ok(m),
        Instance::Code(c) => Ok(c.generator().clone()),
        other => Err(CliError::Usage(format!("expected a matrix input, got {}", other.kind()))),
    }
}

fn reduce(ctx: &mut Ctx<'_>, op: ReduceOp) -> Result<Outcome, CliError> {
    let cfg = ctx.cfg;
    let o = &cfg.opts;
    let cmd = &cfg.command;
    let mut r = Report::default();
    let emitted = match op {
        ReduceOp::Clique2vs => {
            cfg.check_overrides(&[])?;
            let g = expect_kind(ctx.load(Kind::Graph)?, |i| if let Instance::Graph(g) = i { Some(g) } else { None }, "graph")?;
            let (inst, layout) = clique_to_vectorsum(&g, need(o.k, "k", cmd)?)?;
            r.add("rows", layout.rows());
            r.add("cols", layout.cols());
            r.add("k", inst.k);
            format::emit_vectorsum(&inst, &ctx.provenance())
        }
        ReduceOp::Vs2es => {
            cfg.check_overrides(&[
                "sketch_rows", "sketch_delta", "K", "r", "c", "c_bal", "mixing_tries", "certify_soundness",
            ])?;
            let src = expect_kind(ctx.load(Kind::Vectorsum)?, |i| if let Instance::VectorSum(v) = i { Some(v) } else { None }, "vectorsum")?;
            let mut es_cfg = EvenSetConfig {
                seed: o.seed,
                ..EvenSetConfig::default()
            };
            if let Some(e) = o.eps {
                es_cfg.eps = e;
            }
            es_cfg.sketch_rows = cfg.override_value("sketch_rows")?;
            es_cfg.sketch_delta = cfg.override_value("sketch_delta")?;
            es_cfg.big_k = cfg.override_value("K")?;
            es_cfg.r = cfg.override_value("r")?;
            if let Some(c) = cfg.override_value("c")? {
                es_cfg.c = c;
            }
            if let Some(c) = cfg.override_value("c_bal")? {
                es_cfg.c_bal = c;
            }
            if let Some(t) = cfg.override_value("mixing_tries")? {
                es_cfg.mixing_tries = t;
            }
            if let Some(b) = cfg.override_value("certify_soundness")? {
                es_cfg.certify_soundness = b;
            }
            let (es, layout) = vectorsum_to_evenset(&src, &es_cfg)?;
            r.add("variables", layout.num_vars());
            r.add("equations", es.m.nrows());
            r.add("k", es.k);
            r.add("K", layout.big_k);
            r.add("r", layout.r);
            r.add("sketch_rows", layout.sketch_rows);
            r.add("sketch_rank", layout.sketch.nrows());
            r.add("sketch_delta", layout.sketch_delta);
            r.add("mixing_distance", layout.mixing_distance);
            r.add("soundness_bounds_hold", layout.soundness.holds);
            format::emit_evenset(&es, &ctx.provenance())
        }
        ReduceOp::Amplify => {
            cfg.check_overrides(BALANCED_KEYS)?;
            let pv = load_pointvalues(ctx)?;
            let eps = o.eps.unwrap_or(0.1);
            let out = amplify_pointvalues(&pv, eps, o.seed, &ctx.balanced_cfg()?)?;
            r.add("pairs_in", pv.len());
            r.add("pairs_out", out.len());
            r.add("eps", eps);
            format::emit_pointvalues(&out, &ctx.provenance())
        }
        ReduceOp::Junta => {
            cfg.check_overrides(BALANCED_KEYS)?;
            let pv = load_pointvalues(ctx)?;
            let delta = o.delta.unwrap_or(0.25);
            let k = o.k.unwrap_or(pv.k);
            let out = junta_hardness_instance(&pv, delta, k, o.seed, &ctx.balanced_cfg()?)?;
            r.add("pairs_out", out.len());
            r.add("eps", out.eps.unwrap_or_default());
            r.add("delta", delta);
            format::emit_pointvalues(&out, &ctx.provenance())
        }
        ReduceOp::Viola => {
            cfg.check_overrides(&[])?;
            let m = load_matrix(ctx)?;
            let out = viola_shift(m.rows(), o.d.unwrap_or(2), shift_mode(ctx))?;
            r.add("points", out.len());
            format::emit_points(&out, &ctx.provenance())?
        }
        ReduceOp::EvensetFool => {
            cfg.check_overrides(BALANCED_KEYS)?;
            let e = expect_kind(ctx.load(Kind::Evenset)?, |i| if let Instance::EvenSet(e) = i { Some(e) } else { None }, "evenset")?;
            let out = evenset_to_fooling_points(&e, o.eps.unwrap_or(0.1), o.d.unwrap_or(2), o.seed, shift_mode(ctx), &ctx.balanced_cfg()?)?;
            r.add("points", out.len());
            format::emit_points(&out, &ctx.provenance())?
        }
        ReduceOp::MdcWalk => {
            cfg.check_overrides(&[])?;
            let a = load_matrix(ctx)?;
            let g = match &o.graph {
                Some(path) => format::parse_graph(&read(path)?)?.0,
                None => random_regular(a.nrows(), need(o.deg, "deg (or --graph)", cmd)?, o.seed)?.0,
            };
            let t = need(o.walk_len, "walk-len", cmd)?;
            let out = match o.samples {
                Some(s) => mdc_walk_amplify_sampled(&a, &g, t, s, o.seed)?,
                None => mdc_walk_amplify(&a, &g, t, ctx.cap())?,
            };
            r.add("rows", out.nrows());
            format::emit_matrix(&out, &ctx.provenance())
        }
        ReduceOp::MdcLearn => {
            cfg.check_overrides(&[])?;
            let b = load_matrix(ctx)?;
            let pv = mdc_to_learning(&b, need(o.d, "d", cmd)?, ctx.cap())?;
            r.add("pairs", pv.len());
            format::emit_pointvalues(&pv, &ctx.provenance())
        }
        ReduceOp::MdcTensor => {
            cfg.check_overrides(&[])?;
            let a = load_matrix(ctx)?;
            let out = mdc_tensor(&a, need(o.kexp, "kexp", cmd)?, ctx.cap())?;
            r.add("rows", out.nrows());
            r.add("cols", out.ncols());
            format::emit_matrix(&out, &ctx.provenance())
        }
    };
    Ok(Outcome {
        status: 0,
        report: r,
        emitted: Some(emitted),
    })
}

fn solve_report(rep: &SolveReport, r: &mut Report) {
    r.add("algorithm", rep.algorithm);
    r.add("feasible", rep.feasible);
    if let Some(w) = rep.weight {
        r.add("weight", w);
    }
    if let Some(x) = &rep.witness {
        r.add("witness", x);
    }
    r.add("work", rep.work);
}

fn solve(ctx: &mut Ctx<'_>) -> Result<Outcome, CliError> {
    let cfg = ctx.cfg;
    cfg.check_overrides(&[])?;
    let alg = cfg.opts.alg.unwrap_or_default();
    let limits = ctx.limits();
    let rep = if alg == Alg::EvensetMin {
        let e: EvenSetInstance = expect_kind(ctx.load(Kind::Evenset)?, |i| if let Instance::EvenSet(e) = i { Some(e) } else { None }, "evenset")?;
        evenset_min_weight(&e, &limits)?
    } else {
        let v: VectorSumInstance = expect_kind(ctx.load(Kind::Vectorsum)?, |i| if let Instance::VectorSum(v) = i { Some(v) } else { None }, "vectorsum")?;
        match alg {
            Alg::Exhaustive => solve_exhaustive(&v, &limits)?,
            Alg::Mitm => solve_mitm(&v, &limits)?,
            Alg::Bfs => solve_bfs(&v, &limits)?,
            Alg::EvensetMin => unreachable!("handled above"),
        }
    };
    let mut r = Report::default();
    solve_report(&rep, &mut r);
    let emitted = rep.witness.as_ref().filter(|_| rep.feasible).map(|x| {
        let mut s = String::new();
        for p in ctx.provenance() {
            let _ = writeln!(s, "# {p}");
        }
        let _ = writeln!(s, "{x}");
        s
    });
    Ok(Outcome {
        status: if rep.feasible { 0 } else { 1 },
        report: r,
        emitted,
    })
}

fn verify(ctx: &mut Ctx<'_>, op: VerifyOp) -> Result<Outcome, CliError> {
    let cfg = ctx.cfg;
    let o = &cfg.opts;
    let cmd = &cfg.command;
    let mut r = Report::default();
    match op {
        VerifyOp::Balance => {
            let keys: Vec<&str> = BALANCED_KEYS.iter().copied().chain(["simplex"]).collect();
            cfg.check_overrides(&keys)?;
            let simplex = cfg.override_value("simplex")?.unwrap_or(false);
            let (mut code, generated) = if o.input.is_some() {
                (expect_kind(ctx.load(Kind::Code)?, |i| if let Instance::Code(c) = i { Some(c) } else { None }, "code")?, false)
            } else if simplex {
                (simplex_generator(need(o.dim, "dim", cmd)?)?, true)
            } else {
                let eps = need(o.eps, "eps", cmd)?;
                (balanced_code(need(o.dim, "dim (or --in)", cmd)?, eps, o.seed, &ctx.balanced_cfg()?)?, true)
            };
            let eps = match (o.eps, &code.bias_cert) {
                (Some(e), _) => e,
                (None, Some(c)) => c.eps,
                (None, None) => return Err(CliError::Usage(format!("{} needs --eps", cmd.name()))),
            };
            let (lo, hi) = code.weight_range()?;
            let ok = code.certify_balance(eps)?;
            r.add("length", code.length());
            r.add("dim", code.dim());
            r.add("eps", eps);
            r.add("min_weight", lo);
            r.add("max_weight", hi);
            r.add("balanced", ok);
            let mut out = Outcome::verdict(ok, r);
            if generated {
                out.emitted = Some(format::emit_code(&code, CodeForm::Generator, &ctx.provenance()));
            }
            Ok(out)
        }
        VerifyOp::Bch => {
            cfg.check_overrides(&[])?;
            let n = need(o.n, "n", cmd)?;
            let delta = need(o.distance, "distance", cmd)?;
            let work = binomial_sum(n, delta.saturating_sub(1));
            if work > ctx.cap() {
                return Err(Error::Resource(format!("{work} low-weight vectors exceed the cap {}", ctx.cap())).into());
            }
            let h = bch_parity_check(n, delta)?;
            let bound = bch_blocks(delta) * sparsef2::bits_for(n);
            let mut violations = 0u64;
            for w in 1..delta {
                sparsef2::for_each_combination(n, w, |s| {
                    if h.mul_vec(&BitVec::from_indices(n, s.iter().copied())).is_ok_and(|v| v.is_zero()) {
                        violations += 1;
                    }
                    true
                });
            }
            let ok = violations == 0 && h.nrows() <= bound;
            r.add("rows", h.nrows());
            r.add("row_bound", bound);
            r.add("checked", work - 1);
            r.add("violations", violations);
            let mut out = Outcome::verdict(ok, r);
            out.emitted = Some(format::emit_code(&LinearCode::from_parity_check(h)?, CodeForm::ParityCheck, &ctx.provenance()));
            Ok(out)
        }
        VerifyOp::Density => {
            cfg.check_overrides(&[])?;
            let code = expect_kind(ctx.load(Kind::Code)?, |i| if let Instance::Code(c) = i { Some(c) } else { None }, "code")?;
            let rep = product_density_check(&code, o.cap.unwrap_or(DENSITY_ENUM_CAP))?;
            r.add("distance", rep.distance);
            r.add("bound", rep.bound);
            r.add("candidates", rep.candidates);
            r.add("min_weight", rep.min_weight.map_or_else(|| "none".into(), |w| w.to_string()));
            r.add("holds", rep.holds);
            Ok(Outcome::verdict(rep.holds, r))
        }
        VerifyOp::Bias => {
            cfg.check_overrides(&[])?;
            let m = load_matrix(ctx)?;
            let rep = distribution_bias(m.rows(), o.k.unwrap_or(m.ncols()), o.cap.unwrap_or(BIAS_ENUM_CAP))?;
            r.add("bias", rep.bias);
            r.add("form", rep.form.iter().map(|v| format!("x{}", v + 1)).collect::<Vec<_>>().join(" + "));
            let ok = o.eps.is_none_or(|e| rep.bias <= e);
            Ok(Outcome::verdict(ok, r))
        }
        VerifyOp::Parity => {
            cfg.check_overrides(&[])?;
            let pv = load_pointvalues(ctx)?;
            let k = o.k.unwrap_or(pv.k);
            let (form, frac) = best_parity_agreement(&pv, k, true, ctx.cap())?;
            r.add("best_form", &form);
            r.add("best_agreement", frac);
            let mut ok = true;
            if let Some(eps) = o.eps.or(pv.eps) {
                let all = parity_agreements(&pv, k, true, ctx.cap())?;
                let satisfying = all.iter().filter(|(_, a)| *a == 1.0).count();
                let outside = all
                    .iter()
                    .filter(|(_, a)| *a < 1.0 && !(0.5 - eps..=0.5 + eps).contains(a))
                    .count();
                r.add("forms", all.len());
                r.add("satisfying_forms", satisfying);
                r.add("outside_interval", outside);
                ok = outside == 0;
            }
            Ok(Outcome::verdict(ok, r))
        }
        VerifyOp::Junta => {
            cfg.check_overrides(&[])?;
            let pv = load_pointvalues(ctx)?;
            let k = o.k.unwrap_or(pv.k);
            let best = best_junta_agreement(&pv, k, ctx.cap())?;
            r.add("support", best.support.iter().map(|v| format!("x{}", v + 1)).collect::<Vec<_>>().join(" "));
            r.add("best_agreement", best.fraction);
            let ok = match o.delta.or(pv.delta) {
                Some(d) => {
                    r.add("threshold", 0.5 + d);
                    best.fraction <= 0.5 + d
                }
                None => true,
            };
            Ok(Outcome::verdict(ok, r))
        }
        VerifyOp::Poly => {
            cfg.check_overrides(&[])?;
            let m = load_matrix(ctx)?;
            let d = o.d.unwrap_or(2);
            let adv = poly_agreement_bound(m.rows(), o.k.unwrap_or(3), d, ctx.cap().max(1 << 32))?;
            r.add("polynomial", &adv.poly);
            r.add("advantage", adv.advantage);
            let ok = match o.eps {
                Some(eps) => {
                    let bound = 16.0 * eps.powf(1.0 / 2f64.powi(d as i32 - 1));
                    r.add("bound", bound);
                    adv.advantage <= bound
                }
                None => true,
            };
            Ok(Outcome::verdict(ok, r))
        }
        VerifyOp::Roundtrip => {
            cfg.check_overrides(&[])?;
            ctx.load(Kind::Matrix)?;
            let input = ctx.input.as_ref().expect("load stores the input");
            let kind = input.doc.instance.kind();
            let once = format::emit(&input.doc)?;
            let again = format::parse(&once, kind)?;
            let twice = format::emit(&again)?;
            let ok = again == input.doc && once == twice;
            r.add("kind", kind);
            r.add("stable", ok);
            Ok(Outcome::verdict(ok, r))
        }
    }
}

/// Runs an argv the way the binary does: returns (exit code, stdout, stderr).
/// Without `--out` the emitted file goes to stdout and the report to stderr.
pub fn run_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => return (e.exit_code(), String::new(), format!("error: {e}\n")),
    };
    match run(&cfg) {
        Ok(out) => {
            let report = out.report.render(cfg.opts.format);
            match (&cfg.opts.output, out.emitted) {
                (None, Some(text)) => (out.status, text, report),
                _ => (out.status, report, String::new()),
            }
        }
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
