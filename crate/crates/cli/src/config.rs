use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::format::Kind;

#[derive(Parser, Debug, Clone)]
#[command(name = "sparsef2", version, about = "Sparse F2 linear-system reductions, solvers and verifiers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Generate a graph file.
    GenGraph {
        #[command(flatten)]
        opts: Options,
    },
    /// Transform an instance.
    Reduce {
        op: ReduceOp,
        #[command(flatten)]
        opts: Options,
    },
    /// Run a solver on an instance.
    Solve {
        #[command(flatten)]
        opts: Options,
    },
    /// Run a verification check.
    Verify {
        what: VerifyOp,
        #[command(flatten)]
        opts: Options,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReduceOp {
    Clique2vs,
    Vs2es,
    Amplify,
    Junta,
    Viola,
    EvensetFool,
    MdcWalk,
    MdcLearn,
    MdcTensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyOp {
    Balance,
    Bch,
    Density,
    Bias,
    Parity,
    Junta,
    Poly,
    Roundtrip,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Alg {
    Exhaustive,
    #[default]
    Mitm,
    Bfs,
    EvensetMin,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum GraphModel {
    #[default]
    Random,
    Planted,
    Regular,
    Expander,
    Complete,
    Cycle,
    Path,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    /// `key: value` lines.
    #[default]
    Text,
    /// `key=value` lines.
    Lines,
}

/// Flags shared by every command; each command reads the ones it needs.
#[derive(Args, Debug, Clone, Default, PartialEq)]
pub struct Options {
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long = "out", value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Kind of the input file.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Graph degree.
    #[arg(long)]
    pub deg: Option<usize>,
    #[arg(long = "walk-len")]
    pub walk_len: Option<usize>,
    /// Polynomial degree or subset size.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, value_enum)]
    pub alg: Option<Alg>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumeration cap.
    #[arg(long)]
    pub cap: Option<u64>,
    /// Memory cap for meet-in-the-middle tables (entries).
    #[arg(long = "memory-cap")]
    pub memory_cap: Option<u64>,
    /// Construction constants, e.g. `K=6`, `r=3`, `sketch_rows=4` (repeatable).
    #[arg(long = "override", value_name = "KEY=VAL")]
    pub overrides: Vec<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long, value_enum)]
    pub model: Option<GraphModel>,
    /// Vertex count or code length.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Graph file for walk amplification.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Sample this many tuples or walks instead of enumerating.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Tensor exponent.
    #[arg(long)]
    pub kexp: Option<usize>,
    /// Message length of a generated code.
    #[arg(long)]
    pub dim: Option<usize>,
    /// BCH designed distance.
    #[arg(long)]
    pub distance: Option<usize>,
}

/// A fully parsed invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: CommandTag,
    pub opts: Options,
    pub overrides: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandTag {
    GenGraph,
    Reduce(ReduceOp),
    Solve,
    Verify(VerifyOp),
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map_or_else(String::new, |p| p.get_name().to_string())
}

impl CommandTag {
    #[must_use]
    pub fn name(&self) -> String {
        match self {
            Self::GenGraph => "gen-graph".into(),
            Self::Reduce(op) => format!("reduce {}", value_name(op)),
            Self::Solve => "solve".into(),
            Self::Verify(op) => format!("verify {}", value_name(op)),
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (command, opts) = match cli.command {
            Command::GenGraph { opts } => (CommandTag::GenGraph, opts),
            Command::Reduce { op, opts } => (CommandTag::Reduce(op), opts),
            Command::Solve { opts } => (CommandTag::Solve, opts),
            Command::Verify { what, opts } => (CommandTag::Verify(what), opts),
        };
        let mut overrides: Vec<(String, String)> = Vec::new();
        for o in &opts.overrides {
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("override `{o}` is not KEY=VAL")))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if k.is_empty() {
                return Err(CliError::Usage(format!("override `{o}` has an empty key")));
            }
            if let Some(slot) = overrides.iter_mut().find(|(key, _)| *key == k) {
                slot.1 = v;
            } else {
                overrides.push((k, v));
            }
        }
        overrides.sort();
        Ok(Self {
            command,
            opts,
            overrides,
        })
    }

    /// Parses argv (including the program name).
    pub fn from_args<I, T>(args: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| CliError::Usage(e.to_string()))?;
        Self::from_cli(cli)
    }

    /// Rejects override keys the command does not use.
    pub fn check_overrides(&self, allowed: &[&str]) -> Result<(), CliError> {
        match self.overrides.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            Some((k, _)) if allowed.is_empty() => Err(CliError::Usage(format!(
                "override `{k}` is not used by {}",
                self.command.name()
            ))),
            Some((k, _)) => Err(CliError::Usage(format!(
                "unknown override `{k}` for {} (expected one of: {})",
                self.command.name(),
                allowed.join(", ")
            ))),
            None => Ok(()),
        }
    }

    pub fn override_value<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.overrides
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("override {key} has invalid value `{v}`")))
            })
            .transpose()
    }

    /// Canonical parameter string, excluding file paths.
    #[must_use]
    pub fn canonical(&self) -> String {
        let o = &self.opts;
        let mut s = format!("command={}", self.command.name().replace(' ', ":"));
        let mut put = |key: &str, val: Option<String>| {
            if let Some(v) = val {
                let _ = write!(s, " {key}={v}");
            }
        };
        put("kind", o.kind.map(|k| k.to_string()));
        put("model", o.model.as_ref().map(value_name));
        put("alg", o.alg.as_ref().map(value_name));
        put("n", o.n.map(|v| v.to_string()));
        put("p", o.p.map(|v| v.to_string()));
        put("k", o.k.map(|v| v.to_string()));
        put("eps", o.eps.map(|v| v.to_string()));
        put("delta", o.delta.map(|v| v.to_string()));
        put("deg", o.deg.map(|v| v.to_string()));
        put("walk-len", o.walk_len.map(|v| v.to_string()));
        put("d", o.d.map(|v| v.to_string()));
        put("kexp", o.kexp.map(|v| v.to_string()));
        put("dim", o.dim.map(|v| v.to_string()));
        put("distance", o.distance.map(|v| v.to_string()));
        put("samples", o.samples.map(|v| v.to_string()));
        put("cap", o.cap.map(|v| v.to_string()));
        put("memory-cap", o.memory_cap.map(|v| v.to_string()));
        put("seed", Some(o.seed.to_string()));
        for (k, v) in &self.overrides {
            let _ = write!(s, " override:{k}={v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reduce_with_overrides() {
        let cfg = RunConfig::from_args([
            "sparsef2", "reduce", "vs2es", "--in", "a.txt", "--override", "r=3", "--override", "K=6", "--seed", "4",
        ])
        .unwrap();
        assert_eq!(cfg.command, CommandTag::Reduce(ReduceOp::Vs2es));
        assert_eq!(cfg.overrides, [("K".to_string(), "6".to_string()), ("r".to_string(), "3".to_string())]);
        assert_eq!(cfg.override_value::<usize>("K").unwrap(), Some(6));
        assert_eq!(cfg.canonical(), "command=reduce:vs2es seed=4 override:K=6 override:r=3");
    }

    #[test]
    fn unknown_flags_and_overrides_rejected() {
        assert!(RunConfig::from_args(["sparsef2", "solve", "--bogus", "1"]).is_err());
        let cfg = RunConfig::from_args(["sparsef2", "solve", "--override", "x=1"]).unwrap();
        assert!(cfg.check_overrides(&[]).is_err());
        assert!(RunConfig::from_args(["sparsef2", "solve", "--override", "x"]).is_err());
    }
}
