//! Command-line surface: argument definitions and execution.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_config, parse_truncation, Config, ConfigError, TaskKind};
use crate::report::{emit_reports, exit_code, Format};
use crate::run::{run_batch, RunOptions};

#[derive(Debug, Parser)]
#[command(
    name = "extsq",
    version,
    about = "Exact checks of exterior square L-factor identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML task file. With a task subcommand only matching tasks run.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Truncation order `L`, or a window `L1,L2` for two-variable tasks.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub truncation: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Machine)]
    pub format: Format,

    /// Seed for randomized galois suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every task of `--config`.
    Run,
    /// Standard and formal exterior square L-factors.
    Lfactor(TaskArgs),
    /// Jacquet–Shalika sum against the formal exterior square series.
    VerifyJs(TaskArgs),
    /// Bump–Friedberg sum against its closed form.
    VerifyBf(TaskArgs),
    /// Doubled-shape Schur expansions against the formal exterior square series.
    VerifyLittlewood(TaskArgs),
    /// Whether the formal factor divides L(s, ∧²ρ).
    GaloisDivisibility(TaskArgs),
    /// Equality of the formal factor and L(s, ∧²ρ) under hypothesis (H).
    #[command(name = "galois-H", alias = "galois-h")]
    GaloisH(TaskArgs),
    /// Empirical correction factor of the odd Bump–Friedberg sum.
    BfOddProbe(TaskArgs),
}

impl Command {
    fn split(&self) -> Option<(TaskKind, &TaskArgs)> {
        Some(match self {
            Command::Run => return None,
            Command::Lfactor(a) => (TaskKind::Lfactor, a),
            Command::VerifyJs(a) => (TaskKind::VerifyJs, a),
            Command::VerifyBf(a) => (TaskKind::VerifyBf, a),
            Command::VerifyLittlewood(a) => (TaskKind::VerifyLittlewood, a),
            Command::GaloisDivisibility(a) => (TaskKind::GaloisDivisibility, a),
            Command::GaloisH(a) => (TaskKind::GaloisH, a),
            Command::BfOddProbe(a) => (TaskKind::BfOddProbe, a),
        })
    }
}

/// Inline task description, used when no `--config` is given.
#[derive(Debug, Default, Args)]
pub struct TaskArgs {
    #[arg(long)]
    pub n: Option<i64>,
    /// Comma-separated entries: `sym`, a rational such as `-3/2`, or `0`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub satake: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<i64>,
    /// Comma-separated cyclic orders.
    #[arg(long, value_delimiter = ',')]
    pub group: Vec<i64>,
    /// `GRADE:K:ALPHA`, e.g. `1,0:2:3/2`; repeat per block.
    #[arg(long = "block", allow_hyphen_values = true)]
    pub blocks: Vec<String>,
    /// Number of random representations.
    #[arg(long)]
    pub random: Option<i64>,
    /// Extra (H)-violating principal series (galois-H).
    #[arg(long)]
    pub violating: Option<i64>,
    #[arg(long)]
    pub label: Option<String>,
}

impl TaskArgs {
    /// Renders the inline arguments as a config document so they go through
    /// the same validation as files.
    fn to_document(&self, kind: TaskKind) -> Result<String, ConfigError> {
        let mut task = toml::Table::new();
        task.insert("task".into(), kind.name().into());
        if let Some(l) = &self.label {
            task.insert("label".into(), l.clone().into());
        }
        if let Some(n) = self.n {
            task.insert("n".into(), n.into());
        }
        if !self.satake.is_empty() {
            let v: Vec<toml::Value> = self.satake.iter().map(|s| s.trim().into()).collect();
            task.insert("satake".into(), v.into());
        }
        if let Some(q) = self.q {
            task.insert("q".into(), q.into());
        }
        if !self.group.is_empty() {
            task.insert("group".into(), self.group.clone().into());
        }
        if !self.blocks.is_empty() {
            let blocks = self
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| parse_block_arg(b, i))
                .collect::<Result<Vec<_>, _>>()?;
            task.insert("blocks".into(), blocks.into());
        }
        if let Some(r) = self.random {
            task.insert("random".into(), r.into());
        }
        if let Some(v) = self.violating {
            task.insert("violating".into(), v.into());
        }
        let mut doc = toml::Table::new();
        doc.insert("format_version".into(), i64::from(crate::config::FORMAT_VERSION).into());
        doc.insert("task".into(), vec![toml::Value::Table(task)].into());
        Ok(toml::to_string(&doc).expect("table serializes"))
    }
}

fn parse_block_arg(text: &str, i: usize) -> Result<toml::Value, ConfigError> {
    let err = |m: String| ConfigError {
        location: format!("--block[{i}]"),
        message: m,
    };
    let parts: Vec<&str> = text.split(':').collect();
    let [grade, k, alpha] = parts.as_slice() else {
        return Err(err(format!("expected GRADE:K:ALPHA, got {text:?}")));
    };
    let grade = grade
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| err(format!("bad grade residue {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let k: i64 = k.trim().parse().map_err(|_| err(format!("bad block length {k:?}")))?;
    let mut t = toml::Table::new();
    t.insert("grade".into(), grade.into());
    t.insert("k".into(), k.into());
    t.insert("alpha".into(), alpha.trim().into());
    Ok(toml::Value::Table(t))
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(e: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: 2,
        }
    }
}

fn load(cli: &Cli) -> Result<Config, String> {
    let mut config = match (&cli.config, cli.command.split()) {
        (Some(path), selected) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let mut config = parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            if let Some((kind, _)) = selected {
                config.tasks.retain(|t| t.kind == kind);
                if config.tasks.is_empty() {
                    return Err(format!("{}: no {kind} tasks", path.display()));
                }
            }
            config
        }
        (None, Some((kind, args))) => {
            parse_config(&args.to_document(kind).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
        }
        (None, None) => return Err("`run` needs --config <path>".to_string()),
    };
    let truncation = cli
        .truncation
        .as_deref()
        .map(parse_truncation)
        .transpose()
        .map_err(|e| e.to_string())?;
    config
        .apply_overrides(truncation, cli.seed)
        .map_err(|e| e.to_string())?;
    Ok(config)
}

pub fn execute(cli: &Cli) -> Outcome {
    let config = match load(cli) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e),
    };
    let opts = RunOptions {
        shapes: cli.format == Format::Table,
    };
    let reports = run_batch(&config.tasks, opts);
    let text = emit_reports(&reports, cli.format);
    let code = exit_code(&reports);
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                stdout: String::new(),
                stderr: String::new(),
                code,
            },
            Err(e) => Outcome::usage(format!("{}: {e}", path.display())),
        },
        None => Outcome {
            stdout: text,
            stderr: String::new(),
            code,
        },
    }
}
