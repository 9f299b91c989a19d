//! Task configuration: a versioned TOML document holding one or more
//! `[[task]]` tables.
//!
//! ```toml
//! format_version = 1
//! seed = 7
//!
//! [[task]]
//! task = "verify-js"
//! n = 4
//! satake = ["sym", "sym", "sym", "0"]
//! truncation = 5
//!
//! [[task]]
//! task = "galois-divisibility"
//! q = 5
//! group = [4]
//! blocks = [ { grade = [1], k = 1, alpha = "2" }, { grade = [3], k = 1, alpha = "-1/3" } ]
//! ```

use std::fmt;
use std::str::FromStr;

use extsq_core::algebra::parse_scalar;
use extsq_core::galois::{FiniteAbelianGroup, WdBlock, WdRep};
use extsq_core::{Entry, MultiPoly, Scalar};
use serde::Deserialize;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_TRUNCATION: usize = 6;
pub const DEFAULT_Q: i64 = 5;
/// Overrides [`DEFAULT_TRUNCATION`] when set.
pub const TRUNCATION_ENV: &str = "EXSQ_TRUNCATION";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {message}")]
pub struct ConfigError {
    pub location: String,
    pub message: String,
}

impl ConfigError {
    fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            location: location.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TaskKind {
    Lfactor,
    VerifyJs,
    VerifyBf,
    VerifyLittlewood,
    GaloisDivisibility,
    GaloisH,
    BfOddProbe,
}

impl TaskKind {
    pub const ALL: [TaskKind; 7] = [
        TaskKind::Lfactor,
        TaskKind::VerifyJs,
        TaskKind::VerifyBf,
        TaskKind::VerifyLittlewood,
        TaskKind::GaloisDivisibility,
        TaskKind::GaloisH,
        TaskKind::BfOddProbe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Lfactor => "lfactor",
            TaskKind::VerifyJs => "verify-js",
            TaskKind::VerifyBf => "verify-bf",
            TaskKind::VerifyLittlewood => "verify-littlewood",
            TaskKind::GaloisDivisibility => "galois-divisibility",
            TaskKind::GaloisH => "galois-H",
            TaskKind::BfOddProbe => "bf-odd-probe",
        }
    }

    pub fn is_galois(self) -> bool {
        matches!(self, TaskKind::GaloisDivisibility | TaskKind::GaloisH)
    }

    fn uses_window(self) -> bool {
        matches!(self, TaskKind::VerifyBf | TaskKind::BfOddProbe)
    }
}

impl FromStr for TaskKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        TaskKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = TaskKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown task {s:?} (expected one of {})", names.join(", "))
            })
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single order or a `(t1, t2)` window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    Single(usize),
    Window(usize, usize),
}

impl Truncation {
    pub fn order(self) -> usize {
        match self {
            Truncation::Single(l) => l,
            Truncation::Window(a, b) => a.max(b),
        }
    }

    pub fn window(self) -> (usize, usize) {
        match self {
            Truncation::Single(l) => (l, l),
            Truncation::Window(a, b) => (a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub grade: Vec<i64>,
    pub k: usize,
    /// `None` for a symbolic Frobenius scalar.
    pub alpha: Option<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaloisInput {
    Explicit {
        q: i64,
        group: Vec<u32>,
        blocks: Vec<BlockSpec>,
    },
    Random {
        count: usize,
        /// Extra (H)-violating principal series, `galois-H` only.
        violating: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskConfig {
    pub kind: TaskKind,
    pub label: Option<String>,
    pub n: usize,
    pub satake: Vec<Entry>,
    pub truncation: Truncation,
    pub galois: Option<GaloisInput>,
}

impl TaskConfig {
    /// Builds the representation described by an explicit galois input.
    pub fn build_rep(&self) -> Option<Result<WdRep, extsq_core::Error>> {
        let Some(GaloisInput::Explicit { q, group, blocks }) = &self.galois else {
            return None;
        };
        Some(build_rep(*q, group, blocks))
    }
}

pub fn build_rep(q: i64, group: &[u32], blocks: &[BlockSpec]) -> Result<WdRep, extsq_core::Error> {
    let group = FiniteAbelianGroup::new(group.to_vec())?;
    let nvars = blocks.iter().filter(|b| b.alpha.is_none()).count();
    let mut next = 0;
    let blocks = blocks
        .iter()
        .map(|b| {
            let frobenius = match &b.alpha {
                Some(a) => MultiPoly::constant(nvars, a.clone()),
                None => {
                    next += 1;
                    MultiPoly::var(nvars, next - 1)
                }
            };
            Ok(WdBlock {
                grade: group.elem(&b.grade)?,
                length: b.k,
                frobenius,
            })
        })
        .collect::<Result<Vec<_>, extsq_core::Error>>()?;
    WdRep::new(Scalar::from_integer(q.into()), group, nvars, blocks)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub format_version: u32,
    pub tasks: Vec<TaskConfig>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Token {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawTruncation {
    Single(i64),
    Pair(Vec<i64>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlock {
    #[serde(default)]
    grade: Vec<i64>,
    #[serde(default = "one")]
    k: i64,
    alpha: Token,
}

fn one() -> i64 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTask {
    task: String,
    label: Option<String>,
    n: Option<i64>,
    satake: Option<Vec<Token>>,
    truncation: Option<RawTruncation>,
    q: Option<i64>,
    group: Option<Vec<i64>>,
    blocks: Option<Vec<RawBlock>>,
    random: Option<i64>,
    violating: Option<i64>,
    seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    format_version: u32,
    seed: Option<u64>,
    #[serde(rename = "task", default)]
    tasks: Vec<RawTask>,
}

/// Default truncation, honoring [`TRUNCATION_ENV`].
pub fn default_truncation() -> Result<usize, ConfigError> {
    match std::env::var(TRUNCATION_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| ConfigError::new(TRUNCATION_ENV, format!("expected a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_TRUNCATION),
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let location = e
            .span()
            .map(|s| {
                let line = text[..s.start].matches('\n').count() + 1;
                format!("line {line}")
            })
            .unwrap_or_else(|| "config".to_string());
        ConfigError::new(location, e.message().to_string())
    })?;
    if raw.format_version != FORMAT_VERSION {
        return Err(ConfigError::new(
            "format_version",
            format!("unsupported version {} (expected {FORMAT_VERSION})", raw.format_version),
        ));
    }
    if raw.tasks.is_empty() {
        return Err(ConfigError::new("config", "no [[task]] entries"));
    }
    let default_l = default_truncation()?;
    let tasks = raw
        .tasks
        .into_iter()
        .enumerate()
        .map(|(i, t)| validate_task(t, i, raw.seed, default_l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Config {
        format_version: raw.format_version,
        tasks,
    })
}

/// Parses a `--truncation` value: `L` or `L1,L2`.
pub fn parse_truncation(text: &str) -> Result<Truncation, ConfigError> {
    let loc = "--truncation";
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| -> Result<usize, ConfigError> {
        let v: i64 = s
            .parse()
            .map_err(|_| ConfigError::new(loc, format!("expected an integer, got {s:?}")))?;
        nonneg(v, loc, "truncation")
    };
    match parts.as_slice() {
        [l] => Ok(Truncation::Single(num(l)?)),
        [a, b] => Ok(Truncation::Window(num(a)?, num(b)?)),
        _ => Err(ConfigError::new(loc, format!("expected L or L1,L2, got {text:?}"))),
    }
}

impl Config {
    /// Command-line overrides, which take precedence over the document.
    pub fn apply_overrides(&mut self, truncation: Option<Truncation>, seed: Option<u64>) -> Result<(), ConfigError> {
        for (i, t) in self.tasks.iter_mut().enumerate() {
            if let Some(tr) = truncation {
                if matches!(tr, Truncation::Window(..)) && !t.kind.uses_window() && !t.kind.is_galois() {
                    return Err(ConfigError::new(
                        format!("task[{i}] ({})", t.kind),
                        "--truncation pair given for a task taking a single order",
                    ));
                }
                t.truncation = tr;
            }
            if let (Some(s), Some(GaloisInput::Random { seed, .. })) = (seed, t.galois.as_mut()) {
                *seed = s;
            }
        }
        Ok(())
    }
}

fn parse_entry(tok: &Token, loc: &str) -> Result<Entry, ConfigError> {
    match tok {
        Token::Int(v) => Ok(Entry::int(*v)),
        Token::Text(s) if s.trim().eq_ignore_ascii_case("sym") => Ok(Entry::Symbol),
        Token::Text(s) => parse_scalar(s)
            .map(Entry::Scalar)
            .ok_or_else(|| ConfigError::new(loc, format!("malformed rational {s:?}"))),
    }
}

fn nonneg(v: i64, loc: &str, what: &str) -> Result<usize, ConfigError> {
    usize::try_from(v).map_err(|_| ConfigError::new(loc, format!("{what} must be ≥ 0, got {v}")))
}

fn validate_task(
    t: RawTask,
    index: usize,
    file_seed: Option<u64>,
    default_l: usize,
) -> Result<TaskConfig, ConfigError> {
    let loc = format!("task[{index}]");
    let kind: TaskKind = t.task.parse().map_err(|e| ConfigError::new(&loc, e))?;
    let loc = format!("task[{index}] ({kind})");

    let truncation = match t.truncation {
        None => Truncation::Single(default_l),
        Some(RawTruncation::Single(v)) => Truncation::Single(nonneg(v, &loc, "truncation")?),
        Some(RawTruncation::Pair(v)) => match v.as_slice() {
            [a, b] => Truncation::Window(nonneg(*a, &loc, "truncation")?, nonneg(*b, &loc, "truncation")?),
            _ => return Err(ConfigError::new(&loc, "truncation pair must have two entries")),
        },
    };
    if matches!(truncation, Truncation::Window(..)) && !kind.uses_window() {
        return Err(ConfigError::new(
            &loc,
            format!("{kind} takes a single truncation order"),
        ));
    }

    let n = t.n.map(|v| nonneg(v, &loc, "n")).transpose()?;

    if kind.is_galois() {
        let galois = if let Some(count) = t.random {
            if t.blocks.is_some() {
                return Err(ConfigError::new(&loc, "give either `random` or `blocks`, not both"));
            }
            let violating = t
                .violating
                .map(|v| nonneg(v, &loc, "violating"))
                .transpose()?
                .unwrap_or(0);
            if violating > 0 && kind != TaskKind::GaloisH {
                return Err(ConfigError::new(&loc, "`violating` applies to galois-H only"));
            }
            GaloisInput::Random {
                count: nonneg(count, &loc, "random")?,
                violating,
                seed: t.seed.or(file_seed).unwrap_or(0),
            }
        } else {
            let raw_blocks = t
                .blocks
                .ok_or_else(|| ConfigError::new(&loc, "galois tasks need `blocks` or `random`"))?;
            let group: Vec<u32> = t
                .group
                .unwrap_or_default()
                .into_iter()
                .map(|m| {
                    u32::try_from(m)
                        .ok()
                        .filter(|&m| m >= 1)
                        .ok_or_else(|| ConfigError::new(&loc, format!("group order must be ≥ 1, got {m}")))
                })
                .collect::<Result<_, _>>()?;
            let mut blocks = Vec::new();
            for (j, b) in raw_blocks.into_iter().enumerate() {
                let bloc = format!("{loc} block[{j}]");
                let k = nonneg(b.k, &bloc, "k")?;
                let alpha = match parse_entry(&b.alpha, &bloc)? {
                    Entry::Symbol => None,
                    Entry::Scalar(a) => Some(a),
                };
                blocks.push(BlockSpec {
                    grade: b.grade,
                    k,
                    alpha,
                });
            }
            let q = t.q.unwrap_or(DEFAULT_Q);
            build_rep(q, &group, &blocks).map_err(|e| ConfigError::new(&loc, e.to_string()))?;
            let dim: usize = blocks.iter().map(|b| b.k).sum();
            if let Some(n) = n {
                if n != dim {
                    return Err(ConfigError::new(
                        &loc,
                        format!("n = {n} but blocks have total dimension {dim}"),
                    ));
                }
            }
            GaloisInput::Explicit { q, group, blocks }
        };
        let n = match &galois {
            GaloisInput::Explicit { blocks, .. } => blocks.iter().map(|b| b.k).sum(),
            GaloisInput::Random { .. } => 0,
        };
        return Ok(TaskConfig {
            kind,
            label: t.label,
            n,
            satake: Vec::new(),
            truncation,
            galois: Some(galois),
        });
    }

    for (field, present) in [
        ("q", t.q.is_some()),
        ("group", t.group.is_some()),
        ("blocks", t.blocks.is_some()),
        ("random", t.random.is_some()),
        ("violating", t.violating.is_some()),
    ] {
        if present {
            return Err(ConfigError::new(
                &loc,
                format!("`{field}` only applies to galois tasks"),
            ));
        }
    }
    let satake = match (t.satake, n) {
        (Some(tokens), _) => tokens
            .iter()
            .enumerate()
            .map(|(j, tok)| parse_entry(tok, &format!("{loc} satake[{j}]")))
            .collect::<Result<Vec<_>, _>>()?,
        (None, Some(n)) => vec![Entry::Symbol; n],
        (None, None) => return Err(ConfigError::new(&loc, "need `n` or `satake`")),
    };
    let n = n.unwrap_or(satake.len());
    if n != satake.len() {
        return Err(ConfigError::new(
            &loc,
            format!("n = {n} but {} Satake parameters given", satake.len()),
        ));
    }
    match kind {
        TaskKind::VerifyBf if n < 2 => return Err(ConfigError::new(&loc, "verify-bf needs n ≥ 2")),
        TaskKind::VerifyJs if n == 0 => return Err(ConfigError::new(&loc, "verify-js needs n ≥ 1")),
        TaskKind::BfOddProbe if n % 2 == 0 => return Err(ConfigError::new(&loc, "bf-odd-probe needs odd n")),
        _ => {}
    }
    Ok(TaskConfig {
        kind,
        label: t.label,
        n,
        satake,
        truncation,
        galois: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_js_config() {
        let cfg = parse_config(
            r#"
format_version = 1
[[task]]
task = "verify-js"
n = 4
satake = ["sym", "sym", "sym", 0]
truncation = 5
"#,
        )
        .unwrap();
        let t = &cfg.tasks[0];
        assert_eq!(t.kind, TaskKind::VerifyJs);
        assert_eq!(t.n, 4);
        assert_eq!(t.truncation, Truncation::Single(5));
        assert_eq!(t.satake[3], Entry::zero());
    }

    #[test]
    fn defaults_applied() {
        let cfg = parse_config(
            "format_version = 1\n[[task]]\ntask = \"galois-divisibility\"\nblocks = [{ alpha = \"2\" }]\n",
        )
        .unwrap();
        match &cfg.tasks[0].galois {
            Some(GaloisInput::Explicit { q, blocks, .. }) => {
                assert_eq!(*q, DEFAULT_Q);
                assert_eq!(blocks[0].k, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        if std::env::var(TRUNCATION_ENV).is_err() {
            assert_eq!(cfg.tasks[0].truncation, Truncation::Single(DEFAULT_TRUNCATION));
        }
    }

    #[test]
    fn symbolic_steinberg_rejected() {
        let err = parse_config(
            r#"
format_version = 1
[[task]]
task = "galois-divisibility"
blocks = [ { k = 2, alpha = "sym" } ]
"#,
        )
        .unwrap_err();
        assert!(err.message.contains("Steinberg"), "{err}");
    }

    #[test]
    fn negative_truncation_rejected() {
        let err =
            parse_config("format_version = 1\n[[task]]\ntask = \"lfactor\"\nn = 2\ntruncation = -1\n").unwrap_err();
        assert!(err.message.contains("truncation"), "{err}");
    }

    #[test]
    fn unknown_task_and_bad_rational() {
        let err = parse_config("format_version = 1\n[[task]]\ntask = \"frobnicate\"\n").unwrap_err();
        assert!(err.message.contains("unknown task"));
        let err = parse_config("format_version = 1\n[[task]]\ntask = \"lfactor\"\nsatake = [\"1/0\"]\n").unwrap_err();
        assert!(err.message.contains("malformed rational"));
        assert_eq!(err.location, "task[0] (lfactor) satake[0]");
    }

    #[test]
    fn inconsistent_rank_rejected() {
        let err =
            parse_config("format_version = 1\n[[task]]\ntask = \"lfactor\"\nn = 3\nsatake = [\"sym\"]\n").unwrap_err();
        assert!(err.message.contains("n = 3"));
    }

    #[test]
    fn syntax_error_has_line() {
        let err = parse_config("format_version = 1\n[[task]]\ntask = = 3\n").unwrap_err();
        assert_eq!(err.location, "line 3");
    }

    #[test]
    fn version_checked() {
        let err = parse_config("format_version = 9\n[[task]]\ntask = \"lfactor\"\nn = 1\n").unwrap_err();
        assert_eq!(err.location, "format_version");
    }
}
