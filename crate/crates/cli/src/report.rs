//! Reports and their two renderings: `machine` (JSON, stable key order, no
//! timing) and `table` (human-readable, partition-indexed).

use std::fmt::Write as _;
use std::time::Duration;

use extsq_core::{LFactor, MultiPoly, TruncSeries1, TruncSeries2};
use serde::Serialize;

use crate::config::FORMAT_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
    /// A precondition of the requested identity does not hold.
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Machine,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coeff {
    pub index: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Difference {
    pub index: String,
    pub lhs: String,
    pub rhs: String,
}

/// One side-by-side identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub lhs: String,
    pub rhs: String,
    /// Whether the identity is claimed for this input. Unasserted
    /// comparisons are reported but do not affect the verdict.
    pub asserted: bool,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<Difference>,
    /// Shared coefficients when equal.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub coefficients: Vec<Coeff>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lhs_coefficients: Vec<Coeff>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rhs_coefficients: Vec<Coeff>,
}

impl Comparison {
    pub fn series1(lhs: &str, a: &TruncSeries1, rhs: &str, b: &TruncSeries1, asserted: bool) -> Self {
        let diff = a.first_difference(b).expect("compared series share ring and order");
        let first_difference = diff.map(|l| Difference {
            index: index1(l),
            lhs: a.coeff(l).to_string(),
            rhs: b.coeff(l).to_string(),
        });
        Self::build(lhs, rhs, asserted, first_difference, coeffs1(a), coeffs1(b))
    }

    pub fn series2(lhs: &str, a: &TruncSeries2, rhs: &str, b: &TruncSeries2, asserted: bool) -> Self {
        let diff = a.first_difference(b).expect("compared series share ring and window");
        let first_difference = diff.map(|(i, j)| Difference {
            index: index2(i, j),
            lhs: a.coeff(i, j).to_string(),
            rhs: b.coeff(i, j).to_string(),
        });
        Self::build(lhs, rhs, asserted, first_difference, coeffs2(a), coeffs2(b))
    }

    /// Polynomials in `t`, compared degree by degree.
    pub fn lfactors(lhs: &str, a: &LFactor, rhs: &str, b: &LFactor, asserted: bool) -> Self {
        let (pa, pb) = (a.reciprocal(), b.reciprocal());
        let len = pa.len().max(pb.len());
        let zero = MultiPoly::zero(a.nvars());
        let at = |p: &[MultiPoly], l: usize| p.get(l).unwrap_or(&zero).to_string();
        let first_difference = (0..len)
            .find(|&l| pa.get(l).unwrap_or(&zero) != pb.get(l).unwrap_or(&zero))
            .map(|l| Difference {
                index: index1(l),
                lhs: at(pa, l),
                rhs: at(pb, l),
            });
        Self::build(lhs, rhs, asserted, first_difference, poly_coeffs(pa), poly_coeffs(pb))
    }

    fn build(
        lhs: &str,
        rhs: &str,
        asserted: bool,
        first_difference: Option<Difference>,
        a: Vec<Coeff>,
        b: Vec<Coeff>,
    ) -> Self {
        let equal = first_difference.is_none();
        let (coefficients, lhs_coefficients, rhs_coefficients) = if equal {
            (a, Vec::new(), Vec::new())
        } else {
            (Vec::new(), a, b)
        };
        Comparison {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            asserted,
            equal,
            first_difference,
            coefficients,
            lhs_coefficients,
            rhs_coefficients,
        }
    }

    pub fn holds(&self) -> bool {
        self.equal || !self.asserted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

/// One randomized or explicit representation in a galois suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Case {
    pub index: usize,
    pub rep: String,
    pub hypothesis_h: bool,
    pub formal: String,
    pub ext_sq: String,
    pub divides: bool,
    pub strict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairwise: Option<String>,
    /// What this case is required to show.
    pub expect: String,
    pub ok: bool,
}

/// `s_shape(α)` contributing to `t^order` (table output only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeRow {
    pub order: usize,
    pub shape: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaskEcho {
    /// Absent for randomized suites.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub satake: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub truncation: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub task: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub input: TaskEcho,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<NamedValue>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<Case>,
    /// Empirical correction factor of a probe.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub correction: Vec<Coeff>,
    #[serde(skip)]
    pub shapes: Vec<ShapeRow>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(task: &str, label: Option<String>, input: TaskEcho) -> Self {
        Report {
            format_version: FORMAT_VERSION,
            task: task.to_string(),
            label,
            input,
            verdict: Verdict::Info,
            notes: Vec::new(),
            values: Vec::new(),
            comparisons: Vec::new(),
            cases: Vec::new(),
            correction: Vec::new(),
            shapes: Vec::new(),
            elapsed: None,
        }
    }

    pub fn value(&mut self, name: &str, value: impl ToString) {
        self.values.push(NamedValue {
            name: name.to_string(),
            value: value.to_string(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Pass when every asserted comparison holds and at least one is
    /// asserted, otherwise fail or info.
    pub fn settle_from_comparisons(&mut self) {
        let asserted: Vec<&Comparison> = self.comparisons.iter().filter(|c| c.asserted).collect();
        self.verdict = if asserted.is_empty() {
            Verdict::Info
        } else if asserted.iter().all(|c| c.equal) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
    }
}

pub fn index1(l: usize) -> String {
    format!("t^{l}")
}

pub fn index2(a: usize, b: usize) -> String {
    format!("t1^{a}*t2^{b}")
}

fn poly_coeffs(p: &[MultiPoly]) -> Vec<Coeff> {
    p.iter()
        .enumerate()
        .map(|(l, c)| Coeff {
            index: index1(l),
            value: c.to_string(),
        })
        .collect()
}

pub fn coeffs1(s: &TruncSeries1) -> Vec<Coeff> {
    poly_coeffs(s.coeffs())
}

/// Nonzero coefficients only: two-variable windows are mostly sparse.
pub fn coeffs2(s: &TruncSeries2) -> Vec<Coeff> {
    let mut out = Vec::new();
    for (a, row) in s.rows().iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out.push(Coeff {
                    index: index2(a, b),
                    value: c.to_string(),
                });
            }
        }
    }
    out
}

/// Exit status: 2 if any report is an error, 1 if any failed, else 0.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Error) {
        2
    } else if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else {
        0
    }
}

pub fn emit_reports(reports: &[Report], format: Format) -> String {
    match format {
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => reports.iter().map(table).collect::<Vec<_>>().join("\n"),
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    emit_reports(std::slice::from_ref(report), format)
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Info => "INFO",
        Verdict::Error => "ERROR",
    }
}

fn table(r: &Report) -> String {
    let mut out = String::new();
    let title = match &r.label {
        Some(l) => format!("{} ({l})", r.task),
        None => r.task.clone(),
    };
    let _ = write!(out, "== {title}: {}", verdict_word(r.verdict));
    if let Some(e) = r.elapsed {
        let _ = write!(out, "  [{:.3} s]", e.as_secs_f64());
    }
    out.push('\n');
    let i = &r.input;
    if !i.satake.is_empty() {
        let _ = writeln!(
            out,
            "   n = {}, satake = ({}), truncation = {:?}",
            i.n.unwrap_or(0),
            i.satake.join(", "),
            i.truncation
        );
    }
    if !i.blocks.is_empty() {
        let _ = writeln!(
            out,
            "   q = {}, group = {:?}",
            i.q.unwrap_or_default(),
            i.group.clone().unwrap_or_default()
        );
        for b in &i.blocks {
            let _ = writeln!(out, "   block {b}");
        }
    }
    if let Some(count) = i.random {
        let _ = writeln!(
            out,
            "   random = {count}, violating = {}, seed = {}",
            i.violating.unwrap_or(0),
            i.seed.unwrap_or(0)
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "   note: {n}");
    }
    for v in &r.values {
        let _ = writeln!(out, "   {} = {}", v.name, v.value);
    }
    if !r.shapes.is_empty() {
        let _ = writeln!(out, "   order  shape  s_shape(α)");
        for s in &r.shapes {
            let shape: Vec<String> = s.shape.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "   {:>5}  ({})  {}", s.order, shape.join(","), s.value);
        }
    }
    for c in &r.comparisons {
        let status = match (c.equal, c.asserted) {
            (true, _) => "equal",
            (false, true) => "DIFFER",
            (false, false) => "differ (not asserted)",
        };
        let _ = writeln!(out, "   {} vs {}: {status}", c.lhs, c.rhs);
        if let Some(d) = &c.first_difference {
            let _ = writeln!(out, "     first difference at {}", d.index);
            let _ = writeln!(out, "       {}: {}", c.lhs, d.lhs);
            let _ = writeln!(out, "       {}: {}", c.rhs, d.rhs);
        }
        for k in &c.coefficients {
            let _ = writeln!(out, "     {:>10}  {}", k.index, k.value);
        }
    }
    for c in &r.cases {
        let _ = writeln!(
            out,
            "   #{:<3} {} {}  divides={} strict={}",
            c.index,
            if c.ok { "ok  " } else { "BAD " },
            c.rep,
            c.divides,
            c.strict
        );
        if !c.ok || c.strict {
            let _ = writeln!(out, "        𝓛: {}   L(∧²): {}", c.formal, c.ext_sq);
            if let Some(q) = &c.quotient {
                let _ = writeln!(out, "        quotient: {q}");
            }
        }
    }
    if !r.correction.is_empty() {
        let _ = writeln!(out, "   correction factor:");
        for k in &r.correction {
            let _ = writeln!(out, "     {:>14}  {}", k.index, k.value);
        }
    }
    out
}
