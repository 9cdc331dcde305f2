//! Command implementations behind the `gradus` binary. Each command returns
//! a JSON value and a text rendering; `main` picks one and maps errors to
//! exit codes.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use gradus_core::config::{
    escalate, DEFAULT_ENUMERATION_CAP, DEFAULT_ESCALATIONS, DEFAULT_PRECISION, DEFAULT_SEED,
};
use gradus_core::embeddings::{canonical_gram, format_decimal, GramForm};
use gradus_core::fixtures;
use gradus_core::grading::{universal_grading, verify_grading, Grading, GradingJson};
use gradus_core::intlinalg::IntVec;
use gradus_core::lattice::universal_s_decomposition;
use gradus_core::order::{reduced_quotient, Order, OrderJson};
use gradus_core::units::{idempotents, is_connected, roots_of_unity};
use gradus_core::{Config, Error};
use rug::Integer;
use serde::Deserialize;
use serde_json::{json, Value};

/// Prefix selecting a built-in order instead of a file.
pub const EXAMPLE_PREFIX: &str = "example:";

const GRAM_DIGITS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Zero tolerance exponent (default: precision / 3).
    #[arg(long, global = true)]
    pub tolerance_bits: Option<u32>,
    /// Maximum number of vectors per enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
    /// Seed for the generic splitting element.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of precision doublings before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_ESCALATIONS)]
    pub escalations: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Divide out the nilradical before analysing a non-reduced order.
    #[arg(long, global = true)]
    pub mod_nilradical: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: DEFAULT_PRECISION,
            tolerance_bits: None,
            cap: DEFAULT_ENUMERATION_CAP,
            seed: DEFAULT_SEED,
            escalations: DEFAULT_ESCALATIONS,
            format: Format::Text,
            mod_nilradical: false,
        }
    }
}

impl RunConfig {
    pub fn core(&self) -> Result<Config, CliError> {
        let cfg = Config {
            precision: self.precision,
            seed: self.seed,
            enumeration_cap: self.cap,
            escalations: self.escalations,
            tolerance_bits: self.tolerance_bits,
            ..Config::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    /// 2 for invalid input, 3 for exhausted precision, 4 for an exceeded
    /// enumeration budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::Core(e) => match e {
                Error::Shape(_)
                | Error::NotCommutative { .. }
                | Error::NotAssociative { .. }
                | Error::BadIdentity { .. }
                | Error::NotReduced { .. }
                | Error::TorsionQuotient
                | Error::NotSymmetric { .. }
                | Error::NotPositiveDefinite { .. } => 2,
                Error::PrecisionExhausted { .. }
                | Error::DegenerateSplitting
                | Error::AmbiguousSign => 3,
                Error::EnumerationBudgetExceeded { .. } => 4,
                _ => 1,
            },
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Io(_) => "io".into(),
            CliError::Parse(_) => "parse".into(),
            CliError::Core(e) => format!("{e:?}")
                .split([' ', '(', '{'])
                .next()
                .unwrap_or("error")
                .to_string(),
        }
    }

    /// One-line `key=value` diagnostic for stderr.
    pub fn diagnostic(&self) -> String {
        format!(
            "error kind={} code={} message={:?}",
            self.kind(),
            self.exit_code(),
            self.to_string()
        )
    }
}

/// Result of a command: a JSON document and its human-readable form.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).unwrap_or_default(),
            Format::Text => self.text.clone(),
        }
    }
}

fn int_json(x: &Integer) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn vec_json(v: &[Integer]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn vec_text(v: &[Integer]) -> String {
    let parts: Vec<String> = v.iter().map(Integer::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Loads an order from a JSON file or from `example:<name>`.
pub fn load_order(source: &str) -> Result<Order, CliError> {
    if let Some(name) = source.strip_prefix(EXAMPLE_PREFIX) {
        return Ok(fixtures::example(name)?);
    }
    let text = std::fs::read_to_string(Path::new(source))
        .map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    let json: OrderJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("invalid order JSON: {e}")))?;
    Ok(Order::from_json(&json)?)
}

/// The order to analyse, after the optional reduction modulo the nilradical.
fn prepared(source: &str, rc: &RunConfig) -> Result<(Order, Option<String>), CliError> {
    let a = load_order(source)?;
    if rc.mod_nilradical && !a.is_reduced() {
        let q = reduced_quotient(&a)?;
        let note = format!(
            "computed on the quotient by the nilradical (rank {} -> {}); idempotents lift uniquely",
            a.rank(),
            q.order.rank()
        );
        return Ok((q.order, Some(note)));
    }
    Ok((a, None))
}

fn with_note(mut r: Report, note: Option<String>) -> Report {
    if let Some(n) = note {
        r.json["note"] = json!(n);
        r.text = format!("note: {n}\n{}", r.text);
    }
    r
}

pub fn cmd_validate(source: &str) -> Result<Report, CliError> {
    let a = load_order(source)?;
    Ok(Report {
        json: json!({"valid": true, "rank": a.rank()}),
        text: format!("valid order of rank {}\n", a.rank()),
    })
}

pub fn cmd_analyze(source: &str, rc: &RunConfig) -> Result<Report, CliError> {
    let cfg = rc.core()?;
    let (a, note) = prepared(source, rc)?;
    let nil_rank = a.nilradical().rank();
    let reduced = nil_rank == 0;
    let mut json = json!({"rank": a.rank(), "reduced": reduced, "nilradical_rank": nil_rank});
    let mut text = format!(
        "rank: {}\nreduced: {reduced}\nnilradical rank: {nil_rank}\n",
        a.rank()
    );
    if reduced && a.rank() > 0 {
        let connected = is_connected(&a, &cfg)?;
        let idem = idempotents(&a, &cfg)?.len();
        let g = escalate(&cfg, |c| canonical_gram(&a, c))?;
        let diag: Vec<String> = (0..g.n())
            .map(|i| format_decimal(g.entry(i, i), GRAM_DIGITS))
            .collect();
        json["connected"] = json!(connected);
        json["idempotent_count"] = json!(idem);
        json["gram"] = json!({
            "n": g.n(),
            "gram": g.to_decimal_strings(GRAM_DIGITS),
            "tolerance_bits": cfg.tolerance_bits(),
        });
        let _ = writeln!(
            text,
            "connected: {connected}\nidempotents: {idem}\nGram diagonal: [{}]",
            diag.join(", ")
        );
    }
    Ok(with_note(Report { json, text }, note))
}

fn grading_text(gr: &Grading) -> String {
    let factors = gr.group.invariant_factors();
    let name = if factors.is_empty() {
        "trivial".to_string()
    } else {
        factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    };
    let mut t = format!("group: {name}");
    if gr.group.invariant_factors().is_empty() {
        t = "group: trivial".into();
    }
    t.push('\n');
    for (g, b) in &gr.pieces {
        let vs: Vec<String> = b.vectors().iter().map(|v| vec_text(v)).collect();
        let _ = writeln!(t, "  {g:?}: {}", vs.join(" "));
    }
    t
}

pub fn cmd_grade(source: &str, rc: &RunConfig) -> Result<Report, CliError> {
    let cfg = rc.core()?;
    let (a, note) = prepared(source, rc)?;
    let u = universal_grading(&a, &cfg)?;
    let json = serde_json::to_value(u.to_json()).map_err(|e| CliError::Parse(e.to_string()))?;
    let text = grading_text(&u.grading);
    Ok(with_note(Report { json, text }, note))
}

/// Re-verifies a grading JSON document against an order.
pub fn verify_grading_json(a: &Order, grading: &Value) -> Result<bool, CliError> {
    let parsed: GradingJson =
        serde_json::from_value(grading.clone()).map_err(|e| CliError::Parse(e.to_string()))?;
    let gr = Grading::from_json(&parsed, a.rank())?;
    Ok(verify_grading(a, &gr).passed())
}

fn list_report(label: &str, items: &[IntVec]) -> Report {
    let mut text = format!("{} {label}\n", items.len());
    for v in items {
        let _ = writeln!(text, "  {}", vec_text(v));
    }
    Report {
        json: json!({"count": items.len(), label: items.iter().map(|v| vec_json(v)).collect::<Vec<_>>()}),
        text,
    }
}

pub fn cmd_units(source: &str, rc: &RunConfig) -> Result<Report, CliError> {
    let cfg = rc.core()?;
    let (a, note) = prepared(source, rc)?;
    let r = roots_of_unity(&a, &cfg)?;
    let mut report = list_report("roots", &r.roots);
    report.json["orders"] = json!(r.orders);
    Ok(with_note(report, note))
}

pub fn cmd_idempotents(source: &str, rc: &RunConfig) -> Result<Report, CliError> {
    let cfg = rc.core()?;
    let (a, note) = prepared(source, rc)?;
    Ok(with_note(
        list_report("idempotents", &idempotents(&a, &cfg)?),
        note,
    ))
}

/// Gram matrix input for `decompose`.
#[derive(Clone, Debug, Deserialize)]
pub struct GramInput {
    pub n: usize,
    pub gram: Vec<Vec<String>>,
}

pub fn cmd_decompose(path: &str, rc: &RunConfig) -> Result<Report, CliError> {
    let cfg = rc.core()?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let input: GramInput = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("invalid Gram JSON: {e}")))?;
    if input.gram.len() != input.n {
        return Err(Error::Shape(format!(
            "expected {} rows, found {}",
            input.n,
            input.gram.len()
        ))
        .into());
    }
    let d = escalate(&cfg, |c| {
        let g = GramForm::from_decimal_strings(&input.gram, c.precision, c.tolerance_bits())?;
        universal_s_decomposition(Arc::new(g), c.enumeration_cap)
    })?;
    let comps: Vec<Value> = d
        .components
        .iter()
        .map(|c| Value::Array(c.vectors().iter().map(|v| vec_json(v)).collect()))
        .collect();
    let noun = if d.len() == 1 {
        "component"
    } else {
        "components"
    };
    let mut text = format!("{} {noun}\n", d.len());
    for c in &d.components {
        let vs: Vec<String> = c.vectors().iter().map(|v| vec_text(v)).collect();
        let _ = writeln!(text, "  rank {}: {}", c.rank(), vs.join(" "));
    }
    Ok(Report {
        json: json!({"components": comps, "indecomposables": d.indecomposables.len()}),
        text,
    })
}

pub fn cmd_example(name: &str) -> Result<Report, CliError> {
    let a = fixtures::example(name)?;
    let json = serde_json::to_value(a.to_json()?).map_err(|e| CliError::Parse(e.to_string()))?;
    let text = serde_json::to_string_pretty(&json).unwrap_or_default();
    Ok(Report { json, text })
}
