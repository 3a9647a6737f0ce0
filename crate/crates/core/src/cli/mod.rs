//! Command execution behind the `koszul-lab` binary: one JSON document in,
//! one versioned report out, and an exit status.

pub mod document;
mod run;

use serde::Serialize;
use serde_json::Value;

use crate::arith::MonomialOrder;
use crate::error::Error;

pub use document::Document;

pub const SCHEMA: &str = "koszul-lab/report/v1";
pub const DEFAULT_MAX_POWER: u32 = 64;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Validate,
    Tot,
    Homology,
    H0,
    Admissible,
    KoszulCheck,
    ReducedCheck,
    Typical,
    Det,
    Fitting,
    Grade,
    BeCheck,
    Regseq,
    Aseq,
    FactorLemma,
    WeightDecomp,
    Generators,
    Resolve,
    RandomKoszul,
}

impl Command {
    pub const ALL: [Command; 19] = [
        Command::Validate,
        Command::Tot,
        Command::Homology,
        Command::H0,
        Command::Admissible,
        Command::KoszulCheck,
        Command::ReducedCheck,
        Command::Typical,
        Command::Det,
        Command::Fitting,
        Command::Grade,
        Command::BeCheck,
        Command::Regseq,
        Command::Aseq,
        Command::FactorLemma,
        Command::WeightDecomp,
        Command::Generators,
        Command::Resolve,
        Command::RandomKoszul,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Tot => "tot",
            Command::Homology => "homology",
            Command::H0 => "h0",
            Command::Admissible => "admissible",
            Command::KoszulCheck => "koszul-check",
            Command::ReducedCheck => "reduced-check",
            Command::Typical => "typical",
            Command::Det => "det",
            Command::Fitting => "fitting",
            Command::Grade => "grade",
            Command::BeCheck => "be-check",
            Command::Regseq => "regseq",
            Command::Aseq => "aseq",
            Command::FactorLemma => "factor-lemma",
            Command::WeightDecomp => "weight-decomp",
            Command::Generators => "generators",
            Command::Resolve => "resolve",
            Command::RandomKoszul => "random-koszul",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(|c| c.name()).collect()
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Overrides the order named in the document.
    pub order: Option<MonomialOrder>,
    pub seed: u64,
    pub max_power: u32,
    pub perm_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order: None,
            seed: 0,
            max_power: DEFAULT_MAX_POWER,
            perm_cap: crate::koszul::DEFAULT_PERM_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub options: Options,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EffectiveOptions {
    pub order: &'static str,
    pub seed: u64,
    pub max_power: u32,
    pub perm_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub options: EffectiveOptions,
    /// `None` when the command failed before reaching a verdict.
    pub verdict: Option<bool>,
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Diagnostic>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match (&self.error, self.verdict) {
            (Some(d), _) if d.kind == "cap_exceeded" => EXIT_CAP,
            (Some(_), _) => EXIT_INPUT,
            (None, Some(false)) => EXIT_FAIL,
            (None, _) => EXIT_PASS,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                let value = serde_json::to_value(self).expect("reports serialize");
                flatten("", &value, &mut out);
                out
            }
        }
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if !items.is_empty() => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{path}: {s}\n")),
        other => out.push_str(&format!("{path}: {other}\n")),
    }
}

fn effective(job: &JobSpec) -> EffectiveOptions {
    EffectiveOptions {
        order: job.options.order.unwrap_or_default().name(),
        seed: job.options.seed,
        max_power: job.options.max_power,
        perm_cap: job.options.perm_cap,
    }
}

impl Report {
    /// A report for a job that failed before any input was read.
    pub fn failed(job: &JobSpec, e: &Error) -> Report {
        Report {
            schema: SCHEMA,
            command: job.command.name(),
            options: effective(job),
            verdict: None,
            result: None,
            error: Some(diagnostic(e)),
        }
    }
}

/// Runs one job on the text of an input document.
pub fn run(job: &JobSpec, input: &str) -> Report {
    let mut options = effective(job);
    let outcome = Document::parse(input).and_then(|doc| {
        let order = match job.options.order {
            Some(o) => o,
            None => doc.ring.order()?.unwrap_or_default(),
        };
        options.order = order.name();
        run::execute(job.command, &doc, order, &job.options)
    });
    match outcome {
        Ok((verdict, result)) => Report {
            schema: SCHEMA,
            command: job.command.name(),
            options,
            verdict: Some(verdict),
            result: Some(result),
            error: None,
        },
        Err(e) => Report {
            options,
            ..Report::failed(job, &e)
        },
    }
}

pub fn diagnostic(e: &Error) -> Diagnostic {
    Diagnostic {
        kind: e.kind(),
        message: e.to_string(),
    }
}
