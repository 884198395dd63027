//! The two interpreters, their metrics, and the comparison between them.

mod bisim;
mod machine;
mod space;

use std::fmt;

use serde::Serialize;

pub use bisim::{bisim_compare, related, Verdict};
pub use space::{bound_formula, composition_bound, compute_bound_b, max_static_evidence, space_of, Cost};

use crate::elab::{Elaborated, RTerm};
use crate::evidence::TotalEvidence;
use crate::syntax::{BinOp, Span};
use machine::Machine;

/// Standard semantics, or the one that composes evidence eagerly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Rl,
    RlPlus,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Rl => "rl",
            Semantics::RlPlus => "rl-plus",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ErrorKind {
    /// `inner ∘ outer` is undefined.
    Transitivity { inner: TotalEvidence, outer: TotalEvidence },
    /// A latent failure reached a value.
    LatentFailure,
    Overflow(BinOp),
    /// No rule applies. Never expected for elaborated programs.
    Stuck(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuntimeError {
    pub kind: ErrorKind,
    pub span: Span,
}

impl RuntimeError {
    pub fn new(kind: ErrorKind, span: Span) -> RuntimeError {
        RuntimeError { kind, span }
    }
}

impl fmt::Display for RuntimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: runtime error: ", self.span)?;
        match &self.kind {
            ErrorKind::Transitivity { inner, outer } => write!(f, "cannot compose {inner} with {outer}"),
            ErrorKind::LatentFailure => f.write_str("failed check reached a value"),
            ErrorKind::Overflow(op) => write!(f, "integer overflow in `{}`", op.symbol()),
            ErrorKind::Stuck(s) => write!(f, "evaluation stuck ({s})"),
        }
    }
}

impl std::error::Error for RuntimeError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Value(RTerm),
    Error(RuntimeError),
    /// The step budget ran out.
    Diverged,
}

impl Outcome {
    pub fn category(&self) -> &'static str {
        match self {
            Outcome::Value(_) => "value",
            Outcome::Error(_) => "runtime_error",
            Outcome::Diverged => "diverged",
        }
    }

    pub fn is_stuck(&self) -> bool {
        matches!(self, Outcome::Error(RuntimeError { kind: ErrorKind::Stuck(_), .. }))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(v) => write!(f, "{v}"),
            Outcome::Error(e) => write!(f, "{e}"),
            Outcome::Diverged => f.write_str("step budget exhausted"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpaceMetrics {
    pub max_evidence_size: usize,
    /// Longest run of adjacent evidence frames in any context.
    pub max_pending_ascriptions: usize,
    /// Space of the latest state, when metering.
    pub space_now: usize,
    pub max_space: usize,
    pub bound_b: u64,
    /// Compositions whose result outgrew the bound of their inputs.
    pub composition_bound_violations: usize,
    /// States whose space exceeded `3·B` times their evidence-free space.
    pub overhead_violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    pub step: u64,
    pub rule: String,
    pub term: String,
    pub metrics: SpaceMetrics,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub semantics: Semantics,
    pub budget: u64,
    pub trace: bool,
    /// Compute the space of every intermediate term.
    pub meter_space: bool,
}

impl RunConfig {
    pub fn new(semantics: Semantics) -> RunConfig {
        RunConfig { semantics, budget: DEFAULT_BUDGET, trace: false, meter_space: false }
    }

    pub fn budget(mut self, budget: u64) -> RunConfig {
        self.budget = budget;
        self
    }
}

pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct RunResult {
    pub outcome: Outcome,
    pub steps: u64,
    pub metrics: SpaceMetrics,
    pub trace: Vec<TraceEvent>,
}

impl RunResult {
    pub fn within_bound(&self) -> bool {
        self.metrics.max_evidence_size as u64 <= self.metrics.bound_b
    }

    /// The versioned metrics object printed by the command line.
    pub fn metrics_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "gtfl-metrics/1",
            "outcome": self.outcome.category(),
            "result": self.outcome.to_string(),
            "steps": self.steps,
            "max_evidence_size": self.metrics.max_evidence_size,
            "max_pending_ascriptions": self.metrics.max_pending_ascriptions,
            "bound_B": self.metrics.bound_b,
            "within_bound": self.within_bound(),
        })
    }
}

/// Run an elaborated program to a value, an error, or the end of its budget.
pub fn run(p: &Elaborated, cfg: &RunConfig) -> RunResult {
    let metrics = SpaceMetrics {
        bound_b: compute_bound_b(p),
        max_evidence_size: max_static_evidence(p),
        ..SpaceMetrics::default()
    };
    let mut m = Machine::new(cfg.semantics, &p.globals, p.main.clone(), metrics);
    let mut trace = Vec::new();
    let mut steps = 0;
    m.meter(cfg);
    let outcome = loop {
        if steps >= cfg.budget && !m.is_done() {
            break Outcome::Diverged;
        }
        match m.step() {
            Ok(Some(rule)) => {
                steps += 1;
                m.meter(cfg);
                if cfg.trace {
                    trace.push(m.trace_event(steps, rule));
                }
            }
            Ok(None) => break Outcome::Value(m.plug()),
            Err(e) => break Outcome::Error(e),
        }
    };
    let metrics = m.metrics.clone();
    RunResult { outcome, steps, metrics, trace }
}
