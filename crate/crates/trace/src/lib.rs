//! Derivation logs: serialized proofs that specific points satisfy `f(x) = 0`.
//!
//! A [`ProofLog`] is a header plus a topologically ordered list of steps, each
//! one an elementary move that an independent checker can replay with exact
//! arithmetic:
//!
//! * `SupportZero`: a point lies strictly beyond the support bound `Q`, so
//!   the support condition alone forces `f` to vanish there.
//! * `Instantiate`: the dilation equation instantiated at a substitution
//!   point, with every term beyond the support bound dropped on the spot; the
//!   step records both the kept terms and the dropped points so the checker
//!   can re-derive the whole relation from scratch.
//! * `Reduce`: terms removed from an earlier relation because their points
//!   were already concluded zero (each removal names the concluding step).
//! * `EliminateRow`: an exact linear combination of earlier relations; the
//!   resulting relation is stored explicitly and re-computed by the checker.
//! * `ConcludeZero`: the terminal move: either its source is a `SupportZero`
//!   for the same point, or the source relation has exactly one term with a
//!   nonzero coefficient, forcing that point's value to zero.
//!
//! The on-disk format is versioned UTF-8 JSON (`"schema": 1`, extension
//! `.slog.json`) with every rational written as a decimal string `"p/r"` in
//! lowest terms, so logs are bit-exact, diff-friendly and language-portable.
//! Steps are stored already ordered; a streaming checker needs only the live
//! relations in memory.
//!
//! This crate deliberately knows nothing about the derivation engine: the
//! validator re-instantiates the dilation equation itself on top of
//! `schilling-core` arithmetic, which is what makes its acceptance of a log
//! meaningful.

mod render;
mod validate;
mod wire;

use schilling_core::{FieldCase, FieldElement, Point};

pub use render::render_human;
pub use validate::{validate, StepVerdict, ValidationReport};

/// Current on-disk schema version.
pub const SCHEMA_VERSION: u32 = 1;

/// File extension for serialized logs.
pub const LOG_EXTENSION: &str = "slog.json";

pub type StepId = u64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub id: StepId,
    pub kind: StepKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// `|point| > Q`: the support condition forces `f(point) = 0`.
    SupportZero { point: Point },
    /// The dilation equation at substitution point `at`, homogeneous form;
    /// `kept` are the surviving `(point, coefficient)` terms, `dropped` the
    /// points eliminated because they lie strictly beyond the support bound.
    Instantiate {
        at: Point,
        kept: Vec<(Point, FieldElement)>,
        dropped: Vec<Point>,
    },
    /// Remove from relation `source` the terms whose points were concluded
    /// zero; each entry names the concluding step.
    Reduce {
        source: StepId,
        removed: Vec<(Point, StepId)>,
    },
    /// Exact linear combination of earlier relations with field-element
    /// multipliers; `result` is the combined relation.
    EliminateRow {
        sources: Vec<(StepId, FieldElement)>,
        result: Vec<(Point, FieldElement)>,
    },
    /// `f(point) = 0`, justified by `source`.
    ConcludeZero { source: StepId, point: Point },
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::SupportZero { .. } => "support_zero",
            StepKind::Instantiate { .. } => "instantiate",
            StepKind::Reduce { .. } => "reduce",
            StepKind::EliminateRow { .. } => "eliminate_row",
            StepKind::ConcludeZero { .. } => "conclude_zero",
        }
    }
}

/// Engine parameters recorded for reproducibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunParams {
    pub strategy: String,
    pub window: Option<u32>,
    pub max_substitutions: u64,
    pub max_relations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub schema: u32,
    pub tool: String,
    pub case: FieldCase,
    /// `(a, b, c)` with `a q^2 + b q + c = 0`; must match the catalog.
    pub minpoly: (i64, i64, i64),
    pub support_bound: FieldElement,
    pub params: RunParams,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLog {
    pub header: Header,
    pub steps: Vec<TraceStep>,
    /// `(point, step)` pairs; each step must be a `ConcludeZero` for exactly
    /// that point.
    pub conclusions: Vec<(Point, StepId)>,
}

#[derive(Debug, thiserror::Error)]
pub enum TraceError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed log: {0}")]
    Malformed(String),
}

impl ProofLog {
    /// Deterministic pretty-printed JSON; byte-identical for equal logs.
    pub fn to_json_string(&self) -> String {
        let wire = wire::to_wire(self);
        let mut out = serde_json::to_string_pretty(&wire).expect("log serialization is infallible");
        out.push('\n');
        out
    }

    pub fn from_json_str(input: &str) -> Result<ProofLog, TraceError> {
        let wire: wire::WireLog = serde_json::from_str(input)?;
        wire::from_wire(wire)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<(), TraceError> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }

    pub fn read_file(path: &std::path::Path) -> Result<ProofLog, TraceError> {
        let text = std::fs::read_to_string(path)?;
        ProofLog::from_json_str(&text)
    }

    pub fn step(&self, id: StepId) -> Option<&TraceStep> {
        // Steps are ordered by id; binary search keeps big logs cheap.
        self.steps
            .binary_search_by_key(&id, |s| s.id)
            .ok()
            .map(|ix| &self.steps[ix])
    }
}
