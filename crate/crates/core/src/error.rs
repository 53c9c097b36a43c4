use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Location of a token in a theory file or query string. Lines and columns are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Option<PathBuf>,
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize) -> Self {
        Self {
            file: None,
            line,
            column,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.file {
            Some(path) => write!(f, "{}:{}:{}", path.display(), self.line, self.column),
            None => write!(f, "<input>:{}:{}", self.line, self.column),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    Syntax,
    UnknownSymbol,
    Arity,
    DuplicateSsa,
    MissingSsa,
    ModalInAxiom,
    UnsatInit,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::UnknownSymbol => "unknown-symbol",
            ParseErrorKind::Arity => "arity",
            ParseErrorKind::DuplicateSsa => "duplicate-ssa",
            ParseErrorKind::MissingSsa => "missing-ssa",
            ParseErrorKind::ModalInAxiom => "modal-in-axiom",
            ParseErrorKind::UnsatInit => "unsat-init",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {kind}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        Self {
            span,
            kind,
            message: message.into(),
        }
    }

    pub fn with_file(mut self, file: Option<PathBuf>) -> Self {
        self.span.file = file;
        self
    }
}

/// Failures of the reasoning engine proper (grounding, world enumeration, evaluation).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("formula is not objective: {0}")]
    NonObjective(String),
    #[error("operator {0} is not supported in query position")]
    UnsupportedOperator(&'static str),
    #[error("free variable `{0}` in a formula that must be closed")]
    FreeVariable(String),
    #[error("domain too large: {atoms} ground atoms give {worlds} initial worlds, cap is {cap}")]
    DomainTooLarge { atoms: usize, worlds: u128, cap: u64 },
    #[error("modality mismatch: {0}")]
    ModalityMismatch(String),
}

/// Failures of the explanation procedures.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no explanation within horizon {horizon}")]
    NotFound { horizon: usize },
    #[error("every candidate belief repair is inconsistent")]
    InconsistentBelief,
    #[error(transparent)]
    Engine(#[from] EngineError),
}
