use std::fmt;

use thiserror::Error;

/// Which side of a resonance a divergence was detected on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceKind {
    /// |z| reached 1 (or a G factor vanished): the pair number is unbounded.
    AtResonance,
    /// The two G factors have opposite signs, so the mixing ratio would be imaginary.
    BetweenResonances,
}

impl DivergenceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DivergenceKind::AtResonance => "at_resonance",
            DivergenceKind::BetweenResonances => "between_resonances",
        }
    }
}

impl fmt::Display for DivergenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One field-level problem found while validating a run configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldIssue {
    pub path: String,
    pub reason: String,
}

impl FieldIssue {
    pub fn new(path: impl Into<String>, reason: impl Into<String>) -> Self {
        FieldIssue {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

/// All validation failures of a configuration document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid configuration: {}", summarize(.issues))]
pub struct ConfigError {
    pub issues: Vec<FieldIssue>,
}

fn summarize(issues: &[FieldIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("{}: {}", i.path, i.reason))
        .collect::<Vec<_>>()
        .join("; ")
}

impl ConfigError {
    pub fn single(path: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError {
            issues: vec![FieldIssue::new(path, reason)],
        }
    }

    /// True when some issue is reported against `path`.
    pub fn mentions(&self, path: &str) -> bool {
        self.issues.iter().any(|i| i.path == path)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate frame: 1 - beta*n*cos(theta) = {denominator:e}")]
    DegenerateFrame { denominator: f64 },

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("resonant divergence ({kind}): {detail}")]
    ResonantDivergence { kind: DivergenceKind, detail: String },

    #[error("no sign change found for the {branch} resonance condition")]
    RootBracketingFailure { branch: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn resonant(kind: DivergenceKind, detail: impl Into<String>) -> Self {
        Error::ResonantDivergence {
            kind,
            detail: detail.into(),
        }
    }

    /// Stable machine-readable tag for the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateFrame { .. } => "degenerate_frame",
            Error::DegenerateGeometry(_) => "degenerate_geometry",
            Error::ResonantDivergence { .. } => "resonant_divergence",
            Error::RootBracketingFailure { .. } => "root_bracketing_failure",
            Error::InvalidInput(_) => "invalid_input",
            Error::Config(_) => "config_error",
            Error::Io(_) => "io_error",
        }
    }

    pub fn divergence_kind(&self) -> Option<DivergenceKind> {
        match self {
            Error::ResonantDivergence { kind, .. } => Some(*kind),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
