use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: String, reason: String },

    #[error("grouping tolerance {tol:e} is not below the smallest Bohr-frequency gap {gap:e}")]
    AmbiguousGrouping { tol: f64, gap: f64 },

    #[error("steady state is under-determined: rate matrix kernel has dimension {kernel_dim}; supply the dark-state population")]
    Underdetermined { kernel_dim: usize },

    #[error("steady state is unique; a dark-state population must not be supplied")]
    OverSpecified,

    #[error("dark state |e4> is absent: requires lambda1 = lambda2 = lambda3 = 1")]
    DarkStateAbsent,

    #[error("control derivative vanishes: |dQ_M| = {delta:e} (scale {scale:e})")]
    DegenerateControl { delta: f64, scale: f64 },

    #[error("closed-form denominator is singular: |D| = {0:e}")]
    SingularDenominator(f64),

    #[error("integration failed at t = {t}: {reason} (step {step:e}, {steps} steps taken)")]
    Integration {
        t: f64,
        step: f64,
        steps: usize,
        reason: String,
    },

    #[error("non-physical state: {0}")]
    NonPhysicalState(String),

    #[error("invalid drive: {0}")]
    InvalidDrive(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.into(),
            reason: reason.into(),
        }
    }
}
