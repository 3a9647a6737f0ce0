use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("invalid cube: {0}")]
    InvalidCube(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("unit ideal: {0}")]
    UnitIdeal(String),
    #[error("lift infeasible: {0}")]
    LiftInfeasible(String),
    #[error("internal inconsistency: {0}")]
    Incoherent(String),
}

impl Error {
    /// Exit code under the command-line contract: 2 for input problems, 3 for caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) => 3,
            _ => 2,
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable(_) => "unknown_variable",
            Error::RingMismatch(_) => "ring_mismatch",
            Error::Dimension(_) => "dimension",
            Error::OutOfRange(_) => "out_of_range",
            Error::Input(_) => "input",
            Error::InvalidCube(_) => "invalid_cube",
            Error::Precondition(_) => "precondition",
            Error::CapExceeded(_) => "cap_exceeded",
            Error::UnitIdeal(_) => "unit_ideal",
            Error::LiftInfeasible(_) => "lift_infeasible",
            Error::Incoherent(_) => "incoherent",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
