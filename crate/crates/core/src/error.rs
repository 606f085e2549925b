use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent overflow at position {pos}")]
    ExponentOverflow { pos: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    MixedRings,
    #[error("exponent vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("polynomial of degree {degree} lies outside the truncation window (bound {bound})")]
    OutsideWindow { degree: u32, bound: u32 },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("ideal is not m-primary: {0}")]
    NotMPrimary(String),
    #[error("containment failure: {0}")]
    Containment(String),
    #[error("filtration table exhausted: I_{requested} requested, {available} entries supplied")]
    TableExhausted { requested: usize, available: usize },
    #[error("window too small, increase N: {0}")]
    WindowTooSmall(String),
    #[error("reduction not certified; increase n_max: {0}")]
    ReductionNotCertified(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("job file line {line}: {msg}")]
    Job { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Process exit status: 2 for unreadable input, 3 for a violated
    /// hypothesis, 4 when the window, table or reduction search runs out.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::ExponentOverflow { .. }
            | Error::InvalidRing(_)
            | Error::MixedRings
            | Error::LengthMismatch(..)
            | Error::InvalidOrder(_)
            | Error::Job { .. }
            | Error::Io(_) => 2,
            Error::NotZeroDimensional | Error::NotMPrimary(_) | Error::Containment(_) | Error::Hypothesis(_) => 3,
            Error::OutsideWindow { .. }
            | Error::TableExhausted { .. }
            | Error::WindowTooSmall(_)
            | Error::ReductionNotCertified(_) => 4,
        }
    }
}
