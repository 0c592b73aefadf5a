use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("enumeration of {requested} objects exceeds the guard limit {limit}")]
    Guard { requested: u128, limit: u128 },
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("moduli are not coprime")]
    NotCoprime,
    #[error("residue degree {residue} is not below modulus degree {modulus}")]
    DegreeOverflow { residue: usize, modulus: usize },
    #[error("function has a pole at the place")]
    Pole,
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("condition failure: {0}")]
    Condition(String),
    #[error("support overlap: {0}")]
    SupportOverlap(String),
    #[error("search exhausted after {0} candidates")]
    SearchExhausted(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}
