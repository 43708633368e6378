use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole encountered: {0}")]
    PoleEncountered(String),
    #[error("element {0} is not in the point set")]
    ElementNotInSet(String),
    #[error("derangement sum undefined for n_A = {n_a} < n_B = {n_b}")]
    DomainViolation { n_a: usize, n_b: usize },
    #[error("point set is not distinct: {0}")]
    DistinctnessViolation(String),
    #[error("no closed form for M = {m} > r + 1 (r = {r})")]
    CaseOutOfRange { m: i64, r: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}
