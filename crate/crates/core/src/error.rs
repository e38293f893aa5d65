use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division error: {0}")]
    Division(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("input is not symmetric in e1, e2, e3: {0}")]
    Symmetry(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("elimination error: {0}")]
    Elimination(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("point construction failed: {0}")]
    Construction(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}
