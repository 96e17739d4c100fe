use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("pole of the gamma function at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("series did not converge: {0}")]
    NonConvergence(String),

    #[error("degenerate connection formula: c - a - b is an integer ({0})")]
    DegenerateConnection(f64),

    #[error("Wronskian of the seed set vanishes or changes sign near x = {x}; multi-index rejected")]
    NodalWronskian { x: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("eigen-decomposition failed: {0}")]
    Eigen(String),

    #[error("numeric domain violation at x = {x}, t = {t}: {reason}")]
    Domain { x: f64, t: f64, reason: String },

    #[error("non-finite result: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
