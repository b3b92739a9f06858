//! Toolkit for finite-dimensional superalgebras over exact rational
//! scalars: the super bracket calculus, conservativity and terminality
//! decision procedures, Jacobi/quasiunity structure, the universal
//! conservative superalgebra U(n,m) with its Kantor product, and the
//! adjoint embedding.

pub mod brackets;
pub mod catalog;
pub mod conservative;
pub mod embedding;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod rat;
pub mod report;
pub mod superspace;
pub mod universal;

pub use rat::Rat;

/// Crate-wide error type. Decision outcomes (NotConservative, a missing
/// quasiunity, a false verdict) are values, not errors; `Error` is for
/// contract violations and malformed input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("operator is not invertible")]
    NotInvertible,
    #[error("line {line}: {msg}")]
    Load { line: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("internal cross-check failed (sign bug?): {0}")]
    RouteMismatch(String),
    #[error("unknown catalog algebra '{name}'; known: {known}")]
    UnknownCatalog { name: String, known: String },
}

pub type Result<T> = std::result::Result<T, Error>;
