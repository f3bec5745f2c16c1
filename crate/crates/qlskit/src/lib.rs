//! qlskit: a verification and construction toolkit for quantum Latin squares
//! and their isometry-valued generalizations.
//!
//! The library is organized around small dense complex matrices:
//!
//! * [`linalg`] — the numeric kernel: [`linalg::CMatrix`], Kronecker products,
//!   partial traces, the trace inner product, and toleranced operator-class
//!   predicates.
//! * [`qls`] — quantum Latin squares: validation, conjugation, equivalence
//!   transforms, four orthogonality checkers, mutually orthogonal families,
//!   first-row canonicalization, and classicality obstructions.
//! * [`qlis`] — quantum Latin isometry squares, skew projective permutation
//!   matrices, and their orthogonality.
//! * [`codes`] — error-detecting encoders built from orthogonal isometry
//!   squares, single-error detection checks, and unitary error bases.
//! * [`fixtures`] — worked examples shipped both as constructors and as JSON
//!   data files under `data/`.
//! * [`json`] — the JSON file formats shared with the command-line front end.
//! * [`random`] — seeded random generators used by property tests and the
//!   randomized acceptance suite.
//!
//! All values are plain owned data; every operation is a pure function, so
//! everything here is safe to share and call across threads.

pub mod codes;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod qlis;
pub mod qls;
pub mod random;

pub use linalg::{CMatrix, Complex64, Tolerance};

/// Errors shared by every module.
///
/// `Parse`, `Shape`, and `Dimension` indicate malformed input (the CLI maps
/// them to exit code 2); `Domain` indicates a well-formed input that fails a
/// mathematical precondition (exit code 1).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
