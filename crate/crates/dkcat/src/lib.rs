//! Exact-arithmetic toolkit for homotopy-theoretic constructions at desk
//! scale: non-negatively graded chain complexes and truncated simplicial
//! modules over `Q` or `F_p`, the Dold-Kan pair between them, categories
//! enriched in either ambient with DK-equivalence / DK-fibration predicates,
//! cocategory intervals with an axiom verifier, and the path-object
//! factorization of the diagonal of a dg-category.
//!
//! Everything is computed over a field with canonical bases, so equality of
//! objects and maps is bit-exact matrix equality and every report is
//! deterministic. See the `examples/` directory for runnable tours of each
//! subsystem, and the `dkcat` binary for the batch front-end.

pub mod chain;
pub mod enriched;
pub mod field;
pub mod fincat;
// pub mod gen;
// pub mod intervals;
// pub mod io;
pub mod matrix;
// pub mod path;
pub mod simplicial;

pub use field::{Field, Scalar};
pub use matrix::Matrix;

use thiserror::Error as ThisError;

/// Crate-wide error type. `Shape` and parse variants indicate malformed
/// input; the rest indicate mathematically invalid requests.
#[derive(ThisError, Debug)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("cannot parse field {0:?} (expected Q or F<p>)")]
    FieldParse(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("operation requires a finite prime field, got Q")]
    RequiresFiniteField,
    #[error("truncation level {level} below top degree {top}")]
    TruncationTooLow { level: usize, top: usize },
    #[error("degree-0 component is not a chain map; transpose cannot land in truncated degree 0")]
    NotACycle,
    #[error("unknown predicate {0:?}")]
    UnknownPredicate(String),
    #[error("enumeration limit exceeded: {0}")]
    EnumerationLimit(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("interval comparison map is not invertible; strict composition is undefined")]
    ComparisonNotIso,
    #[error("gluing condition failed: {0}")]
    Gluing(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("file format: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
