//! Exact computations on the totally nonnegative part of the wonderful
//! compactification of `PGL_n` for small `n`.
//!
//! The crate is layered bottom-up:
//!
//! * [`weyl`] permutations, Bruhat order, parabolic quotients, positive subexpressions
//! * [`group`] the pinned matrix group, factorizations, flags and relative positions
//! * [`rep`] exterior powers and the stratum embedding data
//! * [`tnn`] positive parametrizations and samplers
//! * [`strata`] points of the boundary strata, limits and membership
//! * [`cells`] cell labels, sampling, classification and dimension checks
//! * [`io`] JSON forms and [`verify`] the packaged verification suites

pub mod cells;
mod dual;
pub mod group;
pub mod io;
pub mod laurent;
pub mod linalg;
pub mod rational;
pub mod rep;
pub mod strata;
pub mod tnn;
pub mod verify;
pub mod weyl;

pub use cells::CellLabel;
pub use group::GroupMatrix;
pub use linalg::{Mat, QMat};
pub use rational::Rational;
pub use strata::CompactPoint;
pub use weyl::{Parabolic, PositiveSubexpression, ReducedWord, WeylElement};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("{v} is not below {w} in Bruhat order")]
    NotBelow { v: String, w: String },
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("torus coordinate {0} is zero")]
    ZeroTorusCoordinate(usize),
    #[error("matrix is outside the open cell B-B+ (leading minor {0} vanishes)")]
    NotInBigCell(usize),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coordinate {0} is negative")]
    NegativeCoordinate(usize),
    #[error("coordinate {0} is not strictly positive")]
    NonpositiveCoordinate(usize),
    #[error("unsupported stratum: {0}")]
    UnsupportedStratum(String),
    #[error("cell is empty: {0}")]
    EmptyCell(String),
    #[error("parabolics are not opposed")]
    NotOpposed,
    #[error("not strictly totally positive: {0}")]
    PositivityCertification(String),
    #[error("invalid exponent vector: {0}")]
    InvalidExponents(String),
    #[error("chart degenerates at the sample: {0}")]
    DegenerateChart(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
