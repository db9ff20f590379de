//! Exact line geometry of hypersurfaces in P^4.
//!
//! The crate counts lines through points of a hypersurface, tests the Fano
//! scheme of lines for reducedness, measures incidence invariants of lines,
//! builds the standard families of threefolds covered by a 2-dimensional
//! family of lines, and classifies probe results against the known list.
//! All counting is exact: arithmetic is over Q(i), or over large prime
//! fields where noted.

pub mod catalog;
pub mod cli;
pub mod exactcore;
pub mod geometry;
pub mod probes;
pub mod solve;
pub mod suite;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero operand")]
    ZeroOperand,
    #[error("all inputs are zero")]
    AllZero,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable { name: String, line: usize, column: usize },
    #[error("positive-dimensional system: {0}")]
    PositiveDimensional(String),
    #[error("positive-dimensional at point")]
    PositiveDimensionalAtPoint,
    #[error("no generic position found")]
    NoGenericPosition,
    #[error("point not on hypersurface")]
    NotOnHypersurface,
    #[error("singular base point")]
    SingularBasePoint,
    #[error("proportional points")]
    ProportionalPoints,
    #[error("line not on hypersurface")]
    LineNotOnHypersurface,
    #[error("lines not skew")]
    LinesNotSkew,
    #[error("degree {0} outside the hypothesis deg >= 4")]
    DegreeTooSmall(u32),
    #[error("no general point found")]
    NoGeneralPoint,
    #[error("insufficient rational data")]
    InsufficientRationalData,
    #[error("degree too low")]
    DegreeTooLow,
    #[error("degree too high or degenerate samples")]
    DegreeTooHigh,
    #[error("degenerate projection")]
    DegenerateProjection,
    #[error("line meets projection center")]
    LineMeetsCenter,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{0}")]
    Invalid(String),
}
