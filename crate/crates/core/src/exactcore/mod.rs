//! Exact coefficient field, polynomial arithmetic and linear algebra.

pub mod field;
pub mod matrix;
pub mod modular;
pub mod multipoly;
pub mod parse;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod unipoly;

pub use field::{Field, Fp, PRIME_A, PRIME_B};
pub use matrix::ExactMatrix;
pub use multipoly::{Mono, MultiPoly};
pub use parse::{parse_polynomial, print_polynomial};
pub use resultant::resultant;
pub use roots::gaussian_rational_roots;
pub use scalar::Scalar;
pub use unipoly::UniPoly;

/// Monic gcd of a list of univariate polynomials.
pub fn gcd_many(fs: &[UniPoly]) -> Result<UniPoly, crate::Error> {
    UniPoly::gcd_many(fs)
}

/// `f / gcd(f, f')`, monic.
pub fn squarefree_part(f: &UniPoly) -> Result<UniPoly, crate::Error> {
    f.squarefree_part()
}

/// Null-space basis of an exact matrix.
pub fn kernel(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    m.kernel()
}

/// `f(A x)` for an invertible matrix `A`.
pub fn linear_change(f: &MultiPoly, a: &ExactMatrix) -> Result<MultiPoly, crate::Error> {
    f.linear_change(a)
}
