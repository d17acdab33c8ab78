//! Exact integer matrix algebra: powers, determinants, characteristic
//! polynomials, exterior powers, and root finding for integer polynomials.
//!
//! The pullback of a toral automorphism `x -> Ax` on `H^i(T^d)` is `∧^i(A^T)`.
//! We store `∧^i(A)`: every quantity consumed downstream (trace, determinant,
//! characteristic polynomial) is transpose invariant.

pub mod decimal;
mod matrix;
mod poly;
mod roots;

pub use matrix::{k_subsets, IntMatrix};
pub use poly::{big_to_f64, IntPolynomial};
pub use roots::{cmp_complex, poly_roots, poly_roots_grouped, Root, MAX_ITERATIONS, MAX_PRECISION};
