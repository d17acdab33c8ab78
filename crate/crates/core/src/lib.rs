//! Dynamical zeta functions of mapping tori.
//!
//! A diffeomorphism `φ` of a closed manifold `S` and a scale `r > 1` define the
//! mapping torus `S × ℝ / (φ(x), t) ~ (x, t + log r)` with its suspension flow.
//! This crate computes the flow's zeta function exactly as a rational function
//! in `u = r^{-s}` from the action of `φ` on the cohomology of `S`, and checks
//! it against independent routes:
//!
//! * [`dynamics`]: exact fixed-point and orbit counts for toral monodromies,
//!   and truncated Euler products over closed orbits;
//! * [`specialfn`]: Hurwitz-zeta regularized products, realizing each
//!   cohomological factor as a zeta-regularized determinant;
//! * [`zeta`]: the functional equation, orders, special values and the
//!   spectrum of the infinitesimal generator.
//!
//! Everything integer-valued is exact ([`exactlinalg`]); floating point only
//! enters at evaluation time.

pub mod cli;
pub mod cohomology;
pub mod dynamics;
pub mod error;
pub mod exactlinalg;
pub mod specialfn;
pub mod zeta;

pub use cohomology::{CohomologyAction, Source, ValidationReport};
pub use dynamics::{Convention, FlowParams, OrbitTable};
pub use error::{Error, Result};
pub use exactlinalg::{IntMatrix, IntPolynomial};
pub use zeta::{build_zeta, ThetaEigenvalue, ZetaRational};

