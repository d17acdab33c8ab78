//! Complex special functions behind the regularized determinants: log Γ,
//! the Hurwitz zeta function and zeta-regularized products over `ℤ`.
//!
//! All logarithms are principal. The Bernoulli table is built once on first
//! use and is read-only afterwards.

use num_complex::Complex64;

mod bernoulli;
mod gamma;
mod hurwitz;
mod regprod;

pub use bernoulli::{bernoulli_exact, even_bernoulli};
pub use gamma::log_gamma;
pub use hurwitz::{
    dz_closed_form, hurwitz_dz_at_zero, hurwitz_zeta, hurwitz_zeta_scaled, DzAtZero,
    BERNOULLI_PAIRS, DIRECT_TERMS, FD_STEP,
};
pub use regprod::{
    regdet_factor, regularized_product, ArgCase, RegDetFactor, RegularizedProduct,
    NEAR_INTEGER, ROUTE_TOLERANCE,
};

/// Principal logarithm with `-0.0` imaginary parts treated as `+0.0`, so the
/// negative real axis always maps to `Arg = π`.
pub fn ln_principal(z: Complex64) -> Complex64 {
    let mut z = z;
    if z.im == 0.0 {
        z.im = 0.0;
    }
    z.ln()
}

/// Principal argument in `(-π, π]`, with the same signed-zero rule.
pub fn arg_principal(z: Complex64) -> f64 {
    ln_principal(z).im
}
