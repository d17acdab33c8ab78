use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::hurwitz::{dz_closed_form, hurwitz_dz_at_zero};
use super::{arg_principal, ln_principal};
use crate::error::{Error, Result};

/// Agreement required between the two routes of a regularized product.
pub const ROUTE_TOLERANCE: f64 = 1e-9;
/// Shifts closer than this to an integer are zeros of the product.
pub const NEAR_INTEGER: f64 = 1e-8;

/// Which closed form applies, keyed on the principal argument of `η`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArgCase {
    /// `Arg η ∈ (0, π]`: `1 - e^{-2πis}`
    Upper,
    /// `Arg η ∈ (-π, 0]`: `1 - e^{2πis}`
    Lower,
}

impl ArgCase {
    /// The boundary rays follow the principal-branch identity
    /// `log(-η) = log η ∓ iπ`: `Arg η = π` behaves like the upper case and
    /// `Arg η = 0` like the lower case.
    pub fn of(eta: Complex64) -> Self {
        if arg_principal(eta) > 0.0 { ArgCase::Upper } else { ArgCase::Lower }
    }
}

/// Zeta-regularized product `∏_{v∈ℤ} η(s+v)` by two routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularizedProduct {
    pub case: ArgCase,
    /// `1 - e^{∓2πis}` according to [`ArgCase`].
    pub closed_form: Complex64,
    /// `exp(-∂_zζ_{η,hur}(0,s) - ∂_zζ_{-η,hur}(0,-s)) / (ηs)` with the
    /// derivatives in closed form through `log Γ`.
    pub definitional: Complex64,
    /// Same expression with the derivatives taken by central differences of
    /// the Euler-Maclaurin Hurwitz zeta. Diagnostic; accurate to about 1e-8.
    pub finite_difference: Complex64,
}

impl RegularizedProduct {
    pub fn discrepancy(&self) -> f64 {
        (self.closed_form - self.definitional).norm()
    }
}

fn check_shift(s: Complex64) -> Result<()> {
    let nearest = Complex64::new(s.re.round(), 0.0);
    if (s - nearest).norm() < NEAR_INTEGER {
        return Err(Error::AtZero(format!(
            "shift s = {s} is within {NEAR_INTEGER:e} of the integer {}",
            nearest.re
        )));
    }
    Ok(())
}

/// `∏_{v∈ℤ} η(s+v)`, cross-checked: errors with [`Error::Inconsistent`] if the
/// closed form and the Hurwitz route differ by `ROUTE_TOLERANCE · max(1, |value|)`.
pub fn regularized_product(eta: Complex64, s: Complex64) -> Result<RegularizedProduct> {
    if eta == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("η must be nonzero".into()));
    }
    check_shift(s)?;
    let case = ArgCase::of(eta);
    let two_pi_i_s = Complex64::new(0.0, 2.0 * PI) * s;
    let closed_form = match case {
        ArgCase::Upper => 1.0 - (-two_pi_i_s).exp(),
        ArgCase::Lower => 1.0 - two_pi_i_s.exp(),
    };
    let denom = eta * s;
    let definitional = (-dz_closed_form(s, eta)? - dz_closed_form(-s, -eta)?).exp() / denom;
    let fd_plus = hurwitz_dz_at_zero(s, eta)?.finite_difference;
    let fd_minus = hurwitz_dz_at_zero(-s, -eta)?.finite_difference;
    let finite_difference = (-fd_plus - fd_minus).exp() / denom;

    let out = RegularizedProduct { case, closed_form, definitional, finite_difference };
    let scale = closed_form.norm().max(1.0);
    if out.discrepancy() >= ROUTE_TOLERANCE * scale {
        return Err(Error::Inconsistent(format!(
            "regularized product at η = {eta}, s = {s}: closed form {closed_form} vs \
             Hurwitz route {definitional} (|Δ| = {:e})",
            out.discrepancy()
        )));
    }
    Ok(out)
}

/// One factor `∏_v (s - (log α + 2πiv)/log r)` of the regularized determinant,
/// realized as `∏_v η(s_α + v)` with `η = 2πi/log r` and
/// `s_α = (s log r - log α)/(2πi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegDetFactor {
    pub eta: Complex64,
    pub shift: Complex64,
    /// The regularized product through the Hurwitz route.
    pub value: Complex64,
    /// `1 - α r^{-s}`
    pub expected: Complex64,
}

impl RegDetFactor {
    pub fn discrepancy(&self) -> f64 {
        (self.value - self.expected).norm()
    }
}

pub fn regdet_factor(alpha: Complex64, s: Complex64, r: f64) -> Result<RegDetFactor> {
    if alpha == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("eigenvalue α = 0 has no logarithm".into()));
    }
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("scale r = {r} must be > 1")));
    }
    let log_r = r.ln();
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let eta = two_pi_i / log_r;
    let shift = (s * log_r - ln_principal(alpha)) / two_pi_i;
    let product = regularized_product(eta, shift)?;
    let expected = 1.0 - alpha * (-s * log_r).exp();
    let out = RegDetFactor { eta, shift, value: product.definitional, expected };
    if out.discrepancy() >= ROUTE_TOLERANCE * expected.norm().max(1.0) {
        return Err(Error::Inconsistent(format!(
            "regularized determinant factor for α = {alpha} at s = {s}: {} vs 1 - α r^-s = {expected}",
            out.value
        )));
    }
    Ok(out)
}
