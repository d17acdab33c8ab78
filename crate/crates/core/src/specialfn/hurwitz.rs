use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::even_bernoulli;
use super::gamma::{is_nonpositive_integer, log_gamma};
use super::ln_principal;
use crate::error::{Error, Result};

/// Terms summed directly before the Euler-Maclaurin tail.
pub const DIRECT_TERMS: usize = 30;
/// Bernoulli correction pairs in the tail; valid for `Re z > -(2K - 1)`.
pub const BERNOULLI_PAIRS: usize = 12;
/// Step of the central difference in [`hurwitz_dz_at_zero`].
pub const FD_STEP: f64 = 1e-5;

/// `(s + n)^(-z)` on the principal branch.
fn shifted_power(s: Complex64, n: f64, z: Complex64) -> Complex64 {
    (-z * ln_principal(s + n)).exp()
}

/// Hurwitz zeta `Σ_{n>=0} (s+n)^(-z)`, continued to all `z != 1` by
/// Euler-Maclaurin summation.
///
/// The series is defined for `Re s > 0`. Shifts with `Re s <= 0` are
/// accepted when `s` is not a non-positive integer: the leading terms are then
/// summed directly on the principal branch until the tail lies in the right
/// half-plane.
pub fn hurwitz_zeta(z: Complex64, s: Complex64) -> Result<Complex64> {
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::AtPole("ζ_hur at z = 1".into()));
    }
    if is_nonpositive_integer(s) {
        return Err(Error::AtPole(format!("ζ_hur shift s = {s} hits a zero base")));
    }
    if z.re <= -(2.0 * BERNOULLI_PAIRS as f64 - 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Re z = {} outside the Euler-Maclaurin range",
            z.re
        )));
    }
    let direct = DIRECT_TERMS.max((DIRECT_TERMS as f64 - s.re).ceil() as usize);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..direct {
        sum += shifted_power(s, n as f64, z);
    }
    let a = s + direct as f64;
    let a_pow = shifted_power(a, 0.0, z); // a^(-z)
    sum += a * a_pow / (z - 1.0);
    sum += 0.5 * a_pow;

    let b = even_bernoulli();
    let inv_a = a.inv();
    // rising factorial z(z+1)...(z+2k-2) / (2k)!, times a^(-z-2k+1)
    let mut coeff = z / 2.0;
    let mut power = a_pow * inv_a;
    for k in 1..=BERNOULLI_PAIRS {
        sum += b[k - 1] * coeff * power;
        let m = 2 * k as u32;
        coeff *= (z + (m - 1) as f64) * (z + m as f64) / ((m + 1) * (m + 2)) as f64;
        power *= inv_a * inv_a;
    }
    Ok(sum)
}

/// Scaled Hurwitz zeta `Σ (η(s+n))^(-z) = η^(-z) ζ_hur(z, s)`, `log η` principal.
pub fn hurwitz_zeta_scaled(z: Complex64, s: Complex64, eta: Complex64) -> Result<Complex64> {
    if eta == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("η must be nonzero".into()));
    }
    Ok((-z * ln_principal(eta)).exp() * hurwitz_zeta(z, s)?)
}

/// `∂_z ζ_{η,hur}(z, s)` at `z = 0`, by two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DzAtZero {
    /// `-log η · (1/2 - s) + log Γ(s) - (1/2) log 2π`
    pub closed_form: Complex64,
    /// Central difference of [`hurwitz_zeta_scaled`] at `z = ±FD_STEP`.
    pub finite_difference: Complex64,
}

impl DzAtZero {
    pub fn discrepancy(&self) -> f64 {
        (self.closed_form - self.finite_difference).norm()
    }
}

pub fn hurwitz_dz_at_zero(s: Complex64, eta: Complex64) -> Result<DzAtZero> {
    let closed_form = dz_closed_form(s, eta)?;
    let h = Complex64::new(FD_STEP, 0.0);
    let plus = hurwitz_zeta_scaled(h, s, eta)?;
    let minus = hurwitz_zeta_scaled(-h, s, eta)?;
    let finite_difference = (plus - minus) / (2.0 * FD_STEP);
    Ok(DzAtZero { closed_form, finite_difference })
}

/// Closed form of `∂_z ζ_{η,hur}(0, s)` alone, without the numeric check.
pub fn dz_closed_form(s: Complex64, eta: Complex64) -> Result<Complex64> {
    if eta == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParameter("η must be nonzero".into()));
    }
    Ok(-ln_principal(eta) * (0.5 - s) + log_gamma(s)? - 0.5 * (2.0 * PI).ln())
}
