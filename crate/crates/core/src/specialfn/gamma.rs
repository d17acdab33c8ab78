use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::even_bernoulli;
use super::ln_principal;
use crate::error::{Error, Result};

/// Stirling terms used once the argument is shifted to `Re >= SHIFT_TARGET`.
const STIRLING_TERMS: usize = 12;
const SHIFT_TARGET: f64 = 15.0;

/// True when `s` is exactly a non-positive integer.
pub fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// Principal branch of `log Γ(s)`: analytic off the non-positive real axis,
/// real on the positive axis, and on the negative axis the limit from above.
///
/// Shifts the argument up by the recurrence `log Γ(s) = log Γ(s+n) - Σ log(s+k)`
/// and then sums the Stirling series with exact Bernoulli coefficients.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::AtPole(format!("log Γ at s = {s}")));
    }
    if !s.is_finite() {
        return Err(Error::InvalidParameter(format!("log Γ of non-finite {s}")));
    }
    let shift = (SHIFT_TARGET - s.re).ceil().max(0.0) as usize;
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        correction += ln_principal(s + k as f64);
    }
    let z = s + shift as f64;
    Ok(stirling(z) - correction)
}

fn stirling(z: Complex64) -> Complex64 {
    let b = even_bernoulli();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for k in 1..=STIRLING_TERMS {
        let n = 2 * k;
        series += term * (b[k - 1] / (n * (n - 1)) as f64);
        term *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}
