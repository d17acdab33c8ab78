use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{big_to_f64, IntPolynomial};
use crate::error::{Error, Result};

/// Iteration cap for the simultaneous root iteration.
pub const MAX_ITERATIONS: usize = 1000;

/// Digits beyond this cannot be certified in double arithmetic.
pub const MAX_PRECISION: u32 = 15;

/// Largest |constant term| for which rational roots are searched by divisor enumeration.
const RATIONAL_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// A distinct root together with its exact multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// True when the root was found as an exact rational root.
    pub exact: bool,
}

/// All complex roots of `p`, repeated by multiplicity, sorted by real part
/// then imaginary part.
pub fn poly_roots(p: &IntPolynomial, precision: u32) -> Result<Vec<Complex64>> {
    Ok(poly_roots_grouped(p, precision)?
        .into_iter()
        .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
        .collect())
}

/// Distinct roots of `p` with multiplicities.
///
/// Multiplicities come from an exact square-free decomposition over ℤ, so a
/// repeated root is never split numerically. Rational roots are extracted
/// exactly; the remaining square-free factors go through Aberth iteration.
pub fn poly_roots_grouped(p: &IntPolynomial, precision: u32) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if precision > MAX_PRECISION {
        return Err(Error::PrecisionUnsupported(precision));
    }
    let tol = 10f64.powi(-(precision as i32) - 2);
    let mut out = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        let (rational, rest) = split_rational_roots(&factor);
        out.extend(rational.into_iter().map(|(num, den)| Root {
            value: Complex64::new(big_ratio_to_f64(&num, &den), 0.0),
            multiplicity: mult,
            exact: true,
        }));
        if rest.degree().unwrap_or(0) > 0 {
            for z in aberth(&rest, tol)? {
                out.push(Root { value: z, multiplicity: mult, exact: false });
            }
        }
    }
    out.sort_by(|a, b| cmp_complex(&a.value, &b.value));
    Ok(out)
}

/// Ordering by real part, then imaginary part.
pub fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    match (num.to_f64(), den.to_f64()) {
        (Some(a), Some(b)) => a / b,
        _ => f64::NAN,
    }
}

fn divisors(n: u64) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            if n / d != d {
                large.push(n / d);
            }
            small.push(d);
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small.into_iter().map(BigInt::from).collect()
}

/// Exact rational roots `num/den` of a square-free primitive factor, and the
/// cofactor left after dividing them out.
fn split_rational_roots(f: &IntPolynomial) -> (Vec<(BigInt, BigInt)>, IntPolynomial) {
    let mut roots = Vec::new();
    let mut rest = f.clone();
    // Strip x = 0 first.
    while rest.degree().unwrap_or(0) > 0 && rest.coeff(0).is_zero() {
        roots.push((BigInt::zero(), BigInt::one()));
        rest = rest.exact_div(&IntPolynomial::from_i64(&[0, 1])).unwrap();
    }
    let (a0, an) = match (rest.coeffs().first(), rest.leading()) {
        (Some(a0), Some(an)) if rest.degree().unwrap_or(0) > 0 => (a0.clone(), an.clone()),
        _ => return (roots, rest),
    };
    let (Some(a0), Some(an)) = (a0.abs().to_u64(), an.abs().to_u64()) else {
        return (roots, rest);
    };
    if a0 > RATIONAL_SEARCH_LIMIT || an > RATIONAL_SEARCH_LIMIT {
        return (roots, rest);
    }
    let nums = divisors(a0);
    let dens = divisors(an);
    for q in &dens {
        for p in &nums {
            if p.gcd(q) != BigInt::one() {
                continue;
            }
            for sign in [1, -1] {
                if rest.degree().unwrap_or(0) == 0 {
                    return (roots, rest);
                }
                let num = p * BigInt::from(sign);
                // q*x - num
                let lin = IntPolynomial::new(vec![-num.clone(), q.clone()]);
                if let Some(quot) = rest.exact_div(&lin) {
                    rest = quot;
                    roots.push((num, q.clone()));
                }
            }
        }
    }
    (roots, rest)
}

fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth-Ehrlich iteration on a square-free polynomial with no rational roots.
fn aberth(f: &IntPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    let n = f.degree().expect("nonzero");
    let lead = big_to_f64(f.leading().unwrap());
    let coeffs: Vec<f64> = f.coeffs().iter().map(|c| big_to_f64(c) / lead).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter(
            "polynomial coefficients exceed double range".into(),
        ));
    }
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut last_step = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        let mut converged = true;
        for k in 0..n {
            let (p, dp) = horner_with_derivative(&coeffs, z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            let s = step.norm();
            max_step = max_step.max(s);
            let floor = 4.0 * f64::EPSILON * z[k].norm().max(1.0);
            if s > tol.max(floor) {
                converged = false;
            }
        }
        last_step = max_step;
        if converged {
            return Ok(symmetrize(z));
        }
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, last_step })
}

/// Real-coefficient polynomials have conjugate-symmetric roots; snap
/// numerically real roots onto the axis and make conjugate pairs exact.
fn symmetrize(mut z: Vec<Complex64>) -> Vec<Complex64> {
    let scale = |w: &Complex64| 1e-12 * w.norm().max(1.0);
    for w in z.iter_mut() {
        if w.im.abs() < scale(w) {
            w.im = 0.0;
        }
    }
    let mut used = vec![false; z.len()];
    for i in 0..z.len() {
        if used[i] || z[i].im <= 0.0 {
            continue;
        }
        let partner = (0..z.len())
            .filter(|&j| !used[j] && j != i && z[j].im < 0.0)
            .min_by(|&a, &b| {
                (z[a] - z[i].conj()).norm().total_cmp(&(z[b] - z[i].conj()).norm())
            });
        if let Some(j) = partner {
            let re = 0.5 * (z[i].re + z[j].re);
            let im = 0.5 * (z[i].im - z[j].im);
            z[i] = Complex64::new(re, im);
            z[j] = Complex64::new(re, -im);
            used[i] = true;
            used[j] = true;
        }
    }
    z
}
