//! The zeta function of the suspension flow as a rational function of
//! `u = r^{-s}`:
//!
//! ```text
//! ζ(s) = ∏_i det(1 - φ*_i u)^{(-1)^{i+1}}
//! ```
//!
//! Factors are kept per degree and never cancelled against each other, so
//! orders and special values stay attributable to a cohomological degree.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::cohomology::CohomologyAction;
use crate::dynamics::big_times_exp;
use crate::error::{Error, Result};
use crate::exactlinalg::{poly_roots_grouped, IntPolynomial};
use crate::specialfn::{arg_principal, regdet_factor, RegDetFactor};

/// A denominator factor smaller than this in modulus is a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;
/// Relative distance below which an eigenvalue is taken to equal `r^k`.
pub const RESONANCE_TOLERANCE: f64 = 1e-8;
/// Digits requested from the root finder for internal spectral work.
pub const ROOT_PRECISION: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaFactor {
    pub degree: usize,
    /// `det(1 - φ*_i u)`, ascending coefficients.
    pub poly: IntPolynomial,
    /// `(-1)^(i+1)`
    pub exponent: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaRational {
    pub factors: Vec<ZetaFactor>,
    /// Product of the odd-degree factors.
    pub numerator: IntPolynomial,
    /// Product of the even-degree factors.
    pub denominator: IntPolynomial,
    pub euler_characteristic: i64,
}

pub fn build_zeta(action: &CohomologyAction) -> ZetaRational {
    let factors: Vec<ZetaFactor> = action
        .det_one_minus_polys()
        .into_iter()
        .enumerate()
        .map(|(degree, poly)| ZetaFactor {
            degree,
            poly,
            exponent: CohomologyAction::zeta_exponent(degree),
        })
        .collect();
    let numerator =
        IntPolynomial::product(factors.iter().filter(|f| f.exponent > 0).map(|f| &f.poly));
    let denominator =
        IntPolynomial::product(factors.iter().filter(|f| f.exponent < 0).map(|f| &f.poly));
    ZetaRational {
        factors,
        numerator,
        denominator,
        euler_characteristic: action.euler_characteristic(),
    }
}

fn check_scale(r: f64) -> Result<f64> {
    if r > 1.0 && r.is_finite() {
        Ok(r.ln())
    } else {
        Err(Error::InvalidParameter(format!("scale r = {r} must be a finite real > 1")))
    }
}

impl ZetaRational {
    /// `u = r^{-s}`
    pub fn u(s: Complex64, r: f64) -> Complex64 {
        (-s * r.ln()).exp()
    }

    /// Value as a function of `u` directly.
    pub fn evaluate_u(&self, u: Complex64) -> Result<Complex64> {
        if !u.is_finite() {
            return Err(Error::Overflow(format!("u = r^-s is not finite ({u})")));
        }
        let mut value = Complex64::new(1.0, 0.0);
        for f in &self.factors {
            let p = f.poly.eval_complex(u);
            if f.exponent < 0 {
                if p.norm() < POLE_TOLERANCE {
                    return Err(Error::Pole(format!(
                        "det(1 - φ*_{} u) vanishes at u = {u} (|P| = {:e})",
                        f.degree,
                        p.norm()
                    )));
                }
                value /= p;
            } else {
                value *= p;
            }
        }
        if !value.is_finite() {
            return Err(Error::Overflow(format!("ζ overflows at u = {u}")));
        }
        Ok(value)
    }
}

/// `ζ(s)` with `u = r^{-s}`.
pub fn evaluate(z: &ZetaRational, s: Complex64, r: f64) -> Result<Complex64> {
    let log_r = check_scale(r)?;
    z.evaluate_u((-s * log_r).exp())
}

/// `-(d/ds) log ζ(s) = log r · u Σ_i e_i P_i'(u)/P_i(u)`.
pub fn log_derivative(z: &ZetaRational, s: Complex64, r: f64) -> Result<Complex64> {
    let log_r = check_scale(r)?;
    let u = (-s * log_r).exp();
    z.evaluate_u(u)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for f in &z.factors {
        let p = f.poly.eval_complex(u);
        if p == Complex64::new(0.0, 0.0) {
            return Err(Error::AtZero(format!("det(1 - φ*_{} u) = 0 at s = {s}", f.degree)));
        }
        acc += f.exponent as f64 * f.poly.derivative().eval_complex(u) / p;
    }
    Ok(log_r * u * acc)
}

/// How `r^k` is compared with eigenvalues.
#[derive(Debug, Clone, PartialEq)]
enum Target {
    /// `r^k = t` (or `1/t` when `inverse`) for an exact integer `t`.
    Exact { t: BigInt, inverse: bool },
    Numeric(Complex64),
}

fn target(k: Complex64, r: f64) -> Target {
    let exact_k = k.im == 0.0 && k.re.fract() == 0.0 && k.re.abs() <= 4096.0;
    if exact_k && r.fract() == 0.0 && r < 9.0e15 {
        let base = BigInt::from(r as u64);
        let t = Pow::pow(&base, k.re.abs() as u32);
        return Target::Exact { t, inverse: k.re < 0.0 };
    }
    Target::Numeric((k * r.ln()).exp())
}

fn resonant(alpha: Complex64, c: Complex64) -> bool {
    (alpha - c).norm() < RESONANCE_TOLERANCE * c.norm().max(1.0)
}

/// `ord_{s=k} ζ` computed two ways.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub k: Complex64,
    pub order: i64,
    /// Multiplicity of `r^k` as an eigenvalue of `φ*_i`.
    pub per_degree: Vec<usize>,
    /// `Σ (-1)^(i+1)` times the eigenvalue multiplicities.
    pub from_eigenvalues: i64,
    /// Vanishing order of numerator minus denominator at `u = r^{-k}`.
    pub from_rational_function: i64,
    /// True when both methods ran in exact integer arithmetic.
    pub exact: bool,
    /// Numeric path only: distance from `r^k` to the nearest non-resonant
    /// eigenvalue, relative to `max(1, |r^k|)`.
    pub margin: Option<f64>,
    pub tolerance: f64,
}

fn numeric_multiplicity(p: &IntPolynomial, at: Complex64, margin: &mut f64) -> Result<usize> {
    let scale = at.norm().max(1.0);
    let mut mult = 0;
    for root in poly_roots_grouped(p, ROOT_PRECISION)? {
        if resonant(root.value, at) {
            mult += root.multiplicity;
        } else {
            *margin = margin.min((root.value - at).norm() / scale);
        }
    }
    Ok(mult)
}

pub fn order_report(
    z: &ZetaRational,
    action: &CohomologyAction,
    k: Complex64,
    r: f64,
) -> Result<OrderReport> {
    let log_r = check_scale(r)?;
    let sign = |i: usize| CohomologyAction::zeta_exponent(i) as i64;
    let tgt = target(k, r);
    let mut margin = f64::INFINITY;
    let per_degree: Vec<usize> = match &tgt {
        Target::Exact { t, inverse } => action
            .phi_star()
            .iter()
            .map(|a| {
                let cp = a.char_poly();
                if *inverse { cp.reciprocal_root_multiplicity(t) } else { cp.root_multiplicity(t) }
            })
            .collect(),
        Target::Numeric(c) => action
            .phi_star()
            .iter()
            .map(|a| numeric_multiplicity(&a.char_poly(), *c, &mut margin))
            .collect::<Result<_>>()?,
    };
    let from_eigenvalues: i64 = per_degree.iter().enumerate().map(|(i, &m)| sign(i) * m as i64).sum();

    let from_rational_function = match &tgt {
        Target::Exact { t, inverse: false } => {
            z.numerator.reciprocal_root_multiplicity(t) as i64
                - z.denominator.reciprocal_root_multiplicity(t) as i64
        }
        Target::Exact { t, inverse: true } => {
            z.numerator.root_multiplicity(t) as i64 - z.denominator.root_multiplicity(t) as i64
        }
        Target::Numeric(_) => {
            let u0 = (-k * log_r).exp();
            let mut unused = f64::INFINITY;
            numeric_multiplicity(&z.numerator, u0, &mut unused)? as i64
                - numeric_multiplicity(&z.denominator, u0, &mut unused)? as i64
        }
    };
    if from_eigenvalues != from_rational_function {
        return Err(Error::Inconsistent(format!(
            "order at k = {k}: eigenvalue count gives {from_eigenvalues}, \
             rational function gives {from_rational_function}"
        )));
    }
    Ok(OrderReport {
        k,
        order: from_eigenvalues,
        per_degree,
        from_eigenvalues,
        from_rational_function,
        exact: matches!(tgt, Target::Exact { .. }),
        margin: matches!(tgt, Target::Numeric(_)).then_some(margin).filter(|m| m.is_finite()),
        tolerance: RESONANCE_TOLERANCE,
    })
}

/// `ord_{s=k} ζ(s)`, cross-checked.
pub fn order_at(z: &ZetaRational, action: &CohomologyAction, k: Complex64, r: f64) -> Result<i64> {
    Ok(order_report(z, action, k, r)?.order)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeflatedFactor {
    pub degree: usize,
    pub multiplicity: usize,
    /// `P_i(u) / (1 - r^k u)^mult` at `u = r^{-k}`.
    pub value: Complex64,
}

/// `lim_{s->k} (s-k)^{-ord} ζ(s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialValue {
    pub k: Complex64,
    pub order: i64,
    pub value: Complex64,
    pub factors: Vec<DeflatedFactor>,
    /// `∏ Q_i(r^{-k})^{e_i}` as an exact fraction, when `r^k` is an integer.
    /// The special value is this times `(log r)^ord`.
    #[serde(with = "rational_string")]
    pub rational_part: Option<BigRational>,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|q| q.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        let s: Option<String> = Option::deserialize(d)?;
        s.map(|t| t.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

/// `P(u0)` after removing `(1 - c u)^m`: `P^{(m)}(u0) / (m! (-c)^m)`.
fn deflate_numeric(p: &IntPolynomial, m: usize, c: Complex64) -> Complex64 {
    let mut d = p.clone();
    let mut fact = 1.0;
    for j in 1..=m {
        d = d.derivative();
        fact *= j as f64;
    }
    d.eval_complex(c.inv()) / (fact * (-c).powu(m as u32))
}

/// `Q(1/t)` exactly.
fn eval_at_reciprocal(q: &IntPolynomial, t: &BigInt) -> BigRational {
    let deg = q.degree().unwrap_or(0);
    let num = q.reversed(deg).eval(t);
    BigRational::new(num, Pow::pow(t, deg as u32))
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn special_value(
    z: &ZetaRational,
    action: &CohomologyAction,
    k: Complex64,
    r: f64,
) -> Result<SpecialValue> {
    let log_r = check_scale(r)?;
    let ord = order_report(z, action, k, r)?;
    let tgt = target(k, r);
    let c = (k * log_r).exp();
    let mut rational = Some(BigRational::one());
    let mut value = Complex64::new(log_r.powi(ord.order as i32), 0.0);
    let mut factors = Vec::with_capacity(z.factors.len());
    for (f, &mult) in z.factors.iter().zip(&ord.per_degree) {
        let q_val = match &tgt {
            Target::Exact { t, inverse: false } if !t.is_zero() => {
                let lin = IntPolynomial::new(vec![BigInt::one(), -t.clone()]);
                let q = f.poly.exact_div(&lin.pow(mult as u32)).ok_or_else(|| {
                    Error::Inconsistent(format!(
                        "(1 - {t} u)^{mult} does not divide det(1 - φ*_{} u)",
                        f.degree
                    ))
                })?;
                let exact = eval_at_reciprocal(&q, t);
                if let Some(acc) = rational.as_mut() {
                    if f.exponent > 0 {
                        *acc *= &exact;
                    } else if exact.is_zero() {
                        return Err(Error::Inconsistent("deflated denominator vanishes".into()));
                    } else {
                        *acc /= &exact;
                    }
                }
                Complex64::new(rational_to_f64(&exact), 0.0)
            }
            _ => {
                rational = None;
                deflate_numeric(&f.poly, mult, c)
            }
        };
        value = if f.exponent > 0 { value * q_val } else { value / q_val };
        factors.push(DeflatedFactor { degree: f.degree, multiplicity: mult, value: q_val });
    }
    if let Some(q) = &rational {
        // the exact product is more accurate than the running float product
        value = Complex64::new(log_r.powi(ord.order as i32) * rational_to_f64(q), 0.0);
    }
    Ok(SpecialValue { k, order: ord.order, value, factors, rational_part: rational })
}

/// Truncated series `(log r)^ord · exp(Σ_{m<=M} (r^{-km} Λ(φ^m) + ord)/m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub k: Complex64,
    pub order: i64,
    pub m_max: usize,
    pub value: Complex64,
    /// Bound on the truncation error of the exponent.
    pub tail_bound: f64,
    /// Largest `|α| / r^{Re k}` over non-resonant eigenvalues.
    pub ratio: f64,
}

pub fn special_value_series(
    action: &CohomologyAction,
    k: Complex64,
    r: f64,
    m_max: usize,
) -> Result<SeriesValue> {
    let log_r = check_scale(r)?;
    let z = build_zeta(action);
    let order = order_at(&z, action, k, r)?;
    let c = (k * log_r).exp();
    let bound = (k.re * log_r).exp();
    let mut ratio = 0.0f64;
    let mut non_resonant = 0usize;
    for (i, roots) in action.eigen_degrees(ROOT_PRECISION)?.iter().enumerate() {
        for root in roots.iter().filter(|root| !resonant(root.value, c)) {
            let modulus = root.value.norm();
            if modulus >= bound {
                return Err(Error::Divergent(format!(
                    "eigenvalue α = {} of φ*_{i} has |α| = {modulus:.10} >= r^Re(k) = {bound:.10}; \
                     the Lefschetz series at k = {k} diverges",
                    root.value
                )));
            }
            ratio = ratio.max(modulus / bound);
            non_resonant += root.multiplicity;
        }
    }
    let lambdas = action.lefschetz_sequence(m_max);
    let mut sum = Complex64::new(0.0, 0.0);
    for (idx, lam) in lambdas.iter().enumerate() {
        let m = (idx + 1) as f64;
        let term = big_times_exp(lam, -k * (m * log_r)) + order as f64;
        sum += term / m;
    }
    let tail_bound = if non_resonant == 0 {
        0.0
    } else {
        non_resonant as f64 * ratio.powi(m_max as i32 + 1) / ((m_max + 1) as f64 * (1.0 - ratio))
    };
    let value = log_r.powi(order as i32) * sum.exp();
    Ok(SeriesValue { k, order, m_max, value, tail_bound, ratio })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalEquation {
    pub s: Complex64,
    pub chi: i64,
    /// `ζ(s)`
    pub lhs: Complex64,
    /// `(-r^s)^χ ζ(-s)`
    pub rhs: Complex64,
    pub residual: Complex64,
    /// The identity holds as rational functions of `u`.
    pub symbolic_zero: bool,
    /// `ζ(s)·ζ(-s)` is a constant times `u^χ`, as rational functions of `u`.
    pub reciprocal_form: bool,
}

/// `ζ(s) - (-r^s)^χ ζ(-s)`, with `(-r^s)^χ = (-1)^χ r^{sχ}`.
pub fn functional_equation_residual(
    z: &ZetaRational,
    action: &CohomologyAction,
    s: Complex64,
    r: f64,
) -> Result<FunctionalEquation> {
    action.require_duality()?;
    let log_r = check_scale(r)?;
    let chi = z.euler_characteristic;
    let lhs = evaluate(z, s, r)?;
    let sign = if chi % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = sign * (s * (chi as f64 * log_r)).exp() * evaluate(z, -s, r)?;
    Ok(FunctionalEquation {
        s,
        chi,
        lhs,
        rhs,
        residual: lhs - rhs,
        symbolic_zero: functional_equation_symbolic(z, action)?.is_zero(),
        reciprocal_form: reciprocal_relation_symbolic(z, action)?,
    })
}

fn reversed_products(z: &ZetaRational, action: &CohomologyAction) -> (IntPolynomial, IntPolynomial) {
    let mut n_rev = IntPolynomial::one();
    let mut d_rev = IntPolynomial::one();
    for f in &z.factors {
        let rev = f.poly.reversed(action.betti()[f.degree]);
        if f.exponent > 0 {
            n_rev = n_rev.mul(&rev);
        } else {
            d_rev = d_rev.mul(&rev);
        }
    }
    (n_rev, d_rev)
}

fn proportional(p: &IntPolynomial, q: &IntPolynomial) -> bool {
    match (p.leading(), q.leading()) {
        (Some(lp), Some(lq)) => p.scale(lq) == q.scale(lp),
        (None, None) => true,
        _ => false,
    }
}

/// Whether `N' ∝ D` and `D' ∝ N`, i.e. `ζ(s)ζ(-s) = c·u^χ`. This is the
/// relation duality gives when the fiber dimension is odd, where it pairs
/// odd degrees with even ones.
pub fn reciprocal_relation_symbolic(z: &ZetaRational, action: &CohomologyAction) -> Result<bool> {
    action.require_duality()?;
    let (n_rev, d_rev) = reversed_products(z, action);
    Ok(proportional(&n_rev, &z.denominator) && proportional(&d_rev, &z.numerator))
}

/// The polynomial `N(u)·D'(u) - (-1)^χ N'(u)·D(u)` with `P'(u) = u^{β} P(1/u)`.
pub fn functional_equation_symbolic(
    z: &ZetaRational,
    action: &CohomologyAction,
) -> Result<IntPolynomial> {
    action.require_duality()?;
    let (n_rev, d_rev) = reversed_products(z, action);
    let lhs = z.numerator.mul(&d_rev);
    let rhs = n_rev.mul(&z.denominator);
    Ok(if z.euler_characteristic % 2 == 0 { lhs.sub(&rhs) } else { lhs.add(&rhs) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaEigenvalue {
    pub degree: usize,
    pub alpha: Complex64,
    pub multiplicity: usize,
    pub v: i64,
    /// `(log|α| + i Arg α + 2πiv) / log r`
    pub theta: Complex64,
    /// `|exp(θ log r) - α|`
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaSpectrum {
    pub degree: usize,
    /// `2πi / log r`
    pub spacing: Complex64,
    pub entries: Vec<ThetaEigenvalue>,
    pub warnings: Vec<String>,
}

pub fn theta_spectrum(
    action: &CohomologyAction,
    degree: usize,
    r: f64,
    v_window: RangeInclusive<i64>,
    precision: u32,
) -> Result<ThetaSpectrum> {
    let log_r = check_scale(r)?;
    let d = action.fiber_dim();
    if degree > d {
        return Err(Error::DegreeOutOfRange { k: degree, n: d });
    }
    let roots = poly_roots_grouped(&action.phi_star()[degree].char_poly(), precision)?;
    let spacing = Complex64::new(0.0, 2.0 * PI / log_r);
    let mut entries = Vec::new();
    let mut warnings = Vec::new();
    for root in roots {
        let alpha = root.value;
        if alpha == Complex64::new(0.0, 0.0) {
            warnings.push(format!(
                "eigenvalue 0 of φ*_{degree} (multiplicity {}) has no logarithm; excluded",
                root.multiplicity
            ));
            continue;
        }
        let base = Complex64::new(alpha.norm().ln(), arg_principal(alpha)) / log_r;
        for v in v_window.clone() {
            let theta = base + spacing * v as f64;
            let residual = ((theta * log_r).exp() - alpha).norm();
            entries.push(ThetaEigenvalue {
                degree,
                alpha,
                multiplicity: root.multiplicity,
                v,
                theta,
                residual,
            });
        }
    }
    Ok(ThetaSpectrum { degree, spacing, entries, warnings })
}

/// `ζ(s)` assembled from regularized determinants, one per eigenvalue.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularizedZeta {
    pub s: Complex64,
    pub value: Complex64,
    pub factors: Vec<(usize, usize, RegDetFactor)>,
}

/// `∏_i ∏_α regdet_factor(α, s, r)^{(-1)^{i+1}}`.
pub fn regularized_zeta(action: &CohomologyAction, s: Complex64, r: f64) -> Result<RegularizedZeta> {
    check_scale(r)?;
    let mut value = Complex64::new(1.0, 0.0);
    let mut factors = Vec::new();
    for (i, roots) in action.eigen_degrees(ROOT_PRECISION)?.iter().enumerate() {
        let e = CohomologyAction::zeta_exponent(i);
        for root in roots {
            let f = regdet_factor(root.value, s, r)?;
            let p = f.value.powu(root.multiplicity as u32);
            value = if e > 0 { value * p } else { value / p };
            factors.push((i, root.multiplicity, f));
        }
    }
    Ok(RegularizedZeta { s, value, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::IntMatrix;
    use std::f64::consts::E;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cat() -> CohomologyAction {
        CohomologyAction::from_toral(&IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap()).unwrap()
    }

    fn genus2() -> CohomologyAction {
        let a = IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap();
        let h1 = IntMatrix::block_diag(&[a.clone(), a]).unwrap();
        CohomologyAction::from_explicit(
            2,
            vec![1, 4, 1],
            vec![IntMatrix::identity(1), h1, IntMatrix::identity(1)],
        )
        .unwrap()
    }

    fn circle() -> CohomologyAction {
        CohomologyAction::from_explicit(1, vec![1, 1], vec![IntMatrix::identity(1); 2]).unwrap()
    }

    fn p(v: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(v)
    }

    const LAMBDA: f64 = 2.618033988749895;

    #[test]
    fn cat_factors() {
        let z = build_zeta(&cat());
        let polys: Vec<_> = z.factors.iter().map(|f| (f.poly.clone(), f.exponent)).collect();
        assert_eq!(polys, vec![(p(&[1, -1]), -1), (p(&[1, -3, 1]), 1), (p(&[1, -1]), -1)]);
        assert_eq!(z.numerator, p(&[1, -3, 1]));
        assert_eq!(z.denominator, p(&[1, -2, 1]));
    }

    #[test]
    fn genus2_and_circle_factors() {
        let z = build_zeta(&genus2());
        assert_eq!(z.numerator, p(&[1, -3, 1]).pow(2));
        assert_eq!(z.denominator, p(&[1, -1]).pow(2));
        assert_eq!(z.euler_characteristic, -2);
        let z = build_zeta(&circle());
        assert_eq!(z.numerator, z.denominator);
        assert!((evaluate(&z, c(0.7, 0.2), E).unwrap() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn cat_values() {
        let z = build_zeta(&cat());
        // 30-digit references
        let v = evaluate(&z, c(3.0, 0.0), E).unwrap();
        assert!((v - 0.944858994497940236751).norm() < 1e-14);
        let v = evaluate(&z, c(2.0, 1.0), E).unwrap();
        assert!((v - c(0.950257051283140200831, 0.147000110078320781285)).norm() < 1e-14);
        let v = evaluate(&z, c(1.0, 0.0), 10.0).unwrap();
        assert!((v - 71.0 / 81.0).norm() < 1e-15);
    }

    #[test]
    fn periodic_in_s() {
        let z = build_zeta(&cat());
        let s = c(1.3, 0.4);
        let shift = c(0.0, 2.0 * PI / 2f64.ln());
        let a = evaluate(&z, s, 2.0).unwrap();
        let b = evaluate(&z, s + shift, 2.0).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn pole_is_distinct_from_overflow() {
        let z = build_zeta(&cat());
        assert!(matches!(evaluate(&z, c(0.0, 0.0), E), Err(Error::Pole(_))));
        assert!(matches!(evaluate(&z, c(-800.0, 0.0), E), Err(Error::Overflow(_))));
    }

    #[test]
    fn log_derivative_matches_lefschetz_series() {
        let action = cat();
        let z = build_zeta(&action);
        let s = c(2.5, 0.3);
        let u = ZetaRational::u(s, E);
        let series: Complex64 = action
            .lefschetz_sequence(60)
            .iter()
            .enumerate()
            .map(|(i, l)| big_times_exp(l, (i + 1) as f64 * u.ln()))
            .sum();
        assert!((log_derivative(&z, s, E).unwrap() - series).norm() < 1e-10);
    }

    #[test]
    fn orders() {
        let action = cat();
        let z = build_zeta(&action);
        let r = order_report(&z, &action, c(0.0, 0.0), E).unwrap();
        assert_eq!((r.order, r.per_degree.clone()), (-2, vec![1, 0, 1]));
        assert!(!r.exact);
        assert_eq!(order_at(&z, &action, c(1.0, 0.0), LAMBDA).unwrap(), 1);
        assert_eq!(order_at(&z, &action, c(5.0, 0.0), E).unwrap(), 0);
        // exact paths
        let r = order_report(&z, &action, c(0.0, 0.0), 10.0).unwrap();
        assert!(r.exact);
        assert_eq!(r.order, -2);
        assert_eq!(order_at(&z, &action, c(1.0, 0.0), 10.0).unwrap(), 0);
        assert_eq!(order_at(&z, &action, c(-1.0, 0.0), 3.0).unwrap(), 0);
        // 2πi/log r is also a zero of 1 - u
        assert_eq!(order_at(&z, &action, c(0.0, 2.0 * PI), E).unwrap(), -2);
    }

    #[test]
    fn special_values() {
        let action = cat();
        let z = build_zeta(&action);
        let sv = special_value(&z, &action, c(0.0, 0.0), E).unwrap();
        assert_eq!(sv.order, -2);
        assert!((sv.value + 1.0).norm() < 1e-12);

        let sv = special_value(&z, &action, c(1.0, 0.0), 10.0).unwrap();
        assert_eq!(sv.rational_part.unwrap(), BigRational::new(71.into(), 81.into()));
        assert!((sv.value - 71.0 / 81.0).norm() < 1e-15);

        // exact and derivative deflation agree: r = 10, k = 0 against r = 10.5^0
        let sv = special_value(&z, &action, c(0.0, 0.0), 10.0).unwrap();
        let expect = -1.0 / 10f64.ln().powi(2);
        assert!((sv.value - expect).norm() < 1e-14);
        assert_eq!(sv.rational_part.unwrap(), BigRational::from_integer((-1).into()));

        let sv = special_value(&build_zeta(&circle()), &circle(), c(2.0, 0.0), E).unwrap();
        assert!((sv.value - 1.0).norm() < 1e-15);
    }

    #[test]
    fn special_value_at_expanding_eigenvalue() {
        // ζ = (1-u/λ)(1-λu)/(1-u)^2 near u = 1/λ, r = λ, k = 1
        let action = cat();
        let z = build_zeta(&action);
        let sv = special_value(&z, &action, c(1.0, 0.0), LAMBDA).unwrap();
        assert_eq!(sv.order, 1);
        let u0 = 1.0 / LAMBDA;
        let expect = LAMBDA.ln() * (1.0 - u0 / LAMBDA) / (1.0 - u0).powi(2);
        assert!((sv.value - expect).norm() < 1e-12, "{:?}", sv.value);
    }

    #[test]
    fn series_matches_direct() {
        let action = cat();
        let sv = special_value_series(&action, c(1.0, 0.0), 10.0, 60).unwrap();
        assert!((sv.value - 71.0 / 81.0).norm() < 1e-8);
        assert!(sv.tail_bound < 1e-20);
        let e = special_value_series(&action, c(0.0, 0.0), E, 60).unwrap_err();
        let msg = e.to_string();
        assert!(matches!(e, Error::Divergent(_)));
        assert!(msg.contains("r^Re(k)"), "{msg}");
        let sv = special_value_series(&circle(), c(1.0, 0.0), E, 30).unwrap();
        assert_eq!(sv.order, 0);
        assert!((sv.value - 1.0).norm() < 1e-15);
    }

    #[test]
    fn series_with_resonance() {
        // r = λ, k = 1: λ resonates and the remaining eigenvalues 1, 1/λ lie below r
        let action = cat();
        let z = build_zeta(&action);
        let direct = special_value(&z, &action, c(1.0, 0.0), LAMBDA).unwrap();
        let series = special_value_series(&action, c(1.0, 0.0), LAMBDA, 200).unwrap();
        assert_eq!(series.order, 1);
        assert!((series.value - direct.value).norm() < 1e-6, "{series:?} {direct:?}");
    }

    #[test]
    fn functional_equation() {
        for action in [cat(), genus2(), circle()] {
            let z = build_zeta(&action);
            assert!(functional_equation_symbolic(&z, &action).unwrap().is_zero());
            let fe = functional_equation_residual(&z, &action, c(1.0, 1.0), 2.0).unwrap();
            assert!(fe.residual.norm() < 1e-10, "{fe:?}");
            assert!(fe.symbolic_zero);
        }
    }

    #[test]
    fn odd_dimensional_fiber_gives_reciprocal_relation() {
        let a = IntMatrix::from_i64_rows(&[[1, 1, 0], [1, 2, 1], [0, 1, 2]]).unwrap();
        let action = CohomologyAction::from_toral(&a).unwrap();
        assert!(action.duality_enabled());
        let z = build_zeta(&action);
        let fe = functional_equation_residual(&z, &action, c(1.0, 1.0), 2.0).unwrap();
        assert!(!fe.symbolic_zero);
        assert!(fe.residual.norm() > 1e-3);
        assert!(fe.reciprocal_form);
        // ζ(s)ζ(-s) is constant when χ = 0
        let prod = |s: Complex64| evaluate(&z, s, 2.0).unwrap() * evaluate(&z, -s, 2.0).unwrap();
        assert!((prod(c(1.0, 1.0)) - prod(c(0.3, -2.0))).norm() < 1e-10);
        assert!(!reciprocal_relation_symbolic(&build_zeta(&cat()), &cat()).unwrap());
    }

    #[test]
    fn functional_equation_needs_duality() {
        let flip = IntMatrix::from_i64_rows(&[[0, 1], [1, 0]]).unwrap();
        let action = CohomologyAction::from_toral(&flip).unwrap();
        let z = build_zeta(&action);
        assert_eq!(
            functional_equation_residual(&z, &action, c(1.0, 0.0), E),
            Err(Error::OrientationReversing)
        );
    }

    #[test]
    fn theta_examples() {
        let action = cat();
        let t = theta_spectrum(&action, 0, E, -1..=1, 12).unwrap();
        let thetas: Vec<_> = t.entries.iter().map(|e| e.theta).collect();
        for (got, want) in thetas.iter().zip([-2.0 * PI, 0.0, 2.0 * PI]) {
            assert!((got - c(0.0, want)).norm() < 1e-15);
        }
        let t = theta_spectrum(&action, 1, E, 0..=0, 12).unwrap();
        let top = t.entries.iter().find(|e| e.alpha.re > 1.0).unwrap();
        assert!((top.theta.re - 0.962423650119206894996).abs() < 1e-12);
        assert!(t.entries.iter().all(|e| e.residual < 1e-10));
        assert!(matches!(
            theta_spectrum(&action, 3, E, 0..=0, 12),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn theta_excludes_zero_eigenvalue() {
        let action = CohomologyAction::from_explicit(
            1,
            vec![1, 2],
            vec![IntMatrix::identity(1), IntMatrix::from_i64_rows(&[[0, 0], [0, 2]]).unwrap()],
        )
        .unwrap();
        let t = theta_spectrum(&action, 1, E, 0..=0, 12).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.warnings.len(), 1);
    }

    #[test]
    fn regularized_zeta_matches_rational() {
        for action in [cat(), genus2()] {
            let z = build_zeta(&action);
            for s in [c(2.0, 0.0), c(3.0, 0.0), c(2.0, 1.0)] {
                let reg = regularized_zeta(&action, s, E).unwrap();
                assert!((reg.value - evaluate(&z, s, E).unwrap()).norm() < 1e-8);
            }
        }
    }
}
