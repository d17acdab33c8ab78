use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::decimal;

/// Polynomial with arbitrary-precision integer coefficients in ascending
/// degree order. Trailing zeros are always trimmed, so the zero polynomial
/// has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    #[serde(with = "decimal::vec")]
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - a`
    pub fn linear_root(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// `x^deg * p(1/x)` for a formal degree `deg >= degree(p)`.
    pub fn reversed(&self, deg: usize) -> Self {
        assert!(self.coeffs.len() <= deg + 1, "formal degree below actual degree");
        let mut c = vec![BigInt::zero(); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[deg - i] = a.clone();
        }
        Self::new(c)
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn product<'a>(ps: impl IntoIterator<Item = &'a Self>) -> Self {
        ps.into_iter().fold(Self::one(), |acc, p| acc.mul(p))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + big_to_f64(c))
    }

    /// Coefficients as doubles (saturating to infinity for huge values).
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(big_to_f64).collect()
    }

    /// gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Exact quotient and remainder over the integers. Returns `None` when some
    /// division step is not exact in ℤ (always succeeds for monic divisors).
    pub fn div_rem_exact(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// `Some(q)` iff `self = q * divisor` exactly over ℤ.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem_exact(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo-division by zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            let shifted = {
                let mut c = vec![BigInt::zero(); rd - dd];
                c.extend(divisor.coeffs.iter().map(|d| d * &top));
                Self::new(c)
            };
            rem = rem.scale(lead).sub(&shifted);
        }
        rem
    }

    /// Primitive gcd over ℤ[x] (primitive remainder sequence), positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        let c = self.content().gcd(&other.content());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.is_zero() {
            return a;
        }
        a.scale(&c).primitive_part()
    }

    /// Square-free decomposition (Yun): primitive factors `f_k` with
    /// `primitive_part(self) = ∏ f_k^k` up to sign. Constant factors are dropped.
    pub fn square_free_decomposition(&self) -> Vec<(Self, usize)> {
        let f = self.primitive_part();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div_primitive(&a);
        let mut c = df.exact_div_primitive(&a);
        let mut k = 1;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) > 0 {
                    out.push((b.primitive_part(), k));
                }
                break;
            }
            a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.exact_div_primitive(&a);
            c = d.exact_div_primitive(&a);
            k += 1;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    /// Quotient by a primitive factor known to divide over ℚ; by Gauss's
    /// lemma the quotient is integral.
    fn exact_div_primitive(&self, divisor: &Self) -> Self {
        self.exact_div(divisor).expect("primitive factor does not divide")
    }

    /// Multiplicity of `x - a` as a factor, for an integer `a`.
    pub fn root_multiplicity(&self, a: &BigInt) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Self::linear_root(a);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    /// Multiplicity of `1 - t*u` as a factor of a polynomial in `u`.
    pub fn reciprocal_root_multiplicity(&self, t: &BigInt) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        if t.is_zero() {
            return 0;
        }
        let lin = Self::new(vec![BigInt::one(), -t]);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    /// Pretty-print with a chosen variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !abs.is_one() {
                s.push_str(&abs.to_string());
            }
            s.push_str(&mono);
        }
        s
    }
}

/// BigInt to f64, saturating to ±inf.
pub fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn trims_and_displays() {
        assert_eq!(p(&[1, -3, 1, 0, 0]).degree(), Some(2));
        assert_eq!(p(&[1, -3, 1]).display_with("λ"), "λ^2 - 3λ + 1");
        assert_eq!(p(&[0, 0]).to_string(), "0");
        assert_eq!(p(&[-5, -2, 0, 1]).to_string(), "x^3 - 2x - 5");
    }

    #[test]
    fn reversal_uses_formal_degree() {
        assert_eq!(p(&[-1, 1]).reversed(1), p(&[1, -1]));
        assert_eq!(p(&[1, -3, 1]).reversed(2), p(&[1, -3, 1]));
        assert_eq!(p(&[1]).reversed(2), p(&[0, 0, 1]));
    }

    #[test]
    fn division() {
        let f = p(&[1, -2, 1]);
        assert_eq!(f.exact_div(&p(&[-1, 1])), Some(p(&[-1, 1])));
        assert_eq!(f.exact_div(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[0, 2])), None);
        assert_eq!(f.root_multiplicity(&BigInt::from(1)), 2);
        assert_eq!(p(&[1, -3, 1]).root_multiplicity(&BigInt::from(1)), 0);
    }

    #[test]
    fn reciprocal_multiplicity() {
        // (1-u)^2 vanishes twice at u = 1
        assert_eq!(p(&[1, -2, 1]).reciprocal_root_multiplicity(&BigInt::from(1)), 2);
        // 1 - 5u + 6u^2 = (1-2u)(1-3u)
        assert_eq!(p(&[1, -5, 6]).reciprocal_root_multiplicity(&BigInt::from(3)), 1);
        assert_eq!(p(&[1, -5, 6]).reciprocal_root_multiplicity(&BigInt::from(4)), 0);
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[1, -3, 1]);
        let b = p(&[-1, 1]);
        let f = a.pow(2).mul(&b.pow(3));
        assert_eq!(f.gcd(&a.mul(&b)), a.mul(&b));
        let mut sqf = f.square_free_decomposition();
        sqf.sort_by_key(|(_, k)| *k);
        assert_eq!(sqf, vec![(a.clone(), 2), (b.clone(), 3)]);
        // non-monic content is handled
        let g = p(&[2, 4]).mul(&p(&[3, 1]));
        assert_eq!(g.square_free_decomposition(), vec![(p(&[1, 2]).mul(&p(&[3, 1])), 1)]);
    }
}
