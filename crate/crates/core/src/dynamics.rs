//! Periodic points and closed orbits of the suspension flow over a toral
//! automorphism.
//!
//! For `x -> Ax` on `T^d`, `#Fix(A^m) = |det(A^m - I)|`, and the Lefschetz
//! index of every fixed point of `A^m` is `sign det(I - A^m)`. Closed orbits of
//! the flow on the mapping torus are the periodic orbits of `A`; one of period
//! `m` has norm `N = r^m`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{decimal, poly_roots, IntMatrix};

/// Relative margin by which `r^Re(s)` must exceed the growth rate.
pub const DOMAIN_MARGIN: f64 = 1e-9;

/// How orbits are weighted in the Euler product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `exp(Σ det(I - A^m) u^m / m)`: each fixed point weighted by its index.
    #[default]
    Signed,
    /// `∏_γ (1 - N(γ)^{-s})^{-1}` over the literal orbits.
    Unsigned,
}

/// Suspension scale and counting convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowParams {
    r: f64,
    pub convention: Convention,
}

impl FlowParams {
    pub fn new(r: f64, convention: Convention) -> Result<Self> {
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale r = {r} must be a finite real > 1")));
        }
        Ok(Self { r, convention })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn log_r(&self) -> f64 {
        self.r.ln()
    }
}

/// Signed and unsigned fixed-point counts of `A^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCount {
    #[serde(with = "decimal::single")]
    pub signed: BigInt,
    #[serde(with = "decimal::single")]
    pub unsigned: BigInt,
}

/// `det(I - A^m)` and its absolute value. Errors when `A^m` fixes a subtorus.
pub fn fixed_point_count(a: &IntMatrix, m: u64) -> Result<FixedPointCount> {
    let signed = IntMatrix::identity(a.dim()).sub(&a.pow(m)).det();
    if signed.is_zero() {
        return Err(Error::InfiniteFixedPoints { m });
    }
    let unsigned = signed.abs();
    Ok(FixedPointCount { signed, unsigned })
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i8 {
    assert!(n >= 1);
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub m: u64,
    #[serde(with = "decimal::single")]
    pub fix_signed: BigInt,
    #[serde(with = "decimal::single")]
    pub fix_unsigned: BigInt,
    /// Points of least period exactly `m`.
    #[serde(with = "decimal::single")]
    pub exact_period_points: BigInt,
    /// Periodic orbits of least period `m` (closed flow orbits of norm `r^m`).
    #[serde(with = "decimal::single")]
    pub orbit_count: BigInt,
    /// `log N(γ) = m log r`
    pub log_norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitTable {
    pub rows: Vec<OrbitRow>,
    pub log_r: f64,
    /// `max_i ρ(∧^i A)`: the exponential growth rate of the fixed-point counts.
    pub growth_rate: f64,
    /// `Σ β(i) = 2^d`, the constant in the truncation tail bound.
    pub total_betti: u64,
}

/// Growth rate `∏_{|λ|>1} |λ| = max_i ρ(∧^i A)` from the eigenvalues of `A`.
pub fn growth_rate(a: &IntMatrix) -> Result<f64> {
    let roots = poly_roots(&a.char_poly(), 12)?;
    Ok(roots.iter().map(|z| z.norm()).filter(|&x| x > 1.0).product::<f64>().max(1.0))
}

/// Fixed-point and orbit counts for periods `1..=m_max`.
///
/// Rows are computed in parallel and assembled in period order.
pub fn orbit_table(a: &IntMatrix, m_max: u64, params: &FlowParams) -> Result<OrbitTable> {
    let counts: Vec<FixedPointCount> = (1..=m_max)
        .into_par_iter()
        .map(|m| fixed_point_count(a, m))
        .collect::<Result<_>>()?;
    let log_r = params.log_r();
    let mut rows = Vec::with_capacity(counts.len());
    for (idx, c) in counts.iter().enumerate() {
        let m = idx as u64 + 1;
        let mut exact = BigInt::zero();
        for k in (1..=m).filter(|k| m.is_multiple_of(*k)) {
            match mobius(m / k) {
                1 => exact += &counts[k as usize - 1].unsigned,
                -1 => exact -= &counts[k as usize - 1].unsigned,
                _ => {}
            }
        }
        let (orbits, rem) = exact.div_rem(&BigInt::from(m));
        if !rem.is_zero() {
            return Err(Error::Inconsistent(format!(
                "{exact} points of exact period {m} do not split into orbits"
            )));
        }
        rows.push(OrbitRow {
            m,
            fix_signed: c.signed.clone(),
            fix_unsigned: c.unsigned.clone(),
            exact_period_points: exact,
            orbit_count: orbits,
            log_norm: m as f64 * log_r,
        });
    }
    Ok(OrbitTable {
        rows,
        log_r,
        growth_rate: growth_rate(a)?,
        total_betti: 1u64 << a.dim().min(63),
    })
}

/// `x · w` for an integer too large for a double.
pub fn big_times(x: &BigInt, w: Complex64) -> Complex64 {
    if w == Complex64::new(0.0, 0.0) {
        return w;
    }
    big_times_exp(x, w.ln())
}

/// `x · exp(log_w)` without forming either factor when it would leave the
/// double range.
pub fn big_times_exp(x: &BigInt, log_w: Complex64) -> Complex64 {
    if x.is_zero() {
        return Complex64::new(0.0, 0.0);
    }
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap() * log_w.exp();
    }
    let e = bits - 60;
    let hi = (x >> e).to_f64().unwrap();
    hi * (log_w + e as f64 * std::f64::consts::LN_2).exp()
}

impl OrbitTable {
    pub fn m_max(&self) -> u64 {
        self.rows.len() as u64
    }

    /// `u = r^{-s}`
    pub fn u(&self, s: Complex64) -> Complex64 {
        (-s * self.log_r).exp()
    }

    /// Errors unless `r^Re(s) > growth_rate · (1 + DOMAIN_MARGIN)`.
    pub fn check_domain(&self, s: Complex64) -> Result<()> {
        let lhs = (s.re * self.log_r).exp();
        let rhs = self.growth_rate * (1.0 + DOMAIN_MARGIN);
        if lhs > rhs {
            Ok(())
        } else {
            Err(Error::Divergent(format!(
                "r^Re(s) = {lhs:.6e} does not exceed growth rate {:.6e} (1 + {DOMAIN_MARGIN:e}); \
                 the orbit product diverges at s = {s}",
                self.growth_rate
            )))
        }
    }

    /// Geometric bound `B q^{M+1} / (1 - q)`, `q = growth·|u|`, on the error of
    /// the truncated log-series.
    pub fn tail_bound(&self, s: Complex64) -> f64 {
        let q = self.growth_rate * self.u(s).norm();
        if q >= 1.0 {
            return f64::INFINITY;
        }
        self.total_betti as f64 * q.powi(self.rows.len() as i32 + 1) / (1.0 - q)
    }

    /// Whether some fixed point has negative index, so the two conventions differ.
    pub fn conventions_differ(&self) -> bool {
        self.rows.iter().any(|r| r.fix_signed.is_negative())
    }
}

/// `-log(1 - w)` for `|w| < 1`, accurate when `|w|` is below one ulp of 1.
pub fn neg_log_one_minus(w: Complex64) -> Complex64 {
    if w.norm() >= 0.5 {
        return -(1.0 - w).ln();
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = w;
    for j in 1..200 {
        let term = power / j as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        power *= w;
    }
    sum
}

/// Truncated Euler product over orbits of period `<= m_max`.
pub fn euler_product_partial(
    table: &OrbitTable,
    s: Complex64,
    convention: Convention,
) -> Result<Complex64> {
    if table.rows.is_empty() {
        return Ok(Complex64::new(1.0, 0.0));
    }
    table.check_domain(s)?;
    let u = table.u(s);
    let log = match convention {
        Convention::Signed => table
            .rows
            .iter()
            .map(|row| big_times(&row.fix_signed, u.powu(row.m as u32)) / row.m as f64)
            .sum::<Complex64>(),
        Convention::Unsigned => table
            .rows
            .iter()
            .map(|row| {
                let w = u.powu(row.m as u32);
                big_times(&row.orbit_count, neg_log_one_minus(w))
            })
            .sum::<Complex64>(),
    };
    let v = log.exp();
    if !v.is_finite() {
        return Err(Error::Overflow(format!("Euler product at s = {s}")));
    }
    Ok(v)
}

/// Both conventions at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerComparison {
    pub signed: Complex64,
    pub unsigned: Complex64,
    pub conventions_differ: bool,
    pub tail_bound: f64,
}

pub fn euler_product_both(table: &OrbitTable, s: Complex64) -> Result<EulerComparison> {
    Ok(EulerComparison {
        signed: euler_product_partial(table, s, Convention::Signed)?,
        unsigned: euler_product_partial(table, s, Convention::Unsigned)?,
        conventions_differ: table.conventions_differ(),
        tail_bound: table.tail_bound(s),
    })
}
