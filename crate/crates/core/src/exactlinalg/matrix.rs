use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::decimal::Decimal;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Square matrix of arbitrary-precision integers, stored row-major.
///
/// Powers of hyperbolic matrices grow exponentially, so there is no
/// fixed-width variant of this type.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Decimal>>", into = "Vec<Vec<Decimal>>")]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Build from rows. An empty row list gives the 0x0 matrix, whose
    /// determinant is 1 (the action on a zero-dimensional cohomology group).
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, bad_row: i, len: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![BigInt::zero(); n * n] }
    }

    /// 1x1 matrix `[x]`.
    pub fn scalar(x: BigInt) -> Self {
        Self { n: 1, entries: vec![x] }
    }

    /// Companion matrix of a monic polynomial; its characteristic polynomial is `p`.
    pub fn companion(p: &IntPolynomial) -> Result<Self> {
        let n = p.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 || !p.leading().is_some_and(|c| c.is_one()) {
            return Err(Error::InvalidParameter(
                "companion matrix needs a monic polynomial of degree >= 1".into(),
            ));
        }
        let mut m = Self::zeros(n);
        for i in 1..n {
            m.entries[i * n + (i - 1)] = BigInt::one();
        }
        for i in 0..n {
            m.entries[i * n + (n - 1)] = -p.coeff(i);
        }
        Ok(m)
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[IntMatrix]) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.entries[(off + i) * n + off + j] = b.get(i, j).clone();
                }
            }
            off += b.n;
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        if self.n == 0 {
            return Vec::new();
        }
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_default()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `self - other`; panics on dimension mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_scalar_identity(&self, c: &BigInt) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.entries[i * self.n + i] += c;
        }
        m
    }

    /// Exact `A^m` by repeated squaring; `A^0` is the identity.
    pub fn pow(&self, mut m: u64) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = &result * &base;
            }
            m >>= 1;
            if m > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut sign_flip = false;
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                    // Sylvester's identity guarantees exactness here.
                    a[i * n + j] = v.div_floor(&prev);
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        if sign_flip { -d } else { d }
    }

    /// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
    /// recurrence; each step divides exactly by the step index.
    pub fn char_poly(&self) -> IntPolynomial {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            m = (self * &m).add_scalar_identity(&coeffs[n + 1 - k]);
            let t = (self * &m).trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
            coeffs[n - k] = -q;
        }
        IntPolynomial::new(coeffs)
    }

    /// `det(1 - A u)` as a polynomial in `u`: the reversed characteristic polynomial.
    pub fn det_one_minus(&self) -> IntPolynomial {
        self.char_poly().reversed(self.n)
    }

    /// Determinant of the submatrix picked out by `rows` x `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        debug_assert_eq!(rows.len(), cols.len());
        if rows.is_empty() {
            return BigInt::one();
        }
        let sub = Self {
            n: rows.len(),
            entries: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
                .collect(),
        };
        sub.det()
    }

    /// The k-th compound matrix: all k x k minors, rows and columns indexed
    /// by k-subsets of `0..n` in lexicographic order.
    pub fn exterior_power(&self, k: usize) -> Result<Self> {
        let n = self.n;
        if k > n {
            return Err(Error::DegreeOutOfRange { k, n });
        }
        let subsets = k_subsets(n, k);
        let dim = subsets.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in &subsets {
            for c in &subsets {
                entries.push(self.minor(r, c));
            }
        }
        Ok(Self { n: dim, entries })
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl TryFrom<Vec<Vec<Decimal>>> for IntMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Decimal>>) -> Result<Self> {
        Self::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
    }
}

impl From<IntMatrix> for Vec<Vec<Decimal>> {
    fn from(m: IntMatrix) -> Self {
        m.rows().into_iter().map(|r| r.into_iter().map(Decimal).collect()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn cat() -> IntMatrix {
        m(&[&[2, 1], &[1, 1]])
    }

    #[test]
    fn powers_of_cat_map() {
        assert_eq!(cat().pow(0), IntMatrix::identity(2));
        assert_eq!(cat().pow(2), m(&[&[5, 3], &[3, 2]]));
        assert_eq!(cat().pow(3), m(&[&[13, 8], &[8, 5]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(2).det(), BigInt::from(1));
        assert_eq!(m(&[&[-1, -1], &[-1, 0]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[4, 3], &[3, 1]]).det(), BigInt::from(-5));
        // zero leading pivot forces a row swap
        assert_eq!(m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).det(), BigInt::from(-2));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::from(0));
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(cat().char_poly(), IntPolynomial::from_i64(&[1, -3, 1]));
        assert_eq!(IntMatrix::identity(2).char_poly(), IntPolynomial::from_i64(&[1, -2, 1]));
        let p = IntPolynomial::from_i64(&[-5, -2, 0, 1]);
        assert_eq!(IntMatrix::companion(&p).unwrap().char_poly(), p);
    }

    #[test]
    fn exterior_powers() {
        assert_eq!(cat().exterior_power(0).unwrap(), m(&[&[1]]));
        assert_eq!(cat().exterior_power(1).unwrap(), cat());
        assert_eq!(cat().exterior_power(2).unwrap(), m(&[&[1]]));
        assert_eq!(
            IntMatrix::identity(3).exterior_power(2).unwrap(),
            IntMatrix::identity(3)
        );
        assert_eq!(
            cat().exterior_power(3),
            Err(Error::DegreeOutOfRange { k: 3, n: 2 })
        );
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            k_subsets(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(k_subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn empty_matrix() {
        let e = IntMatrix::from_rows(vec![]).unwrap();
        assert_eq!(e.dim(), 0);
        assert_eq!(e.det(), BigInt::from(1));
        assert_eq!(e.char_poly(), IntPolynomial::one());
        assert_eq!(e.trace(), BigInt::from(0));
        assert_eq!(e.pow(3), e);
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3]]).unwrap_err();
        assert!(matches!(err, Error::NotSquare { bad_row: 1, .. }));
    }

    #[test]
    fn serde_round_trip_keeps_big_entries() {
        let big = cat().pow(200);
        let s = serde_json::to_string(&big).unwrap();
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
    }
}
