//! Action of the monodromy on the cohomology of the fiber.
//!
//! A [`CohomologyAction`] holds the pullback matrices `φ*_i` on `H^i(S)` for
//! `i = 0..=d`. It is built either from a toral automorphism, where
//! `H^i(T^d) ≅ ∧^i ℤ^d` and the action is an exterior power, or from matrices
//! supplied directly for an arbitrary fiber.
//!
//! Poincaré duality can only be checked through its necessary consequences on
//! matrices (Betti symmetry, identity on top degree, determinant reciprocity).
//! Compatibility with the cup product itself needs pairing data we do not
//! have; it is assumed when the matrix checks pass, and every report says so.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::{poly_roots, poly_roots_grouped, IntMatrix, IntPolynomial, Root};

/// Where the action data came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Source {
    Toral { matrix: IntMatrix },
    Explicit,
}

/// One named check in a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// Present when the monodromy is certified hyperbolic.
    pub anosov_certificate: Option<String>,
    /// Statements about what the checks cannot establish.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

const CUP_PRODUCT_NOTE: &str = "duality verified through necessary matrix conditions only; \
     cup-product compatibility is assumed";
const COUNTABILITY_NOTE: &str = "explicit action: finiteness of periodic orbits of the \
     underlying diffeomorphism cannot be verified from cohomology data";

/// Pullback action `φ*_i` on `H^i(S)`, `i = 0..=d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohomologyAction {
    d: usize,
    betti: Vec<usize>,
    phi_star: Vec<IntMatrix>,
    source: Source,
    duality_enabled: bool,
    report: ValidationReport,
}

impl CohomologyAction {
    /// Action of the toral automorphism `x -> Ax` on `H^*(T^d)`.
    ///
    /// Requires `det A = ±1`. Orientation-reversing monodromies are accepted
    /// for counting, with duality features disabled.
    pub fn from_toral(a: &IntMatrix) -> Result<Self> {
        let det = a.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let d = a.dim();
        let phi_star = (0..=d)
            .map(|i| a.exterior_power(i))
            .collect::<Result<Vec<_>>>()?;
        let betti: Vec<usize> = phi_star.iter().map(IntMatrix::dim).collect();
        let mut report = ValidationReport::default();
        report.push(
            "orientation_preserving",
            det.is_one(),
            if det.is_one() {
                "det A = 1".to_string()
            } else {
                "det A = -1: orientation reversing, duality features disabled".to_string()
            },
        );
        duality_checks(d, &betti, &phi_star, &mut report);
        let duality_enabled = report.passed();
        report.notes.push(CUP_PRODUCT_NOTE.into());
        Ok(Self {
            d,
            betti,
            phi_star,
            source: Source::Toral { matrix: a.clone() },
            duality_enabled,
            report,
        })
    }

    /// Action given directly by matrices, `matrices[i]` of size `betti[i]`.
    ///
    /// Duality is enabled only when every duality check passes; failures are
    /// recorded in [`Self::report`] rather than returned as errors.
    pub fn from_explicit(d: usize, betti: Vec<usize>, matrices: Vec<IntMatrix>) -> Result<Self> {
        if betti.len() != d + 1 {
            return Err(Error::Shape(format!(
                "expected {} Betti numbers for d = {d}, got {}",
                d + 1,
                betti.len()
            )));
        }
        if matrices.len() != d + 1 {
            return Err(Error::Shape(format!(
                "expected {} matrices for d = {d}, got {}",
                d + 1,
                matrices.len()
            )));
        }
        for (i, (b, m)) in betti.iter().zip(&matrices).enumerate() {
            if m.dim() != *b {
                return Err(Error::Shape(format!(
                    "matrix for degree {i} is {0}x{0} but beta({i}) = {b}",
                    m.dim()
                )));
            }
        }
        if betti[0] != 1 {
            return Err(Error::InvalidAction(format!(
                "beta(0) = {} but a connected fiber has beta(0) = 1",
                betti[0]
            )));
        }
        if !matrices[0].is_identity() {
            return Err(Error::InvalidAction(format!(
                "pullback on H^0 must be [1], got {}",
                matrices[0]
            )));
        }
        let mut report = ValidationReport::default();
        duality_checks(d, &betti, &matrices, &mut report);
        let duality_enabled = report.passed();
        report.notes.push(CUP_PRODUCT_NOTE.into());
        report.notes.push(COUNTABILITY_NOTE.into());
        Ok(Self { d, betti, phi_star: matrices, source: Source::Explicit, duality_enabled, report })
    }

    pub fn fiber_dim(&self) -> usize {
        self.d
    }

    pub fn betti(&self) -> &[usize] {
        &self.betti
    }

    pub fn phi_star(&self) -> &[IntMatrix] {
        &self.phi_star
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn toral_matrix(&self) -> Option<&IntMatrix> {
        match &self.source {
            Source::Toral { matrix } => Some(matrix),
            Source::Explicit => None,
        }
    }

    pub fn duality_enabled(&self) -> bool {
        self.duality_enabled
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    /// Error unless duality features may be used with this action.
    pub fn require_duality(&self) -> Result<()> {
        if self.duality_enabled {
            return Ok(());
        }
        if self.report.check("orientation_preserving").is_some_and(|c| !c.passed) {
            return Err(Error::OrientationReversing);
        }
        let failed: Vec<_> = self.report.failures().map(|c| c.name.as_str()).collect();
        Err(Error::DualityUnavailable(format!("failed checks: {}", failed.join(", "))))
    }

    /// `(-1)^(i+1)`: the exponent of degree `i` in the zeta function.
    pub fn zeta_exponent(i: usize) -> i32 {
        if i.is_multiple_of(2) { -1 } else { 1 }
    }

    /// Σ (-1)^i β(i)
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// `Λ(φ^m) = Σ (-1)^i tr(φ*_i^m)`, exact.
    pub fn lefschetz_number(&self, m: u64) -> BigInt {
        self.phi_star
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let t = a.pow(m).trace();
                if i % 2 == 0 { t } else { -t }
            })
            .sum()
    }

    /// `Λ(φ^m)` for `m = 1..=m_max`, sharing the matrix powers.
    pub fn lefschetz_sequence(&self, m_max: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); m_max];
        for (i, a) in self.phi_star.iter().enumerate() {
            if a.dim() == 0 {
                continue;
            }
            let mut p = IntMatrix::identity(a.dim());
            for slot in out.iter_mut() {
                p = &p * a;
                let t = p.trace();
                if i % 2 == 0 { *slot += t } else { *slot -= t }
            }
        }
        out
    }

    /// `det(1 - φ*_i u)` for each degree.
    pub fn det_one_minus_polys(&self) -> Vec<IntPolynomial> {
        self.phi_star.iter().map(IntMatrix::det_one_minus).collect()
    }

    /// Eigenvalues of `φ*_i` per degree, grouped with multiplicity.
    /// Rational roots are extracted exactly before numeric iteration.
    pub fn eigen_degrees(&self, precision: u32) -> Result<Vec<Vec<Root>>> {
        self.phi_star
            .iter()
            .map(|a| poly_roots_grouped(&a.char_poly(), precision))
            .collect()
    }

    /// Largest eigenvalue modulus over all degrees: the exponential growth
    /// rate of `|Λ(φ^m)|`.
    pub fn spectral_radius(&self, precision: u32) -> Result<f64> {
        Ok(self
            .eigen_degrees(precision)?
            .iter()
            .flatten()
            .map(|r| r.value.norm())
            .fold(0.0, f64::max))
    }
}

fn duality_checks(d: usize, betti: &[usize], phi: &[IntMatrix], report: &mut ValidationReport) {
    let top_ok = betti[d] == 1 && phi[d].is_identity();
    report.push(
        "top_degree_identity",
        top_ok,
        if top_ok {
            "beta(d) = 1 and pullback on H^d is the identity".to_string()
        } else {
            format!("beta(d) = {}, pullback on H^d = {}", betti[d], phi[d])
        },
    );
    let asym: Vec<usize> = (0..=d).filter(|&i| betti[i] != betti[d - i]).collect();
    report.push(
        "betti_symmetry",
        asym.is_empty(),
        if asym.is_empty() {
            "beta(i) = beta(d-i) for all i".to_string()
        } else {
            format!("beta(i) != beta(d-i) for i in {asym:?}")
        },
    );
    let mut bad = Vec::new();
    for i in 0..=d / 2 {
        let prod = phi[i].det() * phi[d - i].det();
        if !prod.is_one() {
            bad.push(format!("det(phi*_{i}) * det(phi*_{}) = {prod}", d - i));
        }
    }
    report.push(
        "determinant_reciprocity",
        bad.is_empty(),
        if bad.is_empty() {
            "det(phi*_i) * det(phi*_(d-i)) = 1 for all i".to_string()
        } else {
            format!("{} != 1", bad.join("; "))
        },
    );
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial, by exact division of `x^n - 1`.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1);
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = -BigInt::one();
    c[n as usize] = BigInt::one();
    let mut p = IntPolynomial::new(c);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = p.exact_div(&cyclotomic(d)).expect("cyclotomic divisibility");
    }
    p
}

/// Indices `n` with `deg Φ_n = φ(n) <= max_degree`, ascending.
pub fn cyclotomic_indices(max_degree: usize) -> Vec<u64> {
    // φ(n) >= sqrt(n/2), so n <= 2·max_degree² covers every candidate.
    let bound = 2 * (max_degree as u64).pow(2) + 2;
    (1..=bound).filter(|&n| euler_phi(n) as usize <= max_degree).collect()
}

/// Hyperbolicity certificate for a toral automorphism.
///
/// Two checks: exact divisibility of the characteristic polynomial by every
/// cyclotomic polynomial of degree `<= n` (no root-of-unity eigenvalue, hence
/// `det(A^m - I) != 0` for all `m`), and a numeric scan for eigenvalues on
/// the unit circle, which also catches non-root-of-unity cases such as Salem
/// polynomials from dimension 4 on.
pub fn anosov_check(a: &IntMatrix) -> ValidationReport {
    let mut report = ValidationReport::default();
    let det = a.det();
    report.push(
        "unimodular",
        det.abs().is_one(),
        format!("det A = {det}"),
    );
    let chi = a.char_poly();
    let n = a.dim();
    let factors: Vec<u64> = cyclotomic_indices(n)
        .into_iter()
        .filter(|&k| chi.exact_div(&cyclotomic(k)).is_some())
        .collect();
    report.push(
        "no_root_of_unity_eigenvalue",
        factors.is_empty(),
        if factors.is_empty() {
            format!("{} has no cyclotomic factor of degree <= {n}", chi.display_with("λ"))
        } else {
            let names: Vec<String> = factors
                .iter()
                .map(|&k| format!("Φ_{k} = {}", cyclotomic(k).display_with("λ")))
                .collect();
            format!("{} is divisible by {}", chi.display_with("λ"), names.join(", "))
        },
    );
    let margin = match poly_roots(&chi, 12) {
        Ok(roots) => roots.iter().map(|z| (z.norm() - 1.0).abs()).fold(f64::INFINITY, f64::min),
        Err(e) => {
            report.push("hyperbolic", false, format!("eigenvalues unavailable: {e}"));
            return report;
        }
    };
    let hyperbolic = margin > 1e-9;
    report.push(
        "hyperbolic",
        hyperbolic,
        format!("min over eigenvalues of ||α| - 1| = {margin:.3e} (threshold 1e-9)"),
    );
    if report.passed() {
        report.anosov_certificate = Some(format!(
            "characteristic polynomial {} is free of cyclotomic factors and has no root \
             on the unit circle (margin {margin:.3e}); det(A^m - I) != 0 for all m >= 1",
            chi.display_with("λ")
        ));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn cat() -> IntMatrix {
        m(&[&[2, 1], &[1, 1]])
    }

    pub(crate) fn genus2() -> CohomologyAction {
        let phi1 = IntMatrix::block_diag(&[cat(), cat()]).unwrap();
        CohomologyAction::from_explicit(
            2,
            vec![1, 4, 1],
            vec![IntMatrix::identity(1), phi1, IntMatrix::identity(1)],
        )
        .unwrap()
    }

    #[test]
    fn toral_cat_map() {
        let a = CohomologyAction::from_toral(&cat()).unwrap();
        assert_eq!(a.fiber_dim(), 2);
        assert_eq!(a.betti(), &[1, 2, 1]);
        assert_eq!(a.phi_star(), &[m(&[&[1]]), cat(), m(&[&[1]])]);
        assert!(a.duality_enabled());
        assert_eq!(a.euler_characteristic(), 0);
    }

    #[test]
    fn toral_rejects_non_unimodular() {
        let e = CohomologyAction::from_toral(&m(&[&[2, 0], &[0, 1]])).unwrap_err();
        assert_eq!(e, Error::NotUnimodular("2".into()));
    }

    #[test]
    fn orientation_reversing_disables_duality() {
        let a = CohomologyAction::from_toral(&m(&[&[0, 1], &[1, 1]])).unwrap();
        assert!(!a.duality_enabled());
        assert_eq!(a.require_duality(), Err(Error::OrientationReversing));
    }

    #[test]
    fn shear_is_accepted_but_not_anosov() {
        let shear = m(&[&[1, 1], &[0, 1]]);
        assert!(CohomologyAction::from_toral(&shear).is_ok());
        let r = anosov_check(&shear);
        assert!(!r.passed());
        assert!(r.anosov_certificate.is_none());
        let c = r.check("no_root_of_unity_eigenvalue").unwrap();
        assert!(c.detail.contains("Φ_1"), "{}", c.detail);
    }

    #[test]
    fn anosov_verdicts() {
        assert!(anosov_check(&cat()).passed());
        assert!(anosov_check(&cat()).anosov_certificate.is_some());
        let rot = anosov_check(&m(&[&[0, -1], &[1, 0]]));
        assert!(!rot.passed());
        assert!(rot.check("no_root_of_unity_eigenvalue").unwrap().detail.contains("Φ_4"));
    }

    #[test]
    fn salem_matrix_is_caught_numerically() {
        // companion of x^4 - x^3 - x^2 - x + 1: Salem, two roots on the unit circle
        let p = IntPolynomial::from_i64(&[1, -1, -1, -1, 1]);
        let a = IntMatrix::companion(&p).unwrap();
        let r = anosov_check(&a);
        assert!(r.check("no_root_of_unity_eigenvalue").unwrap().passed);
        assert!(!r.check("hyperbolic").unwrap().passed);
    }

    #[test]
    fn cyclotomic_table() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), IntPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_indices(2), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn explicit_actions() {
        let g = genus2();
        assert!(g.duality_enabled());
        assert_eq!(g.euler_characteristic(), -2);

        let circle = CohomologyAction::from_explicit(
            1,
            vec![1, 1],
            vec![IntMatrix::identity(1), IntMatrix::identity(1)],
        )
        .unwrap();
        assert_eq!(circle.euler_characteristic(), 0);
        assert!(circle.duality_enabled());

        let bad = CohomologyAction::from_explicit(
            2,
            vec![1, 2, 1],
            vec![IntMatrix::identity(1), m(&[&[2, 0], &[0, 1]]), IntMatrix::identity(1)],
        )
        .unwrap();
        assert!(!bad.duality_enabled());
        let c = bad.report().check("determinant_reciprocity").unwrap();
        assert!(!c.passed);
        assert!(c.detail.contains("= 4"), "{}", c.detail);
        assert!(matches!(bad.require_duality(), Err(Error::DualityUnavailable(_))));
    }

    #[test]
    fn explicit_shape_errors() {
        let one = IntMatrix::identity(1);
        assert!(matches!(
            CohomologyAction::from_explicit(1, vec![1, 1], vec![one.clone()]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            CohomologyAction::from_explicit(1, vec![1, 2], vec![one.clone(), one.clone()]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            CohomologyAction::from_explicit(1, vec![2, 2], vec![IntMatrix::identity(2), IntMatrix::identity(2)]),
            Err(Error::InvalidAction(_))
        ));
    }

    #[test]
    fn lefschetz_numbers() {
        let a = CohomologyAction::from_toral(&cat()).unwrap();
        assert_eq!(a.lefschetz_number(1), BigInt::from(-1));
        assert_eq!(a.lefschetz_number(3), BigInt::from(-16));
        assert_eq!(
            a.lefschetz_sequence(3),
            vec![BigInt::from(-1), BigInt::from(-5), BigInt::from(-16)]
        );
        let id = CohomologyAction::from_toral(&IntMatrix::identity(2)).unwrap();
        for k in 1..6 {
            assert_eq!(id.lefschetz_number(k), BigInt::zero());
        }
    }

    #[test]
    fn eigenvalues_per_degree() {
        let a = CohomologyAction::from_toral(&cat()).unwrap();
        let e = a.eigen_degrees(12).unwrap();
        assert_eq!(e[0].len(), 1);
        assert_eq!(e[0][0].value, Complex64::new(1.0, 0.0));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((e[1][0].value.re - 1.0 / (phi * phi)).abs() < 1e-12);
        assert!((e[1][1].value.re - phi * phi).abs() < 1e-12);
        let g = genus2().eigen_degrees(12).unwrap();
        assert_eq!(g[1].iter().map(|r| r.multiplicity).collect::<Vec<_>>(), vec![2, 2]);
    }
}
