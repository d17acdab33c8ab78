use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::SystemConfig;
use crate::cohomology::{anosov_check, CohomologyAction, ValidationReport};
use crate::dynamics::{
    euler_product_partial, orbit_table, Convention, FlowParams, OrbitTable,
};
use crate::error::Error;
use crate::exactlinalg::IntMatrix;
use crate::specialfn::{regularized_product, ROUTE_TOLERANCE};
use crate::zeta::{
    build_zeta, evaluate, functional_equation_residual, functional_equation_symbolic,
    order_report, regularized_zeta, special_value, special_value_series, theta_spectrum,
    OrderReport, SeriesValue, SpecialValue, ThetaSpectrum, ZetaRational, POLE_TOLERANCE,
};

/// Agreement required between a truncated Euler product and the rational form.
pub const EULER_TOLERANCE: f64 = 1e-8;
/// Agreement required between the series and direct special values.
pub const SPECIAL_TOLERANCE: f64 = 1e-6;
/// Bound on `|exp(θ log r) - α|`, relative to `max(1, |α|)`.
pub const THETA_TOLERANCE: f64 = 1e-10;
/// Bound on the numeric functional-equation residual, relative to `max(1, |ζ(s)|)`.
pub const FE_TOLERANCE: f64 = 1e-10;
/// Bound on the regularized-determinant assembly of `ζ`, relative.
pub const REGDET_TOLERANCE: f64 = 1e-8;

pub const SCHEMA_VERSION: u32 = 1;

/// Failure of a command, mapped to the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CommandError {
    /// Bad arguments or unreadable configuration: exit 2.
    Usage(String),
    /// The input failed validation or a computation refused: exit 1.
    Failed(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => 2,
            CommandError::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CommandError::Usage(m) | CommandError::Failed(m) => m,
        }
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Failed(e.to_string())
    }
}

pub type CommandResult = std::result::Result<Report, CommandError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub status: Status,
    /// Largest residual observed; `None` for exact checks.
    pub residual: Option<f64>,
    /// Zero for exact checks.
    pub tolerance: f64,
    pub detail: String,
}

impl IdentityCheck {
    fn new(name: &str, ok: bool, residual: Option<f64>, tolerance: f64, detail: String) -> Self {
        let status = if ok { Status::Passed } else { Status::Failed };
        Self { name: name.into(), status, residual, tolerance, detail }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: Status::Skipped,
            residual: None,
            tolerance: 0.0,
            detail: detail.into(),
        }
    }

    fn failed(name: &str, tolerance: f64, err: impl std::fmt::Display) -> Self {
        Self::new(name, false, None, tolerance, err.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    pub passed: bool,
    pub duality_enabled: bool,
    pub euler_characteristic: i64,
    pub betti: Vec<usize>,
    /// Present for toral fibers.
    pub anosov: Option<ValidationReport>,
    pub action: Option<ValidationReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub degree: usize,
    pub exponent: i32,
    pub poly: crate::exactlinalg::IntPolynomial,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaSection {
    pub factors: Vec<FactorEntry>,
    pub numerator: crate::exactlinalg::IntPolynomial,
    pub denominator: crate::exactlinalg::IntPolynomial,
    pub euler_characteristic: i64,
}

impl ZetaSection {
    fn new(z: &ZetaRational) -> Self {
        Self {
            factors: z
                .factors
                .iter()
                .map(|f| FactorEntry {
                    degree: f.degree,
                    exponent: f.exponent,
                    poly: f.poly.clone(),
                    display: f.poly.display_with("u"),
                })
                .collect(),
            numerator: z.numerator.clone(),
            denominator: z.denominator.clone(),
            euler_characteristic: z.euler_characteristic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConventionRelation {
    Equal,
    Reciprocal,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerColumn {
    pub m_max: u64,
    pub signed: Option<Complex64>,
    pub unsigned: Option<Complex64>,
    /// The product in the configured convention.
    pub selected: Option<Complex64>,
    /// `|signed product - ζ(s)|`
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub tail_bound: Option<f64>,
    pub conventions_differ: bool,
    pub unsigned_relation: Option<ConventionRelation>,
    pub refused: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub s: Complex64,
    pub value: Option<Complex64>,
    /// Set when `s` is a pole: the (negative) order there.
    pub pole_order: Option<i64>,
    pub error: Option<String>,
    pub pole_tolerance: f64,
    pub euler: Option<EulerColumn>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialSection {
    pub order: OrderReport,
    pub direct: SpecialValue,
    pub series: Option<SeriesValue>,
    pub series_refused: Option<String>,
    /// `|series - direct|` when both exist.
    pub agreement: Option<f64>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSection {
    pub spectrum: ThetaSpectrum,
    pub max_residual: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: SystemConfig,
    pub validation: Option<Validation>,
    pub orbits: Option<OrbitTable>,
    pub zeta: Option<ZetaSection>,
    pub evaluations: Vec<Evaluation>,
    pub special: Option<SpecialSection>,
    pub spectrum: Option<SpectrumSection>,
    pub checks: Vec<IdentityCheck>,
}

impl Report {
    fn new(command: &str, config: &SystemConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config: config.clone(),
            validation: None,
            orbits: None,
            zeta: None,
            evaluations: Vec::new(),
            special: None,
            spectrum: None,
            checks: Vec::new(),
        }
    }

    /// True iff validation (when run) passed and no executed check failed.
    pub fn passed(&self) -> bool {
        self.validation.as_ref().is_none_or(|v| v.passed)
            && self.checks.iter().all(|c| c.status != Status::Failed)
    }
}

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

pub fn cmd_validate(config: &SystemConfig) -> CommandResult {
    let mut report = Report::new("validate", config);
    let anosov = config.toral_matrix().map(anosov_check);
    let (action, error) = match config.action() {
        Ok(a) => (Some(a), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let passed = action.is_some() && anosov.as_ref().is_none_or(ValidationReport::passed);
    report.validation = Some(Validation {
        passed,
        duality_enabled: action.as_ref().is_some_and(CohomologyAction::duality_enabled),
        euler_characteristic: action.as_ref().map_or(0, CohomologyAction::euler_characteristic),
        betti: action.as_ref().map(|a| a.betti().to_vec()).unwrap_or_default(),
        anosov,
        action: action.as_ref().map(|a| a.report().clone()),
        error,
    });
    Ok(report)
}

/// Toral matrix of a config that passes the Anosov gate.
fn hyperbolic_matrix(config: &SystemConfig) -> std::result::Result<&IntMatrix, CommandError> {
    let a = config.toral_matrix().ok_or_else(|| {
        CommandError::Failed("orbit counting needs a toral fiber matrix".into())
    })?;
    let check = anosov_check(a);
    if !check.passed() {
        let why: Vec<String> = check.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        return Err(CommandError::Failed(format!(
            "refusing non-hyperbolic monodromy ({})",
            why.join("; ")
        )));
    }
    Ok(a)
}

pub fn cmd_orbits(config: &SystemConfig, m_max: u64) -> CommandResult {
    let a = hyperbolic_matrix(config)?;
    let params = FlowParams::new(config.r(), config.convention)?;
    let mut report = Report::new("orbits", config);
    report.orbits = Some(orbit_table(a, m_max, &params)?);
    Ok(report)
}

fn euler_column(
    table: &OrbitTable,
    s: Complex64,
    value: Option<Complex64>,
    convention: Convention,
) -> EulerColumn {
    let mut col = EulerColumn {
        m_max: table.m_max(),
        signed: None,
        unsigned: None,
        selected: None,
        residual: None,
        tolerance: EULER_TOLERANCE,
        tail_bound: None,
        conventions_differ: table.conventions_differ(),
        unsigned_relation: None,
        refused: None,
    };
    let (signed, unsigned) = match (
        euler_product_partial(table, s, Convention::Signed),
        euler_product_partial(table, s, Convention::Unsigned),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            col.refused = Some(e.to_string());
            return col;
        }
    };
    col.signed = Some(signed);
    col.unsigned = Some(unsigned);
    col.selected = Some(match convention {
        Convention::Signed => signed,
        Convention::Unsigned => unsigned,
    });
    col.tail_bound = Some(table.tail_bound(s));
    col.residual = value.map(|v| (signed - v).norm());
    col.unsigned_relation = Some(if (unsigned - signed).norm() < EULER_TOLERANCE {
        ConventionRelation::Equal
    } else if (unsigned * signed - 1.0).norm() < EULER_TOLERANCE {
        ConventionRelation::Reciprocal
    } else {
        ConventionRelation::Neither
    });
    col
}

/// `ζ(s)` at each point, with an optional truncated Euler product alongside.
pub fn cmd_zeta(config: &SystemConfig, s_list: &[Complex64], compare_euler: Option<u64>) -> CommandResult {
    let action = config.action()?;
    let z = build_zeta(&action);
    let r = config.r();
    let table = match compare_euler {
        Some(m) => {
            let a = hyperbolic_matrix(config)?;
            Some(orbit_table(a, m, &FlowParams::new(r, config.convention)?)?)
        }
        None => None,
    };
    let mut report = Report::new("zeta", config);
    report.evaluations = s_list
        .par_iter()
        .map(|&s| {
            let mut ev = Evaluation {
                s,
                value: None,
                pole_order: None,
                error: None,
                pole_tolerance: POLE_TOLERANCE,
                euler: None,
            };
            match evaluate(&z, s, r) {
                Ok(v) => ev.value = Some(v),
                Err(Error::Pole(msg)) => match order_report(&z, &action, s, r) {
                    Ok(o) => ev.pole_order = Some(o.order),
                    Err(e) => ev.error = Some(format!("{msg}; {e}")),
                },
                Err(e) => ev.error = Some(e.to_string()),
            }
            ev.euler = table.as_ref().map(|t| euler_column(t, s, ev.value, config.convention));
            ev
        })
        .collect();
    report.zeta = Some(ZetaSection::new(&z));
    Ok(report)
}

pub fn cmd_special(config: &SystemConfig, k: Complex64, m_max: usize) -> CommandResult {
    let action = config.action()?;
    let z = build_zeta(&action);
    let r = config.r();
    let order = order_report(&z, &action, k, r)?;
    let direct = special_value(&z, &action, k, r)?;
    let (series, series_refused) = match special_value_series(&action, k, r, m_max) {
        Ok(sv) => (Some(sv), None),
        Err(Error::Divergent(msg)) => (None, Some(msg)),
        Err(e) => return Err(e.into()),
    };
    let agreement = series.as_ref().map(|sv| (sv.value - direct.value).norm());
    let tolerance = SPECIAL_TOLERANCE * direct.value.norm().max(1.0);
    let mut report = Report::new("special", config);
    if let Some(gap) = agreement {
        report.checks.push(IdentityCheck::new(
            "special_value_series_vs_direct",
            gap < tolerance,
            Some(gap),
            tolerance,
            format!("m_max = {m_max}"),
        ));
    }
    report.special = Some(SpecialSection { order, direct, series, series_refused, agreement, tolerance });
    Ok(report)
}

pub fn cmd_spectrum(config: &SystemConfig, degree: usize, v_min: i64, v_max: i64) -> CommandResult {
    if v_min > v_max {
        return Err(CommandError::Usage(format!("empty window vmin = {v_min} > vmax = {v_max}")));
    }
    let action = config.action()?;
    let spectrum = theta_spectrum(&action, degree, config.r(), v_min..=v_max, config.precision)?;
    let max_residual = spectrum
        .entries
        .iter()
        .map(|e| e.residual / e.alpha.norm().max(1.0))
        .fold(0.0, f64::max);
    let mut report = Report::new("spectrum", config);
    report.checks.push(IdentityCheck::new(
        "theta_exponential",
        max_residual < THETA_TOLERANCE,
        Some(max_residual),
        THETA_TOLERANCE,
        format!("{} entries, |exp(θ log r) - α| / max(1, |α|)", spectrum.entries.len()),
    ));
    report.spectrum = Some(SpectrumSection { spectrum, max_residual, tolerance: THETA_TOLERANCE });
    Ok(report)
}

/// The 20-point grid on which the regularized product is cross-checked.
pub fn regularized_product_grid() -> Vec<(Complex64, Complex64)> {
    let etas = [
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, 2.0 * PI / 2f64.ln()),
        Complex64::new(0.0, -1.0),
        Complex64::new(1.0, 1.0),
    ];
    let shifts = [0.1, 0.3, 0.5, 0.7, 0.9];
    etas.iter()
        .flat_map(|&eta| shifts.iter().map(move |&s| (eta, Complex64::new(s, 0.0))))
        .collect()
}

/// Points well inside the convergence domain: `r^σ = e · growth`.
fn sample_points(growth: f64, r: f64) -> Vec<Complex64> {
    let sigma = (growth.ln() + 1.0) / r.ln();
    vec![
        Complex64::new(sigma, 0.0),
        Complex64::new(sigma + 1.0, 0.0),
        Complex64::new(sigma, 1.0),
    ]
}

fn check_lefschetz(action: &CohomologyAction, a: &IntMatrix) -> IdentityCheck {
    let m_max = 20u64;
    let identity = IntMatrix::identity(a.dim());
    let bad: Vec<u64> = (1..=m_max)
        .into_par_iter()
        .filter(|&m| action.lefschetz_number(m) != identity.sub(&a.pow(m)).det())
        .collect();
    IdentityCheck::new(
        "lefschetz_equals_det",
        bad.is_empty(),
        None,
        0.0,
        if bad.is_empty() {
            format!("Λ(φ^m) = det(I - A^m) exactly for m = 1..={m_max}")
        } else {
            format!("mismatch at m = {bad:?}")
        },
    )
}

fn check_euler(config: &SystemConfig, z: &ZetaRational, points: &[Complex64]) -> IdentityCheck {
    let name = "euler_product_vs_rational";
    let m_max = 40;
    let run = || -> crate::error::Result<(f64, String)> {
        let a = config.toral_matrix().expect("toral");
        let table = orbit_table(a, m_max, &FlowParams::new(config.r(), config.convention)?)?;
        let mut worst = 0.0f64;
        let mut relations = Vec::new();
        for &s in points {
            let v = evaluate(z, s, config.r())?;
            let col = euler_column(&table, s, Some(v), config.convention);
            if let Some(msg) = col.refused {
                return Err(Error::Divergent(msg));
            }
            worst = worst.max(col.residual.unwrap_or(f64::INFINITY) / v.norm().max(1.0));
            relations.push(format!("{:?}", col.unsigned_relation.unwrap()).to_lowercase());
        }
        relations.sort();
        relations.dedup();
        Ok((worst, format!("m_max = {m_max}; unsigned convention: {}", relations.join("/"))))
    };
    match run() {
        Ok((worst, detail)) => {
            IdentityCheck::new(name, worst < EULER_TOLERANCE, Some(worst), EULER_TOLERANCE, detail)
        }
        Err(e) => IdentityCheck::failed(name, EULER_TOLERANCE, e),
    }
}

fn check_regularized_product() -> IdentityCheck {
    let name = "regularized_product_two_routes";
    let mut worst = 0.0f64;
    for (eta, s) in regularized_product_grid() {
        match regularized_product(eta, s) {
            Ok(p) => worst = worst.max(p.discrepancy() / p.closed_form.norm().max(1.0)),
            Err(e) => return IdentityCheck::failed(name, ROUTE_TOLERANCE, e),
        }
    }
    IdentityCheck::new(
        name,
        worst < ROUTE_TOLERANCE,
        Some(worst),
        ROUTE_TOLERANCE,
        "20-point (η, s) grid".into(),
    )
}

fn check_regdet(action: &CohomologyAction, z: &ZetaRational, r: f64, points: &[Complex64]) -> IdentityCheck {
    let name = "regularized_determinant_vs_rational";
    let mut worst = 0.0f64;
    for &s in points {
        let (reg, direct) = match (regularized_zeta(action, s, r), evaluate(z, s, r)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return IdentityCheck::failed(name, REGDET_TOLERANCE, e),
        };
        worst = worst.max(relative(reg.value, direct));
    }
    IdentityCheck::new(
        name,
        worst < REGDET_TOLERANCE,
        Some(worst),
        REGDET_TOLERANCE,
        format!("{} sample points", points.len()),
    )
}

fn check_functional_equation(
    action: &CohomologyAction,
    z: &ZetaRational,
    r: f64,
    points: &[Complex64],
) -> IdentityCheck {
    let name = "functional_equation";
    if let Err(e) = action.require_duality() {
        return IdentityCheck::skipped(name, e.to_string());
    }
    let symbolic = match functional_equation_symbolic(z, action) {
        Ok(p) => p,
        Err(e) => return IdentityCheck::failed(name, FE_TOLERANCE, e),
    };
    let mut worst = 0.0f64;
    let mut reciprocal = false;
    for &s in points {
        match functional_equation_residual(z, action, s, r) {
            Ok(fe) => {
                worst = worst.max(fe.residual.norm() / fe.lhs.norm().max(1.0));
                reciprocal = fe.reciprocal_form;
            }
            Err(e) => return IdentityCheck::failed(name, FE_TOLERANCE, e),
        }
    }
    IdentityCheck::new(
        name,
        symbolic.is_zero() && worst < FE_TOLERANCE,
        Some(worst),
        FE_TOLERANCE,
        if symbolic.is_zero() {
            format!("symbolic residual is the zero polynomial; χ = {}", z.euler_characteristic)
        } else if reciprocal && action.fiber_dim() % 2 == 1 {
            format!(
                "symbolic residual {} is nonzero; fiber dimension {} is odd, where duality \
                 gives ζ(s)ζ(-s) = c·u^χ instead (verified symbolically)",
                symbolic.display_with("u"),
                action.fiber_dim()
            )
        } else {
            format!("symbolic residual {} is nonzero", symbolic.display_with("u"))
        },
    )
}

fn check_special(action: &CohomologyAction, z: &ZetaRational, r: f64, growth: f64) -> IdentityCheck {
    let name = "special_value_series_vs_direct";
    let k = Complex64::new((growth.ln() + 1.0) / r.ln(), 0.0);
    let m_max = 60;
    let run = || -> crate::error::Result<(f64, f64)> {
        let direct = special_value(z, action, k, r)?;
        let series = special_value_series(action, k, r, m_max)?;
        let tol = SPECIAL_TOLERANCE * direct.value.norm().max(1.0);
        Ok(((series.value - direct.value).norm(), tol))
    };
    match run() {
        Ok((gap, tol)) => IdentityCheck::new(
            name,
            gap < tol,
            Some(gap),
            tol,
            format!("k = {:.6}, m_max = {m_max}", k.re),
        ),
        Err(e) => IdentityCheck::failed(name, SPECIAL_TOLERANCE, e),
    }
}

/// Runs the identity suite; the report fails if any executed check fails.
pub fn cmd_check(config: &SystemConfig) -> CommandResult {
    let action = config.action()?;
    let z = build_zeta(&action);
    let r = config.r();
    let mut report = Report::new("check", config);
    let growth = action.spectral_radius(crate::zeta::ROOT_PRECISION)?.max(1.0);
    let points = sample_points(growth, r);

    match config.toral_matrix() {
        Some(a) if anosov_check(a).passed() => {
            report.checks.push(check_lefschetz(&action, a));
            report.checks.push(check_euler(config, &z, &points));
        }
        Some(_) => {
            report.checks.push(check_lefschetz(&action, config.toral_matrix().unwrap()));
            report.checks.push(IdentityCheck::skipped(
                "euler_product_vs_rational",
                "monodromy is not hyperbolic",
            ));
        }
        None => {
            report.checks.push(IdentityCheck::skipped("lefschetz_equals_det", "explicit action"));
            report.checks.push(IdentityCheck::skipped("euler_product_vs_rational", "explicit action"));
        }
    }
    report.checks.push(check_regularized_product());
    report.checks.push(check_regdet(&action, &z, r, &points));
    report.checks.push(check_functional_equation(&action, &z, r, &points));
    report.checks.push(check_special(&action, &z, r, growth));
    Ok(report)
}
