use std::fmt::Write as _;

use num_complex::Complex64;

use super::report::{Evaluation, IdentityCheck, Report, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => render_text(report),
        Format::Csv => render_csv(report),
        Format::Json => render_json(report),
    }
}

pub fn render_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn fmt_complex(z: Complex64, digits: usize) -> String {
    if z.im == 0.0 {
        return format!("{:.*}", digits, z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{:.*}{sign}{:.*}i", digits, z.re, digits, z.im.abs())
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    let _ = writeln!(out, "{}", width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    for row in rows {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
    }
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_else(|| "-".into())
}

fn check_rows(checks: &[IdentityCheck]) -> Vec<Vec<String>> {
    checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                format!("{:?}", c.status).to_lowercase(),
                opt(c.residual, |r| format!("{r:.3e}")),
                format!("{:.0e}", c.tolerance),
                c.detail.clone(),
            ]
        })
        .collect()
}

const CHECK_HEADER: [&str; 5] = ["check", "status", "residual", "tolerance", "detail"];
const ORBIT_HEADER: [&str; 6] = ["m", "fix_signed", "fix_unsigned", "exact_period", "orbits", "log_norm"];
const EVAL_HEADER: [&str; 7] = ["s", "zeta", "pole_order", "euler_signed", "euler_unsigned", "residual", "tolerance"];
const SPECTRUM_HEADER: [&str; 6] = ["degree", "alpha", "mult", "v", "theta", "residual"];

fn orbit_rows(report: &Report) -> Vec<Vec<String>> {
    let Some(t) = &report.orbits else { return Vec::new() };
    t.rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                r.fix_signed.to_string(),
                r.fix_unsigned.to_string(),
                r.exact_period_points.to_string(),
                r.orbit_count.to_string(),
                format!("{:.12}", r.log_norm),
            ]
        })
        .collect()
}

fn eval_rows(evals: &[Evaluation], digits: usize) -> Vec<Vec<String>> {
    evals
        .iter()
        .map(|e| {
            let euler = e.euler.as_ref();
            vec![
                fmt_complex(e.s, 4),
                match (&e.value, &e.error) {
                    (Some(v), _) => fmt_complex(*v, digits),
                    (None, Some(err)) => format!("error: {err}"),
                    (None, None) => "pole".into(),
                },
                opt(e.pole_order, |o| o.to_string()),
                opt(euler.and_then(|c| c.signed), |v| fmt_complex(v, digits)),
                opt(euler.and_then(|c| c.unsigned), |v| fmt_complex(v, digits)),
                match euler {
                    Some(c) if c.refused.is_some() => "refused".into(),
                    Some(c) => opt(c.residual, |r| format!("{r:.3e}")),
                    None => "-".into(),
                },
                opt(euler.map(|c| c.tolerance), |t| format!("{t:.0e}")),
            ]
        })
        .collect()
}

fn spectrum_rows(report: &Report, digits: usize) -> Vec<Vec<String>> {
    let Some(s) = &report.spectrum else { return Vec::new() };
    s.spectrum
        .entries
        .iter()
        .map(|e| {
            vec![
                e.degree.to_string(),
                fmt_complex(e.alpha, digits),
                e.multiplicity.to_string(),
                e.v.to_string(),
                fmt_complex(e.theta, digits),
                format!("{:.3e}", e.residual),
            ]
        })
        .collect()
}

pub fn render_text(report: &Report) -> String {
    let digits = report.config.precision as usize;
    let mut out = String::new();
    let _ = writeln!(out, "torus-zeta {}  (r = {}, convention = {:?})", report.command, report.config.r, report.config.convention);

    if let Some(v) = &report.validation {
        let _ = writeln!(out, "\nvalidation: {}", if v.passed { "PASS" } else { "FAIL" });
        if let Some(err) = &v.error {
            let _ = writeln!(out, "  error: {err}");
        }
        for (label, rep) in [("anosov", &v.anosov), ("action", &v.action)] {
            let Some(rep) = rep else { continue };
            for c in &rep.checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "  [{mark}] {label}/{}: {}", c.name, c.detail);
            }
            if let Some(cert) = &rep.anosov_certificate {
                let _ = writeln!(out, "  certificate: {cert}");
            }
            for n in &rep.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        if v.error.is_none() {
            let _ = writeln!(
                out,
                "  betti = {:?}, χ = {}, duality {}",
                v.betti,
                v.euler_characteristic,
                if v.duality_enabled { "enabled" } else { "disabled" }
            );
        }
    }

    if let Some(t) = &report.orbits {
        let _ = writeln!(out, "\norbits (growth rate {:.12}):", t.growth_rate);
        table(&mut out, &ORBIT_HEADER, &orbit_rows(report));
    }

    if let Some(z) = &report.zeta {
        let _ = writeln!(out, "\nzeta = ∏ det(1 - φ*_i u)^((-1)^(i+1)), u = r^-s, χ = {}", z.euler_characteristic);
        for f in &z.factors {
            let _ = writeln!(out, "  i = {}: ({})^{}", f.degree, f.display, f.exponent);
        }
        let _ = writeln!(out, "  numerator   = {}", z.numerator.display_with("u"));
        let _ = writeln!(out, "  denominator = {}", z.denominator.display_with("u"));
    }
    if !report.evaluations.is_empty() {
        out.push('\n');
        table(&mut out, &EVAL_HEADER, &eval_rows(&report.evaluations, digits));
        for e in &report.evaluations {
            if let Some(msg) = e.euler.as_ref().and_then(|c| c.refused.as_ref()) {
                let _ = writeln!(out, "  s = {}: {msg}", fmt_complex(e.s, 4));
            }
        }
    }

    if let Some(sp) = &report.special {
        let o = &sp.order;
        let _ = writeln!(out, "\nk = {}", fmt_complex(o.k, 6));
        let _ = writeln!(
            out,
            "  order = {} (eigenvalue count {}, rational function {}, {})",
            o.order,
            o.from_eigenvalues,
            o.from_rational_function,
            if o.exact { "exact".to_string() } else { format!("numeric, tolerance {:.0e}", o.tolerance) }
        );
        let _ = writeln!(out, "  direct special value = {}", fmt_complex(sp.direct.value, digits));
        if let Some(q) = &sp.direct.rational_part {
            let _ = writeln!(out, "  exact: (log r)^{} · {q}", sp.direct.order);
        }
        match (&sp.series, &sp.series_refused) {
            (Some(s), _) => {
                let _ = writeln!(
                    out,
                    "  series value = {} (m_max = {}, tail bound {:.3e}, |Δ| = {:.3e}, tolerance {:.0e})",
                    fmt_complex(s.value, digits),
                    s.m_max,
                    s.tail_bound,
                    sp.agreement.unwrap_or(f64::NAN),
                    sp.tolerance
                );
            }
            (None, Some(msg)) => {
                let _ = writeln!(out, "  series refused: {msg}");
            }
            _ => {}
        }
    }

    if let Some(s) = &report.spectrum {
        let _ = writeln!(out, "\nΘ-spectrum, spacing {}:", fmt_complex(s.spectrum.spacing, digits));
        table(&mut out, &SPECTRUM_HEADER, &spectrum_rows(report, digits));
        for w in &s.spectrum.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
    }

    if !report.checks.is_empty() {
        out.push('\n');
        table(&mut out, &CHECK_HEADER, &check_rows(&report.checks));
        let failed = report.checks.iter().filter(|c| c.status == Status::Failed).count();
        let _ = writeln!(out, "\n{}", if failed == 0 { "all checks passed".to_string() } else { format!("{failed} check(s) FAILED") });
    }
    out
}

/// The primary table of the report as CSV.
pub fn render_csv(report: &Report) -> String {
    let digits = report.config.precision as usize;
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = if report.orbits.is_some() {
        (ORBIT_HEADER.to_vec(), orbit_rows(report))
    } else if !report.evaluations.is_empty() {
        (EVAL_HEADER.to_vec(), eval_rows(&report.evaluations, digits))
    } else if report.spectrum.is_some() {
        (SPECTRUM_HEADER.to_vec(), spectrum_rows(report, digits))
    } else if let Some(sp) = &report.special {
        (
            vec!["k", "order", "direct", "series", "series_refused", "tolerance"],
            vec![vec![
                fmt_complex(sp.order.k, 6),
                sp.order.order.to_string(),
                fmt_complex(sp.direct.value, digits),
                opt(sp.series.as_ref(), |s| fmt_complex(s.value, digits)),
                sp.series_refused.clone().unwrap_or_default(),
                format!("{:.0e}", sp.tolerance),
            ]],
        )
    } else if let Some(v) = &report.validation {
        let rows = [("anosov", &v.anosov), ("action", &v.action)]
            .into_iter()
            .flat_map(|(label, rep)| {
                rep.iter().flat_map(move |r| {
                    r.checks.iter().map(move |c| {
                        vec![format!("{label}/{}", c.name), c.passed.to_string(), c.detail.clone()]
                    })
                })
            })
            .collect();
        (vec!["check", "passed", "detail"], rows)
    } else {
        (CHECK_HEADER.to_vec(), check_rows(&report.checks))
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
