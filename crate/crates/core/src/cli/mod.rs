//! Batch front end: a JSON system description in, tables or a JSON report out.
//!
//! Exit codes: 0 when every executed check passed, 1 on a validation or check
//! failure, 2 on a usage or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;

mod config;
mod render;
mod report;

pub use config::{FiberConfig, Scale, SystemConfig};
pub use render::{fmt_complex, render, render_csv, render_json, render_text, Format};
pub use report::{
    cmd_check, cmd_orbits, cmd_special, cmd_spectrum, cmd_validate, cmd_zeta,
    regularized_product_grid, CommandError, CommandResult, ConventionRelation, EulerColumn,
    Evaluation, IdentityCheck, Report, SpecialSection, SpectrumSection, Status, Validation,
    ZetaSection, EULER_TOLERANCE, FE_TOLERANCE, REGDET_TOLERANCE, SCHEMA_VERSION,
    SPECIAL_TOLERANCE, THETA_TOLERANCE,
};

use crate::dynamics::Convention;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "TORUS_ZETA_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Orbits,
    Zeta,
    Special,
    Spectrum,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Signed,
    Unsigned,
}

#[derive(Debug, Parser)]
#[command(name = "torus-zeta", version, about = "Zeta functions of suspension flows over toral automorphisms")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// System description (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Largest period for orbit tables, or series length for `special`.
    #[arg(long)]
    pub mmax: Option<u64>,
    /// Comma-separated points; `a:b:n` expands to n real points from a to b.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub vmin: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub vmax: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Overrides the convention in the config file.
    #[arg(long, value_enum)]
    convention: Option<ConventionArg>,
    /// Overrides the precision in the config file.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Add a truncated Euler product with this many periods to `zeta`.
    #[arg(long)]
    pub compare_euler: Option<u64>,
}

/// Parses `2`, `-1.5`, `2+i`, `3-0.5i`, `4i`, `-i`, `1e-3+2e1i`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse {text:?} as a complex number");
    let num = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().map_err(|_| bad())?;
            Ok(Complex64::new(re, num(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

/// Comma-separated points; `a:b:n` is a real grid of n points.
pub fn parse_s_list(text: &str) -> Result<Vec<Complex64>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(parse_complex(one)?),
            [a, b, n] => {
                let a: f64 = a.parse().map_err(|_| format!("bad grid start {a:?}"))?;
                let b: f64 = b.parse().map_err(|_| format!("bad grid end {b:?}"))?;
                let n: usize = n.parse().map_err(|_| format!("bad grid count {n:?}"))?;
                if n == 0 {
                    return Err(format!("grid {item:?} has no points"));
                }
                let step = if n == 1 { 0.0 } else { (b - a) / (n - 1) as f64 };
                out.extend((0..n).map(|j| Complex64::new(a + step * j as f64, 0.0)));
            }
            _ => return Err(format!("bad point or grid {item:?}")),
        }
    }
    if out.is_empty() {
        return Err("no evaluation points".into());
    }
    Ok(out)
}

/// Caps the global worker pool from `TORUS_ZETA_THREADS`, if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV}={v:?} is not a positive integer"))?;
    // a pool already built (e.g. a second call in one process) is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

/// Runs one command; returns the report or the error that sets the exit code.
pub fn execute(args: &Args) -> CommandResult {
    let mut config = SystemConfig::from_path(&args.config).map_err(|e| usage(e.to_string()))?;
    if let Some(c) = args.convention {
        config.convention = match c {
            ConventionArg::Signed => Convention::Signed,
            ConventionArg::Unsigned => Convention::Unsigned,
        };
    }
    if let Some(p) = args.precision {
        if p == 0 || p > crate::exactlinalg::MAX_PRECISION {
            return Err(usage(format!("precision {p} outside 1..={}", crate::exactlinalg::MAX_PRECISION)));
        }
        config.precision = p;
    }
    match args.command {
        Command::Validate => cmd_validate(&config),
        Command::Orbits => cmd_orbits(&config, args.mmax.unwrap_or(10)),
        Command::Zeta => {
            let s = parse_s_list(args.s.as_deref().ok_or_else(|| usage("zeta needs --s"))?)
                .map_err(usage)?;
            cmd_zeta(&config, &s, args.compare_euler)
        }
        Command::Special => {
            let k = parse_complex(args.k.as_deref().ok_or_else(|| usage("special needs --k"))?)
                .map_err(usage)?;
            cmd_special(&config, k, args.mmax.unwrap_or(60) as usize)
        }
        Command::Spectrum => {
            let degree = args.degree.ok_or_else(|| usage("spectrum needs --degree"))?;
            cmd_spectrum(&config, degree, args.vmin.unwrap_or(-2), args.vmax.unwrap_or(2))
        }
        Command::Check => cmd_check(&config),
    }
}

/// Full command line: parse, execute, print. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    match execute(&args) {
        Ok(report) => {
            let _ = out.write_all(render(&report, args.format).as_bytes());
            if report.passed() { 0 } else { 1 }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_forms() {
        let cases = [
            ("2", c(2.0, 0.0)),
            ("-1.5", c(-1.5, 0.0)),
            ("2+i", c(2.0, 1.0)),
            ("3-0.5i", c(3.0, -0.5)),
            ("4i", c(0.0, 4.0)),
            ("-i", c(0.0, -1.0)),
            ("1e-3+2e1i", c(1e-3, 20.0)),
            (" 2 + 1i ", c(2.0, 1.0)),
            ("-2e-1-3E+0j", c(-0.2, -3.0)),
        ];
        for (text, want) in cases {
            assert_eq!(parse_complex(text).unwrap(), want, "{text}");
        }
        for bad in ["", "x", "2+", "1+2", "i+1"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn s_lists() {
        assert_eq!(parse_s_list("2,3,2+i").unwrap(), vec![c(2.0, 0.0), c(3.0, 0.0), c(2.0, 1.0)]);
        assert_eq!(parse_s_list("1:2:3").unwrap(), vec![c(1.0, 0.0), c(1.5, 0.0), c(2.0, 0.0)]);
        assert!(parse_s_list("").is_err());
        assert!(parse_s_list("1:2:0").is_err());
    }
}
