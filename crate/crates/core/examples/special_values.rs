//! Leading coefficients at integer points, exactly when possible and by
//! the orbit series inside the convergence domain.

use num_complex::Complex64;
use torus_zeta::zeta::{order_report, special_value, special_value_series};
use torus_zeta::{build_zeta, CohomologyAction, IntMatrix};

fn show(action: &CohomologyAction, k: f64, r: f64) -> torus_zeta::Result<()> {
    let z = build_zeta(action);
    let k = Complex64::new(k, 0.0);
    let order = order_report(&z, action, k, r)?;
    let direct = special_value(&z, action, k, r)?;
    println!("r = {r}, k = {}: order {} (exact test {})", k.re, order.order, order.exact);
    println!("  value {:.12}", direct.value);
    if let Some(q) = &direct.rational_part {
        println!("  rational part {q}");
    }
    match special_value_series(action, k, r, 80) {
        Ok(series) => println!("  series {:.12} (tail bound {:.1e})", series.value, series.tail_bound),
        Err(e) => println!("  series refused: {e}"),
    }
    Ok(())
}

fn main() -> torus_zeta::Result<()> {
    let cat = CohomologyAction::from_toral(&IntMatrix::from_i64_rows(&[[2, 1], [1, 1]])?)?;
    show(&cat, 1.0, 10.0)?;
    show(&cat, 2.0, 10.0)?;
    show(&cat, 0.0, std::f64::consts::E)?;
    // r equal to the expanding eigenvalue puts a zero at k = 1
    show(&cat, 1.0, (3.0 + 5f64.sqrt()) / 2.0)?;
    Ok(())
}
