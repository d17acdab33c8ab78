//! Counting periodic points and closed orbits, then comparing the truncated
//! Euler product with the rational zeta function.

use num_complex::Complex64;
use torus_zeta::dynamics::{euler_product_both, orbit_table};
use torus_zeta::zeta::evaluate;
use torus_zeta::{build_zeta, CohomologyAction, Convention, FlowParams, IntMatrix};

fn main() -> torus_zeta::Result<()> {
    let a = IntMatrix::from_i64_rows(&[[2, 1], [1, 1]])?;
    let params = FlowParams::new(std::f64::consts::E, Convention::Signed)?;
    let table = orbit_table(&a, 12, &params)?;

    println!("{:>3} {:>10} {:>10} {:>10}", "m", "fixed", "exact", "orbits");
    for row in &table.rows {
        println!("{:>3} {:>10} {:>10} {:>10}", row.m, row.fix_unsigned, row.exact_period_points, row.orbit_count);
    }
    println!("growth rate {:.12}", table.growth_rate);

    let z = build_zeta(&CohomologyAction::from_toral(&a)?);
    let long = orbit_table(&a, 60, &params)?;
    let s = Complex64::new(2.0, 0.5);
    let both = euler_product_both(&long, s)?;
    println!("s = {s}");
    println!("  rational        {:.12}", evaluate(&z, s, params.r())?);
    println!("  signed product  {:.12}", both.signed);
    println!("  unsigned product {:.12}", both.unsigned);
    println!("  tail bound {:e}", long.tail_bound(s));

    // outside the convergence domain the product is refused
    if let Err(e) = euler_product_both(&long, Complex64::new(0.5, 0.0)) {
        println!("s = 0.5: {e}");
    }
    Ok(())
}
