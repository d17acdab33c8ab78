//! The zeta function as a rational function of u = r^{-s}: factors,
//! evaluation, poles and the functional equation.

use num_complex::Complex64;
use torus_zeta::zeta::{evaluate, functional_equation_residual, log_derivative, order_at};
use torus_zeta::{build_zeta, CohomologyAction, IntMatrix};

fn main() -> torus_zeta::Result<()> {
    let cat = IntMatrix::from_i64_rows(&[[2, 1], [1, 1]])?;
    let action = CohomologyAction::from_toral(&cat)?;
    let z = build_zeta(&action);
    let r = 10.0;

    for f in &z.factors {
        println!("degree {}: ({})^{}", f.degree, f.poly.display_with("u"), f.exponent);
    }
    println!("zeta = ({}) / ({})", z.numerator.display_with("u"), z.denominator.display_with("u"));

    for s in [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0), Complex64::new(-0.5, 3.0)] {
        println!("zeta({s}) = {:.12}", evaluate(&z, s, r)?);
        println!("  -d/ds log zeta = {:.12}", log_derivative(&z, s, r)?);
    }

    let s0 = Complex64::new(0.0, 0.0);
    println!("order at s = 0: {}", order_at(&z, &action, s0, r)?);
    if let Err(e) = evaluate(&z, s0, r) {
        println!("evaluate at s = 0: {e}");
    }

    let fe = functional_equation_residual(&z, &action, Complex64::new(0.3, 0.7), r)?;
    println!("functional equation residual |{:.3e}|, symbolic zero {}", fe.residual.norm(), fe.symbolic_zero);

    // three-dimensional fiber: the relation takes the reciprocal form
    let a3 = IntMatrix::from_i64_rows(&[[1, 1, 0], [1, 2, 1], [0, 1, 2]])?;
    let action3 = CohomologyAction::from_toral(&a3)?;
    let fe3 = functional_equation_residual(&build_zeta(&action3), &action3, Complex64::new(0.3, 0.7), r)?;
    println!(
        "T^3: chi = {}, stated form holds {}, reciprocal form holds {}",
        fe3.chi, fe3.symbolic_zero, fe3.reciprocal_form
    );
    Ok(())
}
