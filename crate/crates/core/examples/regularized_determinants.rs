//! Zeta-regularized products over the Θ-lattice, by the closed form and by
//! Hurwitz zeta derivatives, and the resulting determinant formula.

use num_complex::Complex64;
use torus_zeta::specialfn::{hurwitz_zeta, regularized_product};
use torus_zeta::zeta::{evaluate, regularized_zeta};
use torus_zeta::{build_zeta, CohomologyAction, IntMatrix};

fn main() -> torus_zeta::Result<()> {
    let s = Complex64::new(0.5, 0.0);
    println!("zeta_hur(2, 1) = {:.15} (pi^2/6 = {:.15})", hurwitz_zeta(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0))?.re, std::f64::consts::PI.powi(2) / 6.0);

    for eta in [Complex64::new(0.0, 2.0), Complex64::new(1.0, -1.0), Complex64::new(-3.0, 0.5)] {
        let p = regularized_product(eta, Complex64::new(0.3, 0.2))?;
        println!(
            "eta {eta}: closed form {:.12}, Hurwitz route {:.12}, |diff| {:.1e}",
            p.closed_form, p.definitional, p.discrepancy()
        );
    }

    let action = CohomologyAction::from_toral(&IntMatrix::from_i64_rows(&[[2, 1], [1, 1]])?)?;
    let z = build_zeta(&action);
    let r = 3.0;
    for s in [s, Complex64::new(1.7, 0.4)] {
        let reg = regularized_zeta(&action, s, r)?;
        println!("s = {s}: determinant formula {:.12}, rational {:.12}", reg.value, evaluate(&z, s, r)?);
    }
    Ok(())
}
