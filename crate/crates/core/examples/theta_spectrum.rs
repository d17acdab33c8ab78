//! The Θ-eigenvalues: every zero or pole of a factor, repeated along the
//! imaginary lattice of period 2πi / log r.

use torus_zeta::zeta::theta_spectrum;
use torus_zeta::{CohomologyAction, IntMatrix};

fn main() -> torus_zeta::Result<()> {
    let a = IntMatrix::from_i64_rows(&[[0, 0, 1], [1, 0, -1], [0, 1, 2]])?;
    let action = CohomologyAction::from_toral(&a)?;
    let r = 2.0;
    for degree in 0..=3 {
        let sp = theta_spectrum(&action, degree, r, -1..=1, 12)?;
        println!("degree {degree}, spacing {:.6}", sp.spacing);
        for e in &sp.entries {
            println!(
                "  alpha {:>26.10}  v {:>2}  theta {:>28.10}  residual {:.1e}",
                e.alpha, e.v, e.theta, e.residual
            );
        }
        for w in &sp.warnings {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
