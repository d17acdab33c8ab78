//! Building the action on cohomology, for a torus map and for an explicitly
//! given surface, and checking the hyperbolicity conditions.

use torus_zeta::cohomology::anosov_check;
use torus_zeta::{CohomologyAction, IntMatrix};

fn main() -> torus_zeta::Result<()> {
    let cat = IntMatrix::from_i64_rows(&[[2, 1], [1, 1]])?;
    let action = CohomologyAction::from_toral(&cat)?;
    println!("betti numbers {:?}", action.betti());
    println!("euler characteristic {}", action.euler_characteristic());
    for (i, m) in action.phi_star().iter().enumerate() {
        println!("degree {i}: {:?}", m.rows());
    }
    println!("Lefschetz numbers {:?}", action.lefschetz_sequence(8));

    let shear = IntMatrix::from_i64_rows(&[[1, 1], [0, 1]])?;
    let report = anosov_check(&shear);
    for failure in report.failures() {
        println!("shear fails {}: {}", failure.name, failure.detail);
    }

    // genus two, with the cat map on each handle
    let h1 = IntMatrix::block_diag(&[cat.clone(), cat])?;
    let surface = CohomologyAction::from_explicit(
        2,
        vec![1, 4, 1],
        vec![IntMatrix::identity(1), h1, IntMatrix::identity(1)],
    )?;
    println!(
        "genus 2: chi = {}, duality {}",
        surface.euler_characteristic(),
        surface.duality_enabled()
    );
    Ok(())
}
