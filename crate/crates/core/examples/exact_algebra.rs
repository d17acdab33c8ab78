//! Exact integer linear algebra: determinants, characteristic polynomials,
//! exterior powers and root finding.

use torus_zeta::exactlinalg::poly_roots_grouped;
use torus_zeta::{IntMatrix, IntPolynomial};

fn main() -> torus_zeta::Result<()> {
    let a = IntMatrix::from_i64_rows(&[[1, 1, 0], [1, 2, 1], [0, 1, 2]])?;
    println!("A = {:?}", a.rows());
    println!("det A = {}", a.det());
    println!("char poly = {}", a.char_poly().display_with("x"));
    println!("det(I - uA) = {}", a.det_one_minus().display_with("u"));

    for k in 0..=3 {
        let wedge = a.exterior_power(k)?;
        println!("trace of wedge^{k} A = {}", wedge.trace());
    }

    // big entries stay exact
    let big = a.pow(60);
    println!("A^60 has an entry with {} digits", big.max_abs_entry().to_string().len());

    for root in poly_roots_grouped(&a.char_poly(), 12)? {
        println!("root {:.12} (multiplicity {})", root.value, root.multiplicity);
    }

    let p = IntPolynomial::from_i64(&[-1, 1]).pow(3).mul(&IntPolynomial::from_i64(&[1, 0, 1]));
    println!("square-free parts of {}:", p.display_with("x"));
    for (factor, mult) in p.square_free_decomposition() {
        println!("  ({})^{mult}", factor.display_with("x"));
    }
    Ok(())
}
