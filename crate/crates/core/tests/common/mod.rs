#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use torus_zeta::cohomology::anosov_check;
use torus_zeta::{CohomologyAction, IntMatrix};

pub fn cat_matrix() -> IntMatrix {
    IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap()
}

pub fn cat() -> CohomologyAction {
    CohomologyAction::from_toral(&cat_matrix()).unwrap()
}

/// Genus-2 surface with the cat map acting on both handles.
pub fn genus2() -> CohomologyAction {
    let a = cat_matrix();
    let h1 = IntMatrix::block_diag(&[a.clone(), a]).unwrap();
    CohomologyAction::from_explicit(
        2,
        vec![1, 4, 1],
        vec![IntMatrix::identity(1), h1, IntMatrix::identity(1)],
    )
    .unwrap()
}

pub fn circle() -> CohomologyAction {
    CohomologyAction::from_explicit(1, vec![1, 1], vec![IntMatrix::identity(1); 2]).unwrap()
}

/// Random walk in SL(d, ℤ) by elementary matrices `I ± E_ij`.
pub fn random_sl(rng: &mut StdRng, d: usize, steps: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(d);
    for _ in 0..steps {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = vec![vec![0i64; d]; d];
        for (k, row) in e.iter_mut().enumerate() {
            row[k] = 1;
        }
        e[i][j] = sign;
        m = &m * &IntMatrix::from_i64_rows(&e).unwrap();
    }
    m
}

/// A random hyperbolic element of SL(d, ℤ), by rejection.
pub fn random_hyperbolic(rng: &mut StdRng, d: usize) -> IntMatrix {
    loop {
        let steps = rng.gen_range(2 * d..=4 * d);
        let m = random_sl(rng, d, steps);
        if anosov_check(&m).passed() {
            return m;
        }
    }
}
