mod common;

use std::f64::consts::{E, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{cat, cat_matrix, genus2, random_hyperbolic, random_sl};
use torus_zeta::dynamics::{euler_product_partial, orbit_table, Convention, FlowParams};
use torus_zeta::exactlinalg::poly_roots;
use torus_zeta::specialfn::{hurwitz_zeta, regularized_product};
use torus_zeta::zeta::{
    evaluate, functional_equation_symbolic, log_derivative, order_report, special_value,
    special_value_series, theta_spectrum,
};
use torus_zeta::{build_zeta, CohomologyAction, IntMatrix, IntPolynomial};

fn matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        let rows: Vec<Vec<i64>> = v.chunks(n).map(<[i64]>::to_vec).collect();
        IntMatrix::from_i64_rows(&rows).unwrap()
    })
}

fn square_pair() -> impl Strategy<Value = (IntMatrix, IntMatrix)> {
    (1usize..=4).prop_flat_map(|n| (matrix(n), matrix(n)))
}

fn poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-9i64..=9, 2..=7)
        .prop_filter("nonconstant", |c| c.last() != Some(&0))
        .prop_map(|c| IntPolynomial::from_i64(&c))
}

fn hyperbolic(d: usize) -> impl Strategy<Value = IntMatrix> {
    any::<u64>().prop_map(move |seed| random_hyperbolic(&mut StdRng::seed_from_u64(seed), d))
}

fn sl(d: usize) -> impl Strategy<Value = IntMatrix> {
    (any::<u64>(), 1usize..12).prop_map(move |(seed, steps)| random_sl(&mut StdRng::seed_from_u64(seed), d, steps))
}

/// `p(A)` by Horner's rule.
fn eval_at_matrix(p: &IntPolynomial, a: &IntMatrix) -> IntMatrix {
    let n = a.dim();
    let mut acc = IntMatrix::zeros(n);
    for c in p.coeffs().iter().rev() {
        acc = (&acc * a).add_scalar_identity(c);
    }
    acc
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exterior_power_is_functorial((a, b) in square_pair(), k in 0usize..=4) {
        prop_assume!(k <= a.dim());
        let lhs = (&a * &b).exterior_power(k).unwrap();
        let rhs = &a.exterior_power(k).unwrap() * &b.exterior_power(k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn alternating_traces_give_det_one_minus(a in (1usize..=4).prop_flat_map(matrix)) {
        let n = a.dim();
        let alt: BigInt = (0..=n)
            .map(|i| {
                let t = a.exterior_power(i).unwrap().trace();
                if i % 2 == 0 { t } else { -t }
            })
            .sum();
        prop_assert_eq!(alt, IntMatrix::identity(n).sub(&a).det());
    }

    #[test]
    fn cayley_hamilton(a in (1usize..=5).prop_flat_map(matrix)) {
        prop_assert!(eval_at_matrix(&a.char_poly(), &a).is_zero());
    }

    #[test]
    fn char_poly_matches_determinants(a in (1usize..=4).prop_flat_map(matrix), x in -6i64..=6) {
        let x = BigInt::from(x);
        let shifted = IntMatrix::identity(a.dim()).add_scalar_identity(&(&x - BigInt::one()));
        prop_assert_eq!(a.char_poly().eval(&x), shifted.sub(&a).det());
    }

    #[test]
    fn det_is_multiplicative((a, b) in square_pair()) {
        prop_assert_eq!((&a * &b).det(), a.det() * b.det());
    }

    #[test]
    fn roots_have_small_residuals(p in poly()) {
        let roots = poly_roots(&p, 10).unwrap();
        prop_assert_eq!(roots.len(), p.degree().unwrap());
        let scale: f64 = p.to_f64().iter().map(|c| c.abs()).sum();
        for z in roots {
            let m = z.norm().max(1.0).powi(p.degree().unwrap() as i32);
            prop_assert!(p.eval_complex(z).norm() <= 1e-8 * scale * m, "p({}) = {}", z, p.eval_complex(z));
        }
    }

    #[test]
    fn square_free_parts_rebuild_the_polynomial(p in poly(), q in poly()) {
        let f = p.mul(&q).mul(&q);
        let rebuilt = IntPolynomial::product(
            f.square_free_decomposition().iter().map(|(g, m)| g.pow(*m as u32)).collect::<Vec<_>>().iter(),
        );
        // equal up to a constant factor
        let (lf, lr) = (f.leading().unwrap().clone(), rebuilt.leading().unwrap().clone());
        prop_assert_eq!(f.scale(&lr), rebuilt.scale(&lf));
    }

    #[test]
    fn polynomial_json_round_trip(p in poly(), big in any::<i128>()) {
        let q = p.mul(&IntPolynomial::new(vec![BigInt::from(big), BigInt::one()]));
        let text = serde_json::to_string(&q).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntPolynomial>(&text).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mobius_consistency(a in hyperbolic(2), m_max in 1u64..=24) {
        let t = orbit_table(&a, m_max, &FlowParams::new(E, Convention::Signed).unwrap()).unwrap();
        for row in &t.rows {
            let total: BigInt = t.rows.iter().filter(|k| row.m % k.m == 0).map(|k| k.exact_period_points.clone()).sum();
            prop_assert_eq!(&total, &row.fix_unsigned);
            prop_assert_eq!(&row.orbit_count * BigInt::from(row.m), row.exact_period_points.clone());
            prop_assert!(row.fix_unsigned >= BigInt::one());
        }
    }

    #[test]
    fn fixed_points_equal_lefschetz_numbers(a in prop_oneof![hyperbolic(2), hyperbolic(3), hyperbolic(4)]) {
        let action = CohomologyAction::from_toral(&a).unwrap();
        let t = orbit_table(&a, 20, &FlowParams::new(2.0, Convention::Signed).unwrap()).unwrap();
        for (row, lam) in t.rows.iter().zip(action.lefschetz_sequence(20)) {
            prop_assert_eq!(&row.fix_signed, &lam);
        }
    }

    #[test]
    fn order_methods_agree(a in prop_oneof![sl(2), sl(3)], r in 2u32..=5, k in -2i32..=3) {
        let action = CohomologyAction::from_toral(&a).unwrap();
        let z = build_zeta(&action);
        // exact path
        let rep = order_report(&z, &action, c(k as f64, 0.0), r as f64).unwrap();
        prop_assert!(rep.exact);
        // resonant numeric path: r equal to the largest real eigenvalue > 1
        let real_big = poly_roots(&a.char_poly(), 12).unwrap().into_iter()
            .filter(|z| z.im == 0.0 && z.re > 1.0 + 1e-6)
            .map(|z| z.re)
            .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
        if let Some(lam) = real_big {
            let rep = order_report(&z, &action, c(1.0, 0.0), lam).unwrap();
            prop_assert!(!rep.exact);
            prop_assert!(rep.per_degree[1] >= 1);
        }
    }

    #[test]
    fn special_value_matches_series(a in hyperbolic(2), r in 2.0f64..30.0, extra in 0.5f64..2.0) {
        let action = CohomologyAction::from_toral(&a).unwrap();
        let z = build_zeta(&action);
        let growth = action.spectral_radius(12).unwrap();
        let k = c(growth.ln() / r.ln() + extra, 0.0);
        let series = special_value_series(&action, k, r, 200).unwrap();
        let direct = special_value(&z, &action, k, r).unwrap();
        prop_assert!((series.value - direct.value).norm() < 1e-6 * direct.value.norm().max(1.0));
    }

    #[test]
    fn functional_equation_is_symbolic_for_even_fibers(a in prop_oneof![hyperbolic(2), hyperbolic(4)]) {
        let action = CohomologyAction::from_toral(&a).unwrap();
        let z = build_zeta(&action);
        prop_assert!(functional_equation_symbolic(&z, &action).unwrap().is_zero());
    }

    #[test]
    fn surface_actions_satisfy_functional_equation(blocks in prop::collection::vec(hyperbolic(2), 1..=3)) {
        let g = blocks.len();
        let h1 = IntMatrix::block_diag(&blocks).unwrap();
        let action = CohomologyAction::from_explicit(
            2,
            vec![1, 2 * g, 1],
            vec![IntMatrix::identity(1), h1, IntMatrix::identity(1)],
        ).unwrap();
        let z = build_zeta(&action);
        prop_assert_eq!(z.euler_characteristic, 2 - 2 * g as i64);
        prop_assert!(functional_equation_symbolic(&z, &action).unwrap().is_zero());
    }

    #[test]
    fn spectrum_lattice(a in hyperbolic(2), r in 1.5f64..20.0, degree in 0usize..=2) {
        let action = CohomologyAction::from_toral(&a).unwrap();
        let sp = theta_spectrum(&action, degree, r, -4..=4, 12).unwrap();
        let spacing = c(0.0, 2.0 * PI / r.ln());
        for pair in sp.entries.windows(2) {
            if pair[0].alpha == pair[1].alpha {
                let gap = pair[1].theta - pair[0].theta - spacing;
                prop_assert!(gap.norm() <= 16.0 * f64::EPSILON * (1.0 + pair[1].theta.norm()));
            }
        }
        for e in &sp.entries {
            prop_assert!(e.residual < 1e-10 * e.alpha.norm().max(1.0));
        }
    }

    #[test]
    fn evaluation_is_periodic(re in 0.2f64..4.0, im in -5.0f64..5.0, r in 1.5f64..20.0) {
        let z = build_zeta(&genus2());
        let s = c(re, im);
        let shifted = s + c(0.0, 2.0 * PI / r.ln());
        match (evaluate(&z, s, r), evaluate(&z, shifted, r)) {
            (Ok(a), Ok(b)) => prop_assert!((a - b).norm() < 1e-12 * a.norm().max(1.0)),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }

    #[test]
    fn log_derivative_matches_truncated_lefschetz_series(re in 1.2f64..4.0, im in -3.0f64..3.0) {
        let action = cat();
        let z = build_zeta(&action);
        let s = c(re, im);
        let u = (-s).exp();
        let truncated: Complex64 = action
            .lefschetz_sequence(40)
            .iter()
            .enumerate()
            .map(|(i, l)| torus_zeta::dynamics::big_times(l, u.powu(i as u32 + 1)))
            .sum();
        // |Λ(φᵐ)| ≤ Σ bᵢ·ρᵐ with Σ bᵢ = 4 and ρ the growth rate
        let q = ((3.0 + 5f64.sqrt()) / 2.0) * u.norm();
        let tail = 4.0 * q.powi(41) / (1.0 - q);
        prop_assert!((log_derivative(&z, s, E).unwrap() - truncated).norm() <= tail + 1e-6);
    }

    #[test]
    fn doubling_truncation_shrinks_euler_error(re in 1.3f64..4.0, im in -2.0f64..2.0) {
        let z = build_zeta(&cat());
        let s = c(re, im);
        let exact = evaluate(&z, s, E).unwrap();
        let table = orbit_table(&cat_matrix(), 64, &FlowParams::new(E, Convention::Signed).unwrap()).unwrap();
        let mut last = f64::INFINITY;
        for m in [4usize, 8, 16, 32, 64] {
            let mut t = table.clone();
            t.rows.truncate(m);
            let err = (euler_product_partial(&t, s, Convention::Signed).unwrap() - exact).norm();
            prop_assert!(err <= last + 1e-15, "m = {}: {} > {}", m, err, last);
            last = err;
        }
    }

    #[test]
    fn hurwitz_at_zero_is_half_minus_shift(re in 0.05f64..5.0, im in -5.0f64..5.0) {
        let s = c(re, im);
        prop_assert!((hurwitz_zeta(Complex64::zero(), s).unwrap() - (0.5 - s)).norm() < 1e-11);
    }

    #[test]
    fn regularized_product_routes_agree(
        s in 0.02f64..0.98,
        arg in prop_oneof![0.05f64..3.09, -3.09f64..-0.05],
        modulus in 0.3f64..5.0,
    ) {
        let eta = Complex64::from_polar(modulus, arg);
        let p = regularized_product(eta, c(s, 0.0)).unwrap();
        prop_assert!(p.discrepancy() < 1e-9);
    }
}

#[test]
fn cat_map_examples_are_hyperbolic_fixtures() {
    assert!(cat().duality_enabled());
    assert_eq!(build_zeta(&genus2()).euler_characteristic, -2);
}
