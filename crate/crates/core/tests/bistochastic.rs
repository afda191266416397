use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use munorm_core::bistochastic::{
    abs_sq_coefficients, build_finite, build_torus, finite_dt_norm, koopman_case_compare,
    CheckOutcome, FiniteOmega, KernelMode,
};
use munorm_core::finite_space::{
    dft, mu_norm_formula, multiplication_operator_finite, Basis, FiniteOperator,
};
use munorm_core::koopman::{koopman, Permutation};
use munorm_core::sample::{
    random_operator, random_permutation, random_trig_poly, random_unitary_operator, random_vector,
};
use munorm_core::torus::{convolution_operator, LatticeOperator, Symbol};
use munorm_core::{Complex64, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `𝒲` on point indicators: column `a` of the value-basis action.
fn value_action(w: &FiniteOperator) -> Vec<Vec<Complex64>> {
    let k = build_finite(w);
    let n = w.size();
    (0..n)
        .map(|a| {
            let e: Vec<Complex64> = (0..n).map(|x| c(if x == a { 1.0 } else { 0.0 })).collect();
            k.apply_values(&e).unwrap()
        })
        .collect()
}

#[test]
fn value_action_is_entrywise_modulus_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=7 {
        let w = random_operator(&mut rng, n).unwrap();
        let v = w.value_matrix();
        let cols = value_action(&w);
        for a in 0..n {
            for x in 0..n {
                assert!(
                    (cols[a][x] - c(v[(x, a)].norm_sqr())).norm() < 1e-10,
                    "J={n}"
                );
            }
        }
    }
}

#[test]
fn nu_matches_pointwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let w = random_operator(&mut rng, 5).unwrap();
    let o = FiniteOmega::from_operator(&w);
    let all = o.nu_matrix();
    for x in 0..5 {
        for a in 0..5 {
            assert!((all[x * 5 + a] - o.nu(x, a)).norm() < 1e-10);
        }
    }
    assert_abs_diff_eq!(o.get(0, 0).re, mu_norm_formula(&w).powi(2), epsilon = 1e-12);
}

#[test]
fn finite_unitaries_are_bistochastic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [4, 8, 16] {
        for _ in 0..3 {
            let w = random_unitary_operator(&mut rng, n).unwrap();
            let k = build_finite(&w);
            assert_eq!(k.mode(), KernelMode::Finite { size: n });
            assert!(k.unitary_source());
            let trials: Vec<Vec<Complex64>> = (0..20).map(|_| random_vector(&mut rng, n)).collect();
            let pos = k.check_nonnegativity(&trials).unwrap();
            assert_eq!(pos.trials, 20 + n);
            assert!(pos.min_value >= -1e-9 && pos.max_imag < 1e-9);
            assert!(k.check_unit().residual().unwrap() <= 1e-10);
            for f in &trials {
                assert!(k.check_mass(f).unwrap().residual().unwrap() <= 1e-10);
            }
            let l1 = k.l1_bound(0);
            assert!(l1.slack >= -1e-9);
            assert_abs_diff_eq!(l1.induced, 1.0, epsilon = 1e-10);
        }
    }
}

#[test]
fn koopman_kernels_are_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [2, 5, 8, 16] {
        let f = random_permutation(&mut rng, n);
        let rep = koopman_case_compare(&f);
        assert!(rep.forward_matches(1e-10));
        let k = build_finite(&koopman(&f));
        assert!(k.check_unit().residual().unwrap() <= 1e-10);
        assert!(
            k.check_nonnegativity(&[random_vector(&mut rng, n)])
                .unwrap()
                .min_value
                >= -1e-9
        );
        assert!(k.l1_bound(0).slack >= -1e-9);
    }
    let order3 = Permutation::new(vec![1, 2, 0]).unwrap();
    let rep = koopman_case_compare(&order3);
    assert!(rep.forward_matches(1e-12) && !rep.inverse_matches(1e-6));
}

#[test]
fn torus_truncations_are_bistochastic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ops = [
        convolution_operator(Symbol::Rotation { alpha: 0.913 }),
        convolution_operator(Symbol::QuadraticPhase { tau: PI / 2.0 }),
        convolution_operator(Symbol::QuadraticPhase { tau: PI / 3.0 }),
        convolution_operator(Symbol::QuadraticPhase { tau: 1.0 }),
    ];
    for w in &ops {
        for radius in [16, 32, 64] {
            let k = build_torus(w, radius).unwrap();
            assert!(k.unitary_source());
            let trials: Vec<_> = (0..5).map(|_| random_trig_poly(&mut rng, 3)).collect();
            let pos = k.check_nonnegativity_torus(&trials, 256).unwrap();
            assert!(pos.min_value >= -1e-9, "{w:?} M={radius}");
            assert!(k.check_unit().residual().unwrap() <= 1e-10);
            for g in &trials {
                let f = g.abs_sq();
                assert!(k.check_mass_poly(&f).unwrap().residual().unwrap() <= 1e-10);
            }
            assert!(k.l1_bound(512).slack >= -1e-9);
        }
    }
}

#[test]
fn torus_trials_must_fit_the_window() {
    let k = build_torus(&LatticeOperator::identity(), 4).unwrap();
    let g = random_trig_poly(&mut ChaCha8Rng::seed_from_u64(6), 3);
    assert!(matches!(
        k.check_nonnegativity_torus(&[g], 64),
        Err(Error::WindowTooSmall { .. })
    ));
    assert!(matches!(
        k.apply_coefficients(&[c(1.0)]),
        Err(Error::ModeMismatch)
    ));
}

#[test]
fn l1_bound_holds_for_non_unitary_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=8 {
        let w = random_operator(&mut rng, n).unwrap();
        let k = build_finite(&w);
        assert_eq!(k.check_unit(), CheckOutcome::Skipped);
        let l1 = k.l1_bound(0);
        assert!(l1.slack >= -1e-9);
        // the kernel is |W(x, a)|², so the induced norm is its largest column sum
        let v = w.value_matrix();
        let expected = (0..n)
            .map(|a| (0..n).map(|x| v[(x, a)].norm_sqr()).sum::<f64>())
            .fold(0.0, f64::max);
        assert_abs_diff_eq!(l1.induced, expected, epsilon = 1e-9 * expected.max(1.0));
    }
}

#[test]
fn finite_dt_norm_examples() {
    assert_abs_diff_eq!(
        finite_dt_norm(&FiniteOperator::identity(6).unwrap()),
        1.0,
        epsilon = 1e-12
    );
    let g = [Complex64::new(1.0, 1.0), c(0.5), c(0.0), c(-2.0)];
    let m = multiplication_operator_finite(&dft(&g)).unwrap();
    assert_abs_diff_eq!(
        finite_dt_norm(&m),
        g.iter().map(|z| z.norm()).sum::<f64>(),
        epsilon = 1e-12
    );
}

#[test]
fn abs_sq_coefficients_are_the_square_modulus() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = random_vector(&mut rng, 7);
    let f = abs_sq_coefficients(&g);
    let gv = dft(&g);
    let fv = dft(&f);
    for (a, b) in gv.iter().zip(&fv) {
        assert!((c(a.norm_sqr()) - b).norm() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_formula_holds_on_finite_spaces(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_operator(&mut rng, n).unwrap();
        let g1 = random_vector(&mut rng, n);
        let g2 = random_vector(&mut rng, n);
        let composed = multiplication_operator_finite(&dft(&g1)).unwrap()
            .compose(&w).unwrap()
            .compose(&multiplication_operator_finite(&dft(&g2)).unwrap()).unwrap();
        let direct = FiniteOmega::from_operator(&composed);
        let formula = FiniteOmega::from_operator(&w).product_both(&g1, &g2).unwrap();
        let scale = 1.0 + direct.get(0, 0).norm();
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                prop_assert!((direct.get(a, b) - formula.get(a, b)).norm() <= 1e-10 * scale);
            }
        }
    }

    #[test]
    fn unitary_kernels_are_doubly_stochastic(seed in any::<u64>(), n in 1usize..=9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_unitary_operator(&mut rng, n).unwrap();
        let cols = value_action(&w);
        for (a, column) in cols.iter().enumerate() {
            let col: f64 = column.iter().map(|z| z.re).sum();
            prop_assert!((col - 1.0).abs() <= 1e-10);
            let row: f64 = (0..n).map(|x| cols[x][a].re).sum();
            prop_assert!((row - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn coefficient_basis_input_is_accepted(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_operator(&mut rng, n).unwrap();
        let wc = w.in_basis(Basis::Coefficient);
        prop_assert_eq!(build_finite(&w).omega_entries().len(), n * n);
        let a = FiniteOmega::from_operator(&w);
        let b = FiniteOmega::from_operator(&wc);
        for m in 0..n as i64 {
            for q in 0..n as i64 {
                prop_assert!((a.get(m, q) - b.get(m, q)).norm() <= 1e-10);
            }
        }
    }
}
