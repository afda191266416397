use std::f64::consts::{PI, TAU};

use approx::assert_abs_diff_eq;
use munorm_core::sample::{plateau_bump, random_bump, random_periodic, random_trig_poly};
use munorm_core::torus::{
    convolution_operator, dt_norm, localized_fourier_checks, multiplication_operator_torus,
    rho_interval, v_window, w_symbol, FourierPolynomial, IntegerInterval, LatticeOperator,
    PeriodicBlock, Symbol, MIN_GRID,
};
use munorm_core::{Complex64, Error};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `sup_j |W_{j+s,j}|` by scanning `j` over `[lo, hi]`.
fn scanned_majorant(w: &LatticeOperator, s: i64, lo: i64, hi: i64) -> f64 {
    (lo..=hi)
        .map(|j| w.entry(j + s, j).norm())
        .fold(0.0, f64::max)
}

fn random_operator(rng: &mut ChaCha8Rng, depth: usize) -> LatticeOperator {
    let choice = if depth == 0 {
        rng.random_range(0..4)
    } else {
        rng.random_range(0..7)
    };
    match choice {
        0 => {
            let (period, band) = (rng.random_range(1..=3), rng.random_range(0..=2));
            LatticeOperator::Periodic(random_periodic(rng, period, band).unwrap())
        }
        1 => {
            let degree = rng.random_range(0..=3);
            multiplication_operator_torus(random_trig_poly(rng, degree))
        }
        2 => convolution_operator(Symbol::Rotation {
            alpha: rng.random_range(0.0..TAU),
        }),
        3 => convolution_operator(Symbol::QuadraticPhase {
            tau: PI / rng.random_range(2..=4) as f64,
        }),
        4 => random_operator(rng, depth - 1).compose(random_operator(rng, depth - 1)),
        5 => random_operator(rng, depth - 1).plus(random_operator(rng, depth - 1)),
        _ => random_operator(rng, depth - 1)
            .adjoint()
            .scaled(c(0.5, -1.0)),
    }
}

#[test]
fn dt_norm_examples() {
    assert_abs_diff_eq!(dt_norm(&LatticeOperator::identity()), 1.0, epsilon = 1e-15);
    let g = FourierPolynomial::new(-1, vec![c(3.0, 4.0), c(1.0, 0.0), c(0.0, -2.0)]);
    assert_abs_diff_eq!(
        dt_norm(&multiplication_operator_torus(g)),
        8.0,
        epsilon = 1e-14
    );
}

#[test]
fn algebra_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let w = random_operator(&mut rng, 2);
    let zero = w.clone().plus(w.clone().scaled(c(-1.0, 0.0)));
    for j in -20..20 {
        for k in -20..20 {
            assert!(zero.entry(j, k).norm() < 1e-12);
        }
    }
    let back = w.clone().adjoint().adjoint();
    for j in -10..10 {
        for k in -10..10 {
            assert_eq!(back.entry(j, k), w.entry(j, k));
            assert_eq!(w.clone().adjoint().entry(j, k), w.entry(k, j).conj());
        }
    }
    let g = FourierPolynomial::new(
        -2,
        vec![
            c(1.0, 0.0),
            c(0.0, 2.0),
            c(0.5, 0.0),
            c(-1.0, 1.0),
            c(0.25, 0.0),
        ],
    );
    let lam = Symbol::Table {
        offset: -5,
        values: (0..11).map(|k| c(k as f64, 1.0)).collect(),
    };
    let prod = multiplication_operator_torus(g.clone()).compose(convolution_operator(lam.clone()));
    for j in -8..8 {
        for k in -8..8 {
            assert!((prod.entry(j, k) - g.coeff(j - k) * lam.at(k)).norm() < 1e-12);
        }
    }
}

#[test]
fn convolution_and_multiplication_examples() {
    let one = convolution_operator(Symbol::Constant(c(1.0, 0.0)));
    let shift = multiplication_operator_torus(FourierPolynomial::monomial(1, c(1.0, 0.0)));
    for j in -5..5 {
        for k in -5..5 {
            let d = if j == k { 1.0 } else { 0.0 };
            assert_eq!(one.entry(j, k), c(d, 0.0));
            let s = if j - k == 1 { 1.0 } else { 0.0 };
            assert_eq!(shift.entry(j, k), c(s, 0.0));
        }
    }
    let alpha = 0.7;
    let rot = convolution_operator(Symbol::Rotation { alpha });
    assert!((rot.entry(3, 3) - Complex64::from_polar(1.0, 3.0 * alpha)).norm() < 1e-14);
    let tau = 0.3;
    let q = convolution_operator(Symbol::QuadraticPhase { tau });
    assert!((q.entry(-4, -4) - Complex64::from_polar(1.0, 16.0 * tau)).norm() < 1e-13);
    assert_eq!(
        multiplication_operator_torus(random_trig_poly(&mut ChaCha8Rng::seed_from_u64(2), 2))
            .period(),
        Some(1)
    );
}

#[test]
fn rho_examples() {
    let q = Symbol::QuadraticPhase { tau: 1.234 };
    let one = Symbol::Constant(c(1.0, 0.0));
    for (lo, hi) in [(-3, 7), (0, 0), (100, 900)] {
        let i = IntegerInterval::new(lo, hi).unwrap();
        assert_abs_diff_eq!(rho_interval(&one, &i), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho_interval(&q, &i), 1.0, epsilon = 1e-12);
    }
    let step = Symbol::Table {
        offset: 0,
        values: vec![c(1.0, 0.0); 50],
    };
    for n in [1usize, 5, 20] {
        let i = IntegerInterval::centered(n);
        assert_abs_diff_eq!(
            rho_interval(&step, &i),
            (n as f64 + 1.0) / (2.0 * n as f64 + 1.0),
            epsilon = 1e-14
        );
    }
    assert!(IntegerInterval::new(3, 2).is_err());
}

#[test]
fn w_symbol_examples() {
    assert!((w_symbol(&LatticeOperator::identity(), 4, 1.1) - c(1.0, 0.0)).norm() < 1e-14);
    let g = FourierPolynomial::new(-1, vec![c(0.5, 0.0), c(1.0, 1.0), c(0.0, 2.0)]);
    let w = multiplication_operator_torus(g.clone());
    for l in [-3, 0, 7] {
        assert!((w_symbol(&w, l, 0.9) - g.eval(0.9)).norm() < 1e-13);
    }
    let lam = Symbol::Table {
        offset: -2,
        values: vec![
            c(2.0, 0.0),
            c(0.0, 1.0),
            c(3.0, 0.0),
            c(1.0, 1.0),
            c(-1.0, 0.0),
        ],
    };
    let conv = convolution_operator(lam.clone());
    assert_eq!(w_symbol(&conv, 1, 2.0), lam.at(1));
}

#[test]
fn v_window_examples() {
    let i = IntegerInterval::new(-10, 25).unwrap();
    for m in -3..=3 {
        assert!((v_window(&LatticeOperator::identity(), &i, m, 0.4) - c(1.0, 0.0)).norm() < 1e-14);
    }
    let alpha = 1.3;
    let rot = convolution_operator(Symbol::Rotation { alpha });
    for m in -3..=3 {
        let v = v_window(&rot, &i, m, 2.2);
        assert!((v - Complex64::from_polar(1.0, m as f64 * alpha)).norm() < 1e-12);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let w = random_operator(&mut rng, 2);
    let bound = w.dt_norm().powi(2);
    for m in -4..=4 {
        assert!(v_window(&w, &i, m, 0.3 * m as f64).norm() <= bound + 1e-10);
    }
}

#[test]
fn majorant_dominates_every_entry() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..40 {
        let w = random_operator(&mut rng, 2);
        let maj = w.majorant();
        let b = w.band() as i64;
        for s in -b..=b {
            let scanned = scanned_majorant(&w, s, -1000, 1000);
            assert!(scanned <= maj.get(s) * (1.0 + 1e-12) + 1e-12, "s={s}");
            if maj.is_exact() {
                assert_abs_diff_eq!(scanned, maj.get(s), epsilon = 1e-10 * maj.get(s).max(1.0));
            }
        }
        assert_eq!(scanned_majorant(&w, b + 1, -50, 50), 0.0);
    }
}

#[test]
fn dt_norm_is_submultiplicative_and_subadditive() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let a = random_operator(&mut rng, 1);
        let b = random_operator(&mut rng, 1);
        let period = |w: &LatticeOperator| w.period().unwrap_or(1) as i64;
        let exact = |w: &LatticeOperator| -> f64 {
            let p = period(w);
            let band = w.band() as i64;
            (-band..=band)
                .map(|s| scanned_majorant(w, s, -3 * p, 3 * p))
                .sum()
        };
        if a.period().is_none() || b.period().is_none() {
            continue;
        }
        let (na, nb) = (exact(&a), exact(&b));
        assert!(exact(&a.clone().compose(b.clone())) <= na * nb + 1e-10);
        assert!(exact(&a.clone().plus(b.clone())) <= na + nb + 1e-10);
        assert!(a.clone().compose(b.clone()).dt_norm() <= a.dt_norm() * b.dt_norm() + 1e-10);
    }
}

#[test]
fn sup_norm_is_bounded_by_dt_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let degree = rng.random_range(0..=8);
        let g = random_trig_poly(&mut rng, degree);
        let dt = multiplication_operator_torus(g.clone()).dt_norm();
        for i in 0..1000 {
            assert!(g.eval(TAU * i as f64 / 1000.0).norm() <= dt + 1e-12);
        }
    }
}

#[test]
fn w_symbol_is_bounded_by_dt_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let w = random_operator(&mut rng, 2);
        let dt = w.dt_norm();
        for _ in 0..20 {
            let l = rng.random_range(-500..=500);
            let a = rng.random_range(0.0..TAU);
            assert!(w_symbol(&w, l, a).norm() <= dt + 1e-10);
        }
    }
}

#[test]
fn periodic_block_is_periodic() {
    let p = PeriodicBlock::from_fn(3, 1, |r, s| c(r as f64, s as f64)).unwrap();
    let w = LatticeOperator::Periodic(p);
    for j in -9..9 {
        for s in -1..=1 {
            assert_eq!(w.entry(j, j + s), w.entry(j + 3, j + 3 + s));
            assert_eq!(w.entry(j, j + s), c(j.rem_euclid(3) as f64, s as f64));
        }
        assert_eq!(w.entry(j, j + 2), c(0.0, 0.0));
    }
}

/// The three left-hand sides recomputed with a Riemann sum over the grid.
fn localized_oracle(f: &[Complex64], a: f64, m: i64, l: i64) -> [f64; 3] {
    let n = f.len() as f64;
    let x = |i: usize| TAU * i as f64 / n;
    let norm_sq: f64 = f.iter().map(|v| v.norm_sqr()).sum::<f64>() / n;
    let shift: f64 = f
        .iter()
        .enumerate()
        .map(|(i, v)| v.norm_sqr() * 4.0 * (m as f64 * (x(i) - a) / 2.0).sin().powi(2))
        .sum::<f64>()
        / n;
    let coef = |k: i64| -> Complex64 {
        f.iter()
            .enumerate()
            .map(|(i, v)| v * Complex64::from_polar(1.0, -(k as f64) * x(i)))
            .sum::<Complex64>()
            / n
    };
    let cm = coef(m);
    let cml = coef(m + l);
    let coeff = (cm - Complex64::from_polar(1.0, l as f64 * a) * cml).norm();
    // Σ_k f_k conj(f_{k+m}) = (1/2π)∫ |f|² e^{imx}
    let auto: Complex64 = f
        .iter()
        .enumerate()
        .map(|(i, v)| v.norm_sqr() * Complex64::from_polar(1.0, m as f64 * x(i)))
        .sum::<Complex64>()
        / n;
    let autocorr = (Complex64::from_polar(1.0, -(m as f64) * a) * auto - norm_sq).norm();
    [shift.sqrt(), coeff, autocorr]
}

#[test]
fn localized_examples() {
    let n = MIN_GRID;
    let p = plateau_bump(2.0, 0.1, n);
    let r = localized_fourier_checks(&p, 2.0, 0.1, 0, 0).unwrap();
    assert!(r.margins().iter().all(|&v| v >= -1e-12));
    let r = localized_fourier_checks(&p, 2.0, 0.1, 3, 0).unwrap();
    assert!(r.margins()[0] >= 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f = random_bump(&mut rng, 4.0, 0.2, n);
    let r = localized_fourier_checks(&f, 4.0, 0.2, 1, 2).unwrap();
    assert!(r.margins()[1] >= 0.0);
}

#[test]
fn localized_matches_oracle_and_bounds_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..10 {
        let eps = [0.2, 0.1, 0.05][trial % 3];
        let a = rng.random_range(0.0..TAU);
        let f = random_bump(&mut rng, a, eps, MIN_GRID);
        for (m, l) in [(-5, 3), (2, -4), (5, 5), (0, 1)] {
            let r = localized_fourier_checks(&f, a, eps, m, l).unwrap();
            let o = localized_oracle(&f, a, m, l);
            assert_abs_diff_eq!(r.shift_lhs, o[0], epsilon = 1e-10);
            assert_abs_diff_eq!(r.coeff_lhs, o[1], epsilon = 1e-10);
            assert_abs_diff_eq!(r.autocorr_lhs, o[2], epsilon = 1e-10);
            assert!(r.min_margin() >= -1e-6);
        }
    }
}

#[test]
fn localized_rejects_bad_input() {
    let f = plateau_bump(1.0, 0.1, MIN_GRID);
    assert!(matches!(
        localized_fourier_checks(&f, 3.0, 0.1, 1, 1),
        Err(Error::SupportViolation { .. })
    ));
    assert!(matches!(
        localized_fourier_checks(&f[..1024], 1.0, 0.1, 1, 1),
        Err(Error::GridTooCoarse { .. })
    ));
}

fn poly_strategy() -> impl Strategy<Value = FourierPolynomial> {
    (
        -4i64..=4,
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 0..6),
    )
        .prop_map(|(o, v)| FourierPolynomial::new(o, v.into_iter().map(|(a, b)| c(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_algebra(f in poly_strategy(), g in poly_strategy(), x in 0.0f64..TAU) {
        let prod = f.mul(&g);
        prop_assert!((prod.eval(x) - f.eval(x) * g.eval(x)).norm() <= 1e-10);
        prop_assert!((f.abs_sq().eval(x).re - f.eval(x).norm_sqr()).abs() <= 1e-10);
        prop_assert!(f.abs_sq().eval(x).im.abs() <= 1e-10);
        prop_assert!(prod.dt_norm() <= f.dt_norm() * g.dt_norm() + 1e-10);
        prop_assert!((f.abs_sq().coeff(0).re - f.l2_norm_sq()).abs() <= 1e-10);
    }

    #[test]
    fn multiplication_composes_like_polynomials(f in poly_strategy(), g in poly_strategy(), j in -20i64..20, d in -10i64..10) {
        let w = multiplication_operator_torus(f.clone()).compose(multiplication_operator_torus(g.clone()));
        prop_assert!((w.entry(j, j - d) - f.mul(&g).coeff(d)).norm() <= 1e-10);
    }
}
