use std::collections::HashMap;

use approx::assert_abs_diff_eq;
use munorm_core::finite_space::{
    enumerate_partitions, mu_norm_formula, Basis, FiniteOperator, Partition, SubsetMask,
};
use munorm_core::koopman::{
    chain_mu_norm, entropy_rate_sequence, finite_mu_uf, frak_word, koopman,
    koopman_projector_identity_check, ks_entropy_stage, preimage_cell, quantum_entropy_stage,
    Permutation,
};
use munorm_core::sample::{random_operator, random_partition, random_permutation, random_unitary};
use munorm_core::{CMatrix, Complex64, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// Entropy of the itinerary partition: group points by `(label(x), label(Fx), …)`.
fn oracle_ks(f: &Permutation, chi: &Partition, depth: usize) -> f64 {
    let labels = chi.labels();
    let n = f.size();
    let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
    for x in 0..n {
        let mut p = x;
        let mut it = Vec::new();
        for _ in 0..=depth {
            it.push(labels[p]);
            p = f.apply(p);
        }
        *counts.entry(it).or_default() += 1;
    }
    counts.values().map(|&k| plogp(k as f64 / n as f64)).sum()
}

/// All words of `len` letters over `k` blocks.
fn words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |j| {
                    let mut v = w.clone();
                    v.push(j);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn koopman_examples() {
    assert_eq!(
        koopman(&Permutation::identity(4)).value_matrix(),
        CMatrix::identity(4)
    );
    let swap = koopman(&Permutation::new(vec![1, 0]).unwrap()).value_matrix();
    let expected = CMatrix::from_row_major(2, 2, vec![c(0.0), c(1.0), c(1.0), c(0.0)]).unwrap();
    assert_eq!(swap, expected);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..10 {
        assert!(koopman(&random_permutation(&mut rng, n)).is_unitary(1e-12));
    }
}

#[test]
fn projector_identity_examples() {
    let shift = Permutation::cyclic_shift(4, 1);
    let x = SubsetMask::new(4, &[0]).unwrap();
    assert_eq!(shift.preimage(&x), SubsetMask::new(4, &[3]).unwrap());
    assert!(koopman_projector_identity_check(&shift, &x).unwrap());
    assert!(koopman_projector_identity_check(
        &Permutation::identity(5),
        &SubsetMask::new(5, &[1, 4]).unwrap()
    )
    .unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let f = random_permutation(&mut rng, 7);
        for p in 0..7 {
            assert!(
                koopman_projector_identity_check(&f, &SubsetMask::new(7, &[p]).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn preimage_cell_examples() {
    let shift = Permutation::cyclic_shift(4, 1);
    let halves = Partition::from_labels(&[0, 0, 1, 1]).unwrap();
    assert_eq!(
        preimage_cell(&shift, &halves, &[0, 0]).unwrap(),
        SubsetMask::new(4, &[0]).unwrap()
    );
    assert_eq!(
        preimage_cell(&shift, &halves, &[1]).unwrap(),
        SubsetMask::new(4, &[2, 3]).unwrap()
    );
    let chi = Partition::from_labels(&[0, 1, 0, 1, 2]).unwrap();
    let id = Permutation::identity(5);
    assert_eq!(
        preimage_cell(&id, &chi, &[0, 0, 0]).unwrap(),
        SubsetMask::new(5, &[0, 2]).unwrap()
    );
    assert!(preimage_cell(&id, &chi, &[0, 1]).unwrap().is_empty());
}

#[test]
fn ks_stage_examples() {
    let shift = Permutation::cyclic_shift(4, 1);
    let halves = Partition::from_labels(&[0, 0, 1, 1]).unwrap();
    assert_abs_diff_eq!(
        ks_entropy_stage(&shift, &halves, 1).unwrap(),
        4f64.ln(),
        epsilon = 1e-14
    );
    for depth in 0..5 {
        assert_eq!(
            ks_entropy_stage(&shift, &Partition::trivial(4), depth).unwrap(),
            0.0
        );
    }
    let chi = Partition::from_labels(&[0, 1, 1, 2, 2, 2]).unwrap();
    let h: f64 = [1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0]
        .iter()
        .map(|&p| plogp(p))
        .sum();
    for depth in 0..4 {
        assert_abs_diff_eq!(
            ks_entropy_stage(&Permutation::identity(6), &chi, depth).unwrap(),
            h,
            epsilon = 1e-14
        );
    }
}

#[test]
fn ks_stage_matches_itinerary_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let f = random_permutation(&mut rng, 8);
        let chi = random_partition(&mut rng, 8, 3).unwrap();
        for depth in 0..5 {
            assert_abs_diff_eq!(
                ks_entropy_stage(&f, &chi, depth).unwrap(),
                oracle_ks(&f, &chi, depth),
                epsilon = 1e-13
            );
        }
    }
}

#[test]
fn frak_word_examples() {
    let chi = Partition::from_labels(&[0, 1, 0, 1]).unwrap();
    let u = FiniteOperator::identity(4).unwrap();
    let w = frak_word(&u, &chi, &[1]).unwrap();
    assert_eq!(
        w.value_matrix(),
        CMatrix::diagonal(&[c(0.0), c(1.0), c(0.0), c(1.0)])
    );
    let chi3 = Partition::from_labels(&[0, 1, 2, 0]).unwrap();
    assert!(frak_word(&u, &chi3, &[0, 1])
        .unwrap()
        .value_matrix()
        .is_zero());
    assert_eq!(
        frak_word(&u, &chi3, &[0, 0, 0]).unwrap().value_matrix(),
        CMatrix::diagonal(&[c(1.0), c(0.0), c(0.0), c(1.0)])
    );
}

/// Each word operator of a Koopman operator has μ-norm squared equal to the
/// measure of the itinerary cell of the reversed word.
#[test]
fn koopman_word_norms_match_reversed_cells() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let f = random_permutation(&mut rng, 6);
        let chi = random_partition(&mut rng, 6, 2).unwrap();
        let u = koopman(&f);
        for len in 1..=4 {
            let mut cell_total = 0.0;
            for word in words(2, len) {
                let x = frak_word(&u, &chi, &word).unwrap();
                let rev: Vec<usize> = word.iter().rev().cloned().collect();
                let cell = preimage_cell(&f, &chi, &rev).unwrap();
                assert_abs_diff_eq!(mu_norm_formula(&x).powi(2), cell.measure(), epsilon = 1e-12);
                cell_total += preimage_cell(&f, &chi, &word).unwrap().measure();
            }
            assert_abs_diff_eq!(cell_total, 1.0, epsilon = 1e-12);
        }
    }
}

#[test]
fn quantum_stage_equals_ks_stage_for_koopman() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let f = random_permutation(&mut rng, 7);
        let chi = random_partition(&mut rng, 7, 3).unwrap();
        let u = koopman(&f);
        for depth in 0..4 {
            let q = quantum_entropy_stage(&u, &chi, depth).unwrap();
            assert_abs_diff_eq!(
                q,
                ks_entropy_stage(&f, &chi, depth).unwrap(),
                epsilon = 1e-10
            );
        }
    }
}

#[test]
fn two_by_two_unitary_matches_word_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let m = random_unitary(&mut rng, 2);
        let u = FiniteOperator::new(m.clone(), Basis::Value).unwrap();
        let chi = Partition::singletons(2);
        // π_{j1} U π_{j0} has the single entry U[j1][j0].
        let mut expected = 0.0;
        for j0 in 0..2 {
            for j1 in 0..2 {
                expected += plogp(m[(j1, j0)].norm_sqr() / 2.0);
            }
        }
        assert_abs_diff_eq!(
            quantum_entropy_stage(&u, &chi, 1).unwrap(),
            expected,
            epsilon = 1e-12
        );
    }
}

#[test]
fn trivial_partition_gives_zero_stages() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let u = FiniteOperator::new(random_unitary(&mut rng, 5), Basis::Value).unwrap();
    for depth in 0..4 {
        assert_abs_diff_eq!(
            quantum_entropy_stage(&u, &Partition::trivial(5), depth).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }
    let seq = entropy_rate_sequence(&u, &Partition::trivial(5), 4).unwrap();
    assert!(seq.iter().all(|v| v.abs() < 1e-12));
}

#[test]
fn rate_sequence_examples() {
    let shift = Permutation::cyclic_shift(4, 1);
    let halves = Partition::from_labels(&[0, 0, 1, 1]).unwrap();
    let seq = entropy_rate_sequence(&koopman(&shift), &halves, 6).unwrap();
    assert_eq!(seq.len(), 6);
    for (i, v) in seq.iter().enumerate() {
        let n = i + 1;
        assert_abs_diff_eq!(
            *v,
            ks_entropy_stage(&shift, &halves, n - 1).unwrap() / n as f64,
            epsilon = 1e-10
        );
    }
    assert!(seq[5] < seq[1]);
    assert!(matches!(
        entropy_rate_sequence(&koopman(&shift), &halves, 30),
        Err(Error::WordGuard { .. })
    ));
}

#[test]
fn ks_stages_are_subadditive() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let f = random_permutation(&mut rng, 8);
        for chi in enumerate_partitions(4, 10).unwrap().take(6) {
            let labels: Vec<usize> = (0..8).map(|x| chi.labels()[x % 4]).collect();
            let chi8 = Partition::from_labels(&labels).unwrap();
            let h = |n: usize| ks_entropy_stage(&f, &chi8, n - 1).unwrap();
            for n in 1..6 {
                for m in 1..=(6 - n) {
                    assert!(h(n + m) <= h(n) + h(m) + 1e-12);
                }
            }
        }
    }
}

#[test]
fn right_koopman_factor_preserves_mu_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let w = random_operator(&mut rng, 6).unwrap();
        let u = koopman(&random_permutation(&mut rng, 6));
        assert_abs_diff_eq!(
            mu_norm_formula(&w.compose(&u).unwrap()),
            mu_norm_formula(&w),
            epsilon = 1e-10
        );
    }
}

#[test]
fn chain_examples() {
    let shift = Permutation::cyclic_shift(4, 1);
    let ind = |p: usize| {
        (0..4)
            .map(|x| c(if x == p { 1.0 } else { 0.0 }))
            .collect::<Vec<_>>()
    };
    let r = chain_mu_norm(&shift, &[ind(1), ind(0)]).unwrap();
    assert_abs_diff_eq!(r.mu_norm_sq, 0.25, epsilon = 1e-14);
    assert_abs_diff_eq!(r.reversed, 0.25, epsilon = 1e-14);
    assert_abs_diff_eq!(r.forward, 0.0, epsilon = 1e-14);

    let ones = vec![c(1.0); 4];
    let r = chain_mu_norm(&shift, &[ones.clone(), ones.clone(), ones]).unwrap();
    assert_abs_diff_eq!(r.mu_norm_sq, 1.0, epsilon = 1e-14);

    let g = vec![c(2.0), c(0.0), Complex64::new(0.0, 1.0), c(1.0)];
    let r = chain_mu_norm(&shift, &[g]).unwrap();
    assert_abs_diff_eq!(r.mu_norm_sq, 1.5, epsilon = 1e-14);
    assert_abs_diff_eq!(r.forward, 1.5, epsilon = 1e-14);
}

#[test]
fn chain_always_matches_reversed_orientation() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let f = random_permutation(&mut rng, 6);
        let gs: Vec<Vec<Complex64>> = (0..4)
            .map(|_| munorm_core::sample::random_vector(&mut rng, 6))
            .collect();
        let r = chain_mu_norm(&f, &gs).unwrap();
        assert_abs_diff_eq!(
            r.mu_norm_sq,
            r.reversed,
            epsilon = 1e-10 * r.reversed.max(1.0)
        );
    }
}

#[test]
fn pair_mass_examples() {
    let m = finite_mu_uf(&Permutation::cyclic_shift(4, 1));
    for a in 0..4 {
        for b in 0..4 {
            let expected = if a == (b + 1) % 4 { 0.25 } else { 0.0 };
            assert_eq!(m.get(a, b), expected);
        }
    }
    let (first, second) = m.marginals();
    assert_abs_diff_eq!(first.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(second.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
    assert!(first
        .iter()
        .chain(&second)
        .all(|&v| (v - 0.25).abs() < 1e-15));
    let id = finite_mu_uf(&Permutation::identity(3));
    assert_abs_diff_eq!(id.get(1, 1), 1.0 / 3.0, epsilon = 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quantum_and_ks_agree(seed in any::<u64>(), n in 2usize..=7, blocks in 1usize..=3, depth in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_permutation(&mut rng, n);
        let chi = random_partition(&mut rng, n, blocks.min(n)).unwrap();
        let q = quantum_entropy_stage(&koopman(&f), &chi, depth).unwrap();
        prop_assert!((q - ks_entropy_stage(&f, &chi, depth).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn permutation_inverse(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_permutation(&mut rng, n);
        prop_assert_eq!(f.compose(&f.inverse()), Permutation::identity(n));
    }
}
