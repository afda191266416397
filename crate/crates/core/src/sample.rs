//! Seeded random inputs for tests and checks. Every function takes the
//! generator explicitly, so a fixed seed gives a fixed sequence.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::finite_space::{Basis, FiniteOperator, Partition};
use crate::koopman::Permutation;
use crate::math::{circle_distance, exp, sqrt, TAU};
use crate::matrix::CMatrix;
use crate::torus::fourier::FourierPolynomial;
use crate::torus::lattice::PeriodicBlock;

/// Standard complex Gaussian: real and imaginary parts have variance 1/2.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * sqrt(0.5)
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| complex_normal(rng)).collect()
}

/// `rows × cols` matrix of independent standard complex Gaussians.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Random operator on `ℤ_J` given in the value basis.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, size: usize) -> Result<FiniteOperator> {
    FiniteOperator::new(random_matrix(rng, size, size), Basis::Value)
}

/// Unitary obtained by orthonormalizing the columns of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, size: usize) -> CMatrix {
    random_matrix(rng, size, size).orthonormalize_columns()
}

pub fn random_unitary_operator<R: Rng + ?Sized>(
    rng: &mut R,
    size: usize,
) -> Result<FiniteOperator> {
    FiniteOperator::new(random_unitary(rng, size), Basis::Value)
}

/// Uniform random permutation of `0..size`.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, size: usize) -> Permutation {
    let mut image: Vec<usize> = (0..size).collect();
    image.shuffle(rng);
    Permutation::new(image).expect("shuffle of 0..size is a permutation")
}

/// Random partition of `0..size` into exactly `blocks` nonempty blocks.
pub fn random_partition<R: Rng + ?Sized>(
    rng: &mut R,
    size: usize,
    blocks: usize,
) -> Result<Partition> {
    if blocks == 0 || blocks > size {
        return Err(Error::InvalidPartition("block count must be in 1..=size"));
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.shuffle(rng);
    let mut labels = vec![0; size];
    for (i, &p) in order.iter().enumerate() {
        labels[p] = if i < blocks {
            i
        } else {
            rng.random_range(0..blocks)
        };
    }
    Partition::from_labels(&labels)
}

/// Trigonometric polynomial with Gaussian coefficients on `[−degree, degree]`.
pub fn random_trig_poly<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> FourierPolynomial {
    let d = degree as i64;
    FourierPolynomial::new(-d, random_vector(rng, 2 * degree + 1))
}

/// Periodic banded operator with Gaussian entries.
pub fn random_periodic<R: Rng + ?Sized>(
    rng: &mut R,
    period: usize,
    band: usize,
) -> Result<PeriodicBlock> {
    PeriodicBlock::from_fn(period, band, |_, _| complex_normal(rng))
}

/// `exp(1 − 1/(1 − t²))` on `|t| < 1`, zero elsewhere; peak value 1 at 0.
pub fn bump_profile(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        exp(1.0 - 1.0 / (1.0 - t * t))
    }
}

/// Smooth bump centred at `a` with half-width `eps`, modulated by a random
/// trigonometric polynomial of degree ≤ 3, sampled at `x_i = 2πi/N`.
pub fn random_bump<R: Rng + ?Sized>(
    rng: &mut R,
    a: f64,
    eps: f64,
    points: usize,
) -> Vec<Complex64> {
    let degree = rng.random_range(0..=3);
    let p = random_trig_poly(rng, degree);
    (0..points)
        .map(|i| {
            let x = TAU * i as f64 / points as f64;
            let t = circle_distance(x, a) / eps;
            if t >= 1.0 {
                Complex64::new(0.0, 0.0)
            } else {
                p.eval(x) * bump_profile(t)
            }
        })
        .collect()
}

/// Bump equal to 1 on the middle half of `[a − eps, a + eps]` and smoothly
/// falling to 0 at the ends, sampled at `x_i = 2πi/N`.
pub fn plateau_bump(a: f64, eps: f64, points: usize) -> Vec<Complex64> {
    (0..points)
        .map(|i| {
            let x = TAU * i as f64 / points as f64;
            let t = circle_distance(x, a) / eps;
            let v = if t <= 0.5 {
                1.0
            } else {
                bump_profile(2.0 * t - 1.0)
            };
            Complex64::new(v, 0.0)
        })
        .collect()
}
