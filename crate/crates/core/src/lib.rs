//! Numerical core for μ-norms of operators.
//!
//! Three settings share one toolkit:
//!
//! * operators on `L²(ℤ_J)` with the uniform measure ([`finite_space`]),
//!   including Koopman operators of permutations and the entropy stages
//!   built from them ([`koopman`]);
//! * banded lattice operators on `ℓ²(ℤ)`, read as operators on the circle
//!   through their Fourier coefficients ([`torus`]);
//! * the coefficient tables `ω_{m,n}` of regular operators and the kernels
//!   and bistochastic operators derived from them ([`regular`],
//!   [`bistochastic`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bistochastic;
pub mod error;
pub mod finite_space;
pub mod koopman;
pub mod math;
pub mod matrix;
pub mod regular;
pub mod sample;
pub mod torus;

pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
