//! Diagonal-type operators on the circle `𝕋 = ℝ/2πℤ`, written as banded
//! matrices in the Fourier basis.

pub mod fourier;
pub mod lattice;
pub mod localized;

pub use fourier::FourierPolynomial;
pub use lattice::{
    add, adjoint, compose, convolution_operator, dt_norm, multiplication_operator_torus,
    rho_interval, scale, v_window, w_symbol, BandRows, IntegerInterval, LatticeOperator, Majorant,
    OperatorKind, PeriodicBlock, Symbol,
};
pub use localized::{localized_fourier_checks, LocalizedResiduals, MIN_GRID};
