//! Regular operators on the circle: the coefficients
//! `ω_{m,n} = lim (1/#I) Σ_{l∈I, j} W_{l+m,j} conj(W_{l,j+n})`, and what can
//! be computed from them.

pub mod indicator;
pub mod kernel;
pub mod omega;
pub mod products;
pub mod table;
pub mod trace;

pub use indicator::{
    indicator_mu_norm, indicator_mu_norm_right, right_multiplication_mu_norm_sq, IndicatorEstimate,
};
pub use kernel::{
    fejer_nu, fejer_order, fejer_profile, marginals, mu_norm_regular, nu_eval, v_from_table,
};
pub use omega::{
    omega_convergence_report, omega_exact, omega_tail_bound_check, omega_window,
    omega_window_table, quadratic_resonance, tail_bound_from_table, ConvergenceRow, Resonance,
    TailCheck, NEAR_RESONANCE_TOL, RESONANCE_TOL,
};
pub use products::{gwg_mu_norm_sq, product_omega_both, product_omega_left, product_omega_right};
pub use table::{OmegaTable, Source};
pub use trace::{
    average_trace_window, mu_norm_integral_estimate, unitary_trace_invariance_check, TraceRow,
};
