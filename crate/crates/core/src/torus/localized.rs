//! Grid checks of three estimates for functions supported on a short arc
//! `[a − ε, a + ε]`:
//!
//! * `‖f − e^{im(x−a)} f‖ ≤ |m| ε ‖f‖`,
//! * `|f_m − e^{ila} f_{m+l}| ≤ ε^{3/2} |l| ‖f‖ / √π`,
//! * `|Σ_k e^{−ima} f_k conj(f_{k+m}) − ‖f‖²| ≤ |m| ε ‖f‖²`,
//!
//! with `‖f‖² = (1/2π) ∫ |f|²`. All integrals use the uniform grid
//! `x_i = 2πi/N`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{circle_distance, cis, sqrt, TAU};

/// Smallest grid accepted by [`localized_fourier_checks`].
pub const MIN_GRID: usize = 1 << 12;

/// Left-hand sides and bounds of the three estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalizedResiduals {
    pub shift_lhs: f64,
    pub shift_bound: f64,
    pub coeff_lhs: f64,
    pub coeff_bound: f64,
    pub autocorr_lhs: f64,
    pub autocorr_bound: f64,
}

impl LocalizedResiduals {
    /// `bound − lhs` for the three estimates, in order.
    pub fn margins(&self) -> [f64; 3] {
        [
            self.shift_bound - self.shift_lhs,
            self.coeff_bound - self.coeff_lhs,
            self.autocorr_bound - self.autocorr_lhs,
        ]
    }

    pub fn min_margin(&self) -> f64 {
        self.margins().into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates the three estimates for grid samples `f(x_i)`.
pub fn localized_fourier_checks(
    samples: &[Complex64],
    a: f64,
    eps: f64,
    m: i64,
    l: i64,
) -> Result<LocalizedResiduals> {
    let n = samples.len();
    if n < MIN_GRID {
        return Err(Error::GridTooCoarse {
            points: n,
            min: MIN_GRID,
        });
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidParameter("eps must be positive"));
    }
    let x = |i: usize| TAU * i as f64 / n as f64;
    for (i, f) in samples.iter().enumerate() {
        if *f != Complex64::new(0.0, 0.0) && circle_distance(x(i), a) > eps * (1.0 + 1e-12) {
            return Err(Error::SupportViolation { index: i });
        }
    }
    let inv_n = 1.0 / n as f64;
    let norm_sq: f64 = samples.iter().map(|f| f.norm_sqr()).sum::<f64>() * inv_n;
    let norm = sqrt(norm_sq);

    let shift_sq: f64 = samples
        .iter()
        .enumerate()
        .map(|(i, f)| (f - cis(m as f64 * (x(i) - a)) * f).norm_sqr())
        .sum::<f64>()
        * inv_n;

    let coeff = |k: i64| -> Complex64 {
        samples
            .iter()
            .enumerate()
            .map(|(i, f)| f * cis(-(k as f64) * x(i)))
            .sum::<Complex64>()
            * inv_n
    };
    let coeff_lhs = (coeff(m) - cis(l as f64 * a) * coeff(m + l)).norm();

    // Σ_k f_k conj(f_{k+m}) = (1/2π) ∫ |f|² e^{imx}
    let autocorr: Complex64 = samples
        .iter()
        .enumerate()
        .map(|(i, f)| f.norm_sqr() * cis(m as f64 * (x(i) - a)))
        .sum::<Complex64>()
        * inv_n;

    let mf = m.unsigned_abs() as f64;
    let lf = l.unsigned_abs() as f64;
    Ok(LocalizedResiduals {
        shift_lhs: sqrt(shift_sq),
        shift_bound: mf * eps * norm,
        coeff_lhs,
        coeff_bound: eps * sqrt(eps) / sqrt(core::f64::consts::PI) * lf * norm,
        autocorr_lhs: (autocorr - norm_sq).norm(),
        autocorr_bound: mf * eps * norm_sq,
    })
}
