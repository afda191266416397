//! Functions read off a coefficient table: `v_m(a)`, the kernel
//! `ν(x, a) = Σ ω_{m,n} e^{imx + ina}`, its Fejér means in `x`, the two
//! marginals, and the μ-norm.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{cis, sqrt};
use crate::regular::table::OmegaTable;
use crate::torus::fourier::FourierPolynomial;

/// `Im ω_{0,0}` beyond this is reported as an inconsistency.
pub const OMEGA00_IMAG_TOL: f64 = 1e-12;

fn check_row(table: &OmegaTable, m: i64) -> Result<()> {
    if m.unsigned_abs() as usize > table.radius() {
        return Err(Error::WindowTooSmall {
            needed: m.unsigned_abs() as usize,
            available: table.radius(),
        });
    }
    Ok(())
}

/// `v_m(a) = Σ_{|n|≤M} ω_{m,n} e^{i(m+n)a}`.
pub fn v_from_table(table: &OmegaTable, m: i64, a: f64) -> Result<Complex64> {
    check_row(table, m)?;
    let r = table.radius() as i64;
    Ok((-r..=r)
        .map(|n| table.at(m, n) * cis((m + n) as f64 * a))
        .sum())
}

/// Truncated kernel `Σ_{|m|,|n|≤M} ω_{m,n} e^{imx + ina}`.
pub fn nu_eval(table: &OmegaTable, x: f64, a: f64) -> Complex64 {
    table
        .entries()
        .map(|(m, n, v, _)| v * cis(m as f64 * x + n as f64 * a))
        .sum()
}

/// Order of the Fejér means that only uses complete rows:
/// `M − sum_band`.
pub fn fejer_order(table: &OmegaTable) -> Result<usize> {
    table
        .radius()
        .checked_sub(table.sum_band())
        .ok_or(Error::WindowTooSmall {
            needed: table.sum_band(),
            available: table.radius(),
        })
}

/// The Fejér mean of order [`fejer_order`] of `ν(·, a)`, as a polynomial in
/// `x`: `Σ_{|m|≤L} (1 − |m|/(L+1)) (Σ_n ω_{m,n} e^{ina}) e^{imx}`.
pub fn fejer_profile(table: &OmegaTable, a: f64) -> Result<FourierPolynomial> {
    let order = fejer_order(table)? as i64;
    let r = table.radius() as i64;
    Ok(FourierPolynomial::from_terms((-order..=order).map(|m| {
        let weight = 1.0 - m.unsigned_abs() as f64 / (order + 1) as f64;
        let row: Complex64 = (-r..=r).map(|n| table.at(m, n) * cis(n as f64 * a)).sum();
        (m, row * weight)
    })))
}

/// Fejér mean of `ν(·, a)` at `x`.
pub fn fejer_nu(table: &OmegaTable, x: f64, a: f64) -> Result<Complex64> {
    Ok(fejer_profile(table, a)?.eval(x))
}

/// `(φ, ψ)` with `φ_n = ω_{0,n}` and `ψ_m = ω_{m,0}`.
pub fn marginals(table: &OmegaTable) -> (FourierPolynomial, FourierPolynomial) {
    let r = table.radius() as i64;
    let phi = FourierPolynomial::from_terms((-r..=r).map(|n| (n, table.at(0, n))));
    let psi = FourierPolynomial::from_terms((-r..=r).map(|m| (m, table.at(m, 0))));
    (phi, psi)
}

/// `‖W‖_μ = sqrt(Re ω_{0,0})`.
pub fn mu_norm_regular(table: &OmegaTable) -> Result<f64> {
    let w00 = table.at(0, 0);
    if w00.im.abs() > OMEGA00_IMAG_TOL || w00.re < -OMEGA00_IMAG_TOL {
        return Err(Error::Inconsistent {
            re: w00.re,
            im: w00.im,
        });
    }
    Ok(sqrt(w00.re.max(0.0)))
}
