//! Coefficient tables of `W ĝ`, `ĝ W` and `ĝ₁ W ĝ₂` from the table of `W`.
//!
//! With `ḡ` the coefficients of `|g|²`, the kernel of the product is the
//! kernel of `W` multiplied by `|g(a)|²`, `|g(x)|²`, or both, which gives
//!
//! * right: `ω̃_{m,n} = Σ_q ω_{m,n−q} ḡ_q`,
//! * left: `ω̃_{m,n} = Σ_p ḡ_{m−p} ω_{p,n}`,
//! * both: `ω̃_{m,n} = Σ_{p,q} ḡ₁_{m−p} ω_{p,q} ḡ₂_{n−q}`.
//!
//! Every output entry must only use entries inside the input window, so the
//! radius shrinks by the degree of `ḡ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::regular::table::{OmegaTable, Source};
use crate::torus::fourier::FourierPolynomial;

fn shrink(table: &OmegaTable, by: usize) -> Result<usize> {
    table.radius().checked_sub(by).ok_or(Error::WindowTooSmall {
        needed: by,
        available: table.radius(),
    })
}

/// Table of `W ĝ` from the table of `W`.
pub fn product_omega_right(table: &OmegaTable, g: &FourierPolynomial) -> Result<OmegaTable> {
    let h = g.abs_sq();
    let d = h.degree();
    let radius = shrink(table, d)?;
    let source = table.overall_source();
    Ok(OmegaTable::from_fn(
        radius,
        table.dt_bound() * g.dt_norm(),
        table.sum_band() + d,
        |m, n| {
            let v: Complex64 = h.terms().map(|(q, hq)| table.at(m, n - q) * hq).sum();
            (v, source)
        },
    ))
}

/// Table of `ĝ W` from the table of `W`.
pub fn product_omega_left(g: &FourierPolynomial, table: &OmegaTable) -> Result<OmegaTable> {
    let h = g.abs_sq();
    let d = h.degree();
    let radius = shrink(table, d)?;
    let source = table.overall_source();
    Ok(OmegaTable::from_fn(
        radius,
        table.dt_bound() * g.dt_norm(),
        table.sum_band() + d,
        |m, n| {
            let v: Complex64 = h.terms().map(|(q, hq)| hq * table.at(m - q, n)).sum();
            (v, source)
        },
    ))
}

/// Table of `ĝ₁ W ĝ₂`, by the double sum.
pub fn product_omega_both(
    g1: &FourierPolynomial,
    table: &OmegaTable,
    g2: &FourierPolynomial,
) -> Result<OmegaTable> {
    let h1 = g1.abs_sq();
    let h2 = g2.abs_sq();
    let d = h1.degree().max(h2.degree());
    let radius = shrink(table, d)?;
    let source: Source = table.overall_source();
    Ok(OmegaTable::from_fn(
        radius,
        table.dt_bound() * g1.dt_norm() * g2.dt_norm(),
        table.sum_band() + h1.degree() + h2.degree(),
        |m, n| {
            let mut v = Complex64::new(0.0, 0.0);
            for (p, a) in h1.terms() {
                for (q, b) in h2.terms() {
                    v += a * table.at(m - p, n - q) * b;
                }
            }
            (v, source)
        },
    ))
}

/// `‖ĝ₁ W ĝ₂‖²_μ = Σ_{p,q} ḡ₁_{−p} ω_{p,q} ḡ₂_{−q}`.
pub fn gwg_mu_norm_sq(
    table: &OmegaTable,
    g1: &FourierPolynomial,
    g2: &FourierPolynomial,
) -> Result<f64> {
    let h1 = g1.abs_sq();
    let h2 = g2.abs_sq();
    let d = h1.degree().max(h2.degree());
    if d > table.radius() {
        return Err(Error::WindowTooSmall {
            needed: d,
            available: table.radius(),
        });
    }
    let mut v = Complex64::new(0.0, 0.0);
    for (p, a) in h1.terms() {
        for (q, b) in h2.terms() {
            v += a * table.at(-p, -q) * b;
        }
    }
    Ok(v.re)
}
