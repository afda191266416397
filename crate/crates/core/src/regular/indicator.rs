//! `‖1̂_I W‖²_μ` for an arc `I = [α, β]`, together with the piecewise-linear
//! ramps around it:
//!
//! * outer ramp `g_ε = max(0, 1 − dist(x, I)/ε)`, equal to 1 on `I`;
//! * inner ramp `g_{−ε} = 1 − max(0, 1 − dist(x, 𝕋∖I)/ε)`, vanishing off `I`.
//!
//! Since `ψ ≥ 0` and `g_{−ε}² ≤ 1_I ≤ g_ε²`, the ramp values bracket the
//! indicator value, and the outer one exceeds it by at most
//! `‖g_ε − g_{−ε}‖² ‖ψ‖_∞ ≤ ‖g_ε − g_{−ε}‖² ‖ψ‖_DT`.
//!
//! Fourier coefficients of the squared ramps are integrated exactly, piece by
//! piece.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{cis, TAU};
use crate::regular::kernel::marginals;
use crate::regular::table::OmegaTable;
use crate::torus::fourier::FourierPolynomial;

const FULL_CIRCLE_TOL: f64 = 1e-12;

/// A quadratic `c0 + c1 t + c2 t²` on `[start, start + len]`, `t = x − start`.
#[derive(Debug, Clone, Copy)]
struct Piece {
    start: f64,
    len: f64,
    c: [f64; 3],
}

impl Piece {
    /// `(1/2π) ∫ p(x − start) e^{−ikx} dx` over the piece.
    fn coeff(&self, k: i64) -> Complex64 {
        let [c0, c1, c2] = self.c;
        let l = self.len;
        if k == 0 {
            return Complex64::new(
                (c0 * l + c1 * l * l / 2.0 + c2 * l * l * l / 3.0) / TAU,
                0.0,
            );
        }
        let s = Complex64::new(0.0, -(k as f64));
        let anti = |t: f64| {
            let p = c0 + c1 * t + c2 * t * t;
            let dp = c1 + 2.0 * c2 * t;
            let ddp = 2.0 * c2;
            (s * t).exp() * (p / s - dp / (s * s) + ddp / (s * s * s))
        };
        (anti(l) - anti(0.0)) * cis(-(k as f64) * self.start) / TAU
    }
}

fn coeffs(pieces: &[Piece], degree: usize) -> FourierPolynomial {
    let d = degree as i64;
    FourierPolynomial::from_terms(
        (-d..=d).map(|k| (k, pieces.iter().map(|p| p.coeff(k)).sum::<Complex64>())),
    )
}

/// Ramp values around `[α, β]` next to the indicator value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatorEstimate {
    /// With the indicator replaced by `g_ε²`.
    pub upper: f64,
    /// With the indicator replaced by `g_{−ε}²`.
    pub lower: f64,
    /// With the indicator itself.
    pub exact: f64,
    /// `‖g_ε − g_{−ε}‖² ‖ψ‖_DT`, bounding `upper − exact`.
    pub error_bar: f64,
}

struct Arc {
    alpha: f64,
    len: f64,
}

fn arc(alpha: f64, beta: f64) -> Result<Arc> {
    let len = beta - alpha;
    if len.is_nan()
        || len <= 0.0
        || len > TAU + FULL_CIRCLE_TOL
        || !alpha.is_finite()
        || !beta.is_finite()
    {
        return Err(Error::InvalidParameter(
            "interval needs 0 < beta - alpha <= 2π",
        ));
    }
    Ok(Arc { alpha, len })
}

/// `(1/2π) ∫ w(x) ρ(x) dx` for every weight `w`, with `ρ` the chosen marginal.
fn estimate(
    weight: &FourierPolynomial,
    alpha: f64,
    beta: f64,
    eps: f64,
) -> Result<IndicatorEstimate> {
    let a = arc(alpha, beta)?;
    let degree = weight
        .support()
        .map(|(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()) as usize)
        .unwrap_or(0);
    let pair = |h: &FourierPolynomial| -> f64 {
        weight
            .terms()
            .map(|(m, v)| v * h.coeff(-m))
            .sum::<Complex64>()
            .re
    };
    if a.len >= TAU - FULL_CIRCLE_TOL {
        let full = weight.coeff(0).re;
        return Ok(IndicatorEstimate {
            upper: full,
            lower: full,
            exact: full,
            error_bar: 0.0,
        });
    }
    if eps.is_nan() || eps <= 0.0 || a.len < 2.0 * eps || a.len + 2.0 * eps > TAU {
        return Err(Error::InvalidParameter(
            "ramp width must satisfy 0 < 2ε <= β − α <= 2π − 2ε",
        ));
    }
    let (s, l) = (a.alpha, a.len);
    let e2 = 1.0 / (eps * eps);
    let rise = [0.0, 0.0, e2];
    let fall = [1.0, -2.0 / eps, e2];
    let flat = [1.0, 0.0, 0.0];
    let indicator = [Piece {
        start: s,
        len: l,
        c: flat,
    }];
    let outer = [
        Piece {
            start: s - eps,
            len: eps,
            c: rise,
        },
        Piece {
            start: s,
            len: l,
            c: flat,
        },
        Piece {
            start: s + l,
            len: eps,
            c: fall,
        },
    ];
    let mut inner: Vec<Piece> = Vec::with_capacity(3);
    inner.push(Piece {
        start: s,
        len: eps,
        c: rise,
    });
    if l > 2.0 * eps {
        inner.push(Piece {
            start: s + eps,
            len: l - 2.0 * eps,
            c: flat,
        });
    }
    inner.push(Piece {
        start: s + l - eps,
        len: eps,
        c: fall,
    });
    let gap_norm_sq = 4.0 * eps / 3.0 / TAU;
    Ok(IndicatorEstimate {
        upper: pair(&coeffs(&outer, degree)),
        lower: pair(&coeffs(&inner, degree)),
        exact: pair(&coeffs(&indicator, degree)),
        error_bar: gap_norm_sq * weight.dt_norm(),
    })
}

/// `‖1̂_I W‖²_μ = (1/2π) ∫_I ψ` with `ψ_m = ω_{m,0}`, and its ramp bracket.
pub fn indicator_mu_norm(
    table: &OmegaTable,
    alpha: f64,
    beta: f64,
    eps: f64,
) -> Result<IndicatorEstimate> {
    let (_, psi) = marginals(table);
    estimate(&psi, alpha, beta, eps)
}

/// `‖W 1̂_I‖²_μ = (1/2π) ∫_I φ` with `φ_n = ω_{0,n}`, and its ramp bracket.
pub fn indicator_mu_norm_right(
    table: &OmegaTable,
    alpha: f64,
    beta: f64,
    eps: f64,
) -> Result<IndicatorEstimate> {
    let (phi, _) = marginals(table);
    estimate(&phi, alpha, beta, eps)
}

/// `‖W ĝ‖²_μ = (1/2π) ∫ φ |g|²` for a bounded `g` given by samples on the
/// uniform grid `a_i = 2πi/N`.
pub fn right_multiplication_mu_norm_sq(table: &OmegaTable, samples: &[Complex64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("need at least one sample"));
    }
    let (phi, _) = marginals(table);
    let n = samples.len();
    Ok(samples
        .iter()
        .enumerate()
        .map(|(i, g)| phi.eval(TAU * i as f64 / n as f64).re * g.norm_sqr())
        .sum::<f64>()
        / n as f64)
}
