//! Windowed sums `ω_{I,m,n}`, their closed-form limits, and the bounds they
//! satisfy.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{cis_product, round};
use crate::regular::products::{product_omega_left, product_omega_right};
use crate::regular::table::{OmegaTable, Source};
use crate::torus::lattice::{BandRows, IntegerInterval, LatticeOperator, Symbol};

/// `τm/π` closer than this to an integer counts as resonant.
pub const RESONANCE_TOL: f64 = 1e-9;
/// Distances below this (but above [`RESONANCE_TOL`]) are reported.
pub const NEAR_RESONANCE_TOL: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `ω_{I,m,n} = (1/#I) Σ_{l∈I} Σ_j W_{l+m,j} conj(W_{l,j+n})`, exactly.
pub fn omega_window(w: &LatticeOperator, interval: &IntegerInterval, m: i64, n: i64) -> Complex64 {
    let lo = interval.lo().min(interval.lo() + m);
    let hi = interval.hi().max(interval.hi() + m);
    let rows = w.rows(lo, hi);
    omega_from_rows(&rows, interval, m, n)
}

pub(crate) fn omega_from_rows(
    rows: &BandRows,
    interval: &IntegerInterval,
    m: i64,
    n: i64,
) -> Complex64 {
    let b = rows.band() as i64;
    let mut acc = ZERO;
    for l in interval.iter() {
        let jlo = (l + m - b).max(l - n - b);
        let jhi = (l + m + b).min(l - n + b);
        for j in jlo..=jhi {
            acc += rows.get(l + m, j) * rows.get(l, j + n).conj();
        }
    }
    acc / interval.len() as f64
}

/// Table of windowed estimates `ω_{I,m,n}` for `|m|, |n| ≤ radius`.
pub fn omega_window_table(
    w: &LatticeOperator,
    interval: &IntegerInterval,
    radius: usize,
) -> OmegaTable {
    let r = radius as i64;
    let rows = w.rows(interval.lo() - r, interval.hi() + r);
    let len = interval.len();
    OmegaTable::from_fn(radius, w.dt_norm(), 2 * w.band(), |m, n| {
        (
            omega_from_rows(&rows, interval, m, n),
            Source::Estimated { interval_len: len },
        )
    })
}

/// Resonance test for the quadratic phase `e^{iτk²}` at frequency `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resonance {
    /// `τm/π` is an integer within [`RESONANCE_TOL`].
    Resonant,
    /// Not resonant; `distance` is how far `τm/π` is from the nearest integer.
    Off { distance: f64 },
}

pub fn quadratic_resonance(tau: f64, m: i64) -> Resonance {
    let x = tau * m as f64 / core::f64::consts::PI;
    let distance = (x - round(x)).abs();
    if distance <= RESONANCE_TOL {
        Resonance::Resonant
    } else {
        Resonance::Off { distance }
    }
}

/// Closed-form table of `ω_{m,n}` for `|m|, |n| ≤ radius`.
///
/// Supported: constant, rotation and quadratic-phase convolutions,
/// multiplications (`ω_{m,n} = ḡ_{m+n}`), scalar multiples, anything with a
/// known period (average over one period of rows), and products with a
/// multiplication operator on either side of a supported operator.
pub fn omega_exact(w: &LatticeOperator, radius: usize) -> Result<OmegaTable> {
    let dt = w.dt_norm();
    let exact = |v: Complex64| (v, Source::Exact);
    match w {
        LatticeOperator::Convolution(Symbol::Constant(c)) => {
            let c2 = c.norm_sqr();
            return Ok(OmegaTable::from_fn(radius, dt, 0, |m, n| {
                exact(if m + n == 0 {
                    Complex64::new(c2, 0.0)
                } else {
                    ZERO
                })
            }));
        }
        LatticeOperator::Convolution(Symbol::Rotation { alpha }) => {
            return Ok(OmegaTable::from_fn(radius, dt, 0, |m, n| {
                exact(if m + n == 0 {
                    cis_product(*alpha, m as f64)
                } else {
                    ZERO
                })
            }));
        }
        LatticeOperator::Convolution(Symbol::QuadraticPhase { tau }) => {
            let mut near = Vec::new();
            let r = radius as i64;
            for m in -r..=r {
                if let Resonance::Off { distance } = quadratic_resonance(*tau, m) {
                    if distance < NEAR_RESONANCE_TOL {
                        near.push((m, distance));
                    }
                }
            }
            let table = OmegaTable::from_fn(radius, dt, 0, |m, n| {
                if m + n != 0 {
                    return exact(ZERO);
                }
                match quadratic_resonance(*tau, m) {
                    Resonance::Resonant => exact(cis_product(*tau, m as f64 * m as f64)),
                    Resonance::Off { .. } => exact(ZERO),
                }
            });
            return Ok(table.with_near_resonances(near));
        }
        LatticeOperator::Multiplication(g) => {
            let h = g.abs_sq();
            return Ok(OmegaTable::from_fn(radius, dt, h.degree(), |m, n| {
                exact(h.coeff(m + n))
            }));
        }
        LatticeOperator::Scale(c, inner) => {
            let t = omega_exact(inner, radius)?;
            let c2 = c.norm_sqr();
            return Ok(OmegaTable::from_fn(radius, dt, t.sum_band(), |m, n| {
                (t.at(m, n) * c2, t.source(m, n).unwrap_or(Source::Exact))
            })
            .with_near_resonances(t.near_resonances().to_vec()));
        }
        _ => {}
    }
    if let Some(period) = w.period() {
        return Ok(period_average(w, period, radius));
    }
    if let LatticeOperator::Product(a, b) = w {
        if let LatticeOperator::Multiplication(g) = a.as_ref() {
            let d = g.abs_sq().degree();
            let inner = omega_exact(b, radius + d)?;
            return product_omega_left(g, &inner).map(|t| with_dt_bound(t, dt));
        }
        if let LatticeOperator::Multiplication(g) = b.as_ref() {
            let d = g.abs_sq().degree();
            let inner = omega_exact(a, radius + d)?;
            return product_omega_right(&inner, g).map(|t| with_dt_bound(t, dt));
        }
    }
    Err(Error::NoClosedForm(kind_name(w)))
}

fn with_dt_bound(t: OmegaTable, dt: f64) -> OmegaTable {
    let near = t.near_resonances().to_vec();
    OmegaTable::from_fn(t.radius(), dt.min(t.dt_bound()), t.sum_band(), |m, n| {
        (t.at(m, n), t.source(m, n).unwrap_or(Source::Exact))
    })
    .with_near_resonances(near)
}

fn kind_name(w: &LatticeOperator) -> &'static str {
    match w {
        LatticeOperator::Convolution(Symbol::Table { .. }) => "table convolution",
        LatticeOperator::Convolution(_) => "convolution",
        LatticeOperator::Multiplication(_) => "multiplication",
        LatticeOperator::Periodic(_) => "periodic",
        LatticeOperator::Sum(..) => "sum",
        LatticeOperator::Product(..) => "product",
        LatticeOperator::Scale(..) => "scaled",
        LatticeOperator::Adjoint(..) => "adjoint",
    }
}

/// For a `τ`-periodic matrix the windowed sum over one full period is the
/// limit itself.
fn period_average(w: &LatticeOperator, period: usize, radius: usize) -> OmegaTable {
    let interval = IntegerInterval::with_len(0, period).expect("period is positive");
    let r = radius as i64;
    let rows = w.rows(-r, period as i64 - 1 + r);
    OmegaTable::from_fn(radius, w.dt_norm(), 2 * w.band(), |m, n| {
        (omega_from_rows(&rows, &interval, m, n), Source::Exact)
    })
}

/// One line of a convergence sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub interval_len: usize,
    pub estimate: Complex64,
    pub exact: Complex64,
    pub error: f64,
    /// `τ c̄² (1/#I + 1/(#I − τ))` when the operator has a known period
    /// `τ < #I`.
    pub periodic_bound: Option<f64>,
}

/// `|ω_{I,m,n} − ω_{m,n}|` for intervals `[start, start + len − 1]`.
pub fn omega_convergence_report(
    w: &LatticeOperator,
    m: i64,
    n: i64,
    lens: &[usize],
    start: i64,
) -> Result<Vec<ConvergenceRow>> {
    let radius = m.unsigned_abs().max(n.unsigned_abs()) as usize;
    let exact = omega_exact(w, radius)?.at(m, n);
    let cbar = w.dt_norm();
    let period = w.period();
    lens.iter()
        .map(|&len| {
            let interval = IntegerInterval::with_len(start, len)?;
            let estimate = omega_window(w, &interval, m, n);
            let periodic_bound = period.filter(|&t| t < len).map(|t| {
                let (t, l) = (t as f64, len as f64);
                t * cbar * cbar * (1.0 / l + 1.0 / (l - t))
            });
            Ok(ConvergenceRow {
                interval_len: len,
                estimate,
                exact,
                error: (estimate - exact).norm(),
                periodic_bound,
            })
        })
        .collect()
}

/// Both sides of `Σ_{n: |n+m| ≥ 2M} |ω_{m,n}| ≤ 2 c̄ Σ_{|k| ≥ M} c_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
    /// Whether the `c_k` were exact suprema rather than upper bounds.
    pub majorant_exact: bool,
}

/// Tail estimate from a closed-form table wide enough to hold row `m` whole.
pub fn omega_tail_bound_check(w: &LatticeOperator, m: i64, tail_from: usize) -> Result<TailCheck> {
    let radius = m.unsigned_abs() as usize + 2 * w.band();
    let table = omega_exact(w, radius)?;
    tail_bound_from_table(&table, &w.majorant(), m, tail_from)
}

/// Tail estimate for row `m` of `table`, with `c_k` taken from `majorant`.
pub fn tail_bound_from_table(
    table: &OmegaTable,
    majorant: &crate::torus::lattice::Majorant,
    m: i64,
    tail_from: usize,
) -> Result<TailCheck> {
    if !table.row_complete(m) {
        return Err(Error::WindowTooSmall {
            needed: m.unsigned_abs() as usize + table.sum_band(),
            available: table.radius(),
        });
    }
    let r = table.radius() as i64;
    let lhs: f64 = (-r..=r)
        .filter(|n| (n + m).unsigned_abs() as usize >= 2 * tail_from)
        .map(|n| table.at(m, n).norm())
        .sum();
    let rhs = 2.0 * majorant.total() * majorant.tail(tail_from);
    Ok(TailCheck {
        lhs,
        rhs,
        slack: rhs - lhs,
        majorant_exact: majorant.is_exact(),
    })
}
