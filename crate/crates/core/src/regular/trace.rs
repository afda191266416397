//! Windowed average traces `T̄_I(W) = (1/#I) Σ_{l∈I, j} |W_{l,j}|²` and the
//! angular integral of `v_{I,0}(a)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::TAU;
use crate::torus::lattice::{symbol_from_rows, IntegerInterval, LatticeOperator};

/// `(1/#I) Σ_{l∈I} Σ_j |W_{l,j}|²`.
pub fn average_trace_window(w: &LatticeOperator, interval: &IntegerInterval) -> f64 {
    let rows = w.rows(interval.lo(), interval.hi());
    let b = rows.band() as i64;
    interval
        .iter()
        .map(|l| {
            (l - b..=l + b)
                .map(|j| rows.get(l, j).norm_sqr())
                .sum::<f64>()
        })
        .sum::<f64>()
        / interval.len() as f64
}

/// `T̄_I` of `W`, `WU` and `UW` on one window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub interval_len: usize,
    pub w: f64,
    pub wu: f64,
    pub uw: f64,
    /// `max(|T̄(WU) − T̄(W)|, |T̄(UW) − T̄(W)|)`.
    pub residual: f64,
}

/// Windowed traces of `W`, `WU` and `UW` on `[start, start + len − 1]` for
/// each length. `U` must be known to be unitary.
pub fn unitary_trace_invariance_check(
    w: &LatticeOperator,
    u: &LatticeOperator,
    lens: &[usize],
    start: i64,
) -> Result<Vec<TraceRow>> {
    if !u.is_unitary() {
        return Err(Error::NotUnitary);
    }
    let wu = w.clone().compose(u.clone());
    let uw = u.clone().compose(w.clone());
    lens.iter()
        .map(|&len| {
            let i = IntegerInterval::with_len(start, len)?;
            let (tw, twu, tuw) = (
                average_trace_window(w, &i),
                average_trace_window(&wu, &i),
                average_trace_window(&uw, &i),
            );
            Ok(TraceRow {
                interval_len: len,
                w: tw,
                wu: twu,
                uw: tuw,
                residual: (twu - tw).abs().max((tuw - tw).abs()),
            })
        })
        .collect()
}

/// `(1/N) Σ_i v_{I,0}(a_i)` on the grid `a_i = 2πi/N`, where
/// `v_{I,0}(a) = (1/#I) Σ_{l∈I} |w_l(a)|²`.
pub fn mu_norm_integral_estimate(
    w: &LatticeOperator,
    grid: usize,
    interval: &IntegerInterval,
) -> Result<f64> {
    if grid == 0 {
        return Err(Error::InvalidParameter("grid must be nonempty"));
    }
    let rows = w.rows(interval.lo(), interval.hi());
    let mut total = 0.0;
    for i in 0..grid {
        let a = TAU * i as f64 / grid as f64;
        total += interval
            .iter()
            .map(|l| symbol_from_rows(&rows, l, a).norm_sqr())
            .sum::<f64>();
    }
    Ok(total / (grid as f64 * interval.len() as f64))
}
