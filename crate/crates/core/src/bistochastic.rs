//! The operator `𝒲` with kernel `ν`, acting on coefficients by
//! `(𝒲f)_m = Σ_n ω_{m,−n} f_n`, and checks that it is bistochastic
//! (positive, `𝒲1 = 1`, mass preserving) when the source operator is
//! unitary.
//!
//! Finite mode works on `ℤ_J`, with all indices taken mod `J`; torus mode
//! works on a truncated coefficient table.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_space::{dft, idft, Basis, FiniteOperator};
use crate::koopman::{koopman, Permutation};
use crate::math::{RootsOfUnity, TAU};
use crate::regular::kernel::marginals;
use crate::regular::omega::omega_exact;
use crate::regular::table::OmegaTable;
use crate::torus::fourier::FourierPolynomial;
use crate::torus::lattice::LatticeOperator;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const UNITARY_TOL: f64 = 1e-10;

/// `ω_{m,n} = (1/J) Σ_{j,l} W_{l+m,j} conj(W_{l,j+n})` on `ℤ_J × ℤ_J`,
/// from the coefficient-basis matrix of `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteOmega {
    size: usize,
    entries: Vec<Complex64>,
}

impl FiniteOmega {
    pub fn from_operator(w: &FiniteOperator) -> Self {
        let coef = w.in_basis(Basis::Coefficient);
        let a = coef.matrix();
        let n = w.size();
        let mut entries = vec![ZERO; n * n];
        for m in 0..n {
            for q in 0..n {
                let mut acc = ZERO;
                for l in 0..n {
                    for j in 0..n {
                        acc += a[((l + m) % n, j)] * a[(l, (j + q) % n)].conj();
                    }
                }
                entries[m * n + q] = acc / n as f64;
            }
        }
        Self { size: n, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `ω_{m,n}` with indices mod `J`.
    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        let j = self.size as i64;
        self.entries[(m.rem_euclid(j) * j + n.rem_euclid(j)) as usize]
    }

    /// `ν(x, a) = Σ_{m,n} ω_{m,n} η^{mx + na}`.
    pub fn nu(&self, x: usize, a: usize) -> Complex64 {
        let roots = RootsOfUnity::new(self.size);
        let j = self.size as i64;
        let mut acc = ZERO;
        for m in 0..j {
            for n in 0..j {
                acc += self.get(m, n) * roots.pow(m * x as i64 + n * a as i64);
            }
        }
        acc
    }

    /// All `ν(x, a)`, row-major in `x`.
    pub fn nu_matrix(&self) -> Vec<Complex64> {
        let n = self.size;
        // ν(·, a) = dft over m of (Σ_n ω_{m,n} η^{na})
        let mut out = vec![ZERO; n * n];
        let roots = RootsOfUnity::new(n);
        for a in 0..n {
            let inner: Vec<Complex64> = (0..n as i64)
                .map(|m| {
                    (0..n as i64)
                        .map(|q| self.get(m, q) * roots.pow(q * a as i64))
                        .sum()
                })
                .collect();
            for (x, v) in dft(&inner).into_iter().enumerate() {
                out[x * n + a] = v;
            }
        }
        out
    }

    /// `Σ_{p,q} ḡ₁_{m−p} ω_{p,q} ḡ₂_{n−q}` with `ḡ_k = Σ_s g_{k+s} conj(g_s)`,
    /// all indices mod `J`.
    pub fn product_both(&self, g1: &[Complex64], g2: &[Complex64]) -> Result<Self> {
        let n = self.size;
        for g in [g1, g2] {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        let h1 = abs_sq_coefficients(g1);
        let h2 = abs_sq_coefficients(g2);
        let ni = n as i64;
        let mut entries = vec![ZERO; n * n];
        for m in 0..ni {
            for q in 0..ni {
                let mut acc = ZERO;
                for p in 0..ni {
                    for r in 0..ni {
                        acc += h1[(m - p).rem_euclid(ni) as usize]
                            * self.get(p, r)
                            * h2[(q - r).rem_euclid(ni) as usize];
                    }
                }
                entries[(m * ni + q) as usize] = acc;
            }
        }
        Ok(Self { size: n, entries })
    }
}

/// Coefficients of `|g|²` on `ℤ_J`: `f_k = Σ_s g_{k+s} conj(g_s)`.
pub fn abs_sq_coefficients(g: &[Complex64]) -> Vec<Complex64> {
    let n = g.len();
    (0..n)
        .map(|k| (0..n).map(|s| g[(k + s) % n] * g[s].conj()).sum())
        .collect()
}

/// `Σ_k max_j |W_{k+j,j}|` in the coefficient basis, indices mod `J`.
pub fn finite_dt_norm(w: &FiniteOperator) -> f64 {
    let coef = w.in_basis(Basis::Coefficient);
    let a = coef.matrix();
    let n = w.size();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|j| a[((k + j) % n, j)].norm())
                .fold(0.0, f64::max)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
enum Coefficients {
    Finite(FiniteOmega),
    Torus(OmegaTable),
}

/// Whether the kernel lives on `ℤ_J` or on a truncated window of `ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelMode {
    Finite { size: usize },
    Torus { radius: usize },
}

/// `𝒲` together with what is known about its source operator.
#[derive(Debug, Clone, PartialEq)]
pub struct BistochasticKernel {
    coefficients: Coefficients,
    dt_bound: f64,
    unitary_source: bool,
}

/// Outcome of a check that only applies to unitary sources.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CheckOutcome {
    Residual(f64),
    /// The source is not unitary, so the property is not expected.
    Skipped,
}

impl CheckOutcome {
    pub fn residual(&self) -> Option<f64> {
        match self {
            CheckOutcome::Residual(r) => Some(*r),
            CheckOutcome::Skipped => None,
        }
    }
}

/// Smallest value of `𝒲f` over all trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonnegativityReport {
    pub trials: usize,
    pub min_value: f64,
    /// Largest imaginary part seen; `𝒲f` of a real `f` should be real.
    pub max_imag: f64,
}

/// `‖𝒲‖_{L¹→L¹}` (or the bound used for it) against `‖W‖²_DT`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1Bound {
    /// Finite mode: the induced norm. Torus mode: `max φ` on a grid.
    pub induced: f64,
    /// Torus mode only: `‖φ‖_DT`, which dominates `‖φ‖_∞`.
    pub marginal_dt: Option<f64>,
    pub bound: f64,
    /// `bound − max(induced, marginal_dt)`.
    pub slack: f64,
}

/// Builds `𝒲` from a finite operator.
pub fn build_finite(w: &FiniteOperator) -> BistochasticKernel {
    let dt = finite_dt_norm(w);
    BistochasticKernel {
        coefficients: Coefficients::Finite(FiniteOmega::from_operator(w)),
        dt_bound: dt * dt,
        unitary_source: w.in_basis(Basis::Value).is_unitary(UNITARY_TOL),
    }
}

/// Builds a truncated `𝒲` from the closed-form table of a lattice operator.
pub fn build_torus(w: &LatticeOperator, radius: usize) -> Result<BistochasticKernel> {
    let table = omega_exact(w, radius)?;
    let dt = w.dt_norm();
    Ok(BistochasticKernel {
        coefficients: Coefficients::Torus(table),
        dt_bound: dt * dt,
        unitary_source: w.is_unitary(),
    })
}

/// Wraps an existing table; `unitary_source` states what is known about
/// the operator it came from.
pub fn kernel_from_table(table: OmegaTable, unitary_source: bool) -> BistochasticKernel {
    let dt = table.dt_bound();
    BistochasticKernel {
        coefficients: Coefficients::Torus(table),
        dt_bound: dt * dt,
        unitary_source,
    }
}

impl BistochasticKernel {
    pub fn mode(&self) -> KernelMode {
        match &self.coefficients {
            Coefficients::Finite(o) => KernelMode::Finite { size: o.size() },
            Coefficients::Torus(t) => KernelMode::Torus { radius: t.radius() },
        }
    }

    /// `‖W‖²_DT` of the source.
    pub fn dt_bound(&self) -> f64 {
        self.dt_bound
    }

    pub fn unitary_source(&self) -> bool {
        self.unitary_source
    }

    /// `ω_{m,n}` for export: every pair in finite mode, the table window in
    /// torus mode.
    pub fn omega_entries(&self) -> Vec<(i64, i64, Complex64)> {
        match &self.coefficients {
            Coefficients::Finite(o) => {
                let j = o.size() as i64;
                (0..j)
                    .flat_map(|m| (0..j).map(move |n| (m, n)))
                    .map(|(m, n)| (m, n, o.get(m, n)))
                    .collect()
            }
            Coefficients::Torus(t) => t.entries().map(|(m, n, v, _)| (m, n, v)).collect(),
        }
    }

    pub fn finite_omega(&self) -> Option<&FiniteOmega> {
        match &self.coefficients {
            Coefficients::Finite(o) => Some(o),
            Coefficients::Torus(_) => None,
        }
    }

    pub fn table(&self) -> Option<&OmegaTable> {
        match &self.coefficients {
            Coefficients::Torus(t) => Some(t),
            Coefficients::Finite(_) => None,
        }
    }

    /// `(𝒲f)_m = Σ_n ω_{m,−n} f_n` on a finite coefficient vector.
    pub fn apply_coefficients(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        let Coefficients::Finite(o) = &self.coefficients else {
            return Err(Error::ModeMismatch);
        };
        if f.len() != o.size() {
            return Err(Error::DimensionMismatch {
                expected: o.size(),
                found: f.len(),
            });
        }
        let j = o.size() as i64;
        Ok((0..j)
            .map(|m| (0..j).map(|n| o.get(m, -n) * f[n as usize]).sum())
            .collect())
    }

    /// `(𝒲f)_m = Σ_n ω_{m,−n} f_n` for `|m| ≤ M`, using the table window.
    pub fn apply_poly(&self, f: &FourierPolynomial) -> Result<FourierPolynomial> {
        let Coefficients::Torus(t) = &self.coefficients else {
            return Err(Error::ModeMismatch);
        };
        let r = t.radius() as i64;
        Ok(FourierPolynomial::from_terms((-r..=r).map(|m| {
            let v: Complex64 = f.terms().map(|(n, fv)| t.at(m, -n) * fv).sum();
            (m, v)
        })))
    }

    /// `𝒲` applied to value samples in finite mode.
    pub fn apply_values(&self, values: &[Complex64]) -> Result<Vec<Complex64>> {
        Ok(dft(&self.apply_coefficients(&idft(values))?))
    }

    /// Finite mode: `𝒲(g·conj g)` for each coefficient vector `g`, built by
    /// `f_k = Σ_s g_{k+s} conj(g_s)`, and `𝒲` of every point indicator.
    pub fn check_nonnegativity(&self, trials: &[Vec<Complex64>]) -> Result<NonnegativityReport> {
        let Coefficients::Finite(o) = &self.coefficients else {
            return Err(Error::ModeMismatch);
        };
        let n = o.size();
        let mut report = NonnegativityReport {
            trials: 0,
            min_value: f64::INFINITY,
            max_imag: 0.0,
        };
        let mut record = |values: &[Complex64]| {
            report.trials += 1;
            for v in values {
                report.min_value = report.min_value.min(v.re);
                report.max_imag = report.max_imag.max(v.im.abs());
            }
        };
        for g in trials {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            let f = abs_sq_coefficients(g);
            record(&dft(&self.apply_coefficients(&f)?));
        }
        for x in 0..n {
            let values: Vec<Complex64> = (0..n)
                .map(|k| Complex64::new(if k == x { 1.0 } else { 0.0 }, 0.0))
                .collect();
            record(&self.apply_values(&values)?);
        }
        Ok(report)
    }

    /// Torus mode: `𝒲|g|²` for each trigonometric `g`, sampled on `grid`
    /// points. Trials whose `|g|²` does not fit inside the complete rows of
    /// the table are rejected.
    pub fn check_nonnegativity_torus(
        &self,
        trials: &[FourierPolynomial],
        grid: usize,
    ) -> Result<NonnegativityReport> {
        let Coefficients::Torus(t) = &self.coefficients else {
            return Err(Error::ModeMismatch);
        };
        let mut report = NonnegativityReport {
            trials: 0,
            min_value: f64::INFINITY,
            max_imag: 0.0,
        };
        for g in trials {
            let f = g.abs_sq();
            if f.degree() + t.sum_band() > t.radius() {
                return Err(Error::WindowTooSmall {
                    needed: f.degree() + t.sum_band(),
                    available: t.radius(),
                });
            }
            let out = self.apply_poly(&f)?;
            report.trials += 1;
            for v in out.sample(grid) {
                report.min_value = report.min_value.min(v.re);
                report.max_imag = report.max_imag.max(v.im.abs());
            }
        }
        Ok(report)
    }

    /// `‖𝒲1 − 1‖₁`.
    pub fn check_unit(&self) -> CheckOutcome {
        if !self.unitary_source {
            return CheckOutcome::Skipped;
        }
        match &self.coefficients {
            Coefficients::Finite(o) => {
                let n = o.size();
                let mut one = vec![ZERO; n];
                one[0] = Complex64::new(1.0, 0.0);
                let out = dft(&self.apply_coefficients(&one).expect("finite mode"));
                let r = out.iter().map(|v| (v - 1.0).norm()).sum::<f64>() / n as f64;
                CheckOutcome::Residual(r)
            }
            Coefficients::Torus(_) => {
                let one = FourierPolynomial::constant(Complex64::new(1.0, 0.0));
                let out = self.apply_poly(&one).expect("torus mode");
                let diff = out.add(&one.scale(Complex64::new(-1.0, 0.0)));
                // ‖h‖₁ ≤ ‖h‖_DT for a trigonometric polynomial
                CheckOutcome::Residual(diff.dt_norm())
            }
        }
    }

    /// `|(𝒲f)_0 − f_0|` for a finite coefficient vector.
    pub fn check_mass(&self, f: &[Complex64]) -> Result<CheckOutcome> {
        if !self.unitary_source {
            return Ok(CheckOutcome::Skipped);
        }
        let out = self.apply_coefficients(f)?;
        Ok(CheckOutcome::Residual((out[0] - f[0]).norm()))
    }

    /// `|(𝒲f)_0 − f_0|` for a trigonometric polynomial.
    pub fn check_mass_poly(&self, f: &FourierPolynomial) -> Result<CheckOutcome> {
        if !self.unitary_source {
            return Ok(CheckOutcome::Skipped);
        }
        let out = self.apply_poly(f)?;
        Ok(CheckOutcome::Residual((out.coeff(0) - f.coeff(0)).norm()))
    }

    /// Induced `L¹` norm (finite mode) or the marginal bound (torus mode)
    /// against `‖W‖²_DT`. `grid` is only used in torus mode.
    pub fn l1_bound(&self, grid: usize) -> L1Bound {
        match &self.coefficients {
            Coefficients::Finite(o) => {
                let n = o.size();
                let nu = o.nu_matrix();
                let induced = (0..n)
                    .map(|a| (0..n).map(|x| nu[x * n + a].norm()).sum::<f64>() / n as f64)
                    .fold(0.0, f64::max);
                L1Bound {
                    induced,
                    marginal_dt: None,
                    bound: self.dt_bound,
                    slack: self.dt_bound - induced,
                }
            }
            Coefficients::Torus(t) => {
                let (phi, _) = marginals(t);
                let grid = grid.max(1);
                let induced = (0..grid)
                    .map(|i| phi.eval(TAU * i as f64 / grid as f64).re)
                    .fold(f64::NEG_INFINITY, f64::max);
                let dt = phi.dt_norm();
                L1Bound {
                    induced,
                    marginal_dt: Some(dt),
                    bound: self.dt_bound,
                    slack: self.dt_bound - induced.max(dt),
                }
            }
        }
    }
}

/// How `𝒲` built from `U_F` acts, compared with both compositions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationReport {
    /// `max |𝒲f − f∘F|` over point indicators `f`.
    pub forward_residual: f64,
    /// `max |𝒲f − f∘F⁻¹|` over point indicators `f`.
    pub inverse_residual: f64,
}

impl OrientationReport {
    pub fn forward_matches(&self, tol: f64) -> bool {
        self.forward_residual <= tol
    }

    pub fn inverse_matches(&self, tol: f64) -> bool {
        self.inverse_residual <= tol
    }
}

/// Applies `𝒲` of `U_F` to every point indicator and compares with `f∘F`
/// and `f∘F⁻¹`.
pub fn koopman_case_compare(f: &Permutation) -> OrientationReport {
    let kernel = build_finite(&koopman(f));
    let inv = f.inverse();
    let n = f.size();
    let mut forward: f64 = 0.0;
    let mut inverse: f64 = 0.0;
    for p in 0..n {
        let ind = |x: usize| Complex64::new(if x == p { 1.0 } else { 0.0 }, 0.0);
        let values: Vec<Complex64> = (0..n).map(ind).collect();
        let out = kernel.apply_values(&values).expect("finite mode");
        for (x, v) in out.iter().enumerate() {
            forward = forward.max((v - ind(f.apply(x))).norm());
            inverse = inverse.max((v - ind(inv.apply(x))).norm());
        }
    }
    OrientationReport {
        forward_residual: forward,
        inverse_residual: inverse,
    }
}
