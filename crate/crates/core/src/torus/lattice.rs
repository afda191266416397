//! Banded operators on `ℓ²(ℤ)`, i.e. diagonal-type operators on the circle
//! written in the Fourier basis `e^{ikx}`.
//!
//! Entries are produced on demand from the kind of the operator, so any
//! window of rows can be materialised exactly. [`BandRows`] holds such a
//! window and is what the windowed sums iterate over.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{cis, cis_product, lcm};
use crate::torus::fourier::FourierPolynomial;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const UNIT_MODULUS_TOL: f64 = 1e-14;

/// Diagonal `λ_k` of a convolution operator.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    /// `λ_k = c` for every `k`.
    Constant(Complex64),
    /// `λ_k = e^{ikα}`.
    Rotation { alpha: f64 },
    /// `λ_k = e^{iτk²}`.
    QuadraticPhase { tau: f64 },
    /// `λ_k = values[k - offset]` inside the table, zero outside.
    Table { offset: i64, values: Vec<Complex64> },
}

impl Symbol {
    pub fn at(&self, k: i64) -> Complex64 {
        match self {
            Symbol::Constant(c) => *c,
            Symbol::Rotation { alpha } => cis_product(*alpha, k as f64),
            Symbol::QuadraticPhase { tau } => cis_product(*tau, k as f64 * k as f64),
            Symbol::Table { offset, values } => {
                let i = k - offset;
                if i < 0 || i >= values.len() as i64 {
                    ZERO
                } else {
                    values[i as usize]
                }
            }
        }
    }

    /// `sup_k |λ_k|`, which is also the operator norm.
    pub fn sup_abs(&self) -> f64 {
        match self {
            Symbol::Constant(c) => c.norm(),
            Symbol::Rotation { .. } | Symbol::QuadraticPhase { .. } => 1.0,
            Symbol::Table { values, .. } => values.iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        match self {
            Symbol::Constant(c) => (c.norm() - 1.0).abs() <= UNIT_MODULUS_TOL,
            Symbol::Rotation { .. } | Symbol::QuadraticPhase { .. } => true,
            Symbol::Table { .. } => false,
        }
    }
}

/// `ρ_I(λ) = (1/#I) Σ_{k∈I} |λ_k|²`.
pub fn rho_interval(symbol: &Symbol, interval: &IntegerInterval) -> f64 {
    interval
        .iter()
        .map(|k| symbol.at(k).norm_sqr())
        .sum::<f64>()
        / interval.len() as f64
}

/// A finite integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegerInterval {
    lo: i64,
    hi: i64,
}

impl IntegerInterval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter("interval needs lo <= hi"));
        }
        Ok(Self { lo, hi })
    }

    /// `[start, start + len - 1]`.
    pub fn with_len(start: i64, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParameter("interval must be nonempty"));
        }
        Ok(Self {
            lo: start,
            hi: start + len as i64 - 1,
        })
    }

    /// `[-r, r]`.
    pub fn centered(radius: usize) -> Self {
        Self {
            lo: -(radius as i64),
            hi: radius as i64,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: i64) -> bool {
        self.lo <= k && k <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// Matrix rows `W_{l,k}` for `l` in a window, with `|l − k| ≤ band`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandRows {
    first: i64,
    count: usize,
    band: usize,
    data: Vec<Complex64>,
}

impl BandRows {
    fn zeros(first: i64, count: usize, band: usize) -> Self {
        Self {
            first,
            count,
            band,
            data: vec![ZERO; count * (2 * band + 1)],
        }
    }

    pub fn first_row(&self) -> i64 {
        self.first
    }

    pub fn last_row(&self) -> i64 {
        self.first + self.count as i64 - 1
    }

    pub fn band(&self) -> usize {
        self.band
    }

    fn slot(&self, r: i64, c: i64) -> Option<usize> {
        let b = self.band as i64;
        let d = c - r;
        if d < -b || d > b {
            return None;
        }
        assert!(
            r >= self.first && r <= self.last_row(),
            "row {r} outside materialised window"
        );
        Some((r - self.first) as usize * (2 * self.band + 1) + (d + b) as usize)
    }

    /// `W_{r,c}`; zero outside the band. Panics if row `r` is not stored.
    #[inline]
    pub fn get(&self, r: i64, c: i64) -> Complex64 {
        match self.slot(r, c) {
            Some(i) => self.data[i],
            None => ZERO,
        }
    }

    fn set(&mut self, r: i64, c: i64, v: Complex64) {
        let i = self.slot(r, c).expect("entry outside band");
        self.data[i] = v;
    }

    fn add_to(&mut self, r: i64, c: i64, v: Complex64) {
        let i = self.slot(r, c).expect("entry outside band");
        self.data[i] += v;
    }
}

/// One period of a `τ`-periodic banded matrix, `W_{j+τ,k+τ} = W_{j,k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicBlock {
    period: usize,
    band: usize,
    /// `rows[r * (2B+1) + d] = W_{r, r + d − B}` for `0 ≤ r < τ`.
    rows: Vec<Complex64>,
}

impl PeriodicBlock {
    pub fn new(period: usize, band: usize, rows: Vec<Complex64>) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidParameter("period must be at least 1"));
        }
        let expected = period * (2 * band + 1);
        if rows.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: rows.len(),
            });
        }
        if rows.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { period, band, rows })
    }

    /// Block with `W_{r, r+s} = f(r, s)` for `0 ≤ r < τ`, `|s| ≤ B`.
    pub fn from_fn(
        period: usize,
        band: usize,
        mut f: impl FnMut(usize, i64) -> Complex64,
    ) -> Result<Self> {
        let b = band as i64;
        let rows = (0..period)
            .flat_map(|r| (-b..=b).map(move |s| (r, s)))
            .map(|(r, s)| f(r, s))
            .collect();
        Self::new(period, band, rows)
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn band(&self) -> usize {
        self.band
    }

    /// `W_{j,k}` for any integers.
    pub fn entry(&self, j: i64, k: i64) -> Complex64 {
        let b = self.band as i64;
        let d = k - j;
        if d < -b || d > b {
            return ZERO;
        }
        let r = j.rem_euclid(self.period as i64) as usize;
        self.rows[r * (2 * self.band + 1) + (d + b) as usize]
    }
}

/// Coarse classification of a lattice operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Convolution,
    Multiplication,
    Periodic,
    Composite,
}

/// A banded operator on `ℓ²(ℤ)` given by an exact entry rule.
#[derive(Debug, Clone, PartialEq)]
pub enum LatticeOperator {
    /// `W_{k,k} = λ_k`.
    Convolution(Symbol),
    /// `W_{j,k} = g_{j−k}`.
    Multiplication(FourierPolynomial),
    Periodic(PeriodicBlock),
    Sum(Box<LatticeOperator>, Box<LatticeOperator>),
    /// `Product(a, b) = a · b`.
    Product(Box<LatticeOperator>, Box<LatticeOperator>),
    Scale(Complex64, Box<LatticeOperator>),
    Adjoint(Box<LatticeOperator>),
}

/// Majorating sequence `c_s ≥ sup_j |W_{j+s,j}|` for `|s| ≤ B`.
#[derive(Debug, Clone, PartialEq)]
pub struct Majorant {
    band: usize,
    values: Vec<f64>,
    exact: bool,
}

impl Majorant {
    fn zeros(band: usize, exact: bool) -> Self {
        Self {
            band,
            values: vec![0.0; 2 * band + 1],
            exact,
        }
    }

    pub fn band(&self) -> usize {
        self.band
    }

    /// `c_s`; zero outside the band.
    pub fn get(&self, s: i64) -> f64 {
        let b = self.band as i64;
        if s < -b || s > b {
            0.0
        } else {
            self.values[(s + b) as usize]
        }
    }

    fn set(&mut self, s: i64, v: f64) {
        let b = self.band as i64;
        self.values[(s + b) as usize] = v;
    }

    /// True when `c_s` is the supremum itself rather than an upper bound.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// `Σ_s c_s`.
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `Σ_{|s| ≥ from} c_s`.
    pub fn tail(&self, from: usize) -> f64 {
        let b = self.band as i64;
        (-b..=b)
            .filter(|s| s.unsigned_abs() as usize >= from)
            .map(|s| self.get(s))
            .sum()
    }
}

/// `W_{k,k} = λ_k`.
pub fn convolution_operator(symbol: Symbol) -> LatticeOperator {
    LatticeOperator::Convolution(symbol)
}

/// `ĝ`, with `W_{j,k} = g_{j−k}`.
pub fn multiplication_operator_torus(g: FourierPolynomial) -> LatticeOperator {
    LatticeOperator::Multiplication(g)
}

/// `a · b`.
pub fn compose(a: LatticeOperator, b: LatticeOperator) -> LatticeOperator {
    LatticeOperator::Product(Box::new(a), Box::new(b))
}

pub fn add(a: LatticeOperator, b: LatticeOperator) -> LatticeOperator {
    LatticeOperator::Sum(Box::new(a), Box::new(b))
}

pub fn scale(c: Complex64, a: LatticeOperator) -> LatticeOperator {
    LatticeOperator::Scale(c, Box::new(a))
}

pub fn adjoint(a: LatticeOperator) -> LatticeOperator {
    LatticeOperator::Adjoint(Box::new(a))
}

/// `‖W‖_DT = Σ_s c_s`.
pub fn dt_norm(w: &LatticeOperator) -> f64 {
    w.majorant().total()
}

impl LatticeOperator {
    pub fn identity() -> Self {
        Self::Convolution(Symbol::Constant(Complex64::new(1.0, 0.0)))
    }

    pub fn kind(&self) -> OperatorKind {
        match self {
            Self::Convolution(_) => OperatorKind::Convolution,
            Self::Multiplication(_) => OperatorKind::Multiplication,
            Self::Periodic(_) => OperatorKind::Periodic,
            _ => OperatorKind::Composite,
        }
    }

    /// Entries vanish for `|j − k| > band()`.
    pub fn band(&self) -> usize {
        match self {
            Self::Convolution(_) => 0,
            Self::Multiplication(g) => g.degree(),
            Self::Periodic(p) => p.band(),
            Self::Sum(a, b) => a.band().max(b.band()),
            Self::Product(a, b) => a.band() + b.band(),
            Self::Scale(_, a) | Self::Adjoint(a) => a.band(),
        }
    }

    /// A period `τ` with `W_{j+τ,k+τ} = W_{j,k}`, when one is known.
    pub fn period(&self) -> Option<usize> {
        match self {
            Self::Convolution(Symbol::Constant(_)) => Some(1),
            Self::Convolution(_) => None,
            Self::Multiplication(_) => Some(1),
            Self::Periodic(p) => Some(p.period()),
            Self::Sum(a, b) | Self::Product(a, b) => Some(lcm(a.period()?, b.period()?)),
            Self::Scale(_, a) | Self::Adjoint(a) => a.period(),
        }
    }

    /// `W_{j,k}`.
    pub fn entry(&self, j: i64, k: i64) -> Complex64 {
        match self {
            Self::Convolution(s) => {
                if j == k {
                    s.at(j)
                } else {
                    ZERO
                }
            }
            Self::Multiplication(g) => g.coeff(j - k),
            Self::Periodic(p) => p.entry(j, k),
            Self::Sum(a, b) => a.entry(j, k) + b.entry(j, k),
            Self::Scale(c, a) => c * a.entry(j, k),
            Self::Adjoint(a) => a.entry(k, j).conj(),
            Self::Product(a, b) => {
                let ba = a.band() as i64;
                let bb = b.band() as i64;
                let lo = (j - ba).max(k - bb);
                let hi = (j + ba).min(k + bb);
                (lo..=hi).map(|t| a.entry(j, t) * b.entry(t, k)).sum()
            }
        }
    }

    /// Rows `lo..=hi`, with every entry of the band.
    pub fn rows(&self, lo: i64, hi: i64) -> BandRows {
        assert!(lo <= hi, "empty row window");
        let count = (hi - lo + 1) as usize;
        let band = self.band();
        let bi = band as i64;
        match self {
            Self::Convolution(s) => {
                let mut out = BandRows::zeros(lo, count, 0);
                for r in lo..=hi {
                    out.set(r, r, s.at(r));
                }
                out
            }
            Self::Multiplication(g) => {
                let mut out = BandRows::zeros(lo, count, band);
                for r in lo..=hi {
                    for d in -bi..=bi {
                        out.set(r, r + d, g.coeff(-d));
                    }
                }
                out
            }
            Self::Periodic(p) => {
                let mut out = BandRows::zeros(lo, count, band);
                for r in lo..=hi {
                    for d in -bi..=bi {
                        out.set(r, r + d, p.entry(r, r + d));
                    }
                }
                out
            }
            Self::Sum(a, b) => {
                let ra = a.rows(lo, hi);
                let rb = b.rows(lo, hi);
                let mut out = BandRows::zeros(lo, count, band);
                for r in lo..=hi {
                    for d in -bi..=bi {
                        out.set(r, r + d, ra.get(r, r + d) + rb.get(r, r + d));
                    }
                }
                out
            }
            Self::Scale(c, a) => {
                let mut out = a.rows(lo, hi);
                out.data.iter_mut().for_each(|z| *z *= c);
                out
            }
            Self::Adjoint(a) => {
                let ra = a.rows(lo - bi, hi + bi);
                let mut out = BandRows::zeros(lo, count, band);
                for r in lo..=hi {
                    for d in -bi..=bi {
                        out.set(r, r + d, ra.get(r + d, r).conj());
                    }
                }
                out
            }
            Self::Product(a, b) => {
                let ba = a.band() as i64;
                let bb = b.band() as i64;
                let ra = a.rows(lo, hi);
                let rb = b.rows(lo - ba, hi + ba);
                let mut out = BandRows::zeros(lo, count, band);
                for r in lo..=hi {
                    for t in r - ba..=r + ba {
                        let x = ra.get(r, t);
                        if x == ZERO {
                            continue;
                        }
                        for c in t - bb..=t + bb {
                            out.add_to(r, c, x * rb.get(t, c));
                        }
                    }
                }
                out
            }
        }
    }

    /// Majorating sequence. Exact for convolutions, multiplications and
    /// anything with a known period (the supremum is taken over one period);
    /// otherwise the convolution bound `c_s ≤ Σ_t c'_t c''_{s−t}` or the sum
    /// `c'_s + c''_s`.
    pub fn majorant(&self) -> Majorant {
        if let Some(p) = self.period() {
            if !matches!(self, Self::Multiplication(_)) {
                return self.periodic_majorant(p);
            }
        }
        match self {
            Self::Convolution(s) => {
                let mut m = Majorant::zeros(0, true);
                m.set(0, s.sup_abs());
                m
            }
            Self::Multiplication(g) => {
                let band = g.degree();
                let mut m = Majorant::zeros(band, true);
                let b = band as i64;
                for s in -b..=b {
                    m.set(s, g.coeff(s).norm());
                }
                m
            }
            Self::Periodic(p) => self.periodic_majorant(p.period()),
            Self::Scale(c, a) => {
                let inner = a.majorant();
                Majorant {
                    band: inner.band,
                    values: inner.values.iter().map(|v| v * c.norm()).collect(),
                    exact: inner.exact,
                }
            }
            Self::Adjoint(a) => {
                let inner = a.majorant();
                Majorant {
                    band: inner.band,
                    values: inner.values.iter().rev().copied().collect(),
                    exact: inner.exact,
                }
            }
            Self::Sum(a, b) => {
                let ma = a.majorant();
                let mb = b.majorant();
                let band = self.band();
                let mut m = Majorant::zeros(band, false);
                let bi = band as i64;
                for s in -bi..=bi {
                    m.set(s, ma.get(s) + mb.get(s));
                }
                m
            }
            Self::Product(a, b) => {
                // a unit-modulus diagonal factor leaves every |entry| unchanged
                if let Self::Convolution(s) = a.as_ref() {
                    if s.is_unimodular() {
                        return b.majorant();
                    }
                }
                if let Self::Convolution(s) = b.as_ref() {
                    if s.is_unimodular() {
                        return a.majorant();
                    }
                }
                let ma = a.majorant();
                let mb = b.majorant();
                let band = self.band();
                let mut m = Majorant::zeros(band, false);
                let (ba, bb) = (ma.band as i64, mb.band as i64);
                for t in -ba..=ba {
                    for u in -bb..=bb {
                        let v = m.get(t + u) + ma.get(t) * mb.get(u);
                        m.set(t + u, v);
                    }
                }
                m
            }
        }
    }

    fn periodic_majorant(&self, period: usize) -> Majorant {
        let band = self.band();
        let b = band as i64;
        let rows = self.rows(-b, period as i64 - 1 + b);
        let mut m = Majorant::zeros(band, true);
        for s in -b..=b {
            let sup = (0..period as i64)
                .map(|r| rows.get(r + s, r).norm())
                .fold(0.0, f64::max);
            m.set(s, sup);
        }
        m
    }

    /// True when the operator is known to be unitary: unit-modulus
    /// convolutions, multiplication by a unimodular polynomial, and products,
    /// adjoints and unit-modulus multiples of these.
    pub fn is_unitary(&self) -> bool {
        match self {
            Self::Convolution(s) => s.is_unimodular(),
            Self::Multiplication(g) => {
                let h = g.abs_sq();
                h.terms().all(|(k, c)| {
                    let target = if k == 0 { 1.0 } else { 0.0 };
                    (c - Complex64::new(target, 0.0)).norm() <= UNIT_MODULUS_TOL
                }) && !h.is_zero()
            }
            Self::Periodic(_) | Self::Sum(..) => false,
            Self::Product(a, b) => a.is_unitary() && b.is_unitary(),
            Self::Scale(c, a) => (c.norm() - 1.0).abs() <= UNIT_MODULUS_TOL && a.is_unitary(),
            Self::Adjoint(a) => a.is_unitary(),
        }
    }

    pub fn compose(self, rhs: Self) -> Self {
        compose(self, rhs)
    }

    pub fn plus(self, rhs: Self) -> Self {
        add(self, rhs)
    }

    pub fn scaled(self, c: Complex64) -> Self {
        scale(c, self)
    }

    pub fn adjoint(self) -> Self {
        adjoint(self)
    }

    pub fn dt_norm(&self) -> f64 {
        dt_norm(self)
    }
}

/// `w_l(a) = Σ_k W_{l,k} e^{i(l−k)a}`.
pub fn w_symbol(w: &LatticeOperator, l: i64, a: f64) -> Complex64 {
    let rows = w.rows(l, l);
    symbol_from_rows(&rows, l, a)
}

pub(crate) fn symbol_from_rows(rows: &BandRows, l: i64, a: f64) -> Complex64 {
    let b = rows.band() as i64;
    (-b..=b)
        .map(|d| rows.get(l, l - d) * cis(d as f64 * a))
        .sum()
}

/// `v_{I,m}(a) = (1/#I) Σ_{l∈I} w_{l+m}(a) conj(w_l(a))`.
pub fn v_window(w: &LatticeOperator, interval: &IntegerInterval, m: i64, a: f64) -> Complex64 {
    let lo = interval.lo().min(interval.lo() + m);
    let hi = interval.hi().max(interval.hi() + m);
    let rows = w.rows(lo, hi);
    interval
        .iter()
        .map(|l| symbol_from_rows(&rows, l + m, a) * symbol_from_rows(&rows, l, a).conj())
        .sum::<Complex64>()
        / interval.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_periodic() -> LatticeOperator {
        LatticeOperator::Periodic(
            PeriodicBlock::from_fn(3, 1, |r, s| c(r as f64 + 1.0, s as f64 * 0.5)).unwrap(),
        )
    }

    #[test]
    fn identity_has_unit_dt_norm() {
        assert_eq!(dt_norm(&LatticeOperator::identity()), 1.0);
    }

    #[test]
    fn multiplication_by_exponential_is_a_shift() {
        let w = multiplication_operator_torus(FourierPolynomial::monomial(1, c(1.0, 0.0)));
        assert_eq!(w.entry(5, 4), c(1.0, 0.0));
        assert_eq!(w.entry(4, 5), ZERO);
        assert_eq!(w.entry(4, 4), ZERO);
    }

    #[test]
    fn multiplication_then_convolution_entries() {
        let g = FourierPolynomial::new(-1, vec![c(1.0, 0.0), c(2.0, 0.0), c(0.0, 1.0)]);
        let sym = Symbol::Rotation { alpha: 0.3 };
        let w = compose(
            multiplication_operator_torus(g.clone()),
            convolution_operator(sym.clone()),
        );
        for j in -3..=3 {
            for k in -3..=3 {
                let expect = g.coeff(j - k) * sym.at(k);
                assert!((w.entry(j, k) - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn rows_agree_with_entries_for_composites() {
        let p = sample_periodic();
        let g = multiplication_operator_torus(FourierPolynomial::new(
            0,
            vec![c(1.0, 0.0), c(0.5, -0.5)],
        ));
        let w = adjoint(compose(p.clone(), g.clone())).plus(scale(c(0.0, 2.0), p));
        let rows = w.rows(-4, 6);
        for r in -4..=6 {
            for col in r - 3..=r + 3 {
                assert!((rows.get(r, col) - w.entry(r, col)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sum_with_negation_vanishes() {
        let p = sample_periodic();
        let z = add(p.clone(), scale(c(-1.0, 0.0), p));
        let rows = z.rows(-5, 5);
        assert!(rows.data.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn periodic_majorant_is_sup_over_a_period() {
        let p = sample_periodic();
        let m = p.majorant();
        assert!(m.is_exact());
        for s in -1..=1i64 {
            let sup = (0..3).map(|j| p.entry(j + s, j).norm()).fold(0.0, f64::max);
            assert_eq!(m.get(s), sup);
        }
    }

    #[test]
    fn rho_of_half_line() {
        let sym = Symbol::Table {
            offset: 0,
            values: vec![c(1.0, 0.0); 100],
        };
        let n = 10;
        let rho = rho_interval(&sym, &IntegerInterval::centered(n));
        assert!((rho - (n as f64 + 1.0) / (2.0 * n as f64 + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn symbol_of_multiplication_is_the_function() {
        let g = FourierPolynomial::new(-1, vec![c(1.0, 1.0), c(0.5, 0.0), c(0.0, -2.0)]);
        let w = multiplication_operator_torus(g.clone());
        for l in [-7, 0, 12] {
            assert!((w_symbol(&w, l, 0.9) - g.eval(0.9)).norm() < 1e-14);
        }
    }

    #[test]
    fn rotation_v_window_telescopes() {
        let alpha = 0.77;
        let w = convolution_operator(Symbol::Rotation { alpha });
        let v = v_window(&w, &IntegerInterval::with_len(-13, 40).unwrap(), 3, 1.1);
        assert!((v - cis(3.0 * alpha)).norm() < 1e-13);
    }
}
