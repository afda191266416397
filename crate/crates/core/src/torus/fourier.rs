//! Trigonometric polynomials `g(x) = Σ_k g_k e^{ikx}`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::math::{cis, TAU};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A trigonometric polynomial with coefficients `g_k` for `k` in a contiguous
/// range. Leading and trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPolynomial {
    offset: i64,
    coeffs: Vec<Complex64>,
}

impl FourierPolynomial {
    /// `coeffs[i]` is the coefficient of `e^{i(offset+i)x}`.
    pub fn new(offset: i64, coeffs: Vec<Complex64>) -> Self {
        let mut p = Self { offset, coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self {
            offset: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(k: i64, c: Complex64) -> Self {
        Self::new(k, vec![c])
    }

    /// Sums the given `(k, g_k)` terms; repeated frequencies add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let terms: Vec<(i64, Complex64)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![ZERO; (hi - lo + 1) as usize];
        for (k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::new(lo, coeffs)
    }

    fn trim(&mut self) {
        let is_zero = |z: &Complex64| z.re == 0.0 && z.im == 0.0;
        while self.coeffs.last().is_some_and(is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|z| is_zero(z)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        let i = k - self.offset;
        if i < 0 || i >= self.coeffs.len() as i64 {
            ZERO
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Lowest and highest frequency with a nonzero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some((self.offset, self.offset + self.coeffs.len() as i64 - 1))
        }
    }

    /// `max |k|` over the support; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.support()
            .map(|(lo, hi)| lo.unsigned_abs().max(hi.unsigned_abs()) as usize)
            .unwrap_or(0)
    }

    /// `(k, g_k)` over the stored range, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.offset + i as i64, c))
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms().map(|(k, c)| c * cis(k as f64 * x)).sum()
    }

    /// Values on the grid `x_i = 2πi/N`.
    pub fn sample(&self, points: usize) -> Vec<Complex64> {
        (0..points)
            .map(|i| self.eval(TAU * i as f64 / points as f64))
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(self.offset + rhs.offset, coeffs)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(self.terms().chain(rhs.terms()))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.offset, self.coeffs.iter().map(|z| z * c).collect())
    }

    /// The polynomial whose values are `conj(g(x))`: coefficients `conj(g_{-k})`.
    pub fn conj(&self) -> Self {
        let Some((_, hi)) = self.support() else {
            return Self::zero();
        };
        Self::new(-hi, self.coeffs.iter().rev().map(|z| z.conj()).collect())
    }

    /// Coefficients of `|g|²`: `ḡ_q = Σ_p g_p conj(g_{p-q})`.
    pub fn abs_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    /// `Σ_k |g_k|`, the norm of the multiplication operator in the
    /// diagonal-type class.
    pub fn dt_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, z| acc + z.norm())
    }

    /// `Σ_k |g_k|² = (1/2π) ∫ |g|²`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, z| acc + z.norm_sqr())
    }
}
