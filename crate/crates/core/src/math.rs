//! Scalar helpers on top of `libm`.

use num_complex::Complex64;

pub const TAU: f64 = core::f64::consts::TAU;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

/// `e^{i a b}` with the product and the reduction mod `2π` carried in
/// double-double, so large `a b` keeps an absolute phase error near `1e-16`.
pub fn cis_product(a: f64, b: f64) -> Complex64 {
    let p = a * b;
    let e = libm::fma(a, b, -p);
    let n = libm::round(p / TAU);
    let q = n * TAU;
    let qe = libm::fma(n, TAU, -q);
    cis(((p - q) - qe) + (e - n * TWO_PI_LO))
}

/// `-p ln p`, with the convention `0 ln 0 = 0`.
#[inline]
pub fn entropy_term(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        // a difference rather than a negation, so p = 1 gives +0
        0.0 - p * libm::log(p)
    }
}

/// The `J`-th roots of unity `η^e = e^{2πie/J}`, tabulated so that every
/// power is computed from a reduced exponent.
#[derive(Debug, Clone)]
pub struct RootsOfUnity {
    table: alloc::vec::Vec<Complex64>,
}

impl RootsOfUnity {
    pub fn new(size: usize) -> Self {
        let n = size.max(1);
        let table = (0..n).map(|e| cis(TAU * e as f64 / n as f64)).collect();
        Self { table }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn pow(&self, e: i64) -> Complex64 {
        self.table[e.rem_euclid(self.table.len() as i64) as usize]
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Shortest distance between two points of the circle `ℝ/2πℤ`.
pub fn circle_distance(x: f64, y: f64) -> f64 {
    let d = wrap_angle(x - y);
    d.min(TAU - d)
}

/// Reduces an angle to `[0, 2π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x - TAU * floor(x / TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}
