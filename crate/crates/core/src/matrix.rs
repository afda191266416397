//! Small dense complex matrices.
//!
//! Only what the finite-space code needs: products, adjoints, norms and
//! singular values. Singular values come from one-sided Jacobi rotations,
//! which stay accurate for the tiny (`J ≤ 64`) matrices used here.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::sqrt;

const JACOBI_SWEEPS: usize = 80;
const JACOBI_EPS: f64 = 1e-15;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn all_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// True when every entry is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// The submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])])
    }

    /// `‖A*A − I‖_max ≤ tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square()
            && self
                .adjoint()
                .matmul(self)
                .max_abs_diff(&Self::identity(self.rows))
                <= tol
    }

    /// Singular values in decreasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.rows < self.cols {
            return self.adjoint().singular_values();
        }
        let m = self.rows;
        let n = self.cols;
        // column-major working copy: a[j * m + i] = A[i][j]
        let mut a: Vec<Complex64> = (0..n)
            .flat_map(|j| (0..m).map(move |i| (i, j)))
            .map(|(i, j)| self[(i, j)])
            .collect();
        for _ in 0..JACOBI_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let (head, tail) = a.split_at_mut(q * m);
                    let cp = &mut head[p * m..(p + 1) * m];
                    let cq = &mut tail[..m];
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = Complex64::new(0.0, 0.0);
                    for (x, y) in cp.iter().zip(cq.iter()) {
                        alpha += x.norm_sqr();
                        beta += y.norm_sqr();
                        gamma += x.conj() * y;
                    }
                    let g = gamma.norm();
                    if g == 0.0 || g <= JACOBI_EPS * sqrt(alpha * beta) {
                        continue;
                    }
                    rotated = true;
                    // rotate the phase of column q away, then a real rotation
                    let phase = (gamma / g).conj();
                    let zeta = (beta - alpha) / (2.0 * g);
                    let t = if zeta >= 0.0 {
                        1.0 / (zeta + sqrt(1.0 + zeta * zeta))
                    } else {
                        -1.0 / (-zeta + sqrt(1.0 + zeta * zeta))
                    };
                    let c = 1.0 / sqrt(1.0 + t * t);
                    let s = c * t;
                    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                        let xp = *x;
                        let yq = *y * phase;
                        *x = xp * c - yq * s;
                        *y = xp * s + yq * c;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<f64> = a
            .chunks(m.max(1))
            .take(n)
            .map(|col| sqrt(col.iter().map(|z| z.norm_sqr()).sum()))
            .collect();
        sv.sort_by(|x, y| y.total_cmp(x));
        sv
    }

    /// Largest singular value; zero for an empty matrix.
    pub fn spectral_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        self.singular_values().first().copied().unwrap_or(0.0)
    }

    /// Orthonormalises the columns with modified Gram–Schmidt, run twice.
    /// Columns that collapse to zero are left as zero.
    pub fn orthonormalize_columns(&self) -> Self {
        let m = self.rows;
        let mut cols: Vec<Vec<Complex64>> = (0..self.cols)
            .map(|j| (0..m).map(|i| self[(i, j)]).collect())
            .collect();
        for j in 0..cols.len() {
            for _ in 0..2 {
                for k in 0..j {
                    let r: Complex64 = cols[k]
                        .iter()
                        .zip(&cols[j])
                        .map(|(q, v)| q.conj() * v)
                        .sum();
                    let (done, rest) = cols.split_at_mut(j);
                    for (v, q) in rest[0].iter_mut().zip(&done[k]) {
                        *v -= r * q;
                    }
                }
            }
            let norm = sqrt(cols[j].iter().map(|z| z.norm_sqr()).sum());
            if norm > 0.0 {
                for v in cols[j].iter_mut() {
                    *v /= norm;
                }
            }
        }
        Self::from_fn(m, self.cols, |i, j| cols[j][i])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_singular_values_are_moduli() {
        let m = CMatrix::diagonal(&[c(3.0, 4.0), c(0.0, -1.0), c(0.5, 0.0)]);
        let sv = m.singular_values();
        assert!((sv[0] - 5.0).abs() < 1e-14);
        assert!((sv[1] - 1.0).abs() < 1e-14);
        assert!((sv[2] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn rank_one_has_single_singular_value() {
        let u = [c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0)];
        let v = [c(0.5, 0.0), c(0.0, 2.0)];
        let m = CMatrix::from_fn(3, 2, |i, j| u[i] * v[j].conj());
        let sv = m.singular_values();
        let nu: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((sv[0] - nu * nv).abs() < 1e-13);
        assert!(sv[1].abs() < 1e-13);
    }

    #[test]
    fn wide_matrix_uses_adjoint() {
        let m = CMatrix::from_fn(2, 3, |i, j| c((i + j) as f64, (i * j) as f64));
        assert_eq!(m.singular_values().len(), 2);
        let s1 = m.singular_values();
        let s2 = m.adjoint().singular_values();
        assert!((s1[0] - s2[0]).abs() < 1e-13);
    }

    #[test]
    fn orthonormalized_gaussian_like_matrix_is_unitary() {
        let m = CMatrix::from_fn(5, 5, |i, j| {
            c(
                ((i * 7 + j * 3) % 5) as f64 - 2.0,
                ((i + 2 * j) % 3) as f64 + 0.25,
            )
        });
        assert!(m.orthonormalize_columns().is_unitary(1e-12));
    }
}
