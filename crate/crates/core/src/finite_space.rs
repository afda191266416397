//! Uniform finite spaces `ℤ_J`, subsets, set partitions and the μ-norm of
//! operators on `L²(ℤ_J)`.
//!
//! Functions on `ℤ_J` are stored either by their values `f(k)` or by their
//! Fourier coefficients `f_j`, linked by `f(k) = Σ_j f_j η^{kj}` with
//! `η = e^{2πi/J}`. Operators remember which of the two bases their matrix
//! is written in.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{sqrt, RootsOfUnity};
use crate::matrix::CMatrix;

/// Largest space for which the partition infimum is enumerated by default.
pub const DEFAULT_PARTITION_GUARD: usize = 10;

/// Hard ceiling for subset bitmasks.
const MAX_MASK_BITS: usize = 20;

/// The space `ℤ_J` with uniform measure `1/J` per point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteSpace {
    size: usize,
}

impl FiniteSpace {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySpace);
        }
        Ok(Self { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn point_mass(&self) -> f64 {
        1.0 / self.size as f64
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.size)
    }

    pub fn singletons(&self) -> Partition {
        Partition::singletons(self.size)
    }

    pub fn trivial_partition(&self) -> Partition {
        Partition::trivial(self.size)
    }
}

/// A subset of `ℤ_J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    members: Vec<bool>,
}

impl SubsetMask {
    pub fn new(size: usize, points: &[usize]) -> Result<Self> {
        let mut members = vec![false; size];
        for &p in points {
            if p >= size {
                return Err(Error::PointOutOfRange { index: p, size });
            }
            members[p] = true;
        }
        Ok(Self { members })
    }

    pub fn empty(size: usize) -> Self {
        Self {
            members: vec![false; size],
        }
    }

    pub fn full(size: usize) -> Self {
        Self {
            members: vec![true; size],
        }
    }

    pub fn from_predicate(size: usize, f: impl FnMut(usize) -> bool) -> Self {
        Self {
            members: (0..size).map(f).collect(),
        }
    }

    /// Subset whose members are the set bits of `bits`.
    pub fn from_bits(size: usize, bits: u64) -> Self {
        Self::from_predicate(size, |x| x < 64 && bits >> x & 1 == 1)
    }

    /// Bitmask of the members; only meaningful for spaces of at most 64 points.
    pub fn bits(&self) -> u64 {
        self.points()
            .filter(|&x| x < 64)
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Size of the ambient space.
    pub fn space_size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.get(x).copied().unwrap_or(false)
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    /// `μ(X) = |X| / J`.
    pub fn measure(&self) -> f64 {
        self.count() as f64 / self.members.len() as f64
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            members: self.members.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self
            .members
            .iter()
            .zip(&other.members)
            .any(|(a, b)| *a && *b)
    }
}

/// A partition of `ℤ_J` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    size: usize,
    blocks: Vec<SubsetMask>,
}

impl Partition {
    pub fn new(size: usize, blocks: Vec<SubsetMask>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySpace);
        }
        let mut covered = vec![false; size];
        for b in &blocks {
            if b.space_size() != size {
                return Err(Error::DimensionMismatch {
                    expected: size,
                    found: b.space_size(),
                });
            }
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block"));
            }
            for p in b.points() {
                if covered[p] {
                    return Err(Error::InvalidPartition("blocks overlap"));
                }
                covered[p] = true;
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err(Error::InvalidPartition("blocks do not cover the space"));
        }
        Ok(Self { size, blocks })
    }

    /// Partition from a block label per point. Blocks are ordered by first
    /// appearance of their label.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut order: Vec<usize> = Vec::new();
        for &l in labels {
            if !order.contains(&l) {
                order.push(l);
            }
        }
        let blocks = order
            .iter()
            .map(|&l| SubsetMask::from_predicate(labels.len(), |x| labels[x] == l))
            .collect();
        Ok(Self {
            size: labels.len(),
            blocks,
        })
    }

    pub fn trivial(size: usize) -> Self {
        Self {
            size,
            blocks: vec![SubsetMask::full(size)],
        }
    }

    pub fn singletons(size: usize) -> Self {
        Self {
            size,
            blocks: (0..size)
                .map(|x| SubsetMask::from_predicate(size, |y| y == x))
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn measures(&self) -> Vec<f64> {
        self.blocks.iter().map(SubsetMask::measure).collect()
    }

    /// Index of the block containing each point.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.size];
        for (i, b) in self.blocks.iter().enumerate() {
            for p in b.points() {
                labels[p] = i;
            }
        }
        labels
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let outer = coarser.labels();
        self.blocks.iter().all(|b| {
            let mut pts = b.points();
            let first = pts.next().map(|p| outer[p]);
            pts.all(|p| Some(outer[p]) == first)
        })
    }
}

/// Iterator over all set partitions of `ℤ_J`, as restricted growth strings
/// in lexicographic order (the trivial partition comes first, the
/// singletons last).
#[derive(Debug, Clone)]
pub struct SetPartitions {
    labels: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    fn new(size: usize) -> Self {
        Self {
            labels: vec![0; size],
            started: false,
            done: size == 0,
        }
    }

    /// Advances and returns the next labelling without allocating.
    pub fn next_labels(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.labels);
        }
        let n = self.labels.len();
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.labels[i - 1]);
        }
        for i in (1..n).rev() {
            if self.labels[i] <= prefix_max[i] {
                self.labels[i] += 1;
                for l in &mut self.labels[i + 1..] {
                    *l = 0;
                }
                return Some(&self.labels);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let labels = self.next_labels()?.to_vec();
        Partition::from_labels(&labels).ok()
    }
}

/// All set partitions of `ℤ_J`, refusing spaces larger than `guard`.
pub fn enumerate_partitions(size: usize, guard: usize) -> Result<SetPartitions> {
    if size == 0 {
        return Err(Error::EmptySpace);
    }
    if size > guard {
        return Err(Error::SizeGuard { size, guard });
    }
    Ok(SetPartitions::new(size))
}

/// Which basis an operator matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Point values `f(k)`.
    Value,
    /// Fourier coefficients `f_j`.
    Coefficient,
}

/// A linear operator on `L²(ℤ_J)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteOperator {
    matrix: CMatrix,
    basis: Basis,
}

impl FiniteOperator {
    pub fn new(matrix: CMatrix, basis: Basis) -> Result<Self> {
        if matrix.rows() == 0 {
            return Err(Error::EmptySpace);
        }
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if !matrix.all_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { matrix, basis })
    }

    pub fn identity(size: usize) -> Result<Self> {
        Self::new(CMatrix::identity(size), Basis::Value)
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// The same operator written in `target`.
    pub fn in_basis(&self, target: Basis) -> Self {
        change_basis(self, target)
    }

    /// Matrix in the value basis.
    pub fn value_matrix(&self) -> CMatrix {
        match self.basis {
            Basis::Value => self.matrix.clone(),
            Basis::Coefficient => change_basis(self, Basis::Value).matrix,
        }
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::DimensionMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(())
    }

    /// `self ∘ rhs`, written in the basis of `self`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        self.check_size(rhs)?;
        let r = rhs.in_basis(self.basis);
        Ok(Self {
            matrix: self.matrix.matmul(&r.matrix),
            basis: self.basis,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_size(rhs)?;
        let r = rhs.in_basis(self.basis);
        Ok(Self {
            matrix: self.matrix.add(&r.matrix),
            basis: self.basis,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            matrix: self.matrix.scale(c),
            basis: self.basis,
        }
    }

    /// Hilbert-space adjoint. Both bases are orthogonal with equal weights,
    /// so this is the conjugate transpose in either.
    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            basis: self.basis,
        }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.matrix.is_unitary(tol)
    }
}

/// `π_X`, multiplication by the indicator of `X`, in the value basis.
pub fn projector(space: &FiniteSpace, x: &SubsetMask) -> Result<FiniteOperator> {
    if x.space_size() != space.size() {
        return Err(Error::DimensionMismatch {
            expected: space.size(),
            found: x.space_size(),
        });
    }
    let d: Vec<Complex64> = (0..space.size())
        .map(|k| Complex64::new(if x.contains(k) { 1.0 } else { 0.0 }, 0.0))
        .collect();
    FiniteOperator::new(CMatrix::diagonal(&d), Basis::Value)
}

/// Multiplication by the function with the given point values.
pub fn multiplication_operator_finite(values: &[Complex64]) -> Result<FiniteOperator> {
    FiniteOperator::new(CMatrix::diagonal(values), Basis::Value)
}

/// Rewrites `w` in `target`: `W_value = Φ W_coef Φ⁻¹` with `Φ_{mk} = η^{mk}`.
pub fn change_basis(w: &FiniteOperator, target: Basis) -> FiniteOperator {
    if w.basis == target {
        return w.clone();
    }
    let n = w.size();
    let roots = RootsOfUnity::new(n);
    let inv_n = Complex64::new(1.0 / n as f64, 0.0);
    let phi = CMatrix::from_fn(n, n, |m, k| roots.pow((m * k) as i64));
    let phi_inv = CMatrix::from_fn(n, n, |k, m| roots.pow(-((m * k) as i64)) * inv_n);
    let matrix = match target {
        Basis::Value => phi.matmul(&w.matrix).matmul(&phi_inv),
        Basis::Coefficient => phi_inv.matmul(&w.matrix).matmul(&phi),
    };
    FiniteOperator {
        matrix,
        basis: target,
    }
}

/// Values from coefficients: `f(k) = Σ_j f_j η^{kj}`.
pub fn dft(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let roots = RootsOfUnity::new(n);
    (0..n)
        .map(|k| {
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c * roots.pow((k * j) as i64))
                .sum()
        })
        .collect()
}

/// Coefficients from values: `f_j = (1/J) Σ_k f(k) η^{-kj}`.
pub fn idft(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let roots = RootsOfUnity::new(n);
    let inv = 1.0 / n.max(1) as f64;
    (0..n)
        .map(|j| {
            values
                .iter()
                .enumerate()
                .map(|(k, v)| v * roots.pow(-((k * j) as i64)))
                .sum::<Complex64>()
                * inv
        })
        .collect()
}

/// Operator norm on `L²(ℤ_J)`.
pub fn operator_norm(w: &FiniteOperator) -> f64 {
    w.value_matrix().spectral_norm()
}

/// `M_χ(W) = Σ_{Y∈χ} μ(Y) ‖W π_Y‖²`.
pub fn calm(w: &FiniteOperator, chi: &Partition) -> Result<f64> {
    if chi.size() != w.size() {
        return Err(Error::DimensionMismatch {
            expected: w.size(),
            found: chi.size(),
        });
    }
    let value = w.value_matrix();
    Ok(chi
        .blocks()
        .iter()
        .map(|b| {
            let cols: Vec<usize> = b.points().collect();
            let s = value.select_columns(&cols).spectral_norm();
            b.measure() * s * s
        })
        .sum())
}

/// `‖W‖_μ = sqrt((1/J) Σ_{k,j} |W(k,j)|²)` in the value basis.
pub fn mu_norm_formula(w: &FiniteOperator) -> f64 {
    sqrt(w.value_matrix().frobenius_sq() / w.size() as f64)
}

/// Result of minimising `sqrt(M_χ(W))` over all partitions.
#[derive(Debug, Clone, PartialEq)]
pub struct InfimumReport {
    /// The minimum over all partitions.
    pub minimum: f64,
    /// The value at the singleton partition.
    pub singleton: f64,
    /// First partition (in enumeration order) attaining the minimum.
    pub minimizer: Partition,
    pub partitions_checked: usize,
}

/// Brute-force `inf_χ sqrt(M_χ(W))` over every set partition of `ℤ_J`.
///
/// Block terms `μ(Y)‖Wπ_Y‖²` are computed once per subset and reused across
/// partitions.
pub fn mu_norm_infimum(w: &FiniteOperator, guard: usize) -> Result<InfimumReport> {
    let n = w.size();
    if n > guard || n > MAX_MASK_BITS {
        return Err(Error::SizeGuard {
            size: n,
            guard: guard.min(MAX_MASK_BITS),
        });
    }
    let value = w.value_matrix();
    let mut block_terms = vec![f64::NAN; 1 << n];
    let mut block_term = |mask: usize| -> f64 {
        if block_terms[mask].is_nan() {
            let cols: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            let s = value.select_columns(&cols).spectral_norm();
            block_terms[mask] = cols.len() as f64 / n as f64 * s * s;
        }
        block_terms[mask]
    };

    let mut parts = enumerate_partitions(n, guard)?;
    let mut best = f64::INFINITY;
    let mut best_labels = Vec::new();
    let mut last = f64::NAN;
    let mut checked = 0;
    let mut masks = vec![0usize; n];
    while let Some(labels) = parts.next_labels() {
        masks.iter_mut().for_each(|m| *m = 0);
        let mut blocks = 0;
        for (x, &l) in labels.iter().enumerate() {
            masks[l] |= 1 << x;
            blocks = blocks.max(l + 1);
        }
        let total: f64 = masks[..blocks].iter().map(|&m| block_term(m)).sum();
        if total < best {
            best = total;
            best_labels = labels.to_vec();
        }
        last = total;
        checked += 1;
    }
    // the enumeration ends with the singleton partition
    Ok(InfimumReport {
        minimum: sqrt(best),
        singleton: sqrt(last),
        minimizer: Partition::from_labels(&best_labels)?,
        partitions_checked: checked,
    })
}
