//! Permutations of `ℤ_J`, their Koopman operators, and the two entropy
//! stages built from a partition: the combinatorial one counting itinerary
//! cells, and the operator one summing `‖𝔛_j‖²_μ` over words.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::finite_space::{Basis, FiniteOperator, Partition, SubsetMask};
use crate::math::entropy_term;
use crate::matrix::CMatrix;

/// Maximum number of words a word enumeration may visit.
pub const WORD_GUARD: u128 = 10_000_000;

/// A bijection of `ℤ_J`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut seen = vec![false; image.len()];
        for &y in &image {
            if y >= image.len() {
                return Err(Error::InvalidPermutation("image point out of range"));
            }
            if seen[y] {
                return Err(Error::InvalidPermutation("image repeats a point"));
            }
            seen[y] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            image: (0..size).collect(),
        }
    }

    /// `x ↦ x + k mod J`.
    pub fn cyclic_shift(size: usize, k: i64) -> Self {
        Self {
            image: (0..size)
                .map(|x| (x as i64 + k).rem_euclid(size as i64) as usize)
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Self { image: inv }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            image: rhs.image.iter().map(|&y| self.image[y]).collect(),
        }
    }

    /// `F^k`.
    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.size()), |acc, _| self.compose(&acc))
    }

    /// Preimage `F⁻¹(X)`.
    pub fn preimage(&self, x: &SubsetMask) -> SubsetMask {
        SubsetMask::from_predicate(self.size(), |p| x.contains(self.image[p]))
    }
}

/// Koopman operator `U_F f = f ∘ F` in the value basis: `U[k][F(k)] = 1`.
pub fn koopman(f: &Permutation) -> FiniteOperator {
    let n = f.size();
    let m = CMatrix::from_fn(n, n, |k, j| {
        Complex64::new(if f.apply(k) == j { 1.0 } else { 0.0 }, 0.0)
    });
    FiniteOperator::new(m, Basis::Value).expect("permutation matrix is valid")
}

/// Checks `U_F π_X = π_{F⁻¹(X)} U_F` to `1e-12`.
pub fn koopman_projector_identity_check(f: &Permutation, x: &SubsetMask) -> Result<bool> {
    if x.space_size() != f.size() {
        return Err(Error::DimensionMismatch {
            expected: f.size(),
            found: x.space_size(),
        });
    }
    let u = koopman(f).value_matrix();
    let p = CMatrix::diagonal(&indicator(x));
    let lhs = u.matmul(&p);
    let rhs = CMatrix::diagonal(&indicator(&f.preimage(x))).matmul(&u);
    Ok(lhs.max_abs_diff(&rhs) <= 1e-12)
}

fn indicator(x: &SubsetMask) -> Vec<Complex64> {
    (0..x.space_size())
        .map(|k| Complex64::new(if x.contains(k) { 1.0 } else { 0.0 }, 0.0))
        .collect()
}

fn check_partition(size: usize, chi: &Partition) -> Result<()> {
    if chi.size() != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: chi.size(),
        });
    }
    Ok(())
}

fn check_word(chi: &Partition, word: &[usize]) -> Result<()> {
    if word.is_empty() {
        return Err(Error::InvalidParameter(
            "words must have at least one letter",
        ));
    }
    if word.iter().any(|&j| j >= chi.len()) {
        return Err(Error::InvalidParameter("word letter is not a block index"));
    }
    Ok(())
}

/// The itinerary cell `{x : F^n(x) ∈ X_{j_n} for every n}`.
pub fn preimage_cell(f: &Permutation, chi: &Partition, word: &[usize]) -> Result<SubsetMask> {
    check_partition(f.size(), chi)?;
    check_word(chi, word)?;
    let labels = chi.labels();
    Ok(SubsetMask::from_predicate(f.size(), |x| {
        let mut p = x;
        for (i, &j) in word.iter().enumerate() {
            if i > 0 {
                p = f.apply(p);
            }
            if labels[p] != j {
                return false;
            }
        }
        true
    }))
}

/// `h_F(χ, N+1) = -Σ μ(𝐗_j) ln μ(𝐗_j)` over words of length `depth + 1`.
///
/// Computed by grouping points by itinerary, so only nonempty cells are
/// visited.
pub fn ks_entropy_stage(f: &Permutation, chi: &Partition, depth: usize) -> Result<f64> {
    check_partition(f.size(), chi)?;
    let labels = chi.labels();
    let n = f.size();
    let mut cells: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for x in 0..n {
        let mut p = x;
        let mut it = Vec::with_capacity(depth + 1);
        it.push(labels[p]);
        for _ in 0..depth {
            p = f.apply(p);
            it.push(labels[p]);
        }
        *cells.entry(it).or_insert(0) += 1;
    }
    Ok(cells
        .values()
        .map(|&c| entropy_term(c as f64 / n as f64))
        .sum())
}

/// `𝔛_j = π_{X_{j_N}} U π_{X_{j_{N-1}}} ⋯ U π_{X_{j_0}}` in the value basis.
pub fn frak_word(u: &FiniteOperator, chi: &Partition, word: &[usize]) -> Result<FiniteOperator> {
    check_partition(u.size(), chi)?;
    check_word(chi, word)?;
    let um = u.value_matrix();
    let labels = chi.labels();
    let mut acc = restrict_rows(&CMatrix::identity(u.size()), &labels, word[0]);
    for &j in &word[1..] {
        acc = restrict_rows(&um.matmul(&acc), &labels, j);
    }
    FiniteOperator::new(acc, Basis::Value)
}

fn restrict_rows(m: &CMatrix, labels: &[usize], block: usize) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        if labels[i] == block {
            m[(i, j)]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn word_count(blocks: usize, letters: usize) -> u128 {
    (blocks as u128).saturating_pow(letters as u32)
}

fn check_word_guard(blocks: usize, letters: usize) -> Result<()> {
    let words = word_count(blocks, letters);
    if words > WORD_GUARD {
        return Err(Error::WordGuard {
            words,
            guard: WORD_GUARD,
        });
    }
    Ok(())
}

/// Visits every word of length `depth + 1` in lexicographic order together
/// with `𝔛_j` (value basis). `None` stands for an operator that is exactly
/// zero; such prefixes are not multiplied further.
pub fn visit_frak_words(
    u: &FiniteOperator,
    chi: &Partition,
    depth: usize,
    mut visitor: impl FnMut(&[usize], Option<&CMatrix>),
) -> Result<()> {
    check_partition(u.size(), chi)?;
    check_word_guard(chi.len(), depth + 1)?;
    let um = u.value_matrix();
    let labels = chi.labels();
    let id = CMatrix::identity(u.size());
    let mut word = Vec::with_capacity(depth + 1);
    for b in 0..chi.len() {
        word.push(b);
        let start = restrict_rows(&id, &labels, b);
        visit(
            &um,
            &labels,
            chi.len(),
            depth,
            &mut word,
            Some(start),
            &mut visitor,
        );
        word.pop();
    }
    Ok(())
}

fn visit(
    um: &CMatrix,
    labels: &[usize],
    blocks: usize,
    depth: usize,
    word: &mut Vec<usize>,
    op: Option<CMatrix>,
    visitor: &mut impl FnMut(&[usize], Option<&CMatrix>),
) {
    let op = op.filter(|m| !m.is_zero());
    if word.len() == depth + 1 {
        visitor(word, op.as_ref());
        return;
    }
    let advanced = op.as_ref().map(|m| um.matmul(m));
    for b in 0..blocks {
        word.push(b);
        let next = advanced.as_ref().map(|m| restrict_rows(m, labels, b));
        visit(um, labels, blocks, depth, word, next, visitor);
        word.pop();
    }
}

/// `ℏ_U(χ, N+1) = -Σ ‖𝔛_j‖²_μ ln ‖𝔛_j‖²_μ` over words of length `depth + 1`.
pub fn quantum_entropy_stage(u: &FiniteOperator, chi: &Partition, depth: usize) -> Result<f64> {
    let size = u.size() as f64;
    let mut total = 0.0;
    visit_frak_words(u, chi, depth, |_, op| {
        if let Some(m) = op {
            total += entropy_term(m.frobenius_sq() / size);
        }
    })?;
    Ok(total)
}

/// `ℏ_U(χ, n) / n` for `n = 1..=n_max`.
pub fn entropy_rate_sequence(
    u: &FiniteOperator,
    chi: &Partition,
    n_max: usize,
) -> Result<Vec<f64>> {
    check_word_guard(chi.len(), n_max)?;
    (1..=n_max)
        .map(|n| quantum_entropy_stage(u, chi, n - 1).map(|h| h / n as f64))
        .collect()
}

/// `‖ĝ_K U_F ĝ_{K-1} ⋯ U_F ĝ_0‖²_μ` next to the two candidate closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub mu_norm_sq: f64,
    /// `(1/J) Σ_x Π_k |g_k(F^k x)|²`.
    pub forward: f64,
    /// `(1/J) Σ_x Π_k |g_{K-k}(F^k x)|²`.
    pub reversed: f64,
}

/// Builds the alternating product from point-value samples `gs[k] = g_k`
/// and evaluates both index orders.
pub fn chain_mu_norm(f: &Permutation, gs: &[Vec<Complex64>]) -> Result<ChainReport> {
    let n = f.size();
    if gs.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one multiplier is required",
        ));
    }
    for g in gs {
        if g.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
    }
    let u = koopman(f).value_matrix();
    let mut w = CMatrix::diagonal(&gs[0]);
    for g in &gs[1..] {
        w = CMatrix::diagonal(g).matmul(&u.matmul(&w));
    }
    let k_max = gs.len() - 1;
    let mut forward = 0.0;
    let mut reversed = 0.0;
    for x in 0..n {
        let mut p = x;
        let mut fw = 1.0;
        let mut rv = 1.0;
        for k in 0..=k_max {
            fw *= gs[k][p].norm_sqr();
            rv *= gs[k_max - k][p].norm_sqr();
            p = f.apply(p);
        }
        forward += fw;
        reversed += rv;
    }
    Ok(ChainReport {
        mu_norm_sq: w.frobenius_sq() / n as f64,
        forward: forward / n as f64,
        reversed: reversed / n as f64,
    })
}

/// The finite analogue of the measure attached to `U_F`: mass
/// `1/J` on each pair `(F(x), x)` of the product space.
#[derive(Debug, Clone, PartialEq)]
pub struct PairMass {
    size: usize,
    masses: Vec<f64>,
}

impl PairMass {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Mass of the pair `(x', x'')`.
    pub fn get(&self, first: usize, second: usize) -> f64 {
        self.masses[first * self.size + second]
    }

    /// The two one-dimensional marginals.
    pub fn marginals(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.size;
        let first = (0..n)
            .map(|a| (0..n).map(|b| self.get(a, b)).sum())
            .collect();
        let second = (0..n)
            .map(|b| (0..n).map(|a| self.get(a, b)).sum())
            .collect();
        (first, second)
    }
}

/// Pair masses of `U_F`: `1/J` on `(F(x), x)`.
pub fn finite_mu_uf(f: &Permutation) -> PairMass {
    let n = f.size();
    let mut masses = vec![0.0; n * n];
    for x in 0..n {
        masses[f.apply(x) * n + x] = 1.0 / n as f64;
    }
    PairMass { size: n, masses }
}
