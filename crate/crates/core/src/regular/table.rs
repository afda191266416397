//! Square tables of the coefficients `ω_{m,n}`, `|m|, |n| ≤ M`.

use alloc::vec::Vec;

use num_complex::Complex64;

/// Where a table entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// A closed form, exact up to rounding.
    Exact,
    /// A windowed average over an interval of this many rows.
    Estimated { interval_len: usize },
}

impl Source {
    /// The smaller interval wins; exact entries do not degrade anything.
    pub fn combine(self, other: Source) -> Source {
        match (self, other) {
            (Source::Exact, s) | (s, Source::Exact) => s,
            (Source::Estimated { interval_len: a }, Source::Estimated { interval_len: b }) => {
                Source::Estimated {
                    interval_len: a.min(b),
                }
            }
        }
    }
}

/// `ω_{m,n}` for `|m|, |n| ≤ radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaTable {
    radius: usize,
    entries: Vec<Complex64>,
    sources: Vec<Source>,
    dt_bound: f64,
    sum_band: usize,
    near_resonances: Vec<(i64, f64)>,
}

impl OmegaTable {
    /// Fills the table from `f(m, n)`.
    ///
    /// `dt_bound` is an upper bound for the diagonal-type norm of the source
    /// operator; `sum_band` bounds `|m + n|` on the support of `ω`.
    pub fn from_fn(
        radius: usize,
        dt_bound: f64,
        sum_band: usize,
        mut f: impl FnMut(i64, i64) -> (Complex64, Source),
    ) -> Self {
        let r = radius as i64;
        let mut entries = Vec::with_capacity((2 * radius + 1) * (2 * radius + 1));
        let mut sources = Vec::with_capacity(entries.capacity());
        for m in -r..=r {
            for n in -r..=r {
                let (v, s) = f(m, n);
                entries.push(v);
                sources.push(s);
            }
        }
        Self {
            radius,
            entries,
            sources,
            dt_bound,
            sum_band,
            near_resonances: Vec::new(),
        }
    }

    pub(crate) fn with_near_resonances(mut self, near: Vec<(i64, f64)>) -> Self {
        self.near_resonances = near;
        self
    }

    fn index(&self, m: i64, n: i64) -> Option<usize> {
        let r = self.radius as i64;
        if m.abs() > r || n.abs() > r {
            return None;
        }
        let w = 2 * self.radius + 1;
        Some((m + r) as usize * w + (n + r) as usize)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `ω_{m,n}`, or `None` outside the window.
    pub fn get(&self, m: i64, n: i64) -> Option<Complex64> {
        self.index(m, n).map(|i| self.entries[i])
    }

    /// `ω_{m,n}`; zero outside the window.
    pub fn at(&self, m: i64, n: i64) -> Complex64 {
        self.get(m, n).unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn source(&self, m: i64, n: i64) -> Option<Source> {
        self.index(m, n).map(|i| self.sources[i])
    }

    /// Combined source of all entries.
    pub fn overall_source(&self) -> Source {
        self.sources
            .iter()
            .copied()
            .fold(Source::Exact, Source::combine)
    }

    pub fn is_exact(&self) -> bool {
        self.overall_source() == Source::Exact
    }

    /// Upper bound `c̄` for the diagonal-type norm of the source operator.
    pub fn dt_bound(&self) -> f64 {
        self.dt_bound
    }

    /// `ω_{m,n} = 0` whenever `|m + n| > sum_band()`.
    pub fn sum_band(&self) -> usize {
        self.sum_band
    }

    /// Frequencies `m` where `τm/π` came within `1e-6` of an integer
    /// without being declared resonant, with the distance found.
    pub fn near_resonances(&self) -> &[(i64, f64)] {
        &self.near_resonances
    }

    /// `(m, n, ω_{m,n}, source)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, Complex64, Source)> + '_ {
        let r = self.radius as i64;
        let w = 2 * r + 1;
        self.entries
            .iter()
            .zip(&self.sources)
            .enumerate()
            .map(move |(i, (v, s))| {
                let i = i as i64;
                (i / w - r, i % w - r, *v, *s)
            })
    }

    /// Whether row `m` contains its whole support `|m + n| ≤ sum_band`.
    pub fn row_complete(&self, m: i64) -> bool {
        m.unsigned_abs() as usize + self.sum_band <= self.radius
    }

    /// `max |ω_{m,n} − conj(ω_{−m,−n})|` over the window.
    pub fn hermitian_defect(&self) -> f64 {
        self.entries()
            .map(|(m, n, v, _)| (v - self.at(-m, -n).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// `Σ_{|n|≤M} |ω_{m,n}|`.
    pub fn row_l1(&self, m: i64) -> f64 {
        let r = self.radius as i64;
        (-r..=r).map(|n| self.at(m, n).norm()).sum()
    }

    /// `Σ_{|m|≤M} |ω_{m,n}|`.
    pub fn col_l1(&self, n: i64) -> f64 {
        let r = self.radius as i64;
        (-r..=r).map(|m| self.at(m, n).norm()).sum()
    }

    /// Largest row or column `ℓ¹` sum.
    pub fn max_line_l1(&self) -> f64 {
        let r = self.radius as i64;
        (-r..=r)
            .map(|k| self.row_l1(k).max(self.col_l1(k)))
            .fold(0.0, f64::max)
    }
}
