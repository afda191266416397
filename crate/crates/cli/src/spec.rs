//! JSON operator descriptions.
//!
//! Every spec is an object with a `kind` field. Finite kinds act on
//! `L²(ℤ_J)`, torus kinds are banded lattice operators. Composite kinds
//! (`product`, `sum`, `scale`, `adjoint`) take their setting from their
//! operands, which must agree.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use munorm_core::finite_space::{
    multiplication_operator_finite, projector, Basis, FiniteOperator, FiniteSpace, SubsetMask,
};
use munorm_core::koopman::{koopman, Permutation};
use munorm_core::sample::{random_operator, random_periodic, random_unitary_operator};
use munorm_core::torus::{
    convolution_operator, multiplication_operator_torus, FourierPolynomial, LatticeOperator,
    PeriodicBlock, Symbol,
};
use munorm_core::{CMatrix, Complex64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Pair([f64; 2]),
}

impl Scalar {
    fn value(self) -> Complex64 {
        match self {
            Scalar::Real(re) => Complex64::new(re, 0.0),
            Scalar::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

fn scalars(v: &[Scalar]) -> Vec<Complex64> {
    v.iter().map(|s| s.value()).collect()
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisName {
    #[default]
    Value,
    Coefficient,
}

/// Diagonal of a convolution operator. Angles are given either in radians
/// or as multiples of `π` (`tau_pi: 0.5` is `τ = π/2`).
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SymbolSpec {
    QuadraticPhase {
        tau: Option<f64>,
        tau_pi: Option<f64>,
    },
    Rotation {
        alpha: Option<f64>,
        alpha_pi: Option<f64>,
    },
    Constant {
        value: Scalar,
    },
    Table {
        #[serde(default)]
        offset: i64,
        values: Vec<Scalar>,
    },
}

/// Fourier coefficients, either a list starting at `offset` or a map from
/// integer keys.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CoeffSpec {
    List(Vec<Scalar>),
    Map(BTreeMap<String, Scalar>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Spec {
    /// Row-major `J × J` matrix.
    Matrix {
        #[serde(default)]
        basis: BasisName,
        entries: Vec<Vec<Scalar>>,
    },
    Projector {
        #[serde(rename = "J")]
        size: Option<usize>,
        subset: Vec<usize>,
    },
    /// Pointwise multiplication by `values[x]`.
    Multiplication {
        values: Vec<Scalar>,
    },
    /// Koopman operator `f ↦ f∘F` of the permutation `x ↦ image[x]`.
    Permutation {
        image: Vec<usize>,
    },
    Identity {
        #[serde(rename = "J")]
        size: Option<usize>,
    },
    RandomMatrix {
        #[serde(rename = "J")]
        size: Option<usize>,
    },
    RandomUnitary {
        #[serde(rename = "J")]
        size: Option<usize>,
    },
    Convolution {
        symbol: SymbolSpec,
    },
    /// Multiplication by a trigonometric polynomial on the circle.
    FourierMultiplication {
        coeffs: CoeffSpec,
        #[serde(default)]
        offset: i64,
    },
    /// `rows[r][d] = W_{r, r + d − B}` for one period, each row of length
    /// `2B + 1`.
    Periodic {
        rows: Vec<Vec<Scalar>>,
    },
    RandomPeriodic {
        tau: usize,
        band: Option<usize>,
    },
    TorusIdentity {},
    /// `factors[0] · factors[1] · …`.
    Product {
        factors: Vec<Spec>,
    },
    Sum {
        terms: Vec<Spec>,
    },
    Scale {
        factor: Scalar,
        op: Box<Spec>,
    },
    Adjoint {
        op: Box<Spec>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Finite(FiniteOperator),
    Torus(LatticeOperator),
}

/// A parsed operator, plus the permutation when it is a Koopman operator.
#[derive(Debug, Clone)]
pub struct ParsedOperator {
    pub operator: Operator,
    pub permutation: Option<Permutation>,
}

/// Defaults that a spec may leave out.
#[derive(Debug, Clone, Copy)]
pub struct SpecDefaults {
    pub size: Option<usize>,
    pub band: usize,
    pub seed: u64,
}

pub fn parse_operator(text: &str, defaults: &SpecDefaults) -> CliResult<ParsedOperator> {
    let spec: Spec = serde_json::from_str(text)?;
    let mut rng = ChaCha8Rng::seed_from_u64(defaults.seed);
    Builder {
        defaults,
        rng: &mut rng,
    }
    .build(&spec)
}

struct Builder<'a> {
    defaults: &'a SpecDefaults,
    rng: &'a mut ChaCha8Rng,
}

impl Builder<'_> {
    fn size(&self, size: Option<usize>, kind: &str) -> CliResult<usize> {
        size.or(self.defaults.size).ok_or_else(|| {
            CliError::input(format!("{kind} needs \"J\" in the operator spec or --J"))
        })
    }

    fn build(&mut self, spec: &Spec) -> CliResult<ParsedOperator> {
        let finite = |w: FiniteOperator| ParsedOperator {
            operator: Operator::Finite(w),
            permutation: None,
        };
        let torus = |w: LatticeOperator| ParsedOperator {
            operator: Operator::Torus(w),
            permutation: None,
        };
        Ok(match spec {
            Spec::Matrix { basis, entries } => {
                let n = entries.len();
                if let Some(row) = entries.iter().find(|r| r.len() != n) {
                    return Err(CliError::input(format!(
                        "matrix must be square: {n} rows but a row of length {}",
                        row.len()
                    )));
                }
                let data = entries.iter().flat_map(|r| scalars(r)).collect();
                let basis = match basis {
                    BasisName::Value => Basis::Value,
                    BasisName::Coefficient => Basis::Coefficient,
                };
                finite(FiniteOperator::new(
                    CMatrix::from_row_major(n, n, data)?,
                    basis,
                )?)
            }
            Spec::Projector { size, subset } => {
                let n = self.size(*size, "projector")?;
                let space = FiniteSpace::new(n)?;
                finite(projector(&space, &SubsetMask::new(n, subset)?)?)
            }
            Spec::Multiplication { values } => {
                finite(multiplication_operator_finite(&scalars(values))?)
            }
            Spec::Permutation { image } => {
                let f = Permutation::new(image.clone())?;
                ParsedOperator {
                    operator: Operator::Finite(koopman(&f)),
                    permutation: Some(f),
                }
            }
            Spec::Identity { size } => {
                let n = self.size(*size, "identity")?;
                ParsedOperator {
                    operator: Operator::Finite(FiniteOperator::identity(n)?),
                    permutation: Some(Permutation::identity(n)),
                }
            }
            Spec::RandomMatrix { size } => {
                let n = self.size(*size, "random_matrix")?;
                finite(random_operator(self.rng, n)?)
            }
            Spec::RandomUnitary { size } => {
                let n = self.size(*size, "random_unitary")?;
                finite(random_unitary_operator(self.rng, n)?)
            }
            Spec::Convolution { symbol } => torus(convolution_operator(symbol_of(symbol)?)),
            Spec::FourierMultiplication { coeffs, offset } => {
                torus(multiplication_operator_torus(poly_of(coeffs, *offset)?))
            }
            Spec::Periodic { rows } => {
                let width = rows.first().map_or(0, Vec::len);
                if width % 2 == 0 || rows.iter().any(|r| r.len() != width) {
                    return Err(CliError::input(
                        "periodic rows must share one odd length 2B+1",
                    ));
                }
                let data = rows.iter().flat_map(|r| scalars(r)).collect();
                torus(LatticeOperator::Periodic(PeriodicBlock::new(
                    rows.len(),
                    width / 2,
                    data,
                )?))
            }
            Spec::RandomPeriodic { tau, band } => {
                let band = band.unwrap_or(self.defaults.band);
                torus(LatticeOperator::Periodic(random_periodic(
                    self.rng, *tau, band,
                )?))
            }
            Spec::TorusIdentity {} => torus(LatticeOperator::identity()),
            Spec::Product { factors } => self.fold(factors, "product", |a, b| match (a, b) {
                (Operator::Finite(a), Operator::Finite(b)) => Ok(Operator::Finite(a.compose(&b)?)),
                (Operator::Torus(a), Operator::Torus(b)) => Ok(Operator::Torus(a.compose(b))),
                _ => Err(mixed()),
            })?,
            Spec::Sum { terms } => self.fold(terms, "sum", |a, b| match (a, b) {
                (Operator::Finite(a), Operator::Finite(b)) => Ok(Operator::Finite(a.add(&b)?)),
                (Operator::Torus(a), Operator::Torus(b)) => Ok(Operator::Torus(a.plus(b))),
                _ => Err(mixed()),
            })?,
            Spec::Scale { factor, op } => {
                let c = factor.value();
                match self.build(op)?.operator {
                    Operator::Finite(w) => finite(w.scale(c)),
                    Operator::Torus(w) => torus(w.scaled(c)),
                }
            }
            Spec::Adjoint { op } => {
                let inner = self.build(op)?;
                ParsedOperator {
                    permutation: inner.permutation.map(|f| f.inverse()),
                    operator: match inner.operator {
                        Operator::Finite(w) => Operator::Finite(w.adjoint()),
                        Operator::Torus(w) => Operator::Torus(w.adjoint()),
                    },
                }
            }
        })
    }

    fn fold(
        &mut self,
        parts: &[Spec],
        kind: &str,
        mut combine: impl FnMut(Operator, Operator) -> CliResult<Operator>,
    ) -> CliResult<ParsedOperator> {
        let mut iter = parts.iter();
        let first = iter
            .next()
            .ok_or_else(|| CliError::input(format!("{kind} needs at least one operand")))?;
        let mut acc = self.build(first)?.operator;
        for part in iter {
            let next = self.build(part)?.operator;
            acc = combine(acc, next)?;
        }
        Ok(ParsedOperator {
            operator: acc,
            permutation: None,
        })
    }
}

fn mixed() -> CliError {
    CliError::input("cannot combine a finite operator with a torus operator")
}

fn angle(radians: Option<f64>, over_pi: Option<f64>, name: &str) -> CliResult<f64> {
    match (radians, over_pi) {
        (Some(x), None) => Ok(x),
        (None, Some(t)) => Ok(t * PI),
        _ => Err(CliError::input(format!(
            "give exactly one of \"{name}\" and \"{name}_pi\""
        ))),
    }
}

fn symbol_of(spec: &SymbolSpec) -> CliResult<Symbol> {
    let symbol = match spec {
        SymbolSpec::QuadraticPhase { tau, tau_pi } => Symbol::QuadraticPhase {
            tau: angle(*tau, *tau_pi, "tau")?,
        },
        SymbolSpec::Rotation { alpha, alpha_pi } => Symbol::Rotation {
            alpha: angle(*alpha, *alpha_pi, "alpha")?,
        },
        SymbolSpec::Constant { value } => Symbol::Constant(value.value()),
        SymbolSpec::Table { offset, values } => Symbol::Table {
            offset: *offset,
            values: scalars(values),
        },
    };
    let finite = match &symbol {
        Symbol::QuadraticPhase { tau: x } | Symbol::Rotation { alpha: x } => x.is_finite(),
        Symbol::Constant(c) => c.is_finite(),
        Symbol::Table { values, .. } => values.iter().all(|c| c.is_finite()),
    };
    if finite {
        Ok(symbol)
    } else {
        Err(munorm_core::Error::NonFinite.into())
    }
}

fn poly_of(spec: &CoeffSpec, offset: i64) -> CliResult<FourierPolynomial> {
    let poly = match spec {
        CoeffSpec::List(values) => FourierPolynomial::new(offset, scalars(values)),
        CoeffSpec::Map(map) => {
            let terms = map
                .iter()
                .map(|(k, v)| {
                    k.trim()
                        .parse::<i64>()
                        .map(|k| (k, v.value()))
                        .map_err(|_| {
                            CliError::input(format!("coefficient key {k:?} is not an integer"))
                        })
                })
                .collect::<CliResult<Vec<_>>>()?;
            FourierPolynomial::from_terms(terms)
        }
    };
    if poly.terms().all(|(_, c)| c.is_finite()) {
        Ok(poly)
    } else {
        Err(munorm_core::Error::NonFinite.into())
    }
}
