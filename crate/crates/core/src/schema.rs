//! Serde representations of states, functionals and source operators.
//!
//! Wire values are always `f64`; conversion to the working scalar happens
//! when a schema is turned into a library object.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bell::{BellFunctional, OutcomeSet};
use crate::coherent::{fock_state, CoherentFamily, Family, FockTruncation, DEFAULT_TAIL_TOL};
use crate::error::{Error, Result};
use crate::linalg::complex_from_parts;
use crate::qstate::{schmidt_decompose, PureState, SchmidtData};
use crate::scalar::{lit, to_f64, CMatrix, CVector, Real};
use crate::source_op::SourceOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutoMarker {
    Auto,
}

/// Fock cutoff: an explicit `N` or `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutoffSpec {
    Fixed(usize),
    Auto(AutoMarker),
}

impl Default for CutoffSpec {
    fn default() -> Self {
        CutoffSpec::Auto(AutoMarker::Auto)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    /// Amplitude matrix, `d1` rows of `d2` entries; `im` defaults to zero.
    Dense {
        d1: usize,
        d2: usize,
        re: Vec<Vec<f64>>,
        #[serde(default)]
        im: Option<Vec<Vec<f64>>>,
    },
    /// Schmidt coefficients in the computational bases.
    Schmidt { coefficients: Vec<f64> },
    Coherent {
        family: u8,
        alpha: f64,
        #[serde(default)]
        cutoff: CutoffSpec,
    },
}

fn matrix_from_rows<T: Real>(
    rows: &[Vec<f64>],
    d1: usize,
    d2: usize,
    what: &str,
) -> Result<DMatrix<T>> {
    if rows.len() != d1 || rows.iter().any(|r| r.len() != d2) {
        return Err(Error::Validation(format!(
            "{what} must be a {d1}x{d2} array"
        )));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Validation(format!(
            "{what} contains a non-finite entry"
        )));
    }
    Ok(DMatrix::from_fn(d1, d2, |i, j| lit(rows[i][j])))
}

fn rows_of<T: Real>(m: &CMatrix<T>) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let part = |f: &dyn Fn(usize, usize) -> f64| -> Vec<Vec<f64>> {
        (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| f(i, j)).collect())
            .collect()
    };
    (
        part(&|i, j| to_f64(m[(i, j)].re)),
        part(&|i, j| to_f64(m[(i, j)].im)),
    )
}

impl StateSpec {
    /// Truncation used for a coherent spec, `None` for other kinds.
    pub fn fock_truncation<T: Real>(&self) -> Result<Option<FockTruncation<T>>> {
        match *self {
            StateSpec::Coherent { alpha, cutoff, .. } => {
                let a = lit::<T>(alpha);
                let t = lit::<T>(DEFAULT_TAIL_TOL);
                Ok(Some(match cutoff {
                    CutoffSpec::Auto(_) => FockTruncation::auto(a, t)?,
                    CutoffSpec::Fixed(n) => FockTruncation::fixed(a, n, t)?,
                }))
            }
            _ => Ok(None),
        }
    }

    pub fn to_state<T: Real>(&self) -> Result<PureState<T>> {
        match self {
            StateSpec::Dense { d1, d2, re, im } => {
                if *d1 == 0 || *d2 == 0 {
                    return Err(Error::Validation("dimensions must be positive".into()));
                }
                let r = matrix_from_rows::<T>(re, *d1, *d2, "re")?;
                let i = match im {
                    Some(rows) => matrix_from_rows::<T>(rows, *d1, *d2, "im")?,
                    None => DMatrix::zeros(*d1, *d2),
                };
                PureState::new(complex_from_parts(&r, &i))
            }
            StateSpec::Schmidt { .. } => self.to_schmidt::<T>()?.to_state(),
            StateSpec::Coherent { family, alpha, .. } => {
                let fam = CoherentFamily::new(Family::try_from(*family)?, lit::<T>(*alpha))?;
                let trunc = self.fock_truncation::<T>()?.expect("coherent spec");
                fock_state(&fam, &trunc)
            }
        }
    }

    /// Schmidt data, read directly for the `schmidt` kind and by SVD otherwise.
    pub fn to_schmidt<T: Real>(&self) -> Result<SchmidtData<T>> {
        match self {
            StateSpec::Schmidt { coefficients } => {
                if coefficients.iter().any(|c| !c.is_finite()) {
                    return Err(Error::Validation(
                        "Schmidt coefficients must be finite".into(),
                    ));
                }
                let c: Vec<T> = coefficients.iter().map(|&c| lit(c)).collect();
                SchmidtData::from_coefficients(&c)
            }
            _ => schmidt_decompose(
                &self.to_state::<T>()?,
                lit(crate::qstate::DEFAULT_TRUNCATION_TOL),
            ),
        }
    }

    pub fn dense<T: Real>(state: &PureState<T>) -> Self {
        let (re, im) = rows_of(state.amplitudes());
        StateSpec::Dense {
            d1: state.d1(),
            d2: state.d2(),
            re,
            im: Some(im),
        }
    }
}

/// Explicit coefficient table, nested setting1 → setting2 → outcome1 → outcome2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalTable {
    pub s1: usize,
    pub s2: usize,
    pub outcomes1: Vec<f64>,
    pub outcomes2: Vec<f64>,
    pub phi: Vec<Vec<Vec<Vec<f64>>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionalSpec {
    /// A builtin; only `"chsh"` is known.
    Named(String),
    Table(FunctionalTable),
}

impl FunctionalSpec {
    pub fn to_functional<T: Real>(&self) -> Result<BellFunctional<T>> {
        match self {
            FunctionalSpec::Named(name) if name.eq_ignore_ascii_case("chsh") => {
                Ok(BellFunctional::chsh())
            }
            FunctionalSpec::Named(name) => Err(Error::Validation(format!(
                "unknown builtin functional {name:?}"
            ))),
            FunctionalSpec::Table(t) => {
                if t.phi.len() != t.s1 || t.phi.iter().any(|row| row.len() != t.s2) {
                    return Err(Error::Validation(format!(
                        "phi must have {} x {} setting blocks",
                        t.s1, t.s2
                    )));
                }
                let conv = |v: &[f64]| -> Vec<T> { v.iter().map(|&x| lit(x)).collect() };
                let o1 = OutcomeSet::new(conv(&t.outcomes1))?;
                let o2 = OutcomeSet::new(conv(&t.outcomes2))?;
                let phi: Vec<Vec<Vec<Vec<T>>>> = t
                    .phi
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|blk| blk.iter().map(|r| conv(r)).collect())
                            .collect()
                    })
                    .collect();
                BellFunctional::from_nested(&phi, o1, o2)
            }
        }
    }

    pub fn table<T: Real>(f: &BellFunctional<T>) -> Self {
        let phi = (0..f.s1())
            .map(|x| {
                (0..f.s2())
                    .map(|y| {
                        (0..f.m1())
                            .map(|a| (0..f.m2()).map(|b| to_f64(f.phi(x, y, a, b))).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FunctionalSpec::Table(FunctionalTable {
            s1: f.s1(),
            s2: f.s2(),
            outcomes1: f.outcomes1().labels().iter().map(|&v| to_f64(v)).collect(),
            outcomes2: f.outcomes2().labels().iter().map(|&v| to_f64(v)).collect(),
            phi,
        })
    }
}

/// Dense source-operator export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceOperatorJson {
    pub s1: usize,
    pub s2: usize,
    pub d1: usize,
    pub d2: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl<T: Real> From<&SourceOperator<T>> for SourceOperatorJson {
    fn from(op: &SourceOperator<T>) -> Self {
        let (re, im) = rows_of(op.matrix());
        Self {
            s1: op.s1(),
            s2: op.s2(),
            d1: op.d1(),
            d2: op.d2(),
            re,
            im,
        }
    }
}

impl SourceOperatorJson {
    pub fn to_operator<T: Real>(&self) -> Result<SourceOperator<T>> {
        let n = self.re.len();
        let r = matrix_from_rows::<T>(&self.re, n, n, "re")?;
        let i = matrix_from_rows::<T>(&self.im, n, n, "im")?;
        SourceOperator::from_matrix(
            self.s1,
            self.s2,
            self.d1,
            self.d2,
            complex_from_parts(&r, &i),
        )
    }
}

/// A complex vector split into real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexVectorJson {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl<T: Real> From<&CVector<T>> for ComplexVectorJson {
    fn from(v: &CVector<T>) -> Self {
        Self {
            re: v.iter().map(|z| to_f64(z.re)).collect(),
            im: v.iter().map(|z| to_f64(z.im)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtJson {
    pub d1: usize,
    pub d2: usize,
    pub rank: usize,
    pub coefficients: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub truncation_tol: f64,
    pub left_basis: Vec<ComplexVectorJson>,
    pub right_basis: Vec<ComplexVectorJson>,
}

impl<T: Real> From<&SchmidtData<T>> for SchmidtJson {
    fn from(s: &SchmidtData<T>) -> Self {
        Self {
            d1: s.d1(),
            d2: s.d2(),
            rank: s.rank(),
            coefficients: s.coefficients().iter().map(|&c| to_f64(c)).collect(),
            lambdas: s.lambdas().into_iter().map(to_f64).collect(),
            truncation_tol: to_f64(s.truncation_tol()),
            left_basis: s.left_basis().iter().map(ComplexVectorJson::from).collect(),
            right_basis: s
                .right_basis()
                .iter()
                .map(ComplexVectorJson::from)
                .collect(),
        }
    }
}
