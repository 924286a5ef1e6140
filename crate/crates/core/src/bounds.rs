//! Closed-form upper bounds on the maximal Bell violation and the
//! quantum band that a violation parameter induces on any Bell functional.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{schmidt_sum_squared, SchmidtData};
use crate::scalar::{lit, tol, Real};

/// A Hilbert-space dimension or settings count that may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dim {
    Finite(usize),
    Infinite(InfiniteMarker),
}

/// Serializes as the string `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfiniteMarker {
    Infinite,
}

impl Dim {
    pub const INFINITE: Dim = Dim::Infinite(InfiniteMarker::Infinite);

    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(n) => Some(n),
            Dim::Infinite(_) => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Dim::Infinite(_))
    }
}

impl From<usize> for Dim {
    fn from(n: usize) -> Self {
        Dim::Finite(n)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::Infinite(_) => f.write_str("infinite"),
        }
    }
}

/// `2·min{(Σ√λ)², s1, s2} − 1`
pub fn theorem3_bound<T: Real>(schmidt: &SchmidtData<T>, s1: usize, s2: usize) -> T {
    assert!(s1 >= 1 && s2 >= 1, "settings counts must be positive");
    let mut m = schmidt_sum_squared(schmidt);
    for s in [s1, s2] {
        let s = lit::<T>(s as f64);
        if s < m {
            m = s;
        }
    }
    lit::<T>(2.0) * m - T::one()
}

/// `2(Σ√λ)² − 1`, independent of the number of settings.
pub fn corollary1_bound<T: Real>(schmidt: &SchmidtData<T>) -> T {
    lit::<T>(2.0) * schmidt_sum_squared(schmidt) - T::one()
}

/// `2·min{d1, d2, s1, s2} − 1` with infinite entries ignored; valid for all
/// states, pure or mixed, and arbitrary POVMs.
pub fn general_state_bound<T: Real>(d1: Dim, d2: Dim, s1: Dim, s2: Dim) -> Result<T> {
    let finite: Vec<usize> = [d1, d2, s1, s2].iter().filter_map(|d| d.finite()).collect();
    if finite.is_empty() {
        return Err(Error::Argument(
            "at least one dimension or settings count must be finite".into(),
        ));
    }
    if finite.contains(&0) {
        return Err(Error::Argument(
            "dimensions and settings counts must be positive".into(),
        ));
    }
    let m = *finite.iter().min().expect("nonempty");
    Ok(lit::<T>(2.0 * m as f64 - 1.0))
}

/// Bound for projective measurements with `d1 = d2 = d` and `s1 = s2 = s`:
/// `min{√d, 3}` for `s = 2`, `min{√(d^s), 2·min{d, s} − 1}` for `s ≥ 3`.
pub fn projective_bound<T: Real>(d: usize, s: usize) -> Result<T> {
    if d < 2 {
        return Err(Error::Argument(format!(
            "projective bound needs d >= 2, got {d}"
        )));
    }
    if s < 2 {
        return Err(Error::Argument(format!(
            "projective bound needs s >= 2, got {s}"
        )));
    }
    let df = lit::<T>(d as f64);
    let v = if s == 2 {
        let r = df.sqrt();
        let three = lit::<T>(3.0);
        if r < three {
            r
        } else {
            three
        }
    } else {
        let r = df.powf(lit::<T>(s as f64 / 2.0));
        let g = lit::<T>(2.0 * d.min(s) as f64 - 1.0);
        if r < g {
            r
        } else {
            g
        }
    };
    Ok(v)
}

/// Interval that every quantum Bell value must lie in given the LHV
/// extrema and an upper bound on the violation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band<T> {
    pub lower: T,
    pub upper: T,
}

impl<T: Real> Band<T> {
    pub fn contains(&self, x: T, slack: T) -> bool {
        x >= self.lower - slack && x <= self.upper + slack
    }
}

/// `[b_inf − (υ−1)/2·(b_sup−b_inf), b_sup + (υ−1)/2·(b_sup−b_inf)]`
pub fn quantum_band<T: Real>(b_sup: T, b_inf: T, upsilon_upper: T) -> Result<Band<T>> {
    if !(b_sup >= b_inf) {
        return Err(Error::Argument("b_sup must be at least b_inf".into()));
    }
    // bounds computed from Schmidt data can land a few ulps below 1
    if !(upsilon_upper >= T::one() - tol::<T>(1e-9)) {
        return Err(Error::Argument("violation bound must be at least 1".into()));
    }
    let excess = if upsilon_upper > T::one() {
        upsilon_upper - T::one()
    } else {
        T::zero()
    };
    let widen = excess / lit::<T>(2.0) * (b_sup - b_inf);
    Ok(Band {
        lower: b_inf - widen,
        upper: b_sup + widen,
    })
}

/// Every bound applicable to one pure state and settings scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub theorem3: T,
    pub corollary1: T,
    pub general_0_1: T,
    /// Present only when the caller asserts equal dimensions, equal
    /// settings and projective measurements.
    pub projective_0_2: Option<T>,
    pub applicable_min: T,
    pub s1: usize,
    pub s2: usize,
    pub d1: Dim,
    pub d2: Dim,
}

/// Collects all bounds for `schmidt` in an `s1×s2` scenario. `d1`/`d2`
/// default to the Schmidt data's dimensions when `None`.
pub fn bound_report<T: Real>(
    schmidt: &SchmidtData<T>,
    s1: usize,
    s2: usize,
    dims: Option<(Dim, Dim)>,
    assert_projective: bool,
) -> Result<BoundReport<T>> {
    if s1 == 0 || s2 == 0 {
        return Err(Error::Argument("settings counts must be positive".into()));
    }
    let (d1, d2) = dims.unwrap_or((Dim::Finite(schmidt.d1()), Dim::Finite(schmidt.d2())));
    let theorem3 = theorem3_bound(schmidt, s1, s2);
    let corollary1 = corollary1_bound(schmidt);
    let general = general_state_bound(d1, d2, Dim::Finite(s1), Dim::Finite(s2))?;
    let projective = if assert_projective {
        match (d1, d2) {
            (Dim::Finite(a), Dim::Finite(b)) if a == b && s1 == s2 => {
                Some(projective_bound(a, s1)?)
            }
            _ => {
                return Err(Error::Argument(
                    "projective bound requires finite d1 = d2 and s1 = s2".into(),
                ))
            }
        }
    } else {
        None
    };
    let mut applicable_min = theorem3;
    for v in [Some(corollary1), Some(general), projective]
        .into_iter()
        .flatten()
    {
        if v < applicable_min {
            applicable_min = v;
        }
    }
    Ok(BoundReport {
        theorem3,
        corollary1,
        general_0_1: general,
        projective_0_2: projective,
        applicable_min,
        s1,
        s2,
        d1,
        d2,
    })
}
