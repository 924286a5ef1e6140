//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All algorithms are written against [`Real`], which is implemented for
//! `f32` and `f64`. Tolerances are expressed in `f64` and widened to a few
//! hundred ulps of the active type, so the same code path runs in single
//! precision with proportionally looser checks.

use approx::AbsDiffEq;
use nalgebra::{Complex, DMatrix, DVector, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar usable throughout the crate.
pub trait Real:
    RealField + AbsDiffEq<Epsilon = Self> + Copy + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl<T> Real for T where
    T: RealField + AbsDiffEq<Epsilon = Self> + Copy + FromPrimitive + ToPrimitive + Send + Sync
{
}

pub type Cx<T> = Complex<T>;
pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in target scalar")
}

/// Tolerance `base`, but never tighter than 100 ulps of `T`.
#[inline]
pub fn tol<T: Real>(base: f64) -> T {
    let floor = T::default_epsilon() * lit::<T>(100.0);
    let b = lit::<T>(base);
    if b > floor {
        b
    } else {
        floor
    }
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub fn re<T: Real>(x: T) -> Cx<T> {
    Complex::new(x, T::zero())
}
