//! Scalar abstractions shared by the symbolic and numerical backends.
//!
//! The symbolic engine is generic over a coefficient field [`Coeff`]; exact
//! rationals are the default, but any `num-traits` field (including `f64`)
//! works for approximate runs. The numerical backend is generic over a
//! [`Real`] floating-point type (`f32` or `f64`).

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use nalgebra::RealField;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Real coefficient field of the symbolic algebra. Gaussian coefficients are
/// `Complex<R>` over this field.
pub trait Coeff:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl<R> Coeff for R where
    R: Clone
        + PartialEq
        + Debug
        + Num
        + Neg<Output = R>
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

/// Coefficients with an exact textual form (`n` or `n/d`), needed by the
/// expression parser and renderer.
pub trait ExactCoeff: Coeff {
    /// Builds `num/den` from decimal digit strings.
    fn from_fraction(num: &str, den: &str) -> Option<Self>;
    fn is_negative(&self) -> bool;
    /// Renders the absolute value as `n` or `n/d`.
    fn fmt_abs(&self) -> String;
}

impl<I> ExactCoeff for Ratio<I>
where
    I: num_integer::Integer + Signed + Clone + Display + FromStr + Debug + Send + Sync,
    Ratio<I>: Coeff,
{
    fn from_fraction(num: &str, den: &str) -> Option<Self> {
        let n = I::from_str(num).ok()?;
        let d = I::from_str(den).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn fmt_abs(&self) -> String {
        let a = Signed::abs(self);
        if a.denom().is_one() {
            format!("{}", a.numer())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// `num/den` in an arbitrary coefficient field.
pub fn frac<R: Coeff>(num: i64, den: i64) -> R {
    let n = R::from_i64(num).expect("integer fits the coefficient field");
    let d = R::from_i64(den).expect("integer fits the coefficient field");
    n / d
}

/// Gaussian coefficient `re + im*i`.
pub fn gauss<R: Coeff>(re: R, im: R) -> Complex<R> {
    Complex::new(re, im)
}

pub fn c_real<R: Coeff>(num: i64, den: i64) -> Complex<R> {
    Complex::new(frac(num, den), R::zero())
}

pub fn c_imag<R: Coeff>(num: i64, den: i64) -> Complex<R> {
    Complex::new(R::zero(), frac(num, den))
}

pub(crate) fn c_is_zero<R: Coeff>(c: &Complex<R>) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

/// Floating-point scalar of the numerical backend.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Display + Send + Sync {
    /// Machine epsilon as a plain value.
    fn eps() -> Self;
}

impl Real for f32 {
    fn eps() -> Self {
        f32::EPSILON
    }
}

impl Real for f64 {
    fn eps() -> Self {
        f64::EPSILON
    }
}

/// Converts an `f64` literal into `T`.
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite literal")
}
