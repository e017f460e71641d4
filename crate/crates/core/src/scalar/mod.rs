//! Coefficient rings: exact quadratic fields, Laurent polynomials over ℚ(ω),
//! and tolerance-aware complex floats.

mod complex;
mod laurent;
mod parse;
mod quad;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use complex::{set_tolerance, tolerance, C64};
pub use laurent::{poly_p, Laurent};
pub use parse::{parse_param, ParamValue};
pub use quad::{CycRat, GaussRat, IRule, OmegaRule, Quad, QuadRule};
pub use rational::{approx_rational, format_rational, parse_rational};

/// A commutative ring of matrix coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Equality is decidable and zero tests never use a tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Embed an element of ℚ(ω), if the ring contains it.
    fn from_cyc(c: &CycRat) -> Option<Self>;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse when `self` is a unit.
    fn try_inv(&self) -> Option<Self>;
    /// `self / d` when the quotient exists in the ring.
    fn exact_div(&self, d: &Self) -> Option<Self>;
    /// Size estimate used for pivoting and deviation reports.
    fn magnitude(&self) -> f64;

    /// Zero test relative to `scale`; only numeric rings look at `scale`.
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn omega() -> Option<Self> {
        Self::from_cyc(&CycRat::omega())
    }

    fn pow_i(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.try_inv().ok_or(Error::DivisionByZero)?
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * sq.clone();
            }
            k >>= 1;
            if k > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }
}

/// A scalar ring in which every nonzero element is invertible.
pub trait Field: Scalar {
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    fn div(&self, d: &Self) -> Self {
        self.clone() * d.inv()
    }

    fn to_c64(&self) -> Complex64;

    /// Best exact element near `z`; numeric fields return `z` itself.
    fn recognize(z: Complex64) -> Option<Self>;
}
