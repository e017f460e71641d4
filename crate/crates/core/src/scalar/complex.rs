use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;

use super::quad::CycRat;
use super::{Field, Scalar};

static TOLERANCE: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Ring-level zero tolerance of the numeric ring.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE.load(Ordering::Relaxed))
}

pub fn set_tolerance(eps: f64) {
    assert!(eps > 0.0 && eps.is_finite(), "tolerance must be positive");
    TOLERANCE.store(eps.to_bits(), Ordering::Relaxed);
}

/// Double-precision complex number whose zero test uses [`tolerance`].
#[derive(Clone, Copy, PartialEq, Default)]
pub struct C64(pub Complex64);

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64(Complex64::new(re, im))
    }
    pub fn re(&self) -> f64 {
        self.0.re
    }
    pub fn im(&self) -> f64 {
        self.0.im
    }
    pub fn abs(&self) -> f64 {
        self.0.norm()
    }
    pub fn conj(&self) -> Self {
        C64(self.0.conj())
    }
    pub fn scale(&self, s: f64) -> Self {
        C64(self.0 * s)
    }
}

impl From<Complex64> for C64 {
    fn from(z: Complex64) -> Self {
        C64(z)
    }
}

impl From<f64> for C64 {
    fn from(x: f64) -> Self {
        C64::new(x, 0.0)
    }
}

impl fmt::Debug for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.0.re, self.0.im);
        if im == 0.0 {
            write!(f, "{re}")
        } else if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl Add for C64 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        C64(self.0 + o.0)
    }
}
impl Sub for C64 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        C64(self.0 - o.0)
    }
}
impl Mul for C64 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        C64(self.0 * o.0)
    }
}
impl Neg for C64 {
    type Output = Self;
    fn neg(self) -> Self {
        C64(-self.0)
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        C64::new(v as f64, 0.0)
    }
    fn from_cyc(c: &CycRat) -> Option<Self> {
        Some(C64(c.to_c64()))
    }
    fn is_zero(&self) -> bool {
        self.0.norm() <= tolerance()
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(C64(self.0.inv()))
        }
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.try_inv().map(|i| *self * i)
    }
    fn magnitude(&self) -> f64 {
        self.0.norm()
    }
    fn negligible(&self, scale: f64) -> bool {
        self.0.norm() <= tolerance() * scale.max(f64::MIN_POSITIVE)
    }
}

impl Field for C64 {
    fn to_c64(&self) -> Complex64 {
        self.0
    }
    fn recognize(z: Complex64) -> Option<Self> {
        Some(C64(z))
    }
}
