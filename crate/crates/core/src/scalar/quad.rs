use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{approx_rational, format_rational, rat_is_neg, rat_to_f64};
use super::{Field, Scalar};

/// Reduction rule `g² = P + Q·g` for a quadratic generator `g`.
pub trait QuadRule:
    Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static
{
    const P: i64;
    const Q: i64;
    const SYMBOL: &'static str;
    fn generator_c64() -> Complex64;
}

/// ω with ω² = −1 − ω.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OmegaRule;

impl QuadRule for OmegaRule {
    const P: i64 = -1;
    const Q: i64 = -1;
    const SYMBOL: &'static str = "w";
    fn generator_c64() -> Complex64 {
        Complex64::new(-0.5, 3f64.sqrt() / 2.0)
    }
}

/// i with i² = −1.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IRule;

impl QuadRule for IRule {
    const P: i64 = -1;
    const Q: i64 = 0;
    const SYMBOL: &'static str = "i";
    fn generator_c64() -> Complex64 {
        Complex64::new(0.0, 1.0)
    }
}

/// `c0 + c1·g` with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad<R: QuadRule> {
    pub c0: BigRational,
    pub c1: BigRational,
    _rule: PhantomData<R>,
}

/// Elements of ℚ(ω).
pub type CycRat = Quad<OmegaRule>;
/// Elements of ℚ(i).
pub type GaussRat = Quad<IRule>;

impl<R: QuadRule> Quad<R> {
    pub fn new(c0: BigRational, c1: BigRational) -> Self {
        Quad {
            c0,
            c1,
            _rule: PhantomData,
        }
    }

    pub fn from_rational(c0: BigRational) -> Self {
        Self::new(c0, BigRational::zero())
    }

    pub fn from_ints(c0: i64, c1: i64) -> Self {
        Self::new(BigRational::from_integer(c0.into()), BigRational::from_integer(c1.into()))
    }

    pub fn from_fracs(p0: i64, q0: i64, p1: i64, q1: i64) -> Self {
        Self::new(
            BigRational::new(p0.into(), q0.into()),
            BigRational::new(p1.into(), q1.into()),
        )
    }

    /// The adjoined generator `g`.
    pub fn generator() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_rational(&self) -> bool {
        self.c1.is_zero()
    }

    /// Image under the nontrivial automorphism `g ↦ Q − g`.
    pub fn conj(&self) -> Self {
        let q = BigRational::from_integer(R::Q.into());
        Self::new(&self.c0 + &self.c1 * q, -self.c1.clone())
    }

    /// `x · conj(x)`, a rational.
    pub fn norm(&self) -> BigRational {
        let p = BigRational::from_integer(R::P.into());
        let q = BigRational::from_integer(R::Q.into());
        &self.c0 * &self.c0 + &self.c0 * &self.c1 * q - &self.c1 * &self.c1 * p
    }
}

impl CycRat {
    pub fn omega() -> Self {
        Self::generator()
    }
}

impl<R: QuadRule> fmt::Debug for Quad<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<R: QuadRule> fmt::Display for Quad<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = R::SYMBOL;
        match (self.c0.is_zero(), self.c1.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.c0)),
            (true, false) => write!(f, "{}{}", coeff_prefix(&self.c1), sym),
            (false, false) => {
                let sign = if rat_is_neg(&self.c1) { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}{}",
                    format_rational(&self.c0),
                    sign,
                    coeff_prefix(&self.c1.abs()),
                    sym
                )
            }
        }
    }
}

fn coeff_prefix(c: &BigRational) -> String {
    if c.is_one() {
        String::new()
    } else if *c == -BigRational::one() {
        "-".into()
    } else {
        format_rational(c)
    }
}

impl<R: QuadRule> Add for Quad<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.c0 + o.c0, self.c1 + o.c1)
    }
}

impl<R: QuadRule> Sub for Quad<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.c0 - o.c0, self.c1 - o.c1)
    }
}

impl<R: QuadRule> Neg for Quad<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.c1)
    }
}

impl<R: QuadRule> Mul for Quad<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<'a, R: QuadRule> Mul<&'a Quad<R>> for &'a Quad<R> {
    type Output = Quad<R>;
    fn mul(self, o: &Quad<R>) -> Quad<R> {
        if self.c1.is_zero() && o.c1.is_zero() {
            return Quad::from_rational(&self.c0 * &o.c0);
        }
        let bd = &self.c1 * &o.c1;
        let mut c0 = &self.c0 * &o.c0;
        let mut c1 = &self.c0 * &o.c1 + &self.c1 * &o.c0;
        if !bd.is_zero() {
            c0 += &bd * BigRational::from_integer(R::P.into());
            c1 += bd * BigRational::from_integer(R::Q.into());
        }
        Quad::new(c0, c1)
    }
}

impl<R: QuadRule> Scalar for Quad<R> {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::from_ints(0, 0)
    }
    fn one() -> Self {
        Self::from_ints(1, 0)
    }
    fn from_i64(v: i64) -> Self {
        Self::from_ints(v, 0)
    }
    fn from_cyc(c: &CycRat) -> Option<Self> {
        if R::SYMBOL == OmegaRule::SYMBOL {
            Some(Self::new(c.c0.clone(), c.c1.clone()))
        } else if c.c1.is_zero() {
            Some(Self::from_rational(c.c0.clone()))
        } else {
            None
        }
    }
    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Self::new(c.c0 / &n, c.c1 / n))
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.try_inv().map(|i| self * &i)
    }
    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }
}

impl<R: QuadRule> Field for Quad<R> {
    fn to_c64(&self) -> Complex64 {
        let g = R::generator_c64();
        Complex64::new(rat_to_f64(&self.c0), 0.0) + g * rat_to_f64(&self.c1)
    }

    fn recognize(z: Complex64) -> Option<Self> {
        let g = R::generator_c64();
        let c1 = z.im / g.im;
        let c0 = z.re - c1 * g.re;
        let tol = 1e-9;
        let r1 = approx_rational(c1, 1_000_000, tol)?;
        let r0 = approx_rational(c0, 1_000_000, tol)?;
        Some(Self::new(r0, r1))
    }
}
