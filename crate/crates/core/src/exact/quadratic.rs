use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quadint::{merge_radicand, squarefree_split, QuadInt};
use super::approx::Scaled;

pub type Rational = BigRational;

/// An element `a + b·√d` of ℚ(√d), `d` squarefree. `d == 1` is plain ℚ.
///
/// Ordering and floors are exact. Mixing two different irrational radicands
/// is a logic error; [`PartialOrd`] returns `None` for it and the arithmetic
/// operators panic.
#[derive(Clone, Debug)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    d: u64,
}

/// Every value the digit dynamics touch is rational or quadratic.
pub type ExactNumber = QuadraticNumber;

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(d >= 1, "radicand must be positive");
        let (k, sf) = squarefree_split(d);
        let b = b * BigInt::from(k);
        if sf == 1 {
            QuadraticNumber { a: a + b, b: Rational::zero(), d: 1 }
        } else if b.is_zero() {
            QuadraticNumber { a, b, d: 1 }
        } else {
            QuadraticNumber { a, b, d: sf }
        }
    }

    pub fn rational(r: Rational) -> Self {
        QuadraticNumber { a: r, b: Rational::zero(), d: 1 }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(Rational::new(n.into(), d.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    /// `√s` for any positive integer `s`.
    pub fn sqrt_of(s: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), s)
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    /// Squarefree radicand, 1 when the value is rational.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn tidy(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            QuadraticNumber { a, b, d: 1 }
        } else {
            QuadraticNumber { a, b, d }
        }
    }

    /// Writes the value as `(u + v√d)/w` with integer `u, v` and `w > 0`.
    pub fn to_quadint_over(&self) -> (QuadInt, BigInt) {
        let w = self.a.denom().lcm(self.b.denom());
        let u = self.a.numer() * (&w / self.a.denom());
        let v = self.b.numer() * (&w / self.b.denom());
        (QuadInt::new(u, v, self.d), w)
    }

    /// `num / den` for ring elements; `den` must be nonzero.
    pub fn from_quadint_ratio(num: &QuadInt, den: &QuadInt) -> Self {
        assert!(!den.is_zero(), "division by zero");
        let d = merge_radicand(num.radicand(), den.radicand());
        let z = num * &den.conj();
        let w = den.norm();
        Self::tidy(
            Rational::new(z.rational_part().clone(), w.clone()),
            Rational::new(z.surd_part().clone(), w),
            d,
        )
    }

    pub fn signum(&self) -> Ordering {
        self.to_quadint_over().0.signum()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn conj(&self) -> Self {
        Self::tidy(self.a.clone(), -&self.b, self.d)
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        let n = self.norm();
        Self::tidy(&self.a / &n, -&self.b / &n, self.d)
    }

    /// Exact `⌊self⌋`, bracketing `b√d` by an integer square root.
    pub fn floor(&self) -> BigInt {
        let (num, w) = self.to_quadint_over();
        num.floor_div(&QuadInt::int(w))
    }

    pub fn to_f64(&self) -> f64 {
        let (num, w) = self.to_quadint_over();
        num.to_scaled().div(&Scaled::from_bigint(&w)).to_f64()
    }

    pub fn try_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.d != 1 && other.d != 1 && self.d != other.d {
            return None;
        }
        Some((self - other).signum())
    }
}

/// `⌊x⌋` for any exact number.
pub fn floor_exact(x: &ExactNumber) -> BigInt {
    x.floor()
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other)
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<i64> for QuadraticNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = merge_radicand(self.d, o.d);
        QuadraticNumber::tidy(&self.a + &o.a, &self.b + &o.b, d)
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = merge_radicand(self.d, o.d);
        QuadraticNumber::tidy(&self.a - &o.a, &self.b - &o.b, d)
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, o: &QuadraticNumber) -> QuadraticNumber {
        let d = merge_radicand(self.d, o.d);
        QuadraticNumber::tidy(
            &self.a * &o.a + &self.b * &o.b * BigInt::from(d),
            &self.a * &o.b + &self.b * &o.a,
            d,
        )
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn div(self, o: &QuadraticNumber) -> QuadraticNumber {
        self * &o.recip()
    }
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber { a: -&self.a, b: -&self.b, d: self.d }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, o: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.is_one() {
            format!("√{}", self.d)
        } else {
            format!("({})√{}", self.b.abs(), self.d)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {surd}", self.a)
        } else {
            write!(f, "{} + {surd}", self.a)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn floors() {
        assert_eq!(floor_exact(&QuadraticNumber::from_ratio(3, 2)), BigInt::from(1));
        assert_eq!(floor_exact(&QuadraticNumber::from_ratio(-3, 2)), BigInt::from(-2));
        assert_eq!(floor_exact(&QuadraticNumber::sqrt_of(2)), BigInt::from(1));
        let golden = QuadraticNumber::new(r(1, 2), r(1, 2), 5);
        assert_eq!(floor_exact(&golden), BigInt::from(1));
        assert_eq!(floor_exact(&-golden), BigInt::from(-2));
    }

    #[test]
    fn perfect_squares_collapse() {
        let x = QuadraticNumber::sqrt_of(100);
        assert!(x.is_rational());
        assert_eq!(x, QuadraticNumber::from_integer(10));
        let y = QuadraticNumber::sqrt_of(12);
        assert_eq!(y.radicand(), 3);
        assert_eq!(y.surd_part(), &r(2, 1));
    }

    #[test]
    fn reciprocal_and_ordering() {
        let s3 = QuadraticNumber::sqrt_of(3);
        let inv = s3.recip();
        assert_eq!(&inv * &s3, QuadraticNumber::one());
        assert!(inv < QuadraticNumber::from_ratio(58, 100));
        assert!(inv > QuadraticNumber::from_ratio(57, 100));
        assert_eq!(QuadraticNumber::sqrt_of(2).partial_cmp(&QuadraticNumber::sqrt_of(3)), None);
    }

    #[test]
    fn ring_ratio_roundtrip() {
        let num = QuadInt::new(1.into(), 2.into(), 3);
        let den = QuadInt::new(5.into(), (-1).into(), 3);
        let x = QuadraticNumber::from_quadint_ratio(&num, &den);
        let (u, w) = x.to_quadint_over();
        let back = QuadraticNumber::from_quadint_ratio(&u, &QuadInt::int(w));
        assert_eq!(back, x);
        assert!((x.to_f64() - (1.0 + 2.0 * 3f64.sqrt()) / (5.0 - 3f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn display() {
        assert_eq!(QuadraticNumber::from_ratio(3, 4).to_string(), "3/4");
        assert_eq!(QuadraticNumber::sqrt_of(3).to_string(), "√3");
        assert_eq!(QuadraticNumber::new(r(1, 2), r(-1, 3), 5).to_string(), "1/2 - (1/3)√5");
    }
}
