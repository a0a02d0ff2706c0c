use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx::Scaled;

/// An element `a + b·√d` of ℤ[√d] with `d` squarefree.
///
/// `d == 1` denotes plain integers; in that case `b` is always zero.
#[derive(Clone, Debug)]
pub struct QuadInt {
    a: BigInt,
    b: BigInt,
    d: u64,
}

/// Picks the common radicand of two operands. Plain integers (`d == 1`) mix
/// with anything; two different irrational radicands cannot be combined.
pub(crate) fn merge_radicand(d1: u64, d2: u64) -> u64 {
    if d1 == 1 || d1 == d2 {
        d2
    } else if d2 == 1 {
        d1
    } else {
        panic!("cannot combine elements of Q(sqrt({d1})) and Q(sqrt({d2}))")
    }
}

/// Splits `s = k²·d` with `d` squarefree.
pub fn squarefree_split(s: u64) -> (u64, u64) {
    assert!(s > 0, "radicand must be positive");
    let mut k = 1u64;
    let mut d = 1u64;
    let mut rest = s;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += 1;
    }
    d *= rest;
    (k, d)
}

/// Exact `⌊u/w⌋` for `w > 0`. Orbit keys are ratios of huge integers with a
/// small quotient, so the quotient is estimated from the leading bits and
/// then corrected; a general long division is the fallback.
pub(crate) fn floor_div_int(u: &BigInt, w: &BigInt) -> BigInt {
    debug_assert!(w.is_positive());
    if u.is_negative() || w.bits() < 128 {
        return u.div_floor(w);
    }
    if u.bits() < w.bits() {
        return BigInt::zero();
    }
    if u.bits() - w.bits() > 60 {
        return u.div_floor(w);
    }
    let shift = w.bits() - 64;
    let q = (u >> shift).div_floor(&(w >> shift));
    let mut q = q.to_u64().expect("quotient below 2^62");
    // the estimate is off by at most one in either direction
    let mut r = u - w * q;
    while r.is_negative() {
        q -= 1;
        r += w;
    }
    while &r >= w {
        q += 1;
        r -= w;
    }
    BigInt::from(q)
}

/// Exact `⌊(u + v·√d)/w⌋` for `w > 0`.
pub(crate) fn floor_surd_over(u: &BigInt, v: &BigInt, d: u64, w: &BigInt) -> BigInt {
    debug_assert!(w.is_positive());
    let t = if v.is_zero() {
        BigInt::zero()
    } else if d == 1 {
        v.clone()
    } else {
        // v·√d is irrational, so ⌊v√d⌋ = ±isqrt(v²d) (-1 when negative)
        let r = (v * v * BigInt::from(d)).sqrt();
        if v.is_positive() {
            r
        } else {
            -r - 1
        }
    };
    (u + t).div_floor(w)
}

impl QuadInt {
    pub fn new(a: BigInt, b: BigInt, d: u64) -> Self {
        debug_assert!(d >= 1);
        if d == 1 {
            QuadInt { a: a + b, b: BigInt::zero(), d: 1 }
        } else {
            QuadInt { a, b, d }
        }
    }

    pub fn int(a: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: BigInt::zero(), d: 1 }
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `√s` as an element of ℤ[√d] where `s = k²d`.
    pub fn sqrt_of(s: u64) -> Self {
        let (k, d) = squarefree_split(s);
        if d == 1 {
            Self::int(k)
        } else {
            QuadInt { a: BigInt::zero(), b: BigInt::from(k), d }
        }
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.a
    }

    pub fn surd_part(&self) -> &BigInt {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        if self.b.is_zero() {
            1
        } else {
            self.d
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign of the real number `a + b√d`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign_ord();
        let sb = self.b.sign_ord();
        match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            _ => {
                // opposite signs: compare a² with d·b²
                let a2 = &self.a * &self.a;
                let db2 = &self.b * &self.b * BigInt::from(self.d);
                if a2 > db2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn conj(&self) -> Self {
        QuadInt { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> BigInt {
        if self.b.is_zero() {
            &self.a * &self.a
        } else {
            &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d)
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if self.b.is_zero() {
            QuadInt { a: &self.a * k, b: BigInt::zero(), d: 1 }
        } else {
            QuadInt { a: &self.a * k, b: &self.b * k, d: self.d }
        }
    }

    pub fn scale_small(&self, k: u64) -> Self {
        if self.b.is_zero() {
            QuadInt { a: &self.a * k, b: BigInt::zero(), d: 1 }
        } else {
            QuadInt { a: &self.a * k, b: &self.b * k, d: self.d }
        }
    }

    /// Exact `⌊self / den⌋`; panics if `den` is zero.
    pub fn floor_div(&self, den: &Self) -> BigInt {
        assert!(!den.is_zero(), "division by zero");
        if den.b.is_zero() {
            let (u, v, w) = if den.a.is_negative() {
                (-&self.a, -&self.b, -&den.a)
            } else {
                (self.a.clone(), self.b.clone(), den.a.clone())
            };
            if v.is_zero() {
                return floor_div_int(&u, &w);
            }
            return floor_surd_over(&u, &v, self.d, &w);
        }
        let d = merge_radicand(self.radicand(), den.radicand());
        let z = self * &den.conj();
        let w = den.norm();
        if w.is_negative() {
            floor_surd_over(&-z.a, &-z.b, d, &-w)
        } else {
            floor_surd_over(&z.a, &z.b, d, &w)
        }
    }

    /// Exact `⌈self / den⌉`.
    pub fn ceil_div(&self, den: &Self) -> BigInt {
        -(-self).floor_div(den)
    }

    pub fn divisible_by(&self, p: u64) -> bool {
        (&self.a % p).is_zero() && (&self.b % p).is_zero()
    }

    /// Largest `k` with `2^k` dividing both parts, or `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u64> {
        match (self.a.trailing_zeros(), self.b.trailing_zeros()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    pub fn shr_exact(&mut self, k: u64) {
        self.a >>= k;
        if !self.b.is_zero() {
            self.b >>= k;
        }
    }

    pub fn div_exact_small(&mut self, p: u64) {
        self.a /= p;
        if !self.b.is_zero() {
            self.b /= p;
        }
    }

    /// Approximate magnitude-preserving conversion. Cancellation between the
    /// two parts is avoided by going through the conjugate.
    pub fn to_scaled(&self) -> Scaled {
        if self.b.is_zero() {
            return Scaled::from_bigint(&self.a);
        }
        let sqrt_d = (self.d as f64).sqrt();
        if self.a.sign_ord() == self.b.sign_ord() || self.a.is_zero() {
            Scaled::from_bigint(&self.a).add(&Scaled::from_bigint(&self.b).mul_f64(sqrt_d))
        } else {
            let conj = Scaled::from_bigint(&self.a).add(&Scaled::from_bigint(&-&self.b).mul_f64(sqrt_d));
            Scaled::from_bigint(&self.norm()).div(&conj)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_scaled().to_f64()
    }

    pub fn bits(&self) -> u64 {
        self.a.bits().max(self.b.bits())
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

impl PartialEq for QuadInt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadInt {}

impl From<i64> for QuadInt {
    fn from(v: i64) -> Self {
        QuadInt::int(v)
    }
}

impl From<BigInt> for QuadInt {
    fn from(v: BigInt) -> Self {
        QuadInt::int(v)
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        if self.b.is_zero() && o.b.is_zero() {
            return QuadInt::int(&self.a + &o.a);
        }
        let d = merge_radicand(self.radicand(), o.radicand());
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b, d }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        if self.b.is_zero() && o.b.is_zero() {
            return QuadInt::int(&self.a - &o.a);
        }
        let d = merge_radicand(self.radicand(), o.radicand());
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b, d }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, true) => QuadInt::int(&self.a * &o.a),
            (true, false) => QuadInt { a: &self.a * &o.a, b: &self.a * &o.b, d: o.d },
            (false, true) => QuadInt { a: &self.a * &o.a, b: &self.b * &o.a, d: self.d },
            (false, false) => {
                let d = merge_radicand(self.radicand(), o.radicand());
                QuadInt {
                    a: &self.a * &o.a + &self.b * &o.b * BigInt::from(d),
                    b: &self.a * &o.b + &self.b * &o.a,
                    d,
                }
            }
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        &self + &o
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        &self - &o
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        &self * &o
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√{}", self.b, self.d)
        } else if self.b.is_negative() {
            write!(f, "{} - {}√{}", self.a, -&self.b, self.d)
        } else {
            write!(f, "{} + {}√{}", self.a, self.b, self.d)
        }
    }
}

impl Zero for QuadInt {
    fn zero() -> Self {
        QuadInt::int(0)
    }
    fn is_zero(&self) -> bool {
        QuadInt::is_zero(self)
    }
}

impl One for QuadInt {
    fn one() -> Self {
        QuadInt::int(1)
    }
}
