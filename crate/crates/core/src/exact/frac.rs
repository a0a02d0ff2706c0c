use std::cmp::Ordering;

use num_bigint::BigInt;

use super::approx::Scaled;
use super::quadint::QuadInt;
use super::quadratic::{ExactNumber, Rational};

/// A point `num/den` in homogeneous coordinates over ℤ[√d].
///
/// The pair is kept with `den > 0` but is not reduced by a full gcd; orbit
/// code strips known small prime factors instead, which is far cheaper on
/// numbers with tens of thousands of bits.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: QuadInt,
    pub den: QuadInt,
}

impl Frac {
    /// Builds `num/den`, flipping signs so that `den > 0`. Panics on `den == 0`.
    pub fn new(num: QuadInt, den: QuadInt) -> Self {
        match den.signum() {
            Ordering::Greater => Frac { num, den },
            Ordering::Less => Frac { num: -num, den: -den },
            Ordering::Equal => panic!("zero denominator"),
        }
    }

    pub fn from_ints(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Frac::new(QuadInt::int(num.into()), QuadInt::int(den.into()))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Frac { num: QuadInt::int(r.numer().clone()), den: QuadInt::int(r.denom().clone()) }
    }

    pub fn from_exact(x: &ExactNumber) -> Self {
        let (num, w) = x.to_quadint_over();
        Frac { num, den: QuadInt::int(w) }
    }

    pub fn to_exact(&self) -> ExactNumber {
        ExactNumber::from_quadint_ratio(&self.num, &self.den)
    }

    pub fn cmp_exact(&self, other: &Frac) -> Ordering {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).signum()
    }

    pub fn eq_exact(&self, other: &Frac) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }

    /// Divides out every listed prime that divides both coordinates.
    pub fn reduce_by(&mut self, primes: &[u64]) {
        for &p in primes {
            if p == 2 {
                // a zero numerator is divisible by everything
                if let Some(b) = self.den.trailing_zeros() {
                    let k = self.num.trailing_zeros().map_or(b, |a| a.min(b));
                    if k > 0 {
                        self.num.shr_exact(k);
                        self.den.shr_exact(k);
                    }
                }
                continue;
            }
            while self.den.divisible_by(p) && self.num.divisible_by(p) {
                self.num.div_exact_small(p);
                self.den.div_exact_small(p);
            }
        }
    }

    pub fn to_scaled(&self) -> Scaled {
        self.num.to_scaled().div(&self.den.to_scaled())
    }

    pub fn to_f64(&self) -> f64 {
        self.to_scaled().to_f64()
    }

    pub fn bits(&self) -> u64 {
        self.num.bits().max(self.den.bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_normalized() {
        let f = Frac::from_ints(3, -4);
        assert!(f.den.is_positive());
        assert!(f.eq_exact(&Frac::from_ints(-6, 8)));
    }

    #[test]
    fn reduction_strips_listed_primes_only() {
        let mut f = Frac::from_ints(2 * 2 * 3 * 7, 2 * 3 * 3 * 7);
        f.reduce_by(&[2, 3]);
        assert_eq!(f.num, QuadInt::int(14));
        assert_eq!(f.den, QuadInt::int(21));
    }

    #[test]
    fn zero_reduces_to_canonical_form() {
        let mut f = Frac::from_ints(0, 8);
        f.reduce_by(&[2]);
        assert_eq!(f.den, QuadInt::int(1));
    }
}
