use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use super::frac::Frac;
use super::interval::ExactInterval;
use super::quadint::QuadInt;
use super::quadratic::ExactNumber;
use crate::error::{Error, Result};

/// The fractional-linear map `x ↦ (a·x + b)/(c·x + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    pub a: QuadInt,
    pub b: QuadInt,
    pub c: QuadInt,
    pub d: QuadInt,
}

impl MobiusMap {
    /// Panics if the determinant vanishes.
    pub fn new(a: QuadInt, b: QuadInt, c: QuadInt, d: QuadInt) -> Self {
        let m = MobiusMap { a, b, c, d };
        assert!(!m.det().is_zero(), "degenerate Möbius map");
        m
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> QuadInt {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// `true` when the map is increasing away from its pole.
    pub fn is_increasing(&self) -> bool {
        self.det().is_positive()
    }

    /// Matrix product: `self.compose(other)` is `x ↦ self(other(x))`.
    pub fn compose(&self, o: &MobiusMap) -> MobiusMap {
        let m = MobiusMap {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
        };
        debug_assert!(!m.det().is_zero());
        m
    }

    /// The inverse map, as the adjugate matrix.
    pub fn adjugate(&self) -> MobiusMap {
        MobiusMap { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// Applies the map in homogeneous coordinates; `None` at the pole.
    pub fn apply_frac(&self, x: &Frac) -> Option<Frac> {
        let den = &(&self.c * &x.num) + &(&self.d * &x.den);
        if den.is_zero() {
            return None;
        }
        let num = &(&self.a * &x.num) + &(&self.b * &x.den);
        Some(Frac::new(num, den))
    }

    pub fn apply(&self, x: &ExactNumber) -> Result<ExactNumber> {
        self.apply_frac(&Frac::from_exact(x)).map(|f| f.to_exact()).ok_or(Error::Pole)
    }

    /// Value at `x → ∞`, i.e. `a/c`.
    pub fn at_infinity(&self) -> Option<Frac> {
        (!self.c.is_zero()).then(|| Frac::new(self.a.clone(), self.c.clone()))
    }

    /// `true` when `c·x + d` takes the same nonzero sign at both points,
    /// so the pole lies outside the closed segment between them.
    pub fn pole_free_between(&self, x: &Frac, y: &Frac) -> bool {
        let sx = (&(&self.c * &x.num) + &(&self.d * &x.den)).signum();
        let sy = (&(&self.c * &y.num) + &(&self.d * &y.den)).signum();
        sx != Ordering::Equal && sx == sy
    }

    /// Image of an interval, endpoints sorted and open/closed flags carried
    /// along with the orientation.
    pub fn image(&self, iv: &ExactInterval) -> Result<ExactInterval> {
        let lo = Frac::from_exact(&iv.lo);
        let hi = Frac::from_exact(&iv.hi);
        if !self.pole_free_between(&lo, &hi) {
            return Err(Error::Pole);
        }
        let flo = self.apply_frac(&lo).ok_or(Error::Pole)?.to_exact();
        let fhi = self.apply_frac(&hi).ok_or(Error::Pole)?.to_exact();
        Ok(if self.is_increasing() {
            ExactInterval { lo: flo, hi: fhi, lo_closed: iv.lo_closed, hi_closed: iv.hi_closed }
        } else {
            ExactInterval { lo: fhi, hi: flo, lo_closed: iv.hi_closed, hi_closed: iv.lo_closed }
        })
    }

    /// Strips each listed prime while it divides all four entries.
    pub fn reduce_by(&mut self, primes: &[u64]) {
        for &p in primes {
            while [&self.a, &self.b, &self.c, &self.d].iter().all(|e| e.divisible_by(p)) {
                for e in [&mut self.a, &mut self.b, &mut self.c, &mut self.d] {
                    e.div_exact_small(p);
                }
            }
        }
    }

    pub fn entries(&self) -> [&QuadInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn max_bits(&self) -> u64 {
        self.entries().iter().map(|e| e.bits()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &BigInt) -> MobiusMap {
        MobiusMap { a: self.a.scale(k), b: self.b.scale(k), c: self.c.scale(k), d: self.d.scale(k) }
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactNumber {
        ExactNumber::from_ratio(n, d)
    }

    #[test]
    fn composition_examples() {
        let g1 = MobiusMap::from_ints(0, 1, 1, 1);
        assert_eq!(MobiusMap::identity().compose(&g1), g1);
        assert_eq!(g1.compose(&g1), MobiusMap::from_ints(1, 1, 1, 2));
        assert_eq!(g1.compose(&g1).apply(&q(0, 1)).unwrap(), q(1, 2));
        let g2 = MobiusMap::from_ints(0, 1, 1, 2);
        assert_eq!(g2.compose(&g2).apply(&q(0, 1)).unwrap(), q(2, 5));
    }

    #[test]
    fn application_examples() {
        assert_eq!(MobiusMap::identity().apply(&q(7, 3)).unwrap(), q(7, 3));
        assert_eq!(MobiusMap::from_ints(0, 1, 1, 2).apply(&q(0, 1)).unwrap(), q(1, 2));
        // Rényi N=2 branch 2: t ↦ (t + 0)/(t + 2)
        assert_eq!(MobiusMap::from_ints(1, 0, 1, 2).apply(&q(0, 1)).unwrap(), q(0, 1));
        assert_eq!(MobiusMap::from_ints(1, 0, 1, 2).apply(&q(-2, 1)), Err(Error::Pole));
    }

    #[test]
    fn image_examples() {
        let unit = ExactInterval::closed(q(0, 1), q(1, 1));
        assert_eq!(MobiusMap::identity().image(&unit).unwrap(), unit);
        let g = MobiusMap::from_ints(0, 1, 1, 2).image(&unit).unwrap();
        assert_eq!(g, ExactInterval::closed(q(1, 3), q(1, 2)));
        let chan = MobiusMap::from_ints(0, 1, 2, 2).image(&unit).unwrap();
        assert_eq!(chan, ExactInterval::closed(q(1, 4), q(1, 2)));
    }

    #[test]
    fn image_flips_flags_for_decreasing_maps() {
        let half_open = ExactInterval::new(q(0, 1), q(1, 1), true, false).unwrap();
        let g = MobiusMap::from_ints(0, 1, 1, 2).image(&half_open).unwrap();
        assert!(!g.lo_closed && g.hi_closed);
    }

    #[test]
    fn pole_inside_is_rejected() {
        let m = MobiusMap::from_ints(1, 0, 1, -1); // pole at x = 1
        let iv = ExactInterval::closed(q(0, 1), q(2, 1));
        assert_eq!(m.image(&iv), Err(Error::Pole));
    }

    #[test]
    fn quadratic_entries() {
        // θ-branch for s = 3, digit 6: t ↦ √3/(√3 t + 6)
        let s3 = QuadInt::sqrt_of(3);
        let m = MobiusMap::new(QuadInt::zero(), s3.clone(), s3, QuadInt::int(6));
        let x = m.apply(&ExactNumber::zero()).unwrap();
        assert_eq!(x, &ExactNumber::sqrt_of(3) / &ExactNumber::from_integer(6));
        assert!(m.det().is_negative());
    }
}
