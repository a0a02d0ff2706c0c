use std::cmp::Ordering;

use super::frac::Frac;
use super::quadratic::ExactNumber;
use crate::error::{Error, Result};

/// An interval with exact endpoints and explicit open/closed ends.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactInterval {
    pub lo: ExactNumber,
    pub hi: ExactNumber,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl ExactInterval {
    pub fn new(lo: ExactNumber, hi: ExactNumber, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        match lo.try_cmp(&hi) {
            Some(Ordering::Less) => Ok(ExactInterval { lo, hi, lo_closed, hi_closed }),
            Some(_) => Err(Error::EmptyInterval),
            None => Err(Error::IncompatibleRadicands(lo.radicand(), hi.radicand())),
        }
    }

    /// `[lo, hi]`; panics unless `lo < hi`.
    pub fn closed(lo: ExactNumber, hi: ExactNumber) -> Self {
        Self::new(lo, hi, true, true).expect("closed interval needs lo < hi")
    }

    /// `[lo, hi)`; panics unless `lo < hi`.
    pub fn half_open(lo: ExactNumber, hi: ExactNumber) -> Self {
        Self::new(lo, hi, true, false).expect("half-open interval needs lo < hi")
    }

    pub fn contains(&self, x: &ExactNumber) -> bool {
        let above = match self.lo.partial_cmp(x) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => self.lo_closed,
            _ => false,
        };
        let below = match x.partial_cmp(&self.hi) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => self.hi_closed,
            _ => false,
        };
        above && below
    }

    /// Set inclusion `other ⊆ self`, honoring which ends are closed.
    pub fn contains_interval(&self, other: &ExactInterval) -> bool {
        self.to_frac().contains_interval(&other.to_frac())
    }

    pub fn width(&self) -> ExactNumber {
        &self.hi - &self.lo
    }

    pub fn to_frac(&self) -> FracInterval {
        FracInterval {
            lo: Frac::from_exact(&self.lo),
            hi: Frac::from_exact(&self.hi),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Homogeneous-coordinate twin of [`ExactInterval`] used on hot paths.
#[derive(Clone, Debug)]
pub struct FracInterval {
    pub lo: Frac,
    pub hi: Frac,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl FracInterval {
    pub fn to_exact(&self) -> ExactInterval {
        ExactInterval {
            lo: self.lo.to_exact(),
            hi: self.hi.to_exact(),
            lo_closed: self.lo_closed,
            hi_closed: self.hi_closed,
        }
    }

    pub fn contains_interval(&self, o: &FracInterval) -> bool {
        let lo_ok = match self.lo.cmp_exact(&o.lo) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed || !o.lo_closed,
            Ordering::Greater => false,
        };
        let hi_ok = match o.hi.cmp_exact(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed || !o.hi_closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    pub fn contains_point(&self, x: &Frac) -> bool {
        let above = match self.lo.cmp_exact(x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match x.cmp_exact(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }
}
