//! Cylinder sets, convergents and common-prefix depth.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::{ExactInterval, ExactNumber, Frac, FracInterval, MobiusMap, Scaled};
use crate::expansions::{DigitBlock, ExpansionFamily, FamilyKind};

/// The set of points whose expansion starts with `block`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub block: DigitBlock,
    pub interval: ExactInterval,
    /// `p_n/q_n`: the image of 0 under `composed`, except for Rényi where it
    /// is the image of the right end (the open endpoint).
    pub convergent: ExactNumber,
    pub composed: MobiusMap,
}

impl Cylinder {
    /// Natural log of the invariant measure of the cylinder.
    pub fn log_measure(&self) -> f64 {
        log_measure_of_map(self.block.family(), &self.composed)
    }
}

/// `u_{a1} ∘ … ∘ u_{an}`, with known common factors stripped as we go.
pub fn compose_block(family: &ExpansionFamily, digits: &[u64]) -> MobiusMap {
    let mut m = MobiusMap::identity();
    for &d in digits {
        m = m.compose(&family.branch(d));
        m.reduce_by(family.content_primes());
    }
    m
}

/// The cylinder `m([0, end))` of a block ending in `last`.
///
/// For the decreasing maps the smallest digit's cell reaches up to `end`,
/// a point the map never takes as a value. A block ending in that digit
/// therefore loses its `m(0)` endpoint as well.
pub(crate) fn image_of_base(family: &ExpansionFamily, m: &MobiusMap, last: Option<u64>) -> FracInterval {
    let at0 = m.apply_frac(&Frac::from_ints(0, 1)).expect("branch compositions have no pole on the domain");
    let at_end = m.apply_frac(&family.end_frac()).expect("branch compositions have no pole on the domain");
    let zero_kept = !(last == Some(family.digit_floor()) && !family.key_increasing());
    if m.is_increasing() {
        FracInterval { lo: at0, hi: at_end, lo_closed: zero_kept, hi_closed: false }
    } else {
        FracInterval { lo: at_end, hi: at0, lo_closed: false, hi_closed: zero_kept }
    }
}

pub fn build_cylinder(block: DigitBlock) -> Result<Cylinder> {
    let family = block.family().clone();
    let block = DigitBlock::new(family.clone(), block.digits().to_vec())?;
    let composed = compose_block(&family, block.digits());
    let interval = image_of_base(&family, &composed, block.digits().last().copied()).to_exact();
    let convergent = match family.kind() {
        FamilyKind::Renyi(_) => composed.apply(&family.end())?,
        _ => composed.apply(&ExactNumber::zero())?,
    };
    Ok(Cylinder { block, interval, convergent, composed })
}

/// The order-`n` cylinder containing `x`.
pub fn cylinder_of_point(family: &ExpansionFamily, x: &ExactNumber, n: usize) -> Result<Cylinder> {
    let e = family.digits(x, n)?;
    if e.truncated {
        return Err(Error::OrbitTerminated(e.block.len()));
    }
    build_cylinder(e.block)
}

/// Homogeneous-coordinate form of [`cylinder_of_point`]: the composed map
/// and the interval, without the conversions to reduced rationals.
pub fn point_cylinder_frac(family: &ExpansionFamily, x: &Frac, n: usize) -> Result<(MobiusMap, FracInterval)> {
    let e = family.digits_frac(x, n)?;
    if e.truncated {
        return Err(Error::OrbitTerminated(e.block.len()));
    }
    Ok(cylinder_of_digits_frac(family, e.block.digits()))
}

/// The composed map and interval of a digit sequence already known to be
/// admissible.
pub fn cylinder_of_digits_frac(family: &ExpansionFamily, digits: &[u64]) -> (MobiusMap, FracInterval) {
    let m = compose_block(family, digits);
    let iv = image_of_base(family, &m, digits.last().copied());
    (m, iv)
}

/// `x ∈ [0, end]`. Interval ends may sit on `end` even where the domain
/// excludes it.
fn in_closure(family: &ExpansionFamily, x: &Frac) -> bool {
    !x.num.is_negative() && x.num.cmp_scaled(&x.den, &family.end_frac()) != Ordering::Greater
}

/// Digits determined by an interval: repeatedly checks that the interval
/// lies in a single cell, records that digit and maps the interval forward.
/// Containment is exact set inclusion, honoring open and closed ends.
pub fn refine_prefix(family: &ExpansionFamily, iv: &FracInterval, limit: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut cur = iv.clone();
    let inc = family.key_increasing();
    while out.len() < limit {
        if !in_closure(family, &cur.lo) || !in_closure(family, &cur.hi) {
            break;
        }
        let (kmin, kmax, max_closed) =
            if inc { (&cur.lo, &cur.hi, cur.hi_closed) } else { (&cur.hi, &cur.lo, cur.lo_closed) };
        let (Some((pmin, qmin)), Some((pmax, qmax))) = (family.key(kmin), family.key(kmax)) else {
            break;
        };
        let Ok(d) = family.digit_of_key_floor(&pmin.floor_div(&qmin)) else {
            break;
        };
        if !family.is_admissible(d) {
            break;
        }
        let Some(next) = d.checked_add(1) else {
            break;
        };
        let g = family.key_boundary(next);
        let inside = match (&pmax - &qmax.scale(&g)).signum() {
            Ordering::Less => true,
            Ordering::Equal => !max_closed,
            Ordering::Greater => false,
        };
        if !inside {
            break;
        }
        out.push(d);
        let lo = family.step(&cur.lo, d);
        let hi = family.step(&cur.hi, d);
        cur = if inc {
            FracInterval { lo, hi, lo_closed: cur.lo_closed, hi_closed: cur.hi_closed }
        } else {
            FracInterval { lo: hi, hi: lo, lo_closed: cur.hi_closed, hi_closed: cur.lo_closed }
        };
    }
    out
}

/// Largest `m` such that the interval lies inside a single order-`m`
/// cylinder, found by interval refinement.
pub fn common_prefix_depth(family: &ExpansionFamily, iv: &ExactInterval) -> usize {
    refine_prefix(family, &iv.to_frac(), usize::MAX).len()
}

/// Length of the longest common digit prefix of the two endpoints.
///
/// A closed endpoint is expanded as the point itself. An open endpoint is
/// expanded as the limit from inside the interval, which matters when it
/// sits on a cell boundary: from the left, `1/2` has continued-fraction
/// digits `1, 1` rather than `2`. The result can still differ from
/// [`common_prefix_depth`] by one when a closed endpoint sits on a boundary.
pub fn common_prefix_depth_by_endpoints(family: &ExpansionFamily, iv: &ExactInterval) -> usize {
    common_prefix_by_endpoints_frac(family, &iv.to_frac(), usize::MAX)
}

/// An endpoint being expanded: `side` is `None` for the point itself, or
/// `Some(true)` for the limit from above.
struct Endpoint {
    x: Frac,
    side: Option<bool>,
}

impl Endpoint {
    fn digit(&self, family: &ExpansionFamily) -> Option<u64> {
        let Some(from_above) = self.side else {
            return family.digit_of(&self.x).ok();
        };
        let x = &self.x;
        if !in_closure(family, x) {
            return None;
        }
        let (p, q) = family.key(x)?;
        let d = family.digit_of_key_floor(&p.floor_div(&q)).ok()?;
        let key_from_below = from_above != family.key_increasing();
        let d = if key_from_below && family.on_boundary(x, d) { d.checked_sub(1)? } else { d };
        family.is_admissible(d).then_some(d)
    }

    fn step(&mut self, family: &ExpansionFamily, d: u64) {
        self.x = family.step(&self.x, d);
        if !family.branch(d).is_increasing() {
            self.side = self.side.map(|s| !s);
        }
    }
}

pub fn common_prefix_by_endpoints_frac(family: &ExpansionFamily, iv: &FracInterval, limit: usize) -> usize {
    let mut a = Endpoint { x: iv.lo.clone(), side: (!iv.lo_closed).then_some(true) };
    let mut b = Endpoint { x: iv.hi.clone(), side: (!iv.hi_closed).then_some(false) };
    let mut m = 0;
    while m < limit {
        match (a.digit(family), b.digit(family)) {
            (Some(da), Some(db)) if da == db => {
                a.step(family, da);
                b.step(family, db);
                m += 1;
            }
            _ => break,
        }
    }
    m
}

/// Natural log of the invariant measure of `m([0, end))`, from the exact
/// width of the interval.
pub fn log_measure_of_map(family: &ExpansionFamily, m: &MobiusMap) -> f64 {
    let iv = image_of_base(family, m, None);
    family.log_measure_from(iv.lo.to_f64(), log_width(&iv))
}

fn width_scaled(iv: &FracInterval) -> Scaled {
    let diff = &(&iv.hi.num * &iv.lo.den) - &(&iv.lo.num * &iv.hi.den);
    diff.to_scaled().div(&iv.hi.den.to_scaled()).div(&iv.lo.den.to_scaled())
}

/// `ln` of the exact width of an interval.
pub fn log_width(iv: &FracInterval) -> f64 {
    width_scaled(iv).ln()
}
