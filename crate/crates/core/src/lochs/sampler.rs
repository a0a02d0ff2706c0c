//! Seeded dyadic sample points with boundary-orbit rejection.

use std::cmp::Ordering;
use std::f64::consts::LN_2;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{Frac, Rational};
use crate::expansions::{ExpansionFamily, FamilyKind};

/// Redraws allowed before giving up on one sample index.
pub const REJECTION_BUDGET: usize = 1000;

/// Binary digits needed so that the first `n` digits of a sample are
/// determined under maps with the given entropies, plus a safety margin.
pub fn default_bits(n: usize, entropies: &[f64]) -> u64 {
    let h = entropies.iter().cloned().fold(0.0, f64::max);
    (1.25 * n as f64 * h / LN_2).ceil() as u64 + 64
}

/// The random stream belonging to one sample index.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A uniform integer in `[0, 2^bits)`.
fn random_bits(rng: &mut ChaCha8Rng, bits: u64) -> BigUint {
    let words = bits.div_ceil(32) as usize;
    let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
    let spare = (words as u64 * 32 - bits) as u32;
    if spare > 0 {
        if let Some(top) = digits.last_mut() {
            *top >>= spare;
        }
    }
    BigUint::new(digits)
}

/// A uniform dyadic `k / 2^bits` in `(0, 2^-shift)`.
fn draw(rng: &mut ChaCha8Rng, bits: u64, shift: u64) -> Frac {
    loop {
        let k = random_bits(rng, bits - shift);
        if !k.is_zero() {
            return Frac::from_ints(BigInt::from(k), BigInt::from(1u8) << bits);
        }
    }
}

/// A uniform dyadic rational `k / 2^bits` in `(0, 1)`, reproducible from
/// `(seed, index)`.
pub fn sample_point(seed: u64, index: u64, bits: u64) -> Rational {
    assert!(bits >= 1, "need at least one bit");
    let f = draw(&mut stream(seed, index), bits, 0);
    Rational::new(f.num.rational_part().clone(), f.den.rational_part().clone())
}

/// `true` when the first `n` orbit points of `x` avoid every cell endpoint
/// and every point where a digit is undefined or exceeds 64 bits.
pub fn orbit_is_generic(family: &ExpansionFamily, x: &Frac, n: usize) -> bool {
    generic_digits(family, x, n).is_some()
}

/// The first `n` digits of `x`, if its orbit is generic for that long.
fn generic_digits(family: &ExpansionFamily, x: &Frac, n: usize) -> Option<Vec<u64>> {
    let mut cur = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let d = family.digit_of(&cur).ok()?;
        if family.on_boundary(&cur, d) {
            return None;
        }
        out.push(d);
        cur = family.step(&cur, d);
    }
    Some(out)
}

#[derive(Clone, Debug)]
pub struct Draw {
    pub x: Frac,
    /// The first `n` digits of `x` under each family, in the order given.
    pub digits: Vec<Vec<u64>>,
    pub rejections: usize,
}

/// Draws the sample of index `index`, redrawing from the same stream until
/// its orbit is generic for `n` steps under every family. Samples are
/// confined to the smallest domain among the families.
pub fn draw_admissible(
    seed: u64,
    index: u64,
    bits: u64,
    families: &[&ExpansionFamily],
    n: usize,
) -> Result<Draw> {
    let theta = families
        .iter()
        .filter(|f| matches!(f.kind(), FamilyKind::Theta(_)))
        .map(|f| (f.theta_value(), f.end_frac()))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    // draw from (0, 2^-shift), the smallest dyadic range covering (0, θ)
    let shift = match &theta {
        Some((t, _)) => (1.0 / t).log2().floor().max(0.0) as u64,
        None => 0,
    };
    if bits <= shift {
        return Err(Error::InvalidParameter(format!("{bits} bits cannot resolve the domain")));
    }
    let mut rng = stream(seed, index);
    for rejections in 0..REJECTION_BUDGET {
        let x = draw(&mut rng, bits, shift);
        let inside = theta.as_ref().map_or(true, |(_, end)| x.cmp_exact(end) == Ordering::Less);
        if !inside {
            continue;
        }
        let digits: Option<Vec<Vec<u64>>> = families.iter().map(|f| generic_digits(f, &x, n)).collect();
        if let Some(digits) = digits {
            return Ok(Draw { x, digits, rejections });
        }
    }
    Err(Error::RejectionBudget(REJECTION_BUDGET))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn reproducible() {
        let a = sample_point(1, 0, 64);
        let b = sample_point(1, 0, 64);
        assert_eq!(a, b);
        assert_ne!(a, sample_point(1, 1, 64));
        assert_ne!(a, sample_point(2, 0, 64));
        assert!(a > Rational::zero() && a < Rational::from_integer(1.into()));
    }

    #[test]
    fn boundary_orbits_are_rejected() {
        let dec = ExpansionFamily::decimal();
        assert!(!orbit_is_generic(&dec, &Frac::from_ints(1, 2), 3));
        assert!(orbit_is_generic(&dec, &Frac::from_ints(1, 3), 30));
        let g = ExpansionFamily::gauss();
        assert!(!orbit_is_generic(&g, &Frac::from_ints(2, 5), 2));
        assert!(orbit_is_generic(&g, &Frac::from_ints(2, 5), 1));
    }

    #[test]
    fn uniformity_chi_square() {
        let mut counts = [0usize; 16];
        let total = 10_000;
        for i in 0..total {
            let x = sample_point(7, i, 32).to_f64().unwrap();
            counts[(x * 16.0) as usize] += 1;
        }
        let e = total as f64 / 16.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
        // 99th percentile of chi-square with 15 degrees of freedom
        assert!(chi2 < 30.578, "chi2 = {chi2}");
    }

    #[test]
    fn theta_samples_stay_below_theta() {
        let t = ExpansionFamily::theta(10).unwrap();
        let g = ExpansionFamily::gauss();
        for i in 0..50 {
            let d = draw_admissible(3, i, 200, &[&t, &g], 20).unwrap();
            assert!(d.x.to_f64() < t.theta_value());
        }
    }

    #[test]
    fn bits_rule() {
        assert_eq!(default_bits(0, &[2.0]), 64);
        assert!(default_bits(1000, &[10f64.ln(), 2.37]) >= 4217);
    }
}
