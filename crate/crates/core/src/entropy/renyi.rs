use rand::Rng;

use crate::cylinders::compose_block;
use crate::error::{Error, Result};
use crate::exact::Scaled;
use crate::expansions::{ExpansionFamily, FamilyKind};
use crate::lochs::sampler::{default_bits, draw_admissible, stream};

/// Outcome of a distortion check over random blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct RenyiCheck {
    pub family: ExpansionFamily,
    pub n: usize,
    pub trials: usize,
    /// Largest `sup |M'(r)| / |M'(t)|` seen over the tested blocks.
    pub max_ratio: f64,
    pub bound: f64,
}

impl RenyiCheck {
    pub fn holds(&self) -> bool {
        self.max_ratio <= self.bound * (1.0 + 1e-12)
    }
}

/// The distortion bound of each family.
pub fn renyi_bound(family: &ExpansionFamily) -> f64 {
    match family.kind() {
        FamilyKind::Decimal => 1.0,
        FamilyKind::Gauss => 4.0,
        FamilyKind::Chan(l) => (l as f64).powi(2),
        FamilyKind::Theta(_) => (1.0 + family.theta_value().powi(2)).powi(2),
        FamilyKind::Ncf(n) => ((n as f64 + 1.0) / n as f64).powi(2),
        FamilyKind::Renyi(n) => (n as f64 / (n as f64 - 1.0)).powi(2),
    }
}

/// `sup_{r,t} |M'(r)/M'(t)|` over the base interval. Since
/// `M'(x) ∝ (cx + d)^{-2}` is monotone there, the supremum is attained at the
/// two endpoints.
fn distortion(family: &ExpansionFamily, digits: &[u64]) -> f64 {
    let m = compose_block(family, digits);
    if m.d.is_zero() {
        return f64::INFINITY;
    }
    let rho = m.c.to_scaled().div(&m.d.to_scaled());
    let at_end = rho.mul_f64(family.end().to_f64()).add(&Scaled::from_f64(1.0)).to_f64();
    let a = at_end * at_end;
    a.max(1.0 / a)
}

fn random_block(family: &ExpansionFamily, n: usize, seed: u64, trial: u64) -> Result<Vec<u64>> {
    if trial % 2 == 0 {
        let lo = family.digit_floor();
        let hi = family.digit_ceiling().unwrap_or(lo + 20);
        let mut rng = stream(seed ^ 0x5eed_b10c, trial);
        Ok((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
    } else {
        let bits = default_bits(n, &[family.param().map_or(3.0, |p| (p as f64).ln() + 3.0)]);
        let d = draw_admissible(seed, trial, bits, &[family], n)?;
        Ok(family.digits_frac(&d.x, n)?.block.digits().to_vec())
    }
}

/// Checks the distortion bound on `trials` blocks of length `n`: even
/// trials use uniformly random digits, odd trials the digits of a random
/// point.
pub fn renyi_condition_check(family: &ExpansionFamily, n: usize, trials: usize, seed: u64) -> Result<RenyiCheck> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidParameter("n and trials must be at least 1".into()));
    }
    let bound = renyi_bound(family);
    let mut max_ratio: f64 = 1.0;
    for t in 0..trials as u64 {
        let digits = random_block(family, n, seed, t)?;
        max_ratio = max_ratio.max(distortion(family, &digits));
    }
    let check = RenyiCheck { family: family.clone(), n, trials, max_ratio, bound };
    if !check.holds() {
        return Err(Error::BoundViolation { ratio: max_ratio, bound });
    }
    Ok(check)
}
