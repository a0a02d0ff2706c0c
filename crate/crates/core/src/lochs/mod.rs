//! How many target digits do `n` source digits determine?

pub mod sampler;

use rayon::prelude::*;

use crate::cylinders::{cylinder_of_digits_frac, point_cylinder_frac, refine_prefix};
use crate::entropy::{entropy_quadrature, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::exact::{ExactNumber, Frac, FracInterval};
use crate::expansions::{ExpansionFamily, FamilyKind};
use crate::stats;

pub use sampler::{default_bits, draw_admissible, sample_point, Draw};

#[derive(Clone, Debug, PartialEq)]
pub struct LochsEstimate {
    pub source: ExpansionFamily,
    pub target: ExpansionFamily,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    /// Mean of `m(n, x)/n`.
    pub mean_ratio: f64,
    pub median_ratio: f64,
    pub std_error: f64,
    /// `h(source)/h(target)`.
    pub predicted: f64,
    pub bits: u64,
    pub rejections: usize,
    /// Samples were confined to `(0, θ)` because a Theta map takes part.
    pub restricted_domain: bool,
}

impl LochsEstimate {
    pub fn relative_gap(&self) -> f64 {
        (self.mean_ratio - self.predicted).abs() / self.predicted
    }
}

fn common_depth(target: &ExpansionFamily, source_cylinder: &FracInterval) -> usize {
    refine_prefix(target, source_cylinder, usize::MAX).len()
}

fn check_common_domain(source: &ExpansionFamily, target: &ExpansionFamily, x: &Frac) -> Result<()> {
    for f in [source, target] {
        f.check_frac_domain(x)?;
        let end_ok = x.cmp_exact(&f.end_frac()) == std::cmp::Ordering::Less;
        if !end_ok || x.num.is_zero() {
            return Err(Error::OutOfDomain { family: f.to_string(), point: format!("{}", x.to_f64()) });
        }
    }
    Ok(())
}

/// `m(n, x)`: the number of target digits fixed by the order-`n` source
/// cylinder of `x`, together with that cylinder.
pub fn m_of_n_frac(
    source: &ExpansionFamily,
    target: &ExpansionFamily,
    x: &Frac,
    n: usize,
) -> Result<(usize, FracInterval)> {
    check_common_domain(source, target, x)?;
    let (_, iv) = point_cylinder_frac(source, x, n)?;
    Ok((common_depth(target, &iv), iv))
}

pub fn m_of_n(source: &ExpansionFamily, target: &ExpansionFamily, x: &ExactNumber, n: usize) -> Result<usize> {
    m_of_n_frac(source, target, &Frac::from_exact(x), n).map(|(m, _)| m)
}

/// `h(source)/h(target)` from quadrature entropies.
pub fn predicted_ratio(source: &ExpansionFamily, target: &ExpansionFamily) -> Result<f64> {
    let hs = entropy_quadrature(source, DEFAULT_TOL)?.value;
    let ht = entropy_quadrature(target, DEFAULT_TOL)?.value;
    Ok(hs / ht)
}

/// Monte Carlo estimate of `m(n, x)/n` over seeded dyadic samples.
///
/// Each sample index draws from its own random stream, so the result does
/// not depend on how the work is spread over threads.
pub fn lochs_estimate(
    source: &ExpansionFamily,
    target: &ExpansionFamily,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<LochsEstimate> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidParameter("n and samples must be at least 1".into()));
    }
    let hs = entropy_quadrature(source, DEFAULT_TOL)?.value;
    let ht = entropy_quadrature(target, DEFAULT_TOL)?.value;
    let bits = default_bits(n, &[hs, ht]);
    let per_sample: Vec<Result<(f64, usize)>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let d = draw_admissible(seed, i, bits, &[source, target], n)?;
            // the draw already lies in both domains and carries the source digits
            let (_, iv) = cylinder_of_digits_frac(source, &d.digits[0]);
            let m = common_depth(target, &iv);
            Ok((m as f64 / n as f64, d.rejections))
        })
        .collect();
    let mut ratios = Vec::with_capacity(samples);
    let mut rejections = 0;
    for r in per_sample {
        let (ratio, rej) = r?;
        ratios.push(ratio);
        rejections += rej;
    }
    let restricted_domain =
        [source, target].iter().any(|f| matches!(f.kind(), FamilyKind::Theta(_)));
    Ok(LochsEstimate {
        source: source.clone(),
        target: target.clone(),
        n,
        samples,
        seed,
        mean_ratio: stats::mean(&ratios),
        median_ratio: stats::median(&ratios),
        std_error: stats::std_error(&ratios),
        predicted: hs / ht,
        bits,
        rejections,
        restricted_domain,
    })
}

/// Explicit check of the defining supremum of `m(n, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sandwich {
    pub m: usize,
    /// The source cylinder lies in the order-`m` target cylinder of `x`.
    /// The empty prefix constrains nothing, so this always holds at `m = 0`.
    pub inside_m: bool,
    /// The source cylinder lies in the order-`m+1` target cylinder of `x`.
    pub inside_m_plus_1: bool,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.inside_m && !self.inside_m_plus_1
    }
}

pub fn sandwich(source: &ExpansionFamily, target: &ExpansionFamily, x: &Frac, n: usize) -> Result<Sandwich> {
    let (m, src) = m_of_n_frac(source, target, x, n)?;
    let inside_m = m == 0 || point_cylinder_frac(target, x, m)?.1.contains_interval(&src);
    let (_, q_next) = point_cylinder_frac(target, x, m + 1)?;
    Ok(Sandwich { m, inside_m, inside_m_plus_1: q_next.contains_interval(&src) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactNumber {
        ExactNumber::from_ratio(n, d)
    }

    #[test]
    fn self_comparison_is_exact() {
        let g = ExpansionFamily::gauss();
        let x = &ExactNumber::sqrt_of(3) - &q(1, 1);
        for n in [1, 5, 40] {
            assert_eq!(m_of_n(&g, &g, &x, n).unwrap(), n);
        }
        let e = lochs_estimate(&g, &g, 200, 6, 11).unwrap();
        assert_eq!(e.mean_ratio, 1.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn decimal_cylinder_quarter() {
        // the decimal cylinder [0.25, 0.26) fixes no continued-fraction digit
        let x = q(2501, 10000);
        assert_eq!(m_of_n(&ExpansionFamily::decimal(), &ExpansionFamily::gauss(), &x, 2).unwrap(), 0);
    }

    #[test]
    fn theta_domain_enforced() {
        let t = ExpansionFamily::theta(3).unwrap();
        let g = ExpansionFamily::gauss();
        assert!(matches!(m_of_n(&g, &t, &q(3, 5), 5), Err(Error::OutOfDomain { .. })));
        assert!(m_of_n(&g, &t, &q(1, 5), 1).is_ok());
    }

    #[test]
    fn prediction_examples() {
        let r = predicted_ratio(&ExpansionFamily::decimal(), &ExpansionFamily::gauss()).unwrap();
        let classical = 6.0 * 2f64.ln() * 10f64.ln() / std::f64::consts::PI.powi(2);
        assert!((r - classical).abs() < 1e-10);
        assert!((r - 0.97027014).abs() < 1e-7);
        let r = predicted_ratio(&ExpansionFamily::ncf(3).unwrap(), &ExpansionFamily::renyi(3).unwrap()).unwrap();
        assert!((r - 1.117745267).abs() < 1e-6);
    }

    #[test]
    fn sandwich_on_a_few_points() {
        let s = ExpansionFamily::decimal();
        let t = ExpansionFamily::gauss();
        for i in 0..5 {
            let d = draw_admissible(5, i, 400, &[&s, &t], 30).unwrap();
            let w = sandwich(&s, &t, &d.x, 30).unwrap();
            assert!(w.holds(), "{w:?}");
        }
    }

    #[test]
    fn small_estimate_is_plausible() {
        let e = lochs_estimate(&ExpansionFamily::decimal(), &ExpansionFamily::gauss(), 100, 8, 1).unwrap();
        assert!((e.mean_ratio - e.predicted).abs() < 0.1, "{e:?}");
        assert!(!e.restricted_domain);
    }
}
