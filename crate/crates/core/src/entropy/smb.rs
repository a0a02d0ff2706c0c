use rayon::prelude::*;

use super::{entropy_quadrature, EntropyMethod, EntropyResult, DEFAULT_TOL};
use crate::cylinders::{compose_block, log_measure_of_map};
use crate::error::{Error, Result};
use crate::expansions::ExpansionFamily;
use crate::lochs::sampler::{default_bits, draw_admissible};
use crate::stats;

/// `−(1/n) ln μ(C_n(x))` averaged over `samples` seeded points.
///
/// The error estimate is the standard error of the sample mean.
pub fn entropy_smb(family: &ExpansionFamily, n: usize, samples: usize, seed: u64) -> Result<EntropyResult> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidParameter("n and samples must be at least 1".into()));
    }
    let h = entropy_quadrature(family, DEFAULT_TOL)?.value;
    let bits = default_bits(n, &[h]);
    let values: Vec<Result<f64>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let d = draw_admissible(seed, i, bits, &[family], n)?;
            let m = compose_block(family, &d.digits[0]);
            Ok(-log_measure_of_map(family, &m) / n as f64)
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(EntropyResult {
        family: family.clone(),
        value: stats::mean(&values),
        method: EntropyMethod::Smb,
        error_estimate: stats::std_error(&values),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_is_exact() {
        let r = entropy_smb(&ExpansionFamily::decimal(), 50, 4, 1).unwrap();
        assert!((r.value - 10f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gauss_close_to_quadrature() {
        let g = ExpansionFamily::gauss();
        let r = entropy_smb(&g, 400, 32, 3).unwrap();
        let h = entropy_quadrature(&g, DEFAULT_TOL).unwrap().value;
        assert!((r.value - h).abs() < 0.1, "{} vs {h}", r.value);
    }
}
