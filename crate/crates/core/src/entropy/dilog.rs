use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Series tolerance used by [`dilog`].
pub const DILOG_TOL: f64 = 1e-14;

/// The dilogarithm `Li₂(x) = Σ x^k / k²` on `[0, 1]`.
///
/// The series is summed directly up to 1/2; above that the reflection
/// `Li₂(x) + Li₂(1−x) = π²/6 − ln x · ln(1−x)` moves the argument below 1/2.
pub fn dilog(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain { family: "dilog".into(), point: format!("{x}") });
    }
    if x == 1.0 {
        return Ok(PI * PI / 6.0);
    }
    if x <= 0.5 {
        return Ok(series(x));
    }
    let y = 1.0 - x;
    Ok(PI * PI / 6.0 - x.ln() * y.ln() - series(y))
}

fn series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut pow = x;
    let mut k = 1.0f64;
    // x <= 1/2, so this stops after a few dozen terms
    loop {
        let term = pow / (k * k);
        sum += term;
        if term < 1e-17 * sum {
            return sum;
        }
        pow *= x;
        k += 1.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(dilog(0.0).unwrap(), 0.0);
        assert!((dilog(1.0).unwrap() - 1.6449340668482264).abs() < 1e-15);
        let half = PI * PI / 12.0 - 2f64.ln().powi(2) / 2.0;
        assert!((dilog(0.5).unwrap() - half).abs() < 1e-15);
        assert!(dilog(-0.1).is_err());
        assert!(dilog(1.1).is_err());
    }

    #[test]
    fn half_against_long_direct_sum() {
        let direct: f64 = (1..=200).rev().map(|k| 0.5f64.powi(k) / (k * k) as f64).sum();
        assert!((dilog(0.5).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn reflection_identity_on_grid() {
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let lhs = dilog(x).unwrap() + dilog(1.0 - x).unwrap();
            let rhs = PI * PI / 6.0 - x.ln() * (1.0 - x).ln();
            assert!((lhs - rhs).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn near_one_against_slow_series() {
        // direct series at 0.9 converges, just slowly
        let x = 0.9f64;
        let direct: f64 = (1..=2000).rev().map(|k| x.powi(k) / (k as f64).powi(2)).sum();
        assert!((dilog(x).unwrap() - direct).abs() < 1e-14);
    }
}
