//! Entropy of each map: Rohlin quadrature, closed forms, and the
//! Shannon–McMillan–Breiman average over sampled cylinders.

mod dilog;
pub mod quadrature;
mod renyi;
mod smb;

use std::f64::consts::{LN_2, PI};
use std::fmt;

pub use dilog::{dilog, DILOG_TOL};
pub use renyi::{renyi_bound, renyi_condition_check, RenyiCheck};
pub use smb::entropy_smb;

use crate::error::{Error, Result};
use crate::expansions::{ExpansionFamily, FamilyKind};

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_PIECES: usize = 5000;
/// The singular end is split off at `SPLIT · end`.
const SPLIT: f64 = 1e-3;
/// Upper limit of the `u` variable in `x = e^{-u}`; beyond it the integrand
/// is below 1e-40.
const U_MAX: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntropyMethod {
    Quadrature,
    ClosedForm,
    Smb,
}

impl fmt::Display for EntropyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntropyMethod::Quadrature => "quadrature",
            EntropyMethod::ClosedForm => "closed_form",
            EntropyMethod::Smb => "smb",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyResult {
    pub family: ExpansionFamily,
    /// In nats.
    pub value: f64,
    pub method: EntropyMethod,
    pub error_estimate: f64,
}

/// `∫ (c − 2 ln dist(x)) ρ(x) dx` over the base interval, where `dist` is the
/// distance to the singular end (0, or 1 for Rényi).
fn log_singular_integral(family: &ExpansionFamily, c: f64, tol: f64) -> Result<(f64, f64)> {
    let end = family.end().to_f64();
    let at_one = matches!(family.kind(), FamilyKind::Renyi(_));
    let delta = SPLIT * end;
    let point = |dist: f64| if at_one { 1.0 - dist } else { dist };
    let regular = |x: f64| {
        let dist = if at_one { 1.0 - x } else { x };
        (c - 2.0 * dist.ln()) * family.density(x)
    };
    let (v1, e1) = if at_one {
        quadrature::integrate(regular, 0.0, end - delta, tol / 2.0, MAX_PIECES)?
    } else {
        quadrature::integrate(regular, delta, end, tol / 2.0, MAX_PIECES)?
    };
    let singular = |u: f64| {
        let dist = (-u).exp();
        (c + 2.0 * u) * family.density(point(dist)) * dist
    };
    let (v2, e2) = quadrature::integrate(singular, -delta.ln(), U_MAX, tol / 2.0, MAX_PIECES)?;
    Ok((v1 + v2, e1 + e2))
}

/// `Σ i · G(cell_i)` for Chan, with the geometric tail bounded explicitly.
fn chan_digit_mean(family: &ExpansionFamily, l: u64, tol: f64) -> (f64, f64) {
    let lf = l as f64;
    let r = 1.0 / lf;
    let rho_max = family.density(0.0);
    let mut sum = 0.0;
    let mut i = 1i32;
    loop {
        let g = family.cumulative(lf.powi(-i)) - family.cumulative(lf.powi(-(i + 1)));
        sum += i as f64 * g;
        let fi = i as f64;
        let tail = rho_max * r.powi(i + 1) * ((fi + 1.0) - fi * r) / (1.0 - r).powi(2);
        if tail * lf.ln() < tol * 1e-2 || i > 2000 {
            return (sum, tail);
        }
        i += 1;
    }
}

/// `h = ∫ log|T'| dμ` by adaptive quadrature.
pub fn entropy_quadrature(family: &ExpansionFamily, tol: f64) -> Result<EntropyResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let (value, err) = match family.kind() {
        FamilyKind::Decimal => {
            quadrature::integrate(|x| 10f64.ln() * family.density(x), 0.0, 1.0, tol, MAX_PIECES)?
        }
        FamilyKind::Gauss | FamilyKind::Theta(_) => log_singular_integral(family, 0.0, tol)?,
        FamilyKind::Ncf(n) | FamilyKind::Renyi(n) => log_singular_integral(family, (n as f64).ln(), tol)?,
        FamilyKind::Chan(l) => {
            let lf = l as f64;
            let (smooth, e1) = log_singular_integral(family, -(lf - 1.0).ln(), tol / 2.0)?;
            let (digits, e2) = chan_digit_mean(family, l, tol / 2.0);
            (smooth - lf.ln() * digits, e1 + lf.ln() * e2)
        }
    };
    Ok(EntropyResult { family: family.clone(), value, method: EntropyMethod::Quadrature, error_estimate: err })
}

/// Closed-form entropy, available for Rényi, Gauss and decimal.
pub fn entropy_closed_form(family: &ExpansionFamily) -> Result<EntropyResult> {
    let value = match family.kind() {
        FamilyKind::Renyi(n) => {
            let nf = n as f64;
            nf.ln() + 2.0 * dilog(1.0 / nf)? / (1.0 / (nf - 1.0)).ln_1p()
        }
        FamilyKind::Gauss => PI * PI / (6.0 * LN_2),
        FamilyKind::Decimal => 10f64.ln(),
        _ => return Err(Error::Unsupported(format!("no closed form for {family}"))),
    };
    Ok(EntropyResult {
        family: family.clone(),
        value,
        method: EntropyMethod::ClosedForm,
        error_estimate: DILOG_TOL,
    })
}
