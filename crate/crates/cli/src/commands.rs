use lochs_core::entropy::{entropy_quadrature, entropy_smb, renyi_condition_check, DEFAULT_TOL};
use lochs_core::lochs::lochs_estimate;
use lochs_core::{Error, ExpansionFamily, FamilyKind};
use serde::{Deserialize, Serialize};

use crate::args::{ConjectureArgs, EntropyTableArgs, LochsArgs, RenyiArgs, SmbArgs};
use crate::output::sig10;
use crate::CliError;

pub const TABLE_CHAN: [u64; 7] = [2, 3, 5, 10, 50, 100, 200];
pub const TABLE_THETA: [u64; 7] = [1, 3, 5, 10, 50, 100, 1000];
pub const TABLE_NCF: [u64; 7] = [1, 3, 5, 10, 50, 100, 1000];
pub const TABLE_RENYI: [u64; 7] = [2, 3, 5, 10, 50, 100, 1000];

pub const SCHEMA_ENTROPY: &str = "entropy-table/1";
pub const SCHEMA_LOCHS: &str = "lochs/1";
pub const SCHEMA_SMB: &str = "smb/1";
pub const SCHEMA_RENYI: &str = "renyi-check/1";
pub const SCHEMA_CONJECTURE: &str = "conjecture/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub schema: String,
    pub family: String,
    pub param: Option<u64>,
    pub method: String,
    pub value: f64,
    pub error_estimate: f64,
    /// `ok`, or the failure that left this row without a value.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LochsRow {
    pub schema: String,
    pub source: String,
    pub target: String,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean_ratio: f64,
    pub median_ratio: f64,
    pub std_error: f64,
    pub predicted: f64,
    pub relative_gap: f64,
    pub bits: u64,
    pub rejections: usize,
    pub restricted_domain: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmbRow {
    pub schema: String,
    pub family: String,
    pub param: Option<u64>,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub value: f64,
    pub std_error: f64,
    pub quadrature: f64,
    pub relative_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenyiRow {
    pub schema: String,
    pub family: String,
    pub param: Option<u64>,
    pub n: usize,
    pub trials: usize,
    pub max_ratio: f64,
    pub bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub schema: String,
    pub param: u64,
    pub h_theta: f64,
    pub h_ncf: f64,
    pub abs_diff: f64,
    pub within_tol: bool,
}

/// Rows of one command together with the failure, if any, that should set
/// the exit status once the rows are written.
#[derive(Debug)]
pub struct Report<T> {
    pub rows: Vec<T>,
    pub failure: Option<CliError>,
}

fn family_name(f: &ExpansionFamily) -> String {
    f.name().to_string()
}

fn parse_family(spec: &str) -> Result<ExpansionFamily, CliError> {
    spec.parse::<ExpansionFamily>().map_err(CliError::from)
}

fn default_params(name: &str) -> &'static [u64] {
    match name {
        "chan" => &TABLE_CHAN,
        "theta" => &TABLE_THETA,
        "ncf" => &TABLE_NCF,
        "renyi" => &TABLE_RENYI,
        _ => &[],
    }
}

/// The families named by `--family` and `--param`, or the whole default
/// grid when no family is given.
fn family_grid(family: Option<&str>, params: &[u64], parameterless: bool) -> Result<Vec<ExpansionFamily>, CliError> {
    let Some(spec) = family else {
        if !params.is_empty() {
            return Err(CliError::Config("--param needs --family".into()));
        }
        let mut out = Vec::new();
        if parameterless {
            out.push(ExpansionFamily::decimal());
            out.push(ExpansionFamily::gauss());
        }
        for name in ["chan", "theta", "ncf", "renyi"] {
            for &p in default_params(name) {
                out.push(ExpansionFamily::from_name(name, Some(p))?);
            }
        }
        return Ok(out);
    };
    if spec.contains(['(', ':', '=']) {
        if !params.is_empty() {
            return Err(CliError::Config("give the parameter either in --family or in --param".into()));
        }
        return Ok(vec![parse_family(spec)?]);
    }
    let probe = ExpansionFamily::from_name(spec, None);
    if let Ok(f) = probe {
        if !params.is_empty() {
            return Err(CliError::Config(format!("family '{spec}' takes no parameter")));
        }
        return Ok(vec![f]);
    }
    let name = spec.to_ascii_lowercase();
    let params = if params.is_empty() { default_params(&name) } else { params };
    if params.is_empty() {
        return Err(probe.unwrap_err().into());
    }
    params.iter().map(|&p| Ok(ExpansionFamily::from_name(&name, Some(p))?)).collect()
}

fn check_positive(what: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Config(format!("--{what} must be at least 1")));
    }
    Ok(())
}

pub fn entropy_table(a: &EntropyTableArgs) -> Result<Report<EntropyRow>, CliError> {
    if !(a.tol > 0.0) || !a.tol.is_finite() {
        return Err(CliError::Config(format!("--tol must be positive, got {}", a.tol)));
    }
    let families = match &a.family {
        None => family_grid(None, &a.param, false)?,
        Some(f) => family_grid(Some(f), &a.param, true)?,
    };
    let mut rows = Vec::with_capacity(families.len());
    let mut failure = None;
    for f in &families {
        let row = |value: f64, err: f64, status: String| EntropyRow {
            schema: SCHEMA_ENTROPY.into(),
            family: family_name(f),
            param: f.param(),
            method: "quadrature".into(),
            value: sig10(value),
            error_estimate: sig10(err),
            status,
        };
        match entropy_quadrature(f, a.tol) {
            Ok(r) => rows.push(row(r.value, r.error_estimate, "ok".into())),
            Err(e) => {
                let (value, err) = match &e {
                    Error::NonConvergence { estimate, tol } => (*estimate, *tol),
                    _ => (f64::NAN, f64::NAN),
                };
                rows.push(row(value, err, format!("failed: {e}")));
                failure.get_or_insert(CliError::Core(e));
            }
        }
    }
    Ok(Report { rows, failure })
}

pub fn lochs(a: &LochsArgs) -> Result<Report<LochsRow>, CliError> {
    check_positive("n", a.n)?;
    check_positive("samples", a.samples)?;
    let source = parse_family(&a.source)?;
    let target = parse_family(&a.target)?;
    let e = lochs_estimate(&source, &target, a.n, a.samples, a.seed)?;
    let row = LochsRow {
        schema: SCHEMA_LOCHS.into(),
        source: source.to_string(),
        target: target.to_string(),
        n: e.n,
        samples: e.samples,
        seed: e.seed,
        mean_ratio: sig10(e.mean_ratio),
        median_ratio: sig10(e.median_ratio),
        std_error: sig10(e.std_error),
        predicted: sig10(e.predicted),
        relative_gap: sig10(e.relative_gap()),
        bits: e.bits,
        rejections: e.rejections,
        restricted_domain: e.restricted_domain,
    };
    Ok(Report { rows: vec![row], failure: None })
}

pub fn smb(a: &SmbArgs) -> Result<Report<SmbRow>, CliError> {
    check_positive("n", a.n)?;
    check_positive("samples", a.samples)?;
    let families = family_grid(Some(&a.family), a.param.as_slice(), true)?;
    let mut rows = Vec::new();
    for f in &families {
        let r = entropy_smb(f, a.n, a.samples, a.seed)?;
        let h = entropy_quadrature(f, DEFAULT_TOL)?.value;
        rows.push(SmbRow {
            schema: SCHEMA_SMB.into(),
            family: family_name(f),
            param: f.param(),
            n: a.n,
            samples: a.samples,
            seed: a.seed,
            value: sig10(r.value),
            std_error: sig10(r.error_estimate),
            quadrature: sig10(h),
            relative_gap: sig10((r.value - h).abs() / h),
        });
    }
    Ok(Report { rows, failure: None })
}

pub fn renyi_check(a: &RenyiArgs) -> Result<Report<RenyiRow>, CliError> {
    check_positive("n", a.n)?;
    check_positive("samples", a.samples)?;
    let families = family_grid(a.family.as_deref(), &a.param, true)?;
    let mut rows = Vec::new();
    let mut failure = None;
    for f in &families {
        let (max_ratio, bound) = match renyi_condition_check(f, a.n, a.samples, a.seed) {
            Ok(c) => (c.max_ratio, c.bound),
            Err(Error::BoundViolation { ratio, bound }) => {
                failure.get_or_insert(CliError::Gate(format!("{f}: ratio {ratio} exceeds {bound}")));
                (ratio, bound)
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(RenyiRow {
            schema: SCHEMA_RENYI.into(),
            family: family_name(f),
            param: f.param(),
            n: a.n,
            trials: a.samples,
            max_ratio: sig10(max_ratio),
            bound: sig10(bound),
            holds: max_ratio <= bound * (1.0 + 1e-12),
        });
    }
    Ok(Report { rows, failure })
}

pub fn conjecture(a: &ConjectureArgs) -> Result<Report<ConjectureRow>, CliError> {
    if !(a.tol >= 0.0) || !a.tol.is_finite() {
        return Err(CliError::Config(format!("--tol must be a non-negative number, got {}", a.tol)));
    }
    let params: &[u64] = if a.param.is_empty() { &TABLE_NCF } else { &a.param };
    let mut rows = Vec::new();
    let mut worst: Option<(u64, f64)> = None;
    for &n in params {
        let t = ExpansionFamily::new(FamilyKind::Theta(n))?;
        let c = ExpansionFamily::new(FamilyKind::Ncf(n))?;
        let ht = entropy_quadrature(&t, DEFAULT_TOL)?.value;
        let hc = entropy_quadrature(&c, DEFAULT_TOL)?.value;
        let diff = (ht - hc).abs();
        let within_tol = diff < a.tol;
        if !within_tol && worst.map_or(true, |(_, d)| diff > d) {
            worst = Some((n, diff));
        }
        rows.push(ConjectureRow {
            schema: SCHEMA_CONJECTURE.into(),
            param: n,
            h_theta: sig10(ht),
            h_ncf: sig10(hc),
            abs_diff: sig10(diff),
            within_tol,
        });
    }
    let failure = worst.map(|(n, d)| CliError::Gate(format!("N = {n}: |Δh| = {d:e} is not below {}", a.tol)));
    Ok(Report { rows, failure })
}
