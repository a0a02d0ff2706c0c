//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are run exactly like the others and
//! reported as FAIL when they fail; they only do not turn the exit status
//! red. Any other failure does. Pass criterion numbers as arguments to run
//! a subset, e.g. `cargo test --test acceptance -- 1 3`.

use std::f64::consts::{LN_2, PI};
use std::time::Instant;

use lochs_cli::commands::{EntropyRow, RenyiRow};
use lochs_cli::{run, EXIT_OK};
use lochs_core::cylinders::{build_cylinder, cylinder_of_point};
use lochs_core::entropy::{entropy_closed_form, entropy_quadrature, entropy_smb, DEFAULT_TOL};
use lochs_core::exact::{ExactNumber, Frac};
use lochs_core::lochs::{lochs_estimate, predicted_ratio, sandwich};
use lochs_core::{DigitBlock, ExpansionFamily};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Criteria expected to fail, with the reason printed next to the result.
const KNOWN_RED: &[(u32, &str)] = &[(
    1,
    "the printed Chan column disagrees with the entropy of the Chan map; \
     independent 30-digit evaluation agrees with the computed values",
)];

const SEED: u64 = 1;

type Check = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cli_csv<T: serde::de::DeserializeOwned>(args: &[&str]) -> (i32, Vec<T>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("lochs").chain(args.iter().copied()), &mut out, &mut err);
    let rows = csv::Reader::from_reader(out.as_slice()).deserialize().map(|r| r.unwrap()).collect();
    (code, rows)
}

fn fam(spec: &str) -> ExpansionFamily {
    spec.parse().unwrap()
}

/// The printed entropy table as `(family, parameter, printed value)`.
const PRINTED: &[(&str, u64, &str)] = &[
    ("chan", 2, "1.62258"),
    ("chan", 3, "1.26775"),
    ("chan", 5, "0.996315"),
    ("chan", 10, "0.765943"),
    ("chan", 50, "0.476521"),
    ("chan", 100, "0.406218"),
    ("chan", 200, "0.350849"),
    ("theta", 1, "2.37314"),
    ("theta", 3, "3.24705"),
    ("theta", 5, "3.70244"),
    ("theta", 10, "4.35074"),
    ("theta", 50, "5.92195"),
    ("theta", 100, "6.61015"),
    ("theta", 1000, "8.90825"),
    ("ncf", 1, "2.37314"),
    ("ncf", 3, "3.24705"),
    ("ncf", 5, "3.70244"),
    ("ncf", 10, "4.35074"),
    ("ncf", 50, "5.92195"),
    ("ncf", 100, "6.61015"),
    ("ncf", 1000, "8.90825"),
    ("renyi", 2, "2.37314"),
    ("renyi", 3, "2.905"),
    ("renyi", 5, "3.50063"),
    ("renyi", 10, "4.25052"),
    ("renyi", 50, "5.90194"),
    ("renyi", 100, "6.60015"),
    ("renyi", 1000, "8.90726"),
];

/// One unit in the last printed digit.
fn last_digit_unit(printed: &str) -> f64 {
    let decimals = printed.split('.').nth(1).map_or(0, str::len);
    10f64.powi(-(decimals as i32))
}

fn table_reproduction() -> Outcome {
    let (code, rows) = cli_csv::<EntropyRow>(&["entropy-table"]);
    if code != EXIT_OK || rows.len() != PRINTED.len() {
        return outcome(false, format!("exit {code}, {} rows", rows.len()));
    }
    let mut misses = Vec::new();
    for (&(family, param, printed), row) in PRINTED.iter().zip(&rows) {
        assert_eq!((row.family.as_str(), row.param), (family, Some(param)));
        let target: f64 = printed.parse().unwrap();
        if (row.value - target).abs() > last_digit_unit(printed) * (1.0 + 1e-9) {
            misses.push(format!("{family}({param}) {:.6} vs {printed}", row.value));
        }
    }
    let detail = if misses.is_empty() {
        "28/28 rows".to_string()
    } else {
        format!("{}/28 rows; outside: {}", 28 - misses.len(), misses.join(", "))
    };
    outcome(misses.is_empty(), detail)
}

fn closed_form_agreement() -> Outcome {
    let mut families: Vec<ExpansionFamily> =
        [2, 3, 5, 10, 50, 100, 1000].iter().map(|&n| ExpansionFamily::renyi(n).unwrap()).collect();
    families.push(ExpansionFamily::gauss());
    families.push(ExpansionFamily::decimal());
    let mut worst = 0.0f64;
    for f in &families {
        let q = entropy_quadrature(f, DEFAULT_TOL).unwrap().value;
        let c = entropy_closed_form(f).unwrap().value;
        worst = worst.max((q - c).abs());
    }
    outcome(worst < 1e-8, format!("max |quadrature - closed form| = {worst:.2e}"))
}

fn conjecture_evidence() -> Outcome {
    let mut worst = 0.0f64;
    for n in [1, 3, 5, 10, 50, 100, 1000] {
        let t = entropy_quadrature(&ExpansionFamily::theta(n).unwrap(), DEFAULT_TOL).unwrap().value;
        let c = entropy_quadrature(&ExpansionFamily::ncf(n).unwrap(), DEFAULT_TOL).unwrap().value;
        worst = worst.max((t - c).abs());
    }
    outcome(worst < 1e-8, format!("max |h(theta) - h(ncf)| = {worst:.2e}"))
}

fn classical_constant() -> Outcome {
    let e = lochs_estimate(&ExpansionFamily::decimal(), &ExpansionFamily::gauss(), 1000, 100, SEED).unwrap();
    let gap = (e.mean_ratio - 0.97027014).abs();
    outcome(gap < 0.01, format!("mean m/n = {:.6} (se {:.4}), |gap| = {gap:.5}", e.mean_ratio, e.std_error))
}

fn extended_limits() -> Outcome {
    let pairs = [
        ("ncf(1)", "chan(2)", 1.462571953),
        ("ncf(3)", "chan(2)", 2.001164812),
        ("ncf(3)", "renyi(3)", 1.117745267),
        ("ncf(5)", "renyi(5)", 1.057649623),
        ("renyi(2)", "chan(2)", 1.462571953),
        ("renyi(2)", "chan(3)", 1.871930586),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (s, t, limit) in pairs {
        let e = lochs_estimate(&fam(s), &fam(t), 1000, 100, SEED).unwrap();
        let rel = (e.mean_ratio - limit).abs() / limit;
        pass &= rel < 0.01;
        parts.push(format!("{s}->{t} {:.4} ({:.2}%)", e.mean_ratio, 100.0 * rel));
    }
    outcome(pass, parts.join("; "))
}

fn smb_consistency() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for spec in ["gauss", "ncf(3)", "renyi(2)", "chan(2)"] {
        let f = fam(spec);
        let smb = entropy_smb(&f, 10_000, 50, SEED).unwrap().value;
        let h = entropy_quadrature(&f, DEFAULT_TOL).unwrap().value;
        let rel = (smb - h).abs() / h;
        pass &= rel < 0.02;
        parts.push(format!("{spec} {smb:.4} vs {h:.4} ({:.2}%)", 100.0 * rel));
    }
    let dec = entropy_smb(&ExpansionFamily::decimal(), 10_000, 50, SEED).unwrap().value;
    let dec_gap = (dec - 10f64.ln()).abs();
    pass &= dec_gap <= 1e-12;
    parts.push(format!("decimal |smb - ln 10| = {dec_gap:.1e}"));
    outcome(pass, parts.join("; "))
}

fn renyi_bounds() -> Outcome {
    let (code, rows) = cli_csv::<RenyiRow>(&["renyi-check", "--samples", "1000"]);
    let violations = rows.iter().filter(|r| !r.holds).count();
    let worst = rows.iter().map(|r| r.max_ratio / r.bound).fold(0.0, f64::max);
    outcome(
        code == EXIT_OK && violations == 0 && rows.len() == 30,
        format!("{} families x 1000 blocks, {violations} violations, max ratio/bound = {worst:.6}", rows.len()),
    )
}

// Property suite. Each property draws 1000 cases.

fn families() -> impl Strategy<Value = ExpansionFamily> {
    prop::sample::select(vec![
        "decimal", "gauss", "chan(2)", "chan(3)", "chan(10)", "theta(1)", "theta(2)", "theta(5)", "ncf(1)", "ncf(3)",
        "renyi(2)", "renyi(5)",
    ])
    .prop_map(fam)
}

/// A point of `(0, end)` that every family here can expand: `√2 − 1` for
/// most, a multiple of `1 + √s` for an irrational Theta map.
fn point(f: &ExpansionFamily, k: u32) -> ExactNumber {
    let t = ExactNumber::from_ratio(1 << 20 | i64::from(k), 1 << 22);
    match f.param().filter(|_| f.name() == "theta") {
        Some(s) if (s as f64).sqrt().fract() != 0.0 => {
            let base = &ExactNumber::sqrt_of(s) + &ExactNumber::one();
            &(&base * &t) * &ExactNumber::from_ratio(1, 2 * s as i64 + 2)
        }
        _ => {
            let base = &ExactNumber::sqrt_of(2) - &ExactNumber::one();
            &(&base * &t) * &f.end()
        }
    }
}

fn check(name: &str, failures: &mut Vec<String>, r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) {
    if let Err(e) = r {
        failures.push(format!("{name}: {e}"));
    }
}

fn mobius_f64(m: &lochs_core::MobiusMap, x: f64) -> f64 {
    let [a, b, c, d] = m.entries();
    (a.to_f64() * x + b.to_f64()) / (c.to_f64() * x + d.to_f64())
}

fn property_suites() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() });
    let mut failures = Vec::new();

    let r = runner.run(&(families(), 0.0f64..1.0, 0.0f64..1.0), |(f, u, v)| {
        let end = f.end().to_f64();
        let (lo, hi) = (u.min(v) * end, u.max(v) * end);
        let target = f.measure_of_range(lo, hi).unwrap();
        let first = f.digit_floor();
        let (mut pre, mut cells) = (0.0, 0.0);
        for d in first..=f.digit_ceiling().unwrap_or(first + 4000) {
            let m = f.inverse_branch(d).unwrap();
            let (p, q) = (mobius_f64(&m, lo), mobius_f64(&m, hi));
            pre += f.measure_of_range(p.min(q), p.max(q)).unwrap();
            let (c0, c1) = (mobius_f64(&m, 0.0), mobius_f64(&m, end));
            cells += f.measure_of_range(c0.min(c1), c0.max(c1)).unwrap();
        }
        let tail = (1.0 - cells).max(0.0);
        prop_assert!(pre <= target + 1e-9 && target <= pre + tail + 1e-9);
        Ok(())
    });
    check("measure invariance", &mut failures, r);

    let r = runner.run(&(families(), any::<u32>(), 1usize..10), |(f, k, n)| {
        let x = point(&f, k % (1 << 20));
        let outer = cylinder_of_point(&f, &x, n).unwrap();
        let inner = cylinder_of_point(&f, &x, n + 1).unwrap();
        prop_assert!(outer.interval.contains_interval(&inner.interval));
        prop_assert!(inner.interval.contains(&x));
        Ok(())
    });
    check("cylinder nesting", &mut failures, r);

    let r = runner.run(&prop::collection::vec(1u64..60, 1..12), |digits| {
        let g = ExpansionFamily::gauss();
        let c = build_cylinder(DigitBlock::new(g, digits.clone()).unwrap()).unwrap();
        let one = ExactNumber::one();
        let (mut p0, mut q0, mut p1, mut q1) = (one.clone(), ExactNumber::zero(), ExactNumber::zero(), one);
        for &a in &digits {
            let a = ExactNumber::from_integer(a);
            let p2 = &(&a * &p1) + &p0;
            let q2 = &(&a * &q1) + &q0;
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
        }
        let conv = &p1 * &q1.recip();
        let other = &(&p1 + &p0) * &(&q1 + &q0).recip();
        prop_assert_eq!(&c.convergent, &conv);
        let (lo, hi) = if conv < other { (conv, other) } else { (other, conv) };
        prop_assert_eq!((&c.interval.lo, &c.interval.hi), (&lo, &hi));
        Ok(())
    });
    check("endpoint formulas", &mut failures, r);

    let r = runner.run(&(families(), any::<u32>()), |(f, k)| {
        let x = point(&f, k % (1 << 20));
        let d = f.branch_index(&x).unwrap();
        let tx = f.apply_map(&x).unwrap();
        prop_assert_eq!(f.inverse_branch(d).unwrap().apply(&tx).unwrap(), x);
        Ok(())
    });
    check("branch round trip", &mut failures, r);

    let r = runner.run(&(families(), families(), any::<u32>()), |(s, t, k)| {
        let (xs, xt) = (point(&s, k % (1 << 20)), point(&t, k % (1 << 20)));
        let x = match xs.partial_cmp(&xt) {
            Some(std::cmp::Ordering::Greater) => xt,
            Some(_) => xs,
            None => return Ok(()),
        };
        let fx = Frac::from_exact(&x);
        let mut prev = 0;
        for n in [1, 3, 6, 10] {
            let w = sandwich(&s, &t, &fx, n).unwrap();
            prop_assert!(w.holds() && w.m >= prev);
            prev = w.m;
        }
        Ok(())
    });
    check("sandwich and monotonicity", &mut failures, r);

    let r = runner.run(&(families(), families()), |(a, b)| {
        let p = predicted_ratio(&a, &b).unwrap() * predicted_ratio(&b, &a).unwrap();
        prop_assert!((p - 1.0).abs() < 1e-14);
        Ok(())
    });
    check("reciprocal identity", &mut failures, r);

    let run_with = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| lochs_estimate(&ExpansionFamily::decimal(), &ExpansionFamily::gauss(), 100, 1000, SEED).unwrap())
    };
    if run_with(1) != run_with(4) {
        failures.push("determinism: 1 and 4 workers disagree".into());
    }

    let total = 7;
    let detail = if failures.is_empty() {
        format!("{total}/{total} properties")
    } else {
        format!("{}/{total} properties; {}", total - failures.len(), failures.join("; "))
    };
    outcome(failures.is_empty(), detail)
}

fn main() {
    let criteria: [Check; 8] = [
        (1, "entropy table reproduction", table_reproduction),
        (2, "closed form vs quadrature", closed_form_agreement),
        (3, "theta/ncf entropy equality", conjecture_evidence),
        (4, "classical Lochs constant", classical_constant),
        (5, "extended Lochs limits", extended_limits),
        (6, "SMB consistency", smb_consistency),
        (7, "distortion bounds", renyi_bounds),
        (8, "property suites", property_suites),
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {id} ({name}) [{secs:.1}s]: {}", o.detail);
        if !o.pass {
            match KNOWN_RED.iter().find(|(k, _)| *k == id) {
                Some((_, why)) => println!("     known failure: {why}"),
                None => unexpected += 1,
            }
        }
    }
    // sanity anchor for the reference constants used above
    debug_assert!((PI * PI / (6.0 * LN_2) - 2.373138220831).abs() < 1e-11);
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        std::process::exit(1);
    }
}
