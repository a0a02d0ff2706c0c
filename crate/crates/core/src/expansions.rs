//! The six expansion maps as a uniform descriptor.
//!
//! Every family cuts its domain into cells labelled by a digit `d`, and each
//! cell is the image of the base interval `[0, end)` under an inverse branch
//! `u_d`, a Möbius map. Digits are read off a monotone "key" of `x`: the
//! cell of digit `d` is exactly `key ∈ [g(d), g(d+1))`, with `g(d) = d`
//! except for Chan, where the key is `1/x` and `g(d) = ℓ^d`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{ExactInterval, ExactNumber, Frac, MobiusMap, QuadInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Decimal,
    Gauss,
    Chan(u64),
    Theta(u64),
    Ncf(u64),
    Renyi(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionFamily {
    kind: FamilyKind,
    /// Primes dividing the branch determinants; stripping them from an
    /// orbit point keeps it primitive.
    primes: Vec<u64>,
    /// `√s` for Theta, 1 otherwise.
    sqrt_s: QuadInt,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

impl ExpansionFamily {
    pub fn new(kind: FamilyKind) -> Result<Self> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        let (primes, sqrt_s) = match kind {
            FamilyKind::Decimal => (vec![2, 5], QuadInt::one()),
            FamilyKind::Gauss => (vec![], QuadInt::one()),
            FamilyKind::Chan(l) => {
                if l < 2 {
                    return bad("chan needs l >= 2");
                }
                (prime_factors(l * (l - 1)), QuadInt::one())
            }
            FamilyKind::Theta(s) => {
                if s < 1 {
                    return bad("theta needs s >= 1");
                }
                (prime_factors(s), QuadInt::sqrt_of(s))
            }
            FamilyKind::Ncf(n) => {
                if n < 1 {
                    return bad("ncf needs N >= 1");
                }
                (prime_factors(n), QuadInt::one())
            }
            FamilyKind::Renyi(n) => {
                if n < 2 {
                    return bad("renyi needs N >= 2");
                }
                (prime_factors(n), QuadInt::one())
            }
        };
        if let FamilyKind::Chan(p) | FamilyKind::Theta(p) | FamilyKind::Ncf(p) | FamilyKind::Renyi(p) = kind {
            if p > 1 << 31 {
                return bad("parameter too large");
            }
        }
        Ok(ExpansionFamily { kind, primes, sqrt_s })
    }

    pub fn decimal() -> Self {
        Self::new(FamilyKind::Decimal).unwrap()
    }

    pub fn gauss() -> Self {
        Self::new(FamilyKind::Gauss).unwrap()
    }

    pub fn chan(l: u64) -> Result<Self> {
        Self::new(FamilyKind::Chan(l))
    }

    pub fn theta(s: u64) -> Result<Self> {
        Self::new(FamilyKind::Theta(s))
    }

    pub fn ncf(n: u64) -> Result<Self> {
        Self::new(FamilyKind::Ncf(n))
    }

    pub fn renyi(n: u64) -> Result<Self> {
        Self::new(FamilyKind::Renyi(n))
    }

    /// Builds a family from a name such as `"chan"` and an optional parameter.
    pub fn from_name(name: &str, param: Option<u64>) -> Result<Self> {
        let need = |p: Option<u64>| {
            p.ok_or_else(|| Error::InvalidParameter(format!("family '{name}' needs a parameter")))
        };
        let kind = match name.to_ascii_lowercase().as_str() {
            "decimal" | "dec" => FamilyKind::Decimal,
            "gauss" | "rcf" => FamilyKind::Gauss,
            "chan" => FamilyKind::Chan(need(param)?),
            "theta" => FamilyKind::Theta(need(param)?),
            "ncf" => FamilyKind::Ncf(need(param)?),
            "renyi" | "rényi" => FamilyKind::Renyi(need(param)?),
            other => return Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        };
        if param.is_some() && matches!(kind, FamilyKind::Decimal | FamilyKind::Gauss) {
            return Err(Error::InvalidParameter(format!("family '{name}' takes no parameter")));
        }
        Self::new(kind)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::Decimal => "decimal",
            FamilyKind::Gauss => "gauss",
            FamilyKind::Chan(_) => "chan",
            FamilyKind::Theta(_) => "theta",
            FamilyKind::Ncf(_) => "ncf",
            FamilyKind::Renyi(_) => "renyi",
        }
    }

    pub fn param(&self) -> Option<u64> {
        match self.kind {
            FamilyKind::Decimal | FamilyKind::Gauss => None,
            FamilyKind::Chan(p) | FamilyKind::Theta(p) | FamilyKind::Ncf(p) | FamilyKind::Renyi(p) => Some(p),
        }
    }

    pub fn content_primes(&self) -> &[u64] {
        &self.primes
    }

    /// `θ = 1/√s` for Theta, 1 for the others.
    pub fn theta_value(&self) -> f64 {
        match self.kind {
            FamilyKind::Theta(s) => 1.0 / (s as f64).sqrt(),
            _ => 1.0,
        }
    }

    /// Right end of the base interval `[0, end)` that every branch maps onto
    /// one cell.
    pub fn end(&self) -> ExactNumber {
        match self.kind {
            FamilyKind::Theta(s) => ExactNumber::sqrt_of(s).recip(),
            _ => ExactNumber::one(),
        }
    }

    pub(crate) fn end_frac(&self) -> Frac {
        match self.kind {
            FamilyKind::Theta(_) => Frac::new(QuadInt::one(), self.sqrt_s.clone()),
            _ => Frac::from_ints(1, 1),
        }
    }

    /// `[0, θ]` for Theta, `[0, 1)` otherwise.
    pub fn domain(&self) -> ExactInterval {
        match self.kind {
            FamilyKind::Theta(_) => ExactInterval::closed(ExactNumber::zero(), self.end()),
            _ => ExactInterval::half_open(ExactNumber::zero(), ExactNumber::one()),
        }
    }

    /// The base interval `[0, end)` whose branch images are the cells.
    pub fn base_interval(&self) -> ExactInterval {
        ExactInterval::half_open(ExactNumber::zero(), self.end())
    }

    pub fn digit_floor(&self) -> u64 {
        match self.kind {
            FamilyKind::Decimal | FamilyKind::Chan(_) => 0,
            FamilyKind::Gauss => 1,
            FamilyKind::Theta(p) | FamilyKind::Ncf(p) | FamilyKind::Renyi(p) => p,
        }
    }

    /// Largest admissible digit, if the alphabet is finite.
    pub fn digit_ceiling(&self) -> Option<u64> {
        matches!(self.kind, FamilyKind::Decimal).then_some(9)
    }

    pub fn is_admissible(&self, digit: u64) -> bool {
        digit >= self.digit_floor() && self.digit_ceiling().map_or(true, |c| digit <= c)
    }

    fn check_digit(&self, digit: u64) -> Result<()> {
        if self.is_admissible(digit) {
            Ok(())
        } else {
            Err(Error::InadmissibleDigit { family: self.to_string(), digit })
        }
    }

    /// Normalizing constant of the invariant density.
    pub fn normalizer(&self) -> f64 {
        match self.kind {
            FamilyKind::Decimal | FamilyKind::Gauss => 1.0,
            FamilyKind::Chan(l) => {
                let l = l as f64;
                (l - 1.0).powi(2) / (l * l / (2.0 * l - 1.0)).ln()
            }
            FamilyKind::Theta(s) => 1.0 / (1.0 / s as f64).ln_1p(),
            FamilyKind::Ncf(n) => 1.0 / (1.0 / n as f64).ln_1p(),
            FamilyKind::Renyi(n) => 1.0 / (1.0 / (n - 1) as f64).ln_1p(),
        }
    }

    /// The inverse branch `u_d`, mapping `[0, end)` onto the cell of `digit`.
    pub fn inverse_branch(&self, digit: u64) -> Result<MobiusMap> {
        self.check_digit(digit)?;
        Ok(self.branch(digit))
    }

    pub(crate) fn branch(&self, digit: u64) -> MobiusMap {
        let i = QuadInt::int(digit);
        let int = |v: u64| QuadInt::int(v);
        match self.kind {
            FamilyKind::Decimal => MobiusMap { a: int(1), b: i, c: int(0), d: int(10) },
            FamilyKind::Gauss => MobiusMap { a: int(0), b: int(1), c: int(1), d: i },
            FamilyKind::Chan(l) => {
                let p = QuadInt::int(chan_power(l, digit));
                MobiusMap { a: int(0), b: int(1), c: p.scale_small(l - 1), d: p }
            }
            FamilyKind::Theta(_) => {
                MobiusMap { a: int(0), b: self.sqrt_s.clone(), c: self.sqrt_s.clone(), d: i }
            }
            FamilyKind::Ncf(n) => MobiusMap { a: int(0), b: int(n), c: int(1), d: i },
            FamilyKind::Renyi(n) => MobiusMap {
                a: int(1),
                b: QuadInt::int(BigInt::from(digit) - big(n)),
                c: int(1),
                d: i,
            },
        }
    }

    /// Whether the key grows with `x`.
    pub(crate) fn key_increasing(&self) -> bool {
        matches!(self.kind, FamilyKind::Decimal | FamilyKind::Renyi(_))
    }

    /// The digit key of `x` as `P/Q` with `Q > 0`, or `None` where the key is
    /// infinite (the undefined-digit point). `x` must lie in the domain.
    pub(crate) fn key(&self, x: &Frac) -> Option<(QuadInt, QuadInt)> {
        let (p, q) = match self.kind {
            FamilyKind::Decimal => (x.num.scale_small(10), x.den.clone()),
            FamilyKind::Gauss | FamilyKind::Chan(_) => (x.den.clone(), x.num.clone()),
            FamilyKind::Theta(_) => (&self.sqrt_s * &x.den, x.num.clone()),
            FamilyKind::Ncf(n) => (x.den.scale_small(n), x.num.clone()),
            FamilyKind::Renyi(n) => (x.den.scale_small(n), &x.den - &x.num),
        };
        (!q.is_zero()).then_some((p, q))
    }

    /// Left end `g(d)` of the key cell of digit `d`.
    pub(crate) fn key_boundary(&self, d: u64) -> BigInt {
        match self.kind {
            FamilyKind::Chan(l) => chan_power(l, d),
            _ => big(d),
        }
    }

    /// Digit whose key cell contains `⌊key⌋`.
    pub(crate) fn digit_of_key_floor(&self, f: &BigInt) -> Result<u64> {
        match self.kind {
            FamilyKind::Chan(l) => Ok(ilog(f, l)),
            _ => f.to_u64().ok_or(Error::DigitOverflow),
        }
    }

    /// Checks that a homogeneous point lies in the closed domain.
    pub(crate) fn check_frac_domain(&self, x: &Frac) -> Result<()> {
        let out = || Error::OutOfDomain { family: self.to_string(), point: format!("{}", x.to_f64()) };
        if x.num.is_negative() {
            return Err(out());
        }
        match x.num.cmp_scaled(&x.den, &self.end_frac()) {
            Ordering::Greater => Err(out()),
            Ordering::Equal if matches!(self.kind, FamilyKind::Decimal) => Err(out()),
            _ => Ok(()),
        }
    }

    /// First digit of a homogeneous point.
    pub fn digit_of(&self, x: &Frac) -> Result<u64> {
        self.check_frac_domain(x)?;
        let (p, q) = self.key(x).ok_or_else(|| Error::UndefinedDigit(format!("{}", x.to_f64())))?;
        let d = self.digit_of_key_floor(&p.floor_div(&q))?;
        self.check_digit(d).map_err(|_| Error::OutOfDomain {
            family: self.to_string(),
            point: format!("{}", x.to_f64()),
        })?;
        Ok(d)
    }

    /// `true` when `x` sits exactly on the left key boundary of its cell,
    /// i.e. on a cell endpoint where the next iterate hits 0 or the boundary.
    pub fn on_boundary(&self, x: &Frac, digit: u64) -> bool {
        match self.key(x) {
            None => true,
            Some((p, q)) => (&p - &q.scale(&self.key_boundary(digit))).is_zero(),
        }
    }

    /// One step of the map on a point already known to carry `digit`.
    pub fn step(&self, x: &Frac, digit: u64) -> Frac {
        let u = self.branch(digit);
        // u⁻¹ up to scale is the adjugate
        let num = &(&u.d * &x.num) - &(&u.b * &x.den);
        let den = &(&u.a * &x.den) - &(&u.c * &x.num);
        let mut f = Frac::new(num, den);
        f.reduce_by(&self.primes);
        f
    }

    /// First digit of `x`.
    pub fn branch_index(&self, x: &ExactNumber) -> Result<u64> {
        self.check_radicand(x)?;
        self.digit_of(&Frac::from_exact(x))
    }

    fn check_radicand(&self, x: &ExactNumber) -> Result<()> {
        let own = self.sqrt_s.radicand();
        let r = x.radicand();
        if own != 1 && r != 1 && r != own {
            return Err(Error::IncompatibleRadicands(r, own));
        }
        Ok(())
    }

    /// `T(x)` evaluated from the map's defining formula.
    pub fn apply_map(&self, x: &ExactNumber) -> Result<ExactNumber> {
        let a = self.branch_index(x)?;
        let a_n = ExactNumber::from_integer(a);
        let one = ExactNumber::one();
        Ok(match self.kind {
            FamilyKind::Decimal => &(x * &ExactNumber::from_integer(10)) - &a_n,
            FamilyKind::Gauss => &x.recip() - &a_n,
            FamilyKind::Chan(l) => {
                let scale = ExactNumber::from_integer(chan_power(l, a));
                let lm1 = ExactNumber::from_integer(l - 1);
                &(&(x * &scale).recip() - &one) / &lm1
            }
            FamilyKind::Theta(s) => &x.recip() - &(&a_n / &ExactNumber::sqrt_of(s)),
            FamilyKind::Ncf(n) => &(&ExactNumber::from_integer(n) / x) - &a_n,
            FamilyKind::Renyi(n) => &(&ExactNumber::from_integer(n) / &(&one - x)) - &a_n,
        })
    }

    /// The first `n` digits of `x`. Stops early, setting `truncated`, when
    /// the orbit reaches a point where the digit is undefined.
    pub fn digits(&self, x: &ExactNumber, n: usize) -> Result<DigitExpansion> {
        self.check_radicand(x)?;
        self.digits_frac(&Frac::from_exact(x), n)
    }

    pub fn digits_frac(&self, x: &Frac, n: usize) -> Result<DigitExpansion> {
        self.check_frac_domain(x)?;
        let mut out = Vec::with_capacity(n);
        let mut cur = x.clone();
        cur.reduce_by(&self.primes);
        for _ in 0..n {
            match self.digit_of(&cur) {
                Ok(d) => {
                    out.push(d);
                    cur = self.step(&cur, d);
                }
                Err(Error::UndefinedDigit(_)) => {
                    return Ok(DigitExpansion { block: DigitBlock::unchecked(self.clone(), out), truncated: true })
                }
                Err(e) => return Err(e),
            }
        }
        Ok(DigitExpansion { block: DigitBlock::unchecked(self.clone(), out), truncated: false })
    }

    /// Invariant density at `x`.
    pub fn density(&self, x: f64) -> f64 {
        match self.kind {
            FamilyKind::Decimal => 1.0,
            FamilyKind::Gauss => 1.0 / ((1.0 + x) * std::f64::consts::LN_2),
            FamilyKind::Chan(l) => {
                let l = l as f64;
                self.normalizer() / (((l - 1.0) * x + 1.0) * ((l - 1.0) * x + l))
            }
            FamilyKind::Theta(_) => {
                let t = self.theta_value();
                t * self.normalizer() / (1.0 + t * x)
            }
            FamilyKind::Ncf(n) => self.normalizer() / (x + n as f64),
            FamilyKind::Renyi(n) => self.normalizer() / (x + (n - 1) as f64),
        }
    }

    /// Invariant measure of `[0, x]`.
    pub fn cumulative(&self, x: f64) -> f64 {
        match self.kind {
            FamilyKind::Decimal => x,
            FamilyKind::Gauss => x.ln_1p() / std::f64::consts::LN_2,
            FamilyKind::Chan(l) => {
                let l = l as f64;
                let k = self.normalizer() / (l - 1.0).powi(2);
                k * (((l - 1.0) * x).ln_1p() - ((l - 1.0) * x / l).ln_1p())
            }
            FamilyKind::Theta(_) => (self.theta_value() * x).ln_1p() * self.normalizer(),
            FamilyKind::Ncf(n) => (x / n as f64).ln_1p() * self.normalizer(),
            FamilyKind::Renyi(n) => (x / (n - 1) as f64).ln_1p() * self.normalizer(),
        }
    }

    /// Invariant measure of `[lo, hi]` from double-precision endpoints.
    pub fn measure_of_range(&self, lo: f64, hi: f64) -> Result<f64> {
        let end = self.end().to_f64();
        let slack = 1e-15;
        if !(lo <= hi) || lo < -slack || hi > end * (1.0 + slack) {
            return Err(Error::OutOfDomain { family: self.to_string(), point: format!("[{lo}, {hi}]") });
        }
        Ok((self.cumulative(hi.min(end)) - self.cumulative(lo.max(0.0))).clamp(0.0, 1.0))
    }

    /// Invariant measure of an exact interval.
    pub fn measure_of_interval(&self, iv: &ExactInterval) -> Result<f64> {
        let zero = ExactNumber::zero();
        if iv.lo < zero || iv.hi > self.end() {
            return Err(Error::OutOfDomain { family: self.to_string(), point: format!("[{}, {}]", iv.lo, iv.hi) });
        }
        let (lo, hi) = iv.to_f64();
        self.measure_of_range(lo, hi)
    }

    /// `ln μ([lo, lo + w])` given `ln w`; accurate for widths far below
    /// double precision, where a difference of antiderivatives would cancel.
    pub fn log_measure_from(&self, lo: f64, log_w: f64) -> f64 {
        // every density except Chan's is c/(x + α)
        let (c, alpha) = match self.kind {
            FamilyKind::Decimal => return log_w,
            FamilyKind::Gauss => (1.0 / std::f64::consts::LN_2, 1.0),
            FamilyKind::Theta(_) => (self.normalizer(), 1.0 / self.theta_value()),
            FamilyKind::Ncf(n) => (self.normalizer(), n as f64),
            FamilyKind::Renyi(n) => (self.normalizer(), (n - 1) as f64),
            FamilyKind::Chan(l) => {
                let l = l as f64;
                let k = self.normalizer() / (l - 1.0).powi(2);
                let a = (l - 1.0) / (1.0 + (l - 1.0) * lo);
                let b = (l - 1.0) / (l + (l - 1.0) * lo);
                if log_w < -40.0 {
                    return k.ln() + (a - b).ln() + log_w;
                }
                let w = log_w.exp();
                return (k * ((a * w).ln_1p() - (b * w).ln_1p())).ln();
            }
        };
        if log_w < -40.0 {
            c.ln() + log_w - (lo + alpha).ln()
        } else {
            (c * (log_w.exp() / (lo + alpha)).ln_1p()).ln()
        }
    }

    /// `log |T'(x)|` for `x` inside the domain, away from the singular end.
    pub fn log_abs_derivative(&self, x: f64) -> Result<f64> {
        let end = self.end().to_f64();
        let singular = match self.kind {
            FamilyKind::Decimal => false,
            FamilyKind::Renyi(_) => x >= 1.0,
            _ => x <= 0.0,
        };
        if !(0.0..=end).contains(&x) || singular || x.is_nan() {
            return Err(Error::OutOfDomain { family: self.to_string(), point: format!("{x}") });
        }
        Ok(match self.kind {
            FamilyKind::Decimal => 10f64.ln(),
            FamilyKind::Gauss | FamilyKind::Theta(_) => -2.0 * x.ln(),
            FamilyKind::Chan(l) => {
                let a = chan_digit_f64(l, x) as f64;
                let lf = l as f64;
                -a * lf.ln() - (lf - 1.0).ln() - 2.0 * x.ln()
            }
            FamilyKind::Ncf(n) => (n as f64).ln() - 2.0 * x.ln(),
            FamilyKind::Renyi(n) => (n as f64).ln() - 2.0 * (-x).ln_1p(),
        })
    }
}

/// `ℓ^d` as a big integer.
pub(crate) fn chan_power(l: u64, d: u64) -> BigInt {
    num_traits::pow(big(l), d as usize)
}

/// Largest `k` with `ℓ^k ≤ f`, for `f ≥ 1`.
fn ilog(f: &BigInt, l: u64) -> u64 {
    debug_assert!(f >= &BigInt::one());
    let est = ((f.bits().saturating_sub(1)) as f64 / (l as f64).log2()).floor() as u64;
    let mut k = est.saturating_sub(1);
    let mut p = chan_power(l, k);
    debug_assert!(&p <= f);
    loop {
        let next = &p * l;
        if &next > f {
            return k;
        }
        p = next;
        k += 1;
    }
}

/// Chan digit of a double `x ∈ (0, 1]`, corrected against exact powers.
pub(crate) fn chan_digit_f64(l: u64, x: f64) -> u64 {
    let lf = l as f64;
    let mut a = ((1.0 / x).ln() / lf.ln()).floor().max(0.0) as i32;
    while a > 0 && x > lf.powi(-a) {
        a -= 1;
    }
    while x <= lf.powi(-(a + 1)) {
        a += 1;
    }
    a as u64
}

impl QuadInt {
    /// Compares `self/den` with the point `f`, for `den > 0`.
    pub(crate) fn cmp_scaled(&self, den: &QuadInt, f: &Frac) -> Ordering {
        (&(self * &f.den) - &(&f.num * den)).signum()
    }
}

impl fmt::Display for ExpansionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(p) => write!(f, "{}({p})", self.name()),
            None => write!(f, "{}", self.name()),
        }
    }
}

impl FromStr for ExpansionFamily {
    type Err = Error;

    /// Accepts `gauss`, `chan(2)`, `chan:2` and `chan=2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.find(['(', ':', '=']) {
            Some(i) => {
                let p = s[i + 1..].trim_end_matches(')').trim();
                let p = p
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidParameter(format!("bad parameter in '{s}'")))?;
                (&s[..i], Some(p))
            }
            None => (s, None),
        };
        Self::from_name(name.trim(), param)
    }
}

/// An admissible finite digit sequence of one family.
#[derive(Clone, Debug, PartialEq)]
pub struct DigitBlock {
    family: ExpansionFamily,
    digits: Vec<u64>,
}

impl DigitBlock {
    pub fn new(family: ExpansionFamily, digits: Vec<u64>) -> Result<Self> {
        for &d in &digits {
            family.check_digit(d)?;
        }
        Ok(DigitBlock { family, digits })
    }

    pub(crate) fn unchecked(family: ExpansionFamily, digits: Vec<u64>) -> Self {
        DigitBlock { family, digits }
    }

    pub fn family(&self) -> &ExpansionFamily {
        &self.family
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Output of [`ExpansionFamily::digits`].
#[derive(Clone, Debug, PartialEq)]
pub struct DigitExpansion {
    pub block: DigitBlock,
    /// The orbit reached an undefined-digit point before enough digits.
    pub truncated: bool,
}
