use num_bigint::BigInt;

/// A float with an unbounded exponent: `mant · 2^exp`.
///
/// Orbit numerators grow to tens of thousands of bits, far past `f64` range,
/// while their ratios and logarithms stay tame. This type keeps just enough
/// of the leading bits to answer those questions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    pub mant: f64,
    pub exp: i64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { mant: 0.0, exp: 0 };

    pub fn new(mant: f64, exp: i64) -> Self {
        Scaled { mant, exp }.normalized()
    }

    pub fn from_f64(x: f64) -> Self {
        Scaled::new(x, 0)
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let bits = x.bits();
        if bits <= 1000 {
            return Scaled::from_f64(num_traits::ToPrimitive::to_f64(x).unwrap_or(0.0));
        }
        let shift = bits - 64;
        let top: BigInt = x >> shift;
        Scaled::new(num_traits::ToPrimitive::to_f64(&top).unwrap(), shift as i64)
    }

    fn normalized(self) -> Self {
        if self.mant == 0.0 || !self.mant.is_finite() {
            return Scaled { mant: self.mant, exp: 0 };
        }
        let (m, e) = frexp(self.mant);
        Scaled { mant: m, exp: self.exp + e }
    }

    pub fn is_zero(&self) -> bool {
        self.mant == 0.0
    }

    pub fn mul(&self, o: &Scaled) -> Scaled {
        Scaled::new(self.mant * o.mant, self.exp + o.exp)
    }

    pub fn mul_f64(&self, k: f64) -> Scaled {
        Scaled::new(self.mant * k, self.exp)
    }

    pub fn div(&self, o: &Scaled) -> Scaled {
        Scaled::new(self.mant / o.mant, self.exp - o.exp)
    }

    pub fn add(&self, o: &Scaled) -> Scaled {
        if self.is_zero() {
            return *o;
        }
        if o.is_zero() {
            return *self;
        }
        let (big, small) = if self.exp >= o.exp { (self, o) } else { (o, self) };
        let gap = big.exp - small.exp;
        if gap > 1100 {
            return *big;
        }
        Scaled::new(big.mant + small.mant * 2f64.powi(-(gap as i32)), big.exp)
    }

    pub fn abs(&self) -> Scaled {
        Scaled { mant: self.mant.abs(), exp: self.exp }
    }

    /// Natural logarithm of `|self|`.
    pub fn ln(&self) -> f64 {
        self.mant.abs().ln() + self.exp as f64 * std::f64::consts::LN_2
    }

    pub fn to_f64(&self) -> f64 {
        if self.exp > 1100 {
            return self.mant.signum() * f64::INFINITY;
        }
        if self.exp < -1200 {
            return 0.0 * self.mant.signum();
        }
        // split the power to avoid intermediate overflow/underflow
        let half = (self.exp / 2) as i32;
        self.mant * 2f64.powi(half) * 2f64.powi(self.exp as i32 - half)
    }
}

/// `x = m · 2^e` with `0.5 <= |m| < 1`.
fn frexp(x: f64) -> (f64, i64) {
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    if raw_exp == 0 {
        // subnormal: rescale first
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let e = raw_exp - 1022;
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn frexp_roundtrip() {
        for &x in &[1.0, 0.75, -3.5, 1e-300, 6.02e23] {
            let (m, e) = frexp(x);
            assert!((0.5..1.0).contains(&m.abs()));
            assert_eq!(m * 2f64.powi(e as i32), x);
        }
    }

    #[test]
    fn ln_of_huge_integer() {
        let x: BigInt = BigInt::one() << 5000u32;
        let s = Scaled::from_bigint(&(x * 3));
        let expected = 5000.0 * std::f64::consts::LN_2 + 3f64.ln();
        assert!((s.ln() - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn ratio_of_huge_integers() {
        let a: BigInt = (BigInt::one() << 4000u32) * 7;
        let b: BigInt = (BigInt::one() << 4000u32) * 2;
        let r = Scaled::from_bigint(&a).div(&Scaled::from_bigint(&b)).to_f64();
        assert!((r - 3.5).abs() < 1e-15);
    }

    #[test]
    fn addition_with_different_exponents() {
        let a = Scaled::new(1.0, 2000);
        let b = Scaled::new(-1.0, 1999);
        let c = a.add(&b);
        assert!((c.ln() - 1999.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }
}
