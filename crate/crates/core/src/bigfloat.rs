//! Arbitrary-precision dyadic floating point: mantissa * 2^exp with explicit
//! working precision per operation, plus complex arithmetic on top.
//!
//! This is deliberately small: add/mul/div/sqrt with round-to-nearest and a
//! few conversions are all the root finder and the pole certifications need,
//! and keeping it in-tree makes every rounding site visible.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        BigFloat { mant: n, exp: 0 }
    }

    pub fn from_i64(n: i64) -> Self {
        BigFloat::from_bigint(BigInt::from(n))
    }

    /// 2^k
    pub fn pow2(k: i64) -> Self {
        BigFloat {
            mant: BigInt::from(1),
            exp: k,
        }
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return BigFloat::zero();
        }
        let shift = prec as i64 + 8;
        let scaled = (r.numer() << shift) / r.denom();
        BigFloat {
            mant: scaled,
            exp: -shift,
        }
        .round(prec)
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return BigFloat::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        BigFloat {
            mant: BigInt::from(sign) * BigInt::from(mant),
            exp,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Upper bound on log2 |self| (within 1).
    pub fn mag2(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN / 2;
        }
        self.bits() as i64 + self.exp
    }

    /// Round to `prec` significant bits, to nearest.
    pub fn round(&self, prec: u32) -> Self {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let drop = (bits - prec as u64) as i64;
        let sign = self.mant.sign();
        let abs = self.mant.abs();
        let half = BigInt::from(1) << (drop - 1) as u64;
        let rounded = (abs + half) >> drop as u64;
        let mant = match sign {
            Sign::Minus => -rounded,
            _ => rounded,
        };
        BigFloat {
            mant,
            exp: self.exp + drop,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return rhs.round(prec);
        }
        if rhs.is_zero() {
            return self.round(prec);
        }
        // If the magnitudes are wildly different the small one only matters
        // to one ulp; cap the alignment shift.
        let gap = self.mag2() - rhs.mag2();
        let limit = prec as i64 + 8;
        if gap > limit {
            return self.round(prec);
        }
        if gap < -limit {
            return rhs.round(prec);
        }
        let (a, b) = (self, rhs);
        let out = if a.exp >= b.exp {
            BigFloat {
                mant: (&a.mant << (a.exp - b.exp) as u64) + &b.mant,
                exp: b.exp,
            }
        } else {
            BigFloat {
                mant: &a.mant + (&b.mant << (b.exp - a.exp) as u64),
                exp: a.exp,
            }
        };
        out.round(prec)
    }

    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        self.add(&rhs.neg(), prec)
    }

    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        BigFloat {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
        .round(prec)
    }

    pub fn div(&self, rhs: &Self, prec: u32) -> Self {
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let shift = prec as i64 + 8 + rhs.bits() as i64 - self.bits() as i64;
        let shift = shift.max(0) as u64;
        BigFloat {
            mant: (&self.mant << shift) / &rhs.mant,
            exp: self.exp - rhs.exp - shift as i64,
        }
        .round(prec)
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return BigFloat::zero();
        }
        // Scale so the mantissa has ~2*(prec+8) bits and an even exponent.
        let target = 2 * (prec as i64 + 8);
        let mut extra = target - self.bits() as i64;
        if (self.exp - extra) % 2 != 0 {
            extra += 1;
        }
        let (mant, exp) = if extra >= 0 {
            (&self.mant << extra as u64, self.exp - extra)
        } else {
            (&self.mant >> (-extra) as u64, self.exp - extra)
        };
        BigFloat {
            mant: mant.sqrt(),
            exp: exp / 2,
        }
        .round(prec)
    }

    /// Exact comparison of absolute values.
    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        if self.is_zero() {
            return if rhs.is_zero() {
                Ordering::Equal
            } else {
                Ordering::Less
            };
        }
        if rhs.is_zero() {
            return Ordering::Greater;
        }
        let ma = self.mag2();
        let mb = rhs.mag2();
        if ma < mb - 1 {
            return Ordering::Less;
        }
        if ma > mb + 1 {
            return Ordering::Greater;
        }
        let a = self.mant.abs();
        let b = rhs.mant.abs();
        if self.exp >= rhs.exp {
            (a << (self.exp - rhs.exp) as u64).cmp(&b)
        } else {
            a.cmp(&(b << (rhs.exp - self.exp) as u64))
        }
    }

    /// Exact signed comparison.
    pub fn cmp_val(&self, rhs: &Self) -> Ordering {
        match (self.is_negative(), rhs.is_negative()) {
            (false, true) => return Ordering::Greater,
            (true, false) => return Ordering::Less,
            (false, false) => self.cmp_abs(rhs),
            (true, true) => rhs.cmp_abs(self),
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(64);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(r.exp.clamp(-2000, 2000) as i32)
    }

    /// Decimal rendering with the given number of fractional digits,
    /// rounded to nearest.
    pub fn to_decimal(&self, digits: u32) -> String {
        if self.is_zero() {
            return format!("0.{}", "0".repeat(digits as usize));
        }
        let scale = BigInt::from(10).pow(digits);
        // |self| * 10^digits as a round-to-nearest integer; sign reattached
        // afterwards so the shift rounds away from zero symmetrically.
        let neg = self.mant.is_negative();
        let mant_abs = self.mant.abs();
        let abs = if self.exp >= 0 {
            (&mant_abs << self.exp as u64) * &scale
        } else {
            let shifted = &mant_abs * &scale;
            let half = BigInt::from(1) << ((-self.exp - 1) as u64);
            (shifted + half) >> (-self.exp) as u64
        };
        let s = abs.to_string();
        let d = digits as usize;
        let (int_part, frac_part) = if s.len() > d {
            (s[..s.len() - d].to_string(), s[s.len() - d..].to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", s, width = d))
        };
        let sign = if neg { "-" } else { "" };
        if d == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

/// Complex number over BigFloat.
#[derive(Clone, PartialEq, Debug)]
pub struct CBig {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl CBig {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        CBig { re, im }
    }

    pub fn zero() -> Self {
        CBig {
            re: BigFloat::zero(),
            im: BigFloat::zero(),
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        CBig {
            re: BigFloat::from_f64(re),
            im: BigFloat::from_f64(im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        CBig {
            re: self.re.add(&rhs.re, prec),
            im: self.im.add(&rhs.im, prec),
        }
    }

    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        CBig {
            re: self.re.sub(&rhs.re, prec),
            im: self.im.sub(&rhs.im, prec),
        }
    }

    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        let p = prec + 4;
        CBig {
            re: self.re.mul(&rhs.re, p).sub(&self.im.mul(&rhs.im, p), prec),
            im: self.re.mul(&rhs.im, p).add(&self.im.mul(&rhs.re, p), prec),
        }
    }

    pub fn neg(&self) -> Self {
        CBig {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        CBig {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, c: &BigFloat, prec: u32) -> Self {
        CBig {
            re: self.re.mul(c, prec),
            im: self.im.mul(c, prec),
        }
    }

    pub fn norm_sqr(&self, prec: u32) -> BigFloat {
        let p = prec + 4;
        self.re.mul(&self.re, p).add(&self.im.mul(&self.im, p), prec)
    }

    pub fn abs(&self, prec: u32) -> BigFloat {
        self.norm_sqr(prec + 4).sqrt(prec)
    }

    pub fn inv(&self, prec: u32) -> Self {
        let p = prec + 8;
        let n = self.norm_sqr(p);
        assert!(!n.is_zero(), "inverse of complex zero");
        CBig {
            re: self.re.div(&n, prec),
            im: self.im.neg().div(&n, prec),
        }
    }

    pub fn div(&self, rhs: &Self, prec: u32) -> Self {
        self.mul(&rhs.inv(prec + 8), prec)
    }

    /// Principal square root.
    pub fn sqrt(&self, prec: u32) -> Self {
        let p = prec + 8;
        if self.im.is_zero() {
            if self.re.is_negative() {
                return CBig {
                    re: BigFloat::zero(),
                    im: self.re.neg().sqrt(prec),
                };
            }
            return CBig {
                re: self.re.sqrt(prec),
                im: BigFloat::zero(),
            };
        }
        let r = self.abs(p);
        let two = BigFloat::from_i64(2);
        // w = sqrt((r + |re|)/2)
        let w = r.add(&self.re.abs(), p).div(&two, p).sqrt(p);
        if !self.re.is_negative() {
            let im = self.im.div(&w.mul(&two, p), prec);
            CBig { re: w.round(prec), im }
        } else {
            let re = self.im.abs().div(&w.mul(&two, p), prec);
            let im = if self.im.is_negative() { w.neg() } else { w };
            CBig {
                re,
                im: im.round(prec),
            }
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    const P: u32 = 128;

    fn close(a: &BigFloat, b: f64) {
        assert!((a.to_f64() - b).abs() < 1e-12, "{} vs {b}", a.to_f64());
    }

    #[test]
    fn basic_arithmetic() {
        let a = BigFloat::from_ratio(&rat(1, 3), P);
        let b = BigFloat::from_ratio(&rat(1, 6), P);
        close(&a.add(&b, P), 0.5);
        close(&a.mul(&b, P), 1.0 / 18.0);
        close(&a.div(&b, P), 2.0);
        close(&a.sub(&a, P), 0.0);
    }

    #[test]
    fn sqrt_accuracy() {
        let two = BigFloat::from_i64(2);
        let r = two.sqrt(P);
        let err = r.mul(&r, P).sub(&two, P).abs();
        assert!(err.cmp_abs(&BigFloat::pow2(-120)) == Ordering::Less);
        close(&r, std::f64::consts::SQRT_2);
    }

    #[test]
    fn huge_magnitude_gaps() {
        let big = BigFloat::pow2(1000);
        let tiny = BigFloat::pow2(-1000);
        let s = big.add(&tiny, P);
        assert_eq!(s.cmp_abs(&big), Ordering::Equal);
        assert_eq!(tiny.cmp_abs(&big), Ordering::Less);
    }

    #[test]
    fn complex_sqrt_branches() {
        for (re, im) in [(3.0, 4.0), (-3.0, 4.0), (3.0, -4.0), (-3.0, -4.0), (-4.0, 0.0)] {
            let z = CBig::from_f64(re, im);
            let w = z.sqrt(P);
            let back = w.mul(&w, P);
            let (br, bi) = back.to_f64_pair();
            assert!((br - re).abs() < 1e-12 && (bi - im).abs() < 1e-12, "({re},{im})");
            // principal branch: Re >= 0
            assert!(!w.re.is_negative());
        }
    }

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_ratio(&rat(1, 8), 64);
        assert_eq!(x.to_decimal(4), "0.1250");
        let y = BigFloat::from_ratio(&rat(-20, 3), 64).to_decimal(3);
        assert_eq!(y, "-6.667");
        assert_eq!(BigFloat::from_i64(7).to_decimal(0), "7");
    }
}
