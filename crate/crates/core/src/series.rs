//! Truncated Laurent series in t with exact coefficients.
//!
//! A series stores its coefficients for exponents `min_exp..order` and makes
//! no claim past `order`. Every operation propagates the truncation order
//! pessimistically, so an unknown coefficient is never reported.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;
use thiserror::Error;

/// Coefficient ring abstraction: exact rationals, or Laurent polynomials in x.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_ratio(r: &BigRational) -> Self;
    /// Multiplicative inverse where one exists in the coefficient ring.
    fn try_inv(&self) -> Option<Self>;
    /// Exact division by two (coefficient rings here are Q-algebras).
    fn half(&self) -> Self;
    fn render(&self) -> String;
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

impl Coeff for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn half(&self) -> Self {
        self / BigRational::from(BigInt::from(2))
    }
    fn render(&self) -> String {
        if num_traits::One::is_one(self.denom()) {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("reciprocal of a series that is zero up to its order")]
    ZeroReciprocal,
    #[error("leading coefficient is not invertible in the coefficient ring")]
    NonInvertibleLead,
    #[error("sqrt_one_plus requires an argument of positive valuation")]
    ValuationRequired,
    #[error("composition requires inner series of valuation >= 1")]
    InnerValuation,
    #[error("composition target has negative powers of the substituted variable")]
    NegativePower,
    #[error("evaluation of negative powers at zero")]
    EvalAtZero,
}

/// Truncated Laurent series: coefficients for exponents in `[min_exp, order)`.
#[derive(Clone, PartialEq)]
pub struct Series<C: Coeff> {
    min_exp: i64,
    order: i64,
    coeffs: Vec<C>,
}

pub type TruncSeries = Series<BigRational>;

impl<C: Coeff> Series<C> {
    pub fn from_coeffs(min_exp: i64, coeffs: Vec<C>, order: i64) -> Self {
        assert_eq!((order - min_exp) as usize, coeffs.len(), "length mismatch");
        let mut s = Series {
            min_exp,
            order,
            coeffs,
        };
        s.normalize();
        s
    }

    pub fn zero(order: i64) -> Self {
        Series {
            min_exp: order,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(c: C, exp: i64, order: i64) -> Self {
        if exp >= order || c.is_zero() {
            return Series::zero(order);
        }
        let mut coeffs = vec![C::zero(); (order - exp) as usize];
        coeffs[0] = c;
        Series {
            min_exp: exp,
            order,
            coeffs,
        }
    }

    pub fn one(order: i64) -> Self {
        Series::monomial(C::one(), 0, order)
    }

    pub fn t_power(exp: i64, order: i64) -> Self {
        Series::monomial(C::one(), exp, order)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.min_exp + k as i64)
    }

    fn val_or_order(&self) -> i64 {
        self.valuation().unwrap_or(self.order)
    }

    pub fn is_zero_to_order(&self) -> bool {
        self.valuation().is_none()
    }

    /// The coefficient of t^exp. Panics if `exp >= order` (unknown territory).
    pub fn coeff(&self, exp: i64) -> C {
        assert!(exp < self.order, "coefficient at {exp} beyond order {}", self.order);
        if exp < self.min_exp {
            return C::zero();
        }
        self.coeffs[(exp - self.min_exp) as usize].clone()
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_exp + k as i64, c))
    }

    pub fn truncate(&self, new_order: i64) -> Self {
        if new_order >= self.order {
            return self.clone();
        }
        let min_exp = self.min_exp.min(new_order);
        let len = (new_order - min_exp) as usize;
        Series::from_coeffs(min_exp, self.coeffs[..len].to_vec(), new_order)
    }

    /// Multiplies by t^k.
    pub fn shift(&self, k: i64) -> Self {
        Series {
            min_exp: self.min_exp + k,
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let min_exp = self.min_exp.min(rhs.min_exp).min(order);
        let mut coeffs = vec![C::zero(); (order - min_exp) as usize];
        for (e, c) in self.iter_terms() {
            if e < order {
                let k = (e - min_exp) as usize;
                coeffs[k] = coeffs[k].add(c);
            }
        }
        for (e, c) in rhs.iter_terms() {
            if e < order {
                let k = (e - min_exp) as usize;
                coeffs[k] = coeffs[k].add(c);
            }
        }
        Series::from_coeffs(min_exp, coeffs, order)
    }

    pub fn neg(&self) -> Self {
        Series {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Series {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        };
        out.normalize();
        out
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        self.scale(&C::from_ratio(r))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let va = self.val_or_order();
        let vb = rhs.val_or_order();
        let order = (self.order + vb).min(rhs.order + va);
        let min_exp = (va + vb).min(order);
        let mut coeffs = vec![C::zero(); (order - min_exp) as usize];
        for (ea, ca) in self.iter_terms() {
            for (eb, cb) in rhs.iter_terms() {
                let e = ea + eb;
                if e < order {
                    let k = (e - min_exp) as usize;
                    coeffs[k] = coeffs[k].add(&ca.mul(cb));
                }
            }
        }
        Series::from_coeffs(min_exp, coeffs, order)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Series::one(self.order + ((n.max(1) - 1) as i64) * self.val_or_order());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse: valuation flips sign, order shrinks by twice
    /// the valuation.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let v = self.valuation().ok_or(SeriesError::ZeroReciprocal)?;
        let lead_inv = self
            .coeff(v)
            .try_inv()
            .ok_or(SeriesError::NonInvertibleLead)?;
        let rel_len = (self.order - v) as usize;
        // b_0 = 1/a_v; b_m = -1/a_v * sum_{i=1..m} a_{v+i} b_{m-i}
        let mut b = Vec::with_capacity(rel_len);
        b.push(lead_inv.clone());
        for m in 1..rel_len {
            let mut acc = C::zero();
            for i in 1..=m {
                let a_i = self.coeff(v + i as i64);
                if !a_i.is_zero() {
                    acc = acc.add(&a_i.mul(&b[m - i]));
                }
            }
            b.push(lead_inv.mul(&acc).neg());
        }
        Ok(Series::from_coeffs(-v, b, self.order - 2 * v))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&rhs.reciprocal()?))
    }

    /// Square root of `1 + self`, where `self` has positive valuation.
    /// The result has constant term 1.
    pub fn sqrt_one_plus(&self) -> Result<Self, SeriesError> {
        match self.valuation() {
            Some(v) if v <= 0 => return Err(SeriesError::ValuationRequired),
            _ => {}
        }
        let order = self.order;
        if order <= 0 {
            return Ok(Series::one(order.max(0)));
        }
        let len = order as usize;
        let mut r: Vec<C> = Vec::with_capacity(len);
        r.push(C::one());
        for e in 1..len {
            // coefficient of t^e in (1 + self) minus the cross terms
            let s_e = if (e as i64) < self.min_exp {
                C::zero()
            } else {
                self.coeff(e as i64)
            };
            let mut acc = s_e;
            for i in 1..e {
                acc = acc.sub(&r[i].mul(&r[e - i]));
            }
            r.push(acc.half());
        }
        Ok(Series::from_coeffs(0, r, order))
    }

    /// True when the two series agree on every exponent below both orders.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        let order = self.order.min(rhs.order);
        let lo = self.min_exp.min(rhs.min_exp);
        (lo..order).all(|e| self.coeff(e) == rhs.coeff(e))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::from_coeffs(
            self.min_exp,
            self.coeffs.iter().map(|c| f(c)).collect(),
            self.order,
        )
    }

    pub fn render(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (e, c) in self.iter_terms() {
            let cs = c.render();
            let term = match e {
                0 => cs,
                1 => format!("{cs}*{var}"),
                _ => format!("{cs}*{var}^{e}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O({var}^{})", parts.join(" + "), self.order)
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("t"))
    }
}

impl TruncSeries {
    /// JSON export: {min_exp, order, coeffs: [[exp, "num/den"], ...]}.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .iter_terms()
            .map(|(e, c)| serde_json::json!([e, format!("{}/{}", c.numer(), c.denom())]))
            .collect();
        serde_json::json!({
            "min_exp": self.min_exp,
            "order": self.order,
            "coeffs": coeffs,
        })
    }

    /// Geometric series 1/(1 - c t).
    pub fn geometric(c: &BigRational, order: i64) -> TruncSeries {
        let len = order.max(0) as usize;
        let mut coeffs = Vec::with_capacity(len);
        let mut acc: BigRational = Coeff::one();
        for _ in 0..len {
            coeffs.push(acc.clone());
            acc *= c;
        }
        Series::from_coeffs(0, coeffs, order.max(0))
    }

    pub fn coeff_i64(&self, exp: i64) -> i64 {
        let c = self.coeff(exp);
        assert!(num_traits::One::is_one(c.denom()));
        i64::try_from(c.numer().clone()).expect("coefficient fits i64")
    }

    /// Signed integer coefficients (asserts integrality).
    pub fn coeff_bigint(&self, exp: i64) -> BigInt {
        let c = self.coeff(exp);
        assert!(
            num_traits::One::is_one(c.denom()),
            "coefficient at {exp} not integral"
        );
        c.numer().clone()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| !num_traits::Signed::is_negative(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(pairs: &[(i64, i64)], order: i64) -> TruncSeries {
        let min = pairs.iter().map(|p| p.0).min().unwrap_or(0);
        let mut coeffs = vec![BigRational::zero(); (order - min) as usize];
        for (e, c) in pairs {
            coeffs[(e - min) as usize] = rat_int(*c);
        }
        Series::from_coeffs(min, coeffs, order)
    }

    #[test]
    fn mul_truncates_pessimistically() {
        let a = ts(&[(0, 1), (1, 1)], 5); // 1 + t
        let b = ts(&[(0, 1), (1, -1)], 5); // 1 - t
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), rat_int(1));
        assert_eq!(p.coeff(1), rat_int(0));
        assert_eq!(p.coeff(2), rat_int(-1));
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn laurent_exponent_arithmetic() {
        let tinv = TruncSeries::t_power(-1, 4);
        let t = TruncSeries::t_power(1, 4);
        let p = tinv.mul(&t);
        assert_eq!(p.coeff(0), rat_int(1));
        assert!(p.valuation() == Some(0));
    }

    #[test]
    fn reciprocal_round_trip() {
        let a = ts(&[(0, 1), (2, 2), (4, 8)], 9);
        let inv = a.reciprocal().unwrap();
        let prod = a.mul(&inv);
        assert_eq!(prod.valuation(), Some(0));
        for e in 1..prod.order() {
            assert_eq!(prod.coeff(e), rat_int(0), "exponent {e}");
        }
    }

    #[test]
    fn reciprocal_of_geometric() {
        let one_minus_t = ts(&[(0, 1), (1, -1)], 8);
        let inv = one_minus_t.reciprocal().unwrap();
        for e in 0..8 {
            assert_eq!(inv.coeff(e), rat_int(1));
        }
    }

    #[test]
    fn reciprocal_with_pole() {
        // 1/(t + 2t^3) = t^-1 - 2t + 4t^3 - 8t^5 ...
        let a = ts(&[(1, 1), (3, 2)], 8);
        let inv = a.reciprocal().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.coeff(-1), rat_int(1));
        assert_eq!(inv.coeff(1), rat_int(-2));
        assert_eq!(inv.coeff(3), rat_int(4));
        assert_eq!(inv.coeff(5), rat_int(-8));
        assert_eq!(
            TruncSeries::one(5).reciprocal().unwrap(),
            TruncSeries::one(5)
        );
        assert_eq!(
            TruncSeries::zero(5).reciprocal().unwrap_err(),
            SeriesError::ZeroReciprocal
        );
    }

    #[test]
    fn sqrt_of_one_minus_8t2() {
        let arg = ts(&[(2, -8)], 10);
        let r = arg.sqrt_one_plus().unwrap();
        assert_eq!(r.coeff(0), rat_int(1));
        assert_eq!(r.coeff(2), rat_int(-4));
        assert_eq!(r.coeff(4), rat_int(-8));
        assert_eq!(r.coeff(6), rat_int(-32));
        assert_eq!(r.coeff(8), rat_int(-160));
        // square back
        let sq = r.mul(&r);
        assert!(sq.agrees_with(&ts(&[(0, 1), (2, -8)], 10)));
        // trivial argument
        assert_eq!(TruncSeries::zero(6).sqrt_one_plus().unwrap(), TruncSeries::one(6));
        // valuation violation
        assert_eq!(
            ts(&[(0, 3)], 4).sqrt_one_plus().unwrap_err(),
            SeriesError::ValuationRequired
        );
    }

    #[test]
    fn order_bookkeeping_through_reciprocal() {
        // valuation 1, order 6 => reciprocal known on [-1, 4)
        let a = ts(&[(1, 1), (2, 1)], 6);
        let inv = a.reciprocal().unwrap();
        assert_eq!(inv.min_exp(), -1);
        assert_eq!(inv.order(), 4);
    }
}
