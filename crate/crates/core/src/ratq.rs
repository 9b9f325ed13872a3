//! Rational functions in q, gcd-reduced on construction.

use crate::qpoly::QPoly;
use crate::series::TruncSeries;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;

/// numerator / denominator with gcd 1, denominator nonzero with positive
/// leading coefficient, integer content shared out.
#[derive(Clone, PartialEq, Eq)]
pub struct RatQ {
    num: QPoly,
    den: QPoly,
}

impl RatQ {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatQ { num, den };
        r.reduce();
        r
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatQ {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RatQ::from_poly(QPoly::from_i64(&[n]))
    }

    pub fn zero() -> Self {
        RatQ::from_int(0)
    }

    pub fn one() -> Self {
        RatQ::from_int(1)
    }

    pub fn q() -> Self {
        RatQ::from_poly(QPoly::q())
    }

    /// q^k for any integer k.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            RatQ::from_poly(QPoly::monomial(BigInt::from(1), k as usize))
        } else {
            RatQ {
                num: QPoly::one(),
                den: QPoly::monomial(BigInt::from(1), (-k) as usize),
            }
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = QPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() > 0 {
            self.num = self.num.div_exact(&g).expect("gcd divides numerator");
            self.den = self.den.div_exact(&g).expect("gcd divides denominator");
        }
        // Clear shared integer content; keep the denominator's leading
        // coefficient positive.
        let mut c = num_integer::Integer::gcd(&self.num.content(), &self.den.content());
        if c.is_zero() {
            c = BigInt::from(1);
        }
        if self.den.leading().is_negative() {
            c = -c;
        }
        if c != BigInt::from(1) {
            self.num = QPoly::from_coeffs(self.num.coeffs().iter().map(|a| a / &c).collect());
            self.den = QPoly::from_coeffs(self.den.coeffs().iter().map(|a| a / &c).collect());
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RatQ::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RatQ::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RatQ::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn neg(&self) -> Self {
        RatQ {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        RatQ::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Substitutes a series for q; the denominator must be invertible as a
    /// truncated series (nonzero lowest coefficient).
    pub fn eval_series(&self, q_series: &TruncSeries, q_powers: &[TruncSeries]) -> TruncSeries {
        let order = q_series.order();
        let eval_poly = |p: &QPoly| -> TruncSeries {
            let mut acc = TruncSeries::zero(order);
            for (d, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let r = num_rational::BigRational::from_integer(c.clone());
                    acc = acc.add(&q_powers[d].scale(&r));
                }
            }
            acc
        };
        let num = eval_poly(&self.num);
        let den = eval_poly(&self.den);
        num.mul(&den.reciprocal().expect("denominator invertible as series"))
    }
}

impl fmt::Debug for RatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == QPoly::one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?}) / ({:?})", self.num, self.den)
        }
    }
}

/// Precomputes powers 0..=max_deg of a series, for polynomial substitution.
pub fn series_powers(q_series: &TruncSeries, max_deg: usize) -> Vec<TruncSeries> {
    let mut out = Vec::with_capacity(max_deg + 1);
    out.push(TruncSeries::one(q_series.order()));
    for d in 1..=max_deg {
        let prev = &out[d - 1];
        out.push(prev.mul(q_series).truncate(q_series.order()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        // (q^2-1)/(q+1) reduces to q-1
        let r = RatQ::new(QPoly::from_i64(&[-1, 0, 1]), QPoly::from_i64(&[1, 1]));
        assert_eq!(r.num(), &QPoly::from_i64(&[-1, 1]));
        assert_eq!(r.den(), &QPoly::one());
        // sign normalization: 1/(-q+1) has positive leading denominator
        let r = RatQ::new(QPoly::one(), QPoly::from_i64(&[1, -1]));
        assert_eq!(r.den(), &QPoly::from_i64(&[-1, 1]));
        assert_eq!(r.num(), &QPoly::from_i64(&[-1]));
    }

    #[test]
    fn field_operations() {
        let a = RatQ::new(QPoly::q(), QPoly::from_i64(&[1, 0, 1]));
        let b = a.inv();
        assert_eq!(a.mul(&b), RatQ::one());
        assert_eq!(a.sub(&a), RatQ::zero());
        let s = a.add(&b);
        // q/(1+q^2) + (1+q^2)/q = (q^2 + (1+q^2)^2)/(q(1+q^2))
        assert_eq!(
            s,
            RatQ::new(
                QPoly::from_i64(&[1, 0, 3, 0, 1]),
                QPoly::from_i64(&[0, 1, 0, 1])
            )
        );
    }
}
