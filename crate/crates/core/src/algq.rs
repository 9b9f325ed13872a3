//! Elements of a quadratic extension of the rational functions in q:
//! a(q) + b(q) * s where s^2 = disc(q).
//!
//! The square root stays symbolic; numerical evaluation supplies a branch
//! explicitly. That matters: several certified identities hold on exactly
//! one branch at a given point.

use crate::bigfloat::CBig;
use crate::gauss::GaussQ;
use crate::qpoly::QPoly;
use crate::ratq::{series_powers, RatQ};
use crate::series::TruncSeries;
use num_traits::Zero;
use std::fmt;

/// The two discriminants in play.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Disc {
    /// 1 - 6q^2 + q^4 (reciprocal y-iterates at x = 1).
    YFamily,
    /// 1 - 2q - q^2 - 2q^3 + q^4 (reciprocal x-seeded iterates at y = 1).
    XFamily,
}

impl Disc {
    pub fn poly(&self) -> QPoly {
        match self {
            Disc::YFamily => QPoly::from_i64(&[1, 0, -6, 0, 1]),
            Disc::XFamily => QPoly::from_i64(&[1, -2, -1, -2, 1]),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct AlgebraicQ {
    pub a: RatQ,
    pub b: RatQ,
    pub disc: Disc,
}

impl AlgebraicQ {
    pub fn new(a: RatQ, b: RatQ, disc: Disc) -> Self {
        AlgebraicQ { a, b, disc }
    }

    pub fn rational(a: RatQ, disc: Disc) -> Self {
        AlgebraicQ {
            a,
            b: RatQ::zero(),
            disc,
        }
    }

    pub fn from_int(n: i64, disc: Disc) -> Self {
        AlgebraicQ::rational(RatQ::from_int(n), disc)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(self.disc, rhs.disc, "mixed discriminants");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        AlgebraicQ {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
            disc: self.disc,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        AlgebraicQ {
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
            disc: self.disc,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let d = RatQ::from_poly(self.disc.poly());
        AlgebraicQ {
            a: self.a.mul(&rhs.a).add(&self.b.mul(&rhs.b).mul(&d)),
            b: self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a)),
            disc: self.disc,
        }
    }

    pub fn neg(&self) -> Self {
        AlgebraicQ {
            a: self.a.neg(),
            b: self.b.neg(),
            disc: self.disc,
        }
    }

    pub fn conj(&self) -> Self {
        AlgebraicQ {
            a: self.a.clone(),
            b: self.b.neg(),
            disc: self.disc,
        }
    }

    pub fn scale(&self, c: &RatQ) -> Self {
        AlgebraicQ {
            a: self.a.mul(c),
            b: self.b.mul(c),
            disc: self.disc,
        }
    }

    /// Norm a^2 - b^2 disc, a plain rational function.
    pub fn norm(&self) -> RatQ {
        let d = RatQ::from_poly(self.disc.poly());
        self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&d))
    }

    /// Exact evaluation at a Gaussian-rational point, with the branch value
    /// of the square root supplied by the caller (s_value^2 must equal
    /// disc(q); asserted).
    pub fn eval_gauss(&self, q: &GaussQ, s_value: &GaussQ) -> GaussQ {
        let disc_at = eval_qpoly_gauss(&self.disc.poly(), q);
        assert_eq!(
            s_value.mul(s_value),
            disc_at,
            "branch value is not a square root of the discriminant"
        );
        let eval_ratq = |r: &RatQ| -> GaussQ {
            let n = eval_qpoly_gauss(r.num(), q);
            let d = eval_qpoly_gauss(r.den(), q);
            n.div(&d)
        };
        eval_ratq(&self.a).add(&eval_ratq(&self.b).mul(s_value))
    }

    /// Numerical evaluation at a complex point on the given branch:
    /// a(q) + sign * b(q) * sqrt(disc(q)) with the principal square root.
    pub fn eval_complex(&self, q: &CBig, branch_positive: bool, prec: u32) -> CBig {
        let s = eval_qpoly_cbig(&self.disc.poly(), q, prec).sqrt(prec);
        let s = if branch_positive { s } else { s.neg() };
        let eval_ratq = |r: &RatQ| -> CBig {
            let n = eval_qpoly_cbig(r.num(), q, prec);
            let d = eval_qpoly_cbig(r.den(), q, prec);
            n.div(&d, prec)
        };
        eval_ratq(&self.a).add(&eval_ratq(&self.b).mul(&s, prec), prec)
    }

    /// Substitutes a power series q(t), taking the square-root branch with
    /// constant term +1 (both discriminants have constant coefficient 1).
    pub fn eval_series(&self, q_series: &TruncSeries) -> TruncSeries {
        let max_deg = [
            self.a.num().degree(),
            self.a.den().degree(),
            self.b.num().degree(),
            self.b.den().degree(),
            self.disc.poly().degree(),
        ]
        .into_iter()
        .max()
        .unwrap()
        .max(0) as usize;
        let powers = series_powers(q_series, max_deg);
        let disc_series = {
            let p = self.disc.poly();
            let mut acc = TruncSeries::zero(q_series.order());
            for (d, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(
                        &powers[d].scale(&num_rational::BigRational::from_integer(c.clone())),
                    );
                }
            }
            acc
        };
        let one = TruncSeries::one(q_series.order());
        let sqrt = disc_series
            .sub(&one)
            .sqrt_one_plus()
            .expect("discriminant has constant term 1 under a valuation-1 substitution");
        let a = self.a.eval_series(q_series, &powers);
        let b = self.b.eval_series(q_series, &powers);
        a.add(&b.mul(&sqrt))
    }
}

impl fmt::Debug for AlgebraicQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})*sqrt({:?})", self.a, self.b, self.disc.poly())
    }
}

pub fn eval_qpoly_gauss(p: &QPoly, q: &GaussQ) -> GaussQ {
    let mut acc = GaussQ::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(q).add(&GaussQ::from_rational(
            num_rational::BigRational::from_integer(c.clone()),
        ));
    }
    acc
}

pub fn eval_qpoly_cbig(p: &QPoly, q: &CBig, prec: u32) -> CBig {
    let mut acc = CBig::zero();
    for c in p.coeffs().iter().rev() {
        let term = CBig::new(
            crate::bigfloat::BigFloat::from_bigint(c.clone()),
            crate::bigfloat::BigFloat::zero(),
        );
        acc = acc.mul(q, prec).add(&term, prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat_int;

    #[test]
    fn ring_operations_and_norm() {
        // u = q + sqrt(disc), v = q - sqrt(disc): uv = q^2 - disc
        let u = AlgebraicQ::new(RatQ::q(), RatQ::one(), Disc::YFamily);
        let v = u.conj();
        let prod = u.mul(&v);
        assert!(prod.b.is_zero());
        let expected = RatQ::from_poly(
            QPoly::from_i64(&[0, 0, 1]).sub(&Disc::YFamily.poly()),
        );
        assert_eq!(prod.a, expected);
        assert_eq!(u.norm(), expected);
    }

    #[test]
    fn gauss_evaluation_with_branch() {
        // At q = 1 the Y-family discriminant is -4, square roots +-2i.
        let u = AlgebraicQ::new(RatQ::zero(), RatQ::one(), Disc::YFamily);
        let q1 = GaussQ::from_int(1);
        let s = GaussQ::i_times(2);
        assert_eq!(u.eval_gauss(&q1, &s), s);
        let sm = GaussQ::i_times(-2);
        assert_eq!(u.eval_gauss(&q1, &sm), sm);
    }

    #[test]
    fn series_evaluation_uses_plus_branch() {
        // sqrt(disc(q)) at q = t: constant term +1.
        let u = AlgebraicQ::new(RatQ::zero(), RatQ::one(), Disc::YFamily);
        let t = TruncSeries::t_power(1, 6);
        let s = u.eval_series(&t);
        assert_eq!(s.coeff(0), rat_int(1));
        assert_eq!(s.coeff(2), rat_int(-3));
    }
}
