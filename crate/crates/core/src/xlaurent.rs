//! Laurent polynomials in the catalytic variable, and series over them.
//!
//! Kernel roots are power series in t whose coefficients are (Laurent)
//! polynomials in x. Reciprocals of the root iterates introduce finitely many
//! negative x-powers, which is why plain polynomials are not enough.

use crate::series::{Coeff, Series, SeriesError};
use num_rational::BigRational;

/// Laurent polynomial in one symbol with exact rational coefficients.
///
/// Normalized so the stored range starts and ends with nonzero coefficients;
/// zero is the empty vector.
#[derive(Clone, PartialEq, Debug)]
pub struct XLaurent {
    min_deg: i64,
    coeffs: Vec<BigRational>,
}

impl XLaurent {
    pub fn from_terms(terms: &[(i64, BigRational)]) -> Self {
        if terms.is_empty() {
            return XLaurent {
                min_deg: 0,
                coeffs: Vec::new(),
            };
        }
        let min = terms.iter().map(|t| t.0).min().unwrap();
        let max = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (max - min + 1) as usize];
        for (d, c) in terms {
            coeffs[(d - min) as usize] += c;
        }
        let mut p = XLaurent {
            min_deg: min,
            coeffs,
        };
        p.normalize();
        p
    }

    pub fn constant(c: BigRational) -> Self {
        XLaurent::from_terms(&[(0, c)])
    }

    pub fn monomial(c: BigRational, deg: i64) -> Self {
        XLaurent::from_terms(&[(deg, c)])
    }

    /// The symbol itself.
    pub fn x() -> Self {
        XLaurent::monomial(BigRational::one(), 1)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_deg += lead as i64;
        }
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.coeffs.len() as i64 - 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.min_deg + k as i64, c))
    }

    pub fn coeff(&self, deg: i64) -> BigRational {
        if deg < self.min_deg || deg > self.max_deg() && !self.coeffs.is_empty() {
            return BigRational::zero();
        }
        self.coeffs
            .get((deg - self.min_deg) as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Substitutes a rational value for the symbol. Fails on negative powers
    /// of zero.
    pub fn eval(&self, v: &BigRational) -> Result<BigRational, SeriesError> {
        if v.is_zero() {
            if self.min_deg < 0 {
                return Err(SeriesError::EvalAtZero);
            }
            return Ok(self.coeff(0));
        }
        // Horner over the nonnegative part, explicit powers for the pole part.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        let mut shift = BigRational::one();
        match self.min_deg.cmp(&0) {
            std::cmp::Ordering::Less => {
                let inv = v.recip();
                for _ in 0..(-self.min_deg) {
                    shift *= &inv;
                }
            }
            std::cmp::Ordering::Greater => {
                for _ in 0..self.min_deg {
                    shift *= v;
                }
            }
            std::cmp::Ordering::Equal => {}
        }
        Ok(acc * shift)
    }
}

impl Coeff for XLaurent {
    fn zero() -> Self {
        XLaurent {
            min_deg: 0,
            coeffs: Vec::new(),
        }
    }
    fn one() -> Self {
        XLaurent::constant(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let min = self.min_deg.min(rhs.min_deg);
        let max = self.max_deg().max(rhs.max_deg());
        let mut coeffs = vec![BigRational::zero(); (max - min + 1) as usize];
        for (d, c) in self.terms() {
            coeffs[(d - min) as usize] += c;
        }
        for (d, c) in rhs.terms() {
            coeffs[(d - min) as usize] += c;
        }
        let mut p = XLaurent {
            min_deg: min,
            coeffs,
        };
        p.normalize();
        p
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return <XLaurent as Coeff>::zero();
        }
        let min = self.min_deg + rhs.min_deg;
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut p = XLaurent {
            min_deg: min,
            coeffs,
        };
        p.normalize();
        p
    }
    fn neg(&self) -> Self {
        XLaurent {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn from_ratio(r: &BigRational) -> Self {
        XLaurent::constant(r.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        // Only monomials are units in the Laurent polynomial ring.
        if self.coeffs.len() == 1 {
            Some(XLaurent::monomial(self.coeffs[0].recip(), -self.min_deg))
        } else {
            None
        }
    }
    fn half(&self) -> Self {
        let two = BigRational::from_integer(2.into());
        XLaurent {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| c / &two).collect(),
        }
    }
    fn render(&self) -> String {
        let mut parts = Vec::new();
        for (d, c) in self.terms() {
            let cs = Coeff::render(c);
            parts.push(match d {
                0 => cs,
                1 => format!("{cs}*x"),
                _ => format!("{cs}*x^{d}"),
            });
        }
        if parts.is_empty() {
            return "0".into();
        }
        format!("({})", parts.join(" + "))
    }
}

/// Series in t with Laurent-polynomial coefficients in x.
pub type PolySeries = Series<XLaurent>;

/// The series `x` (constant in t).
pub fn x_const(order: i64) -> PolySeries {
    Series::monomial(XLaurent::x(), 0, order)
}

pub fn xpow_const(deg: i64, order: i64) -> PolySeries {
    Series::monomial(XLaurent::monomial(BigRational::one(), deg), 0, order)
}

/// Substitutes `g` for the symbol in every coefficient of `f`.
///
/// Requires the inner series to have t-valuation >= 1 and `f` to contain no
/// negative powers of the symbol, so each output coefficient is a finite sum.
pub fn compose_inner<C: Coeff>(f: &PolySeries, g: &Series<C>) -> Result<Series<C>, SeriesError> {
    match g.valuation() {
        Some(v) if v >= 1 => {}
        None => {}
        _ => return Err(SeriesError::InnerValuation),
    }
    let mut max_xdeg = 0i64;
    for (_, p) in f.iter_terms() {
        if p.min_deg() < 0 {
            return Err(SeriesError::NegativePower);
        }
        max_xdeg = max_xdeg.max(p.max_deg());
    }
    // Powers of the inner series; index 0 is unused (constant terms are
    // exact monomials capped at f's order).
    let mut gpow: Vec<Series<C>> = vec![Series::one(1)];
    if max_xdeg >= 1 {
        gpow.push(g.clone());
        for j in 2..=max_xdeg {
            let prev = &gpow[(j - 1) as usize];
            gpow.push(prev.mul(g));
        }
    }
    let mut acc = Series::zero(i64::MAX / 4);
    for (e, p) in f.iter_terms() {
        for (j, c) in p.terms() {
            let term = if j == 0 {
                Series::monomial(C::from_ratio(c), e, f.order())
            } else {
                gpow[j as usize].scale_rat(c).shift(e)
            };
            acc = acc.add(&term);
        }
    }
    Ok(acc.truncate(f.order()))
}

/// Specializes the symbol to a rational value, giving a plain series in t.
pub fn eval_at_x(f: &PolySeries, v: &BigRational) -> Result<Series<BigRational>, SeriesError> {
    let mut out = Vec::with_capacity((f.order() - f.min_exp()) as usize);
    for e in f.min_exp()..f.order() {
        out.push(f.coeff(e).eval(v)?);
    }
    Ok(Series::from_coeffs(f.min_exp(), out, f.order()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, rat_int};

    #[test]
    fn laurent_basics() {
        let p = XLaurent::from_terms(&[(-1, rat_int(2)), (1, rat_int(3))]);
        assert_eq!(p.coeff(-1), rat_int(2));
        assert_eq!(p.coeff(0), rat_int(0));
        assert_eq!(p.eval(&rat_int(2)).unwrap(), rat_int(1) + rat_int(6));
        assert!(p.eval(&rat_int(0)).is_err());
        let q = p.mul(&p);
        assert_eq!(q.coeff(-2), rat_int(4));
        assert_eq!(q.coeff(0), rat_int(12));
        assert_eq!(q.coeff(2), rat_int(9));
        let inv = XLaurent::monomial(rat(1, 2), 3).try_inv().unwrap();
        assert_eq!(inv, XLaurent::monomial(rat_int(2), -3));
        assert!(p.try_inv().is_none());
    }

    #[test]
    fn compose_monomial() {
        // f = x*t, g = t  =>  t^2
        let f = Series::monomial(XLaurent::x(), 1, 6);
        let g = Series::<BigRational>::t_power(1, 6);
        let h = compose_inner(&f, &g).unwrap();
        assert_eq!(h.coeff(2), rat_int(1));
        assert_eq!(h.valuation(), Some(2));
    }

    #[test]
    fn compose_constant_coefficients_is_identity() {
        let f: PolySeries = Series::from_coeffs(
            0,
            vec![
                XLaurent::constant(rat_int(5)),
                XLaurent::constant(rat_int(-1)),
                XLaurent::constant(rat(1, 3)),
            ],
            3,
        );
        let g: PolySeries = Series::monomial(XLaurent::x(), 2, 10);
        let h = compose_inner(&f, &g).unwrap();
        assert!(h.agrees_with(&f));
    }

    #[test]
    fn compose_rejects_bad_valuation() {
        let f = Series::monomial(XLaurent::x(), 0, 4);
        let g = Series::<BigRational>::one(4);
        assert_eq!(compose_inner(&f, &g).unwrap_err(), SeriesError::InnerValuation);
    }

    #[test]
    fn eval_extracts_constant_term_at_zero() {
        let f: PolySeries = Series::from_coeffs(
            0,
            vec![
                XLaurent::from_terms(&[(0, rat_int(7)), (2, rat_int(1))]),
                XLaurent::from_terms(&[(1, rat_int(4))]),
            ],
            2,
        );
        let s = eval_at_x(&f, &rat_int(0)).unwrap();
        assert_eq!(s.coeff(0), rat_int(7));
        assert_eq!(s.coeff(1), rat_int(0));
    }
}
