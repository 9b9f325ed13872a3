//! Exact complex rationals a + b*i, used wherever a sign or identity must be
//! decided with no tolerance at all (grid checks, evaluations at q = +-1 and
//! q = i*r).

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct GaussQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussQ { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussQ {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn i() -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// n * i
    pub fn i_times(n: i64) -> Self {
        GaussQ {
            re: BigRational::zero(),
            im: BigRational::from_integer(n.into()),
        }
    }

    pub fn zero() -> Self {
        GaussQ::from_int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        GaussQ {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        GaussQ {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        GaussQ {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn neg(&self) -> Self {
        GaussQ {
            re: -&self.re,
            im: -&self.im,
        }
    }

    pub fn conj(&self) -> Self {
        GaussQ {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero");
        GaussQ {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = GaussQ::from_int(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        GaussQ {
            re: &self.re * c,
            im: &self.im * c,
        }
    }
}

impl fmt::Debug for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_positive() {
            write!(f, "{} + {}i", self.re, self.im)
        } else {
            write!(f, "{} - {}i", self.re, -&self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat_int;

    #[test]
    fn arithmetic() {
        let z = GaussQ::new(rat_int(1), rat_int(2));
        let w = GaussQ::new(rat_int(3), rat_int(-1));
        assert_eq!(z.mul(&w), GaussQ::new(rat_int(5), rat_int(5)));
        assert_eq!(z.mul(&z.inv()), GaussQ::from_int(1));
        assert_eq!(GaussQ::i().pow(4), GaussQ::from_int(1));
        assert_eq!(GaussQ::i().pow(3), GaussQ::i_times(-1));
        assert_eq!(z.conj().mul(&z), GaussQ::from_rational(z.norm_sqr()));
    }
}
