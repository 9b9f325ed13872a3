//! Dense univariate polynomials in q with exact big-integer coefficients.
//!
//! Everything the pole-locus analysis needs: arithmetic, exact division,
//! gcd by the primitive PRS, cyclotomic factors, palindromicity, and
//! squarefree decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial in q, dense, with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// c * q^d
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        QPoly::from_coeffs(coeffs)
    }

    pub fn q() -> Self {
        QPoly::monomial(BigInt::one(), 1)
    }

    /// q^d + sign.
    pub fn q_pow_plus(d: usize, sign: i64) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[0] = BigInt::from(sign);
        coeffs[d] = BigInt::one();
        QPoly::from_coeffs(coeffs)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for d in 0..len {
            coeffs.push(self.coeff(d) + rhs.coeff(d));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for d in 0..len {
            coeffs.push(self.coeff(d) - rhs.coeff(d));
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
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
        QPoly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> Self {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by q^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Multiplicity of the root q = 0.
    pub fn q_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Divide out the largest power of q.
    pub fn strip_q_power(&self) -> (Self, usize) {
        let v = self.q_valuation();
        if v == 0 {
            return (self.clone(), 0);
        }
        (QPoly::from_coeffs(self.coeffs[v..].to_vec()), v)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigInt::from(d))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides by the integer content and makes the leading coefficient
    /// positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Exact division: Some(quotient) only when the division over Q leaves
    /// no remainder and the quotient is integral.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let (quot, rem) = self.divrem_rational(d);
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(quot.len());
        for c in quot {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(QPoly::from_coeffs(out))
    }

    /// Quotient and remainder over Q.
    pub fn divrem_rational(&self, d: &Self) -> (Vec<BigRational>, Vec<BigRational>) {
        assert!(!d.is_zero());
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let dl = BigRational::from_integer(d.leading());
        let dd = d.coeffs.len() - 1;
        if rem.len() <= dd {
            return (vec![], rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            let qc = lead / &dl;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &qc * BigRational::from_integer(dc.clone());
                rem[k + j] -= t;
            }
            quot[k] = qc;
        }
        rem.truncate(dd);
        (quot, rem)
    }

    /// Greatest common divisor by the primitive PRS; result is primitive
    /// with positive leading coefficient.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.primitive();
        }
        if rhs.is_zero() {
            return self.primitive();
        }
        let mut a = self.primitive();
        let mut b = rhs.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let delta = (a.degree() - b.degree()) as u32;
            let scale = b.leading().pow(delta + 1);
            let scaled = a.mul_scalar(&scale);
            let (_, rem) = scaled.divrem_rational(&b);
            let rem_int: Vec<BigInt> = rem
                .into_iter()
                .map(|c| {
                    debug_assert!(c.denom().is_one(), "pseudo-remainder must be integral");
                    c.numer().clone()
                })
                .collect();
            let r = QPoly::from_coeffs(rem_int).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Yun's squarefree decomposition: distinct squarefree factors with
    /// multiplicities; their product with multiplicities is the primitive
    /// part.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, u32)> {
        let p = self.primitive();
        if p.degree() <= 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        if a0.degree() == 0 {
            return vec![(p, 1)];
        }
        let mut out = Vec::new();
        let mut b = p.div_exact(&a0).expect("gcd divides");
        let mut c = dp.div_exact(&a0).expect("gcd divides derivative");
        let mut i = 1u32;
        loop {
            let d = c.sub(&b.derivative());
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            let nb = b.div_exact(&g).expect("squarefree step divides");
            if nb.degree() == 0 {
                break;
            }
            b = nb;
            c = d.div_exact(&g).expect("squarefree step divides");
            i += 1;
        }
        out
    }

    pub fn eval_rational(&self, v: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Largest absolute coefficient; the norm used in residual bounds.
    pub fn max_coeff_abs(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Reversal q^deg * p(1/q).
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        QPoly::from_coeffs(coeffs)
    }

    /// True when q^deg p(1/q) = +-p(q) after clearing powers of q.
    pub fn is_palindromic_up_to_sign(&self) -> bool {
        let (core, _) = self.strip_q_power();
        let rev = core.reversed();
        rev == core || rev == core.neg()
    }

    /// Repeatedly divides out `factor`, returning the multiplicity removed.
    pub fn remove_factor(&mut self, factor: &QPoly) -> u32 {
        let mut count = 0;
        loop {
            if self.degree() < factor.degree() {
                break;
            }
            match self.div_exact(factor) {
                Some(q) => {
                    *self = q;
                    count += 1;
                }
                None => break,
            }
        }
        count
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match d {
                0 => c.to_string(),
                1 => format!("{c}*q"),
                _ => format!("{c}*q^{d}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The d-th cyclotomic polynomial, by iterated exact division of q^d - 1.
pub fn cyclotomic(d: usize) -> QPoly {
    assert!(d >= 1);
    let mut num = QPoly::q_pow_plus(d, -1);
    for e in 1..d {
        if d % e == 0 {
            num = num
                .div_exact(&cyclotomic(e))
                .expect("cyclotomic divides q^d - 1");
        }
    }
    num
}

/// Indices d with q^m + 1 = prod of cyclotomic(d): divisors of 2m that do
/// not divide m.
pub fn q_pow_plus_one_cyclotomic_indices(m: usize) -> Vec<usize> {
    (1..=2 * m)
        .filter(|&d| (2 * m) % d == 0 && m % d != 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod_of_indices(m: usize) -> QPoly {
        let mut prod = QPoly::one();
        for d in q_pow_plus_one_cyclotomic_indices(m) {
            prod = prod.mul(&cyclotomic(d));
        }
        prod
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = QPoly::from_i64(&[-1, 0, 1]); // q^2 - 1
        let b = QPoly::from_i64(&[1, 1]); // q + 1
        assert_eq!(a.div_exact(&b).unwrap(), QPoly::from_i64(&[-1, 1]));
        assert!(QPoly::from_i64(&[1, 0, 1]).div_exact(&b).is_none());
        let g = a.mul(&b).gcd(&a);
        assert_eq!(g, a.primitive());
    }

    #[test]
    fn squarefree_decomposition_splits_multiplicities() {
        // (q^2 - 1)^2 (q^4 + 3q^2 + 1)
        let sq = QPoly::from_i64(&[-1, 0, 1]).pow(2);
        let quartic = QPoly::from_i64(&[1, 0, 3, 0, 1]);
        let p = sq.mul(&quartic);
        let parts = p.squarefree_decomposition();
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&(quartic, 1)));
        assert!(parts.contains(&(QPoly::from_i64(&[-1, 0, 1]), 2)));
    }

    #[test]
    fn cyclotomics_multiply_back() {
        assert_eq!(cyclotomic(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), QPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(4), QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), QPoly::from_i64(&[1, -1, 1]));
        for m in 1..=12 {
            assert_eq!(prod_of_indices(m), QPoly::q_pow_plus(m, 1), "m={m}");
        }
    }

    #[test]
    fn palindromic_detection() {
        assert!(QPoly::from_i64(&[1, 0, 3, 0, 1]).is_palindromic_up_to_sign());
        assert!(QPoly::from_i64(&[0, 2, 5, 2]).is_palindromic_up_to_sign());
        assert!(QPoly::from_i64(&[-1, 0, 1]).is_palindromic_up_to_sign());
        assert!(!QPoly::from_i64(&[1, 2, 3]).is_palindromic_up_to_sign());
    }

    #[test]
    fn factor_removal_counts_multiplicity() {
        let mut p = QPoly::from_i64(&[-1, 1]).pow(3).mul(&QPoly::from_i64(&[7, 0, 1]));
        let removed = p.remove_factor(&QPoly::from_i64(&[-1, 1]));
        assert_eq!(removed, 3);
        assert_eq!(p, QPoly::from_i64(&[7, 0, 1]));
    }
}
