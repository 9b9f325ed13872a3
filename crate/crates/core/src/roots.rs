//! All-roots polynomial solver: squarefree split, then simultaneous
//! (Durand-Kerner) iteration in arbitrary-precision complex arithmetic,
//! with a certified residual bound per root and deterministic ordering.

use crate::bigfloat::{BigFloat, CBig};
use crate::qpoly::QPoly;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct RootEntry {
    pub value: CBig,
    pub multiplicity: u32,
    pub modulus: BigFloat,
    pub residual: BigFloat,
}

impl RootEntry {
    pub fn to_report(&self, digits: u32) -> RootReport {
        RootReport {
            re: self.value.re.to_decimal(digits),
            im: self.value.im.to_decimal(digits),
            modulus: self.modulus.to_decimal(digits),
            residual: format!("{:.3e}", self.residual.to_f64()),
            multiplicity: self.multiplicity,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub re: String,
    pub im: String,
    pub modulus: String,
    pub residual: String,
    pub multiplicity: u32,
}

#[derive(Debug, Error)]
pub enum RootError {
    #[error("constant polynomial has no roots")]
    ConstantInput,
    #[error("iteration did not converge at the requested precision; worst residual {worst_residual:.3e}")]
    NonConvergence { worst_residual: f64 },
}

/// Finds all complex roots of an integer polynomial to roughly
/// `precision_digits` decimal digits.
///
/// Returns roots sorted by modulus then argument, with multiplicities from
/// the exact squarefree decomposition. Each root carries the verified
/// residual |p(root)|, which is required to be below
/// 10^(-precision_digits/2) * max|coeff(p)|.
pub fn find_roots(p: &QPoly, precision_digits: u32) -> Result<Vec<RootEntry>, RootError> {
    if p.degree() < 1 {
        return Err(RootError::ConstantInput);
    }
    let prec = digits_to_bits(precision_digits) + 64;
    let mut entries: Vec<RootEntry> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        if factor.degree() < 1 {
            continue;
        }
        let roots = durand_kerner(&factor, prec)?;
        for z in roots {
            let residual = eval_abs(p, &z, prec * 2);
            let modulus = z.abs(prec);
            entries.push(RootEntry {
                value: z,
                multiplicity: mult,
                modulus,
                residual,
            });
        }
    }
    // Residual certification against the stated bound.
    let bound = residual_bound(p, precision_digits);
    let mut worst = 0.0f64;
    let mut ok = true;
    for e in &entries {
        if e.residual.cmp_abs(&bound) == Ordering::Greater {
            ok = false;
        }
        worst = worst.max(e.residual.to_f64());
    }
    if !ok {
        return Err(RootError::NonConvergence {
            worst_residual: worst,
        });
    }
    entries.sort_by(|a, b| {
        a.modulus
            .cmp_val(&b.modulus)
            .then_with(|| arg_f64(&a.value).partial_cmp(&arg_f64(&b.value)).unwrap())
    });
    Ok(entries)
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * 3.3219280948873626).ceil() as u32
}

pub fn residual_bound(p: &QPoly, precision_digits: u32) -> BigFloat {
    let norm = BigFloat::from_bigint(p.max_coeff_abs());
    let eps = pow10_neg(precision_digits / 2, 256);
    norm.mul(&eps, 256)
}

/// 10^(-k)
pub fn pow10_neg(k: u32, prec: u32) -> BigFloat {
    let ten_k = BigFloat::from_bigint(BigInt::from(10).pow(k));
    BigFloat::from_i64(1).div(&ten_k, prec)
}

fn arg_f64(z: &CBig) -> f64 {
    let (re, im) = z.to_f64_pair();
    im.atan2(re)
}

fn eval_cbig(p: &QPoly, z: &CBig, prec: u32) -> CBig {
    crate::algq::eval_qpoly_cbig(p, z, prec)
}

fn eval_abs(p: &QPoly, z: &CBig, prec: u32) -> BigFloat {
    eval_cbig(p, z, prec).abs(prec)
}

/// Cauchy bound: all roots have modulus < 1 + max|a_i| / |a_d|.
fn cauchy_bound(p: &QPoly) -> f64 {
    let lead = p.leading().abs().to_f64().unwrap_or(1.0);
    let m = p.max_coeff_abs().to_f64().unwrap_or(1.0);
    1.0 + m / lead
}

fn durand_kerner(p: &QPoly, prec: u32) -> Result<Vec<CBig>, RootError> {
    let deg = p.degree() as usize;
    if deg == 1 {
        // Exact: -a0/a1.
        let a0 = BigFloat::from_bigint(p.coeff(0));
        let a1 = BigFloat::from_bigint(p.coeff(1));
        return Ok(vec![CBig::new(a0.neg().div(&a1, prec), BigFloat::zero())]);
    }
    let bound = cauchy_bound(p);
    // Deterministic spread of initial guesses: powers of 0.4 + 0.9i scaled
    // near the root bound. Not a root of unity, so no symmetry locking.
    let seed = CBig::from_f64(0.4, 0.9);
    let scale = CBig::from_f64(bound * 0.8, 0.0);
    let mut z: Vec<CBig> = Vec::with_capacity(deg);
    let mut acc = seed.clone();
    for _ in 0..deg {
        z.push(acc.mul(&scale, prec));
        acc = acc.mul(&seed, prec);
    }
    let lead = BigFloat::from_bigint(p.leading());
    let tol = BigFloat::pow2(-(prec as i64) + 16);
    let max_iter = 60 + 12 * deg;
    let mut converged = false;
    for _ in 0..max_iter {
        let mut max_step = BigFloat::zero();
        for i in 0..deg {
            let pz = eval_cbig(p, &z[i], prec);
            if pz.is_zero() {
                continue;
            }
            let mut denom = CBig::new(lead.clone(), BigFloat::zero());
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    denom = denom.mul(&z[i].sub(zj, prec), prec);
                }
            }
            let step = pz.div(&denom, prec);
            let step_mag = step.abs(64);
            if step_mag.cmp_abs(&max_step) == Ordering::Greater {
                max_step = step_mag;
            }
            z[i] = z[i].sub(&step, prec);
        }
        // Relative to the root bound, which is O(1) here.
        if max_step.cmp_abs(&tol) != Ordering::Greater {
            converged = true;
            break;
        }
    }
    if !converged {
        let worst = z
            .iter()
            .map(|zi| eval_abs(p, zi, prec).to_f64())
            .fold(0.0f64, f64::max);
        return Err(RootError::NonConvergence {
            worst_residual: worst,
        });
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(z: &CBig, re: f64, im: f64) {
        let (zr, zi) = z.to_f64_pair();
        assert!(
            (zr - re).abs() < 1e-10 && (zi - im).abs() < 1e-10,
            "({zr},{zi}) vs ({re},{im})"
        );
    }

    #[test]
    fn quadratic_pm_one() {
        let p = QPoly::from_i64(&[-1, 0, 1]);
        let roots = find_roots(&p, 40).unwrap();
        assert_eq!(roots.len(), 2);
        // equal modulus: sorted by argument, so +1 (arg 0) precedes -1 (arg pi)
        assert_close(&roots[0].value, 1.0, 0.0);
        assert_close(&roots[1].value, -1.0, 0.0);
    }

    #[test]
    fn golden_ratio_octic() {
        // q^8 + q^6 - 4q^4 + q^2 + 1 = (q^2-1)^2 (q^4 + 3 q^2 + 1):
        // double roots at +-1 and simple roots +- i*phi, +- i/phi.
        let p = QPoly::from_i64(&[1, 0, 1, 0, -4, 0, 1, 0, 1]);
        let roots = find_roots(&p, 40).unwrap();
        let total: u32 = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total as i64, p.degree());
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut found_phi = 0;
        let mut found_inv = 0;
        for r in &roots {
            let (re, im) = r.value.to_f64_pair();
            if re.abs() < 1e-20 && (im.abs() - phi).abs() < 1e-12 {
                found_phi += 1;
            }
            if re.abs() < 1e-20 && (im.abs() - 1.0 / phi).abs() < 1e-12 {
                found_inv += 1;
            }
            if im == 0.0 {
                assert_eq!(r.multiplicity, 2);
            }
        }
        assert_eq!(found_phi, 2);
        assert_eq!(found_inv, 2);
    }

    #[test]
    fn deterministic_ordering() {
        let p = QPoly::from_i64(&[3, -2, 5, 0, 1, 7]);
        let a = find_roots(&p, 40).unwrap();
        let b = find_roots(&p, 40).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.value, y.value);
        }
        // sorted by modulus
        for w in a.windows(2) {
            assert_ne!(w[0].modulus.cmp_val(&w[1].modulus), Ordering::Greater);
        }
    }

    #[test]
    fn residuals_certified() {
        let p = QPoly::from_i64(&[1, 0, 1, 0, -4, 0, 1, 0, 1]);
        let roots = find_roots(&p, 60).unwrap();
        let bound = residual_bound(&p, 60);
        for r in roots {
            assert_ne!(r.residual.cmp_abs(&bound), Ordering::Greater);
        }
    }
}
