//! The dominant-singularity constant and growth diagnostics: Fibonacci
//! values of the iterates at t = 1/3, the alternating series for the
//! asymptotic constant, the half-plane closed form, and finite-n growth
//! checks against the enumerator.

use crate::enumerate::CountTable;
use crate::series::{rat, rat_int, TruncSeries};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Fibonacci numbers under the convention F_0 = F_1 = 1, so that F_2 = 2,
/// F_4 = 5, F_6 = 13 and the iterate identity Y_n(1; 1/3) = 1/F_{2n} holds.
pub struct FibSequence {
    cache: Vec<BigUint>,
}

impl FibSequence {
    pub fn new() -> Self {
        FibSequence {
            cache: vec![BigUint::one(), BigUint::one()],
        }
    }

    pub fn get(&mut self, n: usize) -> BigUint {
        while self.cache.len() <= n {
            let k = self.cache.len();
            let next = &self.cache[k - 1] + &self.cache[k - 2];
            self.cache.push(next);
        }
        self.cache[n].clone()
    }
}

impl Default for FibSequence {
    fn default() -> Self {
        Self::new()
    }
}

/// Y_n(1; 1/3) by the exact recurrence 1/Y_n = 3/Y_{n-1} - 1/Y_{n-2} from
/// Y_0 = 1, Y_1 = 1/2. The reciprocals are plain integers.
pub fn y_at_one_third(n: usize) -> BigRational {
    let mut prev = BigInt::one();
    let mut cur = BigInt::from(2);
    if n == 0 {
        return BigRational::one();
    }
    for _ in 2..=n {
        let next = BigInt::from(3) * &cur - &prev;
        prev = cur;
        cur = next;
    }
    BigRational::new(BigInt::one(), cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaResult {
    /// Rounded decimal string with `digits` fractional digits.
    pub decimal: String,
    pub digits: u32,
    /// Number of series terms consumed.
    pub partial_terms: usize,
    /// Exact rational lower and upper bounds on the constant.
    pub lower: String,
    pub upper: String,
    /// Exact bounds on the inner alternating sum (strictly inside (2/5, 1/2)).
    pub sum_lower: String,
    pub sum_upper: String,
}

/// The asymptotic constant 1 - 2 sum_{n>=0} (-1)^n / (F_{2n} F_{2n+2}),
/// computed in exact rationals with the alternating-series bracket, then
/// rounded to the requested number of digits.
pub fn alpha(digits: u32) -> AlphaResult {
    assert!(digits >= 1);
    let mut fib = FibSequence::new();
    let mut partial = BigRational::zero();
    let mut n = 0usize;
    loop {
        let f2n = fib.get(2 * n);
        let f2n2 = fib.get(2 * n + 2);
        let term = BigRational::new(BigInt::one(), BigInt::from(f2n * f2n2));
        if n % 2 == 0 {
            partial += &term;
        } else {
            partial -= &term;
        }
        // Alternating bracket for the inner sum: consecutive partials.
        let (sum_lo, sum_hi) = if n % 2 == 0 {
            // just added: partial is an upper bound for the sum
            (partial.clone() - &term, partial.clone())
        } else {
            (partial.clone(), partial.clone() + &term)
        };
        // alpha = 1 - 2 sum: bounds swap
        let lo = BigRational::one() - BigRational::from_integer(2.into()) * &sum_hi;
        let hi = BigRational::one() - BigRational::from_integer(2.into()) * &sum_lo;
        let lo_str = round_rational(&lo, digits);
        let hi_str = round_rational(&hi, digits);
        if lo_str == hi_str && n >= 1 {
            return AlphaResult {
                decimal: lo_str,
                digits,
                partial_terms: n + 1,
                lower: format!("{lo}"),
                upper: format!("{hi}"),
                sum_lower: format!("{sum_lo}"),
                sum_upper: format!("{sum_hi}"),
            };
        }
        n += 1;
        assert!(n < 10_000, "alpha bracket failed to settle");
    }
}

/// Exact bounds on alpha as rationals (midpoint accurate to ~10^-(digits)).
pub fn alpha_bounds(digits: u32) -> (BigRational, BigRational) {
    let mut fib = FibSequence::new();
    let mut partial = BigRational::zero();
    let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits + 1));
    let mut n = 0usize;
    loop {
        let f2n = fib.get(2 * n);
        let f2n2 = fib.get(2 * n + 2);
        let term = BigRational::new(BigInt::one(), BigInt::from(f2n * f2n2));
        if n % 2 == 0 {
            partial += &term;
        } else {
            partial -= &term;
        }
        if term < target && n >= 1 {
            let (s_lo, s_hi) = if n % 2 == 0 {
                (partial.clone() - &term, partial.clone())
            } else {
                (partial.clone(), partial.clone() + &term)
            };
            let lo = BigRational::one() - BigRational::from_integer(2.into()) * s_hi;
            let hi = BigRational::one() - BigRational::from_integer(2.into()) * s_lo;
            return (lo, hi);
        }
        n += 1;
    }
}

/// Round-half-up decimal rendering of an exact rational.
pub fn round_rational(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let half = rat(1, 2);
    let shifted = if scaled.is_negative() {
        scaled - half
    } else {
        scaled + half
    };
    let int = shifted.floor().to_integer();
    let neg = int.is_negative();
    let abs = int.magnitude().to_string();
    let d = digits as usize;
    let (ip, fp) = if abs.len() > d {
        (abs[..abs.len() - d].to_string(), abs[abs.len() - d..].to_string())
    } else {
        ("0".into(), format!("{:0>width$}", abs, width = d))
    };
    format!("{}{}.{}", if neg { "-" } else { "" }, ip, fp)
}

/// Series expansion of (1 - sqrt(1 - 8t^2)) / (4t^2): the boundary series of
/// the half-plane relaxation. Coefficient of t^(2m) is 2^m Catalan(m).
pub fn half_plane_closed_form(order: i64) -> TruncSeries {
    assert!(order >= 2);
    let work = order + 2;
    let arg = TruncSeries::t_power(2, work).scale_rat(&rat_int(-8));
    let sqrt = arg.sqrt_one_plus().expect("valuation 2");
    TruncSeries::one(work)
        .sub(&sqrt)
        .shift(-2)
        .scale_rat(&rat(1, 4))
        .truncate(order)
}

/// 2^m * Catalan(m), the closed form for the half-plane coefficients.
pub fn two_pow_catalan(m: usize) -> BigUint {
    let mut cat = BigUint::one();
    // C_m = binom(2m, m)/(m+1) built incrementally: C_{k+1} = C_k * 2(2k+1)/(k+2)
    for k in 0..m {
        cat = cat * BigUint::from(2u32) * BigUint::from(2 * k as u32 + 1)
            / BigUint::from(k as u32 + 2);
    }
    cat * BigUint::from(2u32).pow(m as u32)
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub count: String,
    /// c_n / (alpha 3^n)
    pub ratio: f64,
    /// |c_n - alpha 3^n| / 8^(n/2)
    pub residual_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    pub ratio_at_n_max: f64,
    /// max residual ratio over the reported window: the fitted constant in
    /// |c_n - alpha 3^n| <= C 8^(n/2).
    pub fitted_residual_constant: f64,
    pub window: (usize, usize),
}

/// Growth diagnostics for the symmetric family against alpha 3^n, over
/// n in [window.0, window.1].
pub fn growth_report(table: &CountTable, window: (usize, usize)) -> GrowthReport {
    let (alo, ahi) = alpha_bounds(30);
    let alpha_mid = (&alo + &ahi) / BigRational::from_integer(2.into());
    let mut rows = Vec::new();
    let mut fitted = 0.0f64;
    let (start, stop) = window;
    assert!(stop <= table.n_max());
    for n in start..=stop {
        let c = BigRational::from_integer(BigInt::from(table.total(n)));
        let a3n = &alpha_mid * BigRational::from_integer(BigInt::from(3u32).pow(n as u32));
        let ratio = (&c / &a3n).to_f64().unwrap_or(f64::NAN);
        let diff = &c - &a3n;
        let eight_n = BigRational::from_integer(BigInt::from(8u32).pow(n as u32));
        let resid_sq = (&diff * &diff / eight_n).to_f64().unwrap_or(f64::NAN);
        let residual_ratio = resid_sq.sqrt();
        fitted = fitted.max(residual_ratio);
        rows.push(GrowthRow {
            n,
            count: table.total(n).to_string(),
            ratio,
            residual_ratio,
        });
    }
    GrowthReport {
        ratio_at_n_max: rows.last().map(|r| r.ratio).unwrap_or(f64::NAN),
        fitted_residual_constant: fitted,
        rows,
        window,
    }
}

pub fn growth_csv(report: &GrowthReport) -> String {
    let mut out = String::from("n,count,ratio,residual_ratio\n");
    for r in &report.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n, r.count, r.ratio, r.residual_ratio
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_walks;
    use crate::steps::{RegionConstraint, StepSet};

    #[test]
    fn fibonacci_convention() {
        let mut f = FibSequence::new();
        assert_eq!(f.get(2), BigUint::from(2u32));
        assert_eq!(f.get(4), BigUint::from(5u32));
        assert_eq!(f.get(6), BigUint::from(13u32));
    }

    #[test]
    fn one_third_values() {
        assert_eq!(y_at_one_third(0), rat_int(1));
        assert_eq!(y_at_one_third(1), rat(1, 2));
        assert_eq!(y_at_one_third(3), rat(1, 13));
        let mut fib = FibSequence::new();
        for n in 0..=40 {
            let f2n = BigRational::from_integer(BigInt::from(fib.get(2 * n)));
            assert_eq!(y_at_one_third(n) * f2n, BigRational::one(), "n={n}");
        }
    }

    #[test]
    fn alpha_ten_digits() {
        let a = alpha(10);
        assert_eq!(a.decimal, "0.1731788836");
        let coarse = alpha(1);
        assert_eq!(coarse.decimal, "0.2");
    }

    #[test]
    fn alpha_inner_sum_bounds() {
        let a = alpha(12);
        let parse = |s: &str| -> BigRational { s.parse().unwrap() };
        let lo = parse(&a.sum_lower);
        let hi = parse(&a.sum_upper);
        assert!(lo > rat(2, 5), "lower bound {lo}");
        assert!(hi < rat(1, 2), "upper bound {hi}");
    }

    #[test]
    fn half_plane_series_heads_and_square() {
        let s = half_plane_closed_form(10);
        assert_eq!(s.coeff(0), rat_int(1));
        assert_eq!(s.coeff(2), rat_int(2));
        assert_eq!(s.coeff(4), rat_int(8));
        assert_eq!(s.coeff(6), rat_int(40));
        assert_eq!(s.coeff(1), rat_int(0));
        assert_eq!(s.coeff(3), rat_int(0));
        // (1 - 4t^2 P)^2 = 1 - 8t^2
        let one = TruncSeries::one(10);
        let back = one.sub(&s.shift(2).scale_rat(&rat_int(4)));
        let sq = back.mul(&back);
        assert!(sq.agrees_with(
            &one.sub(&TruncSeries::t_power(2, 10).scale_rat(&rat_int(8)))
        ));
        for m in 0..5usize {
            assert_eq!(
                s.coeff(2 * m as i64),
                BigRational::from_integer(two_pow_catalan(m).into())
            );
        }
    }

    #[test]
    fn half_plane_matches_oracle() {
        let table = count_walks(&StepSet::preset_s(), RegionConstraint::HalfPlaneY, 16);
        let s = half_plane_closed_form(17);
        let boundary = table.boundary_totals(crate::enumerate::Axis::X);
        for (n, c) in boundary.iter().enumerate() {
            assert_eq!(
                s.coeff(n as i64),
                BigRational::from_integer(c.clone().into()),
                "n={n}"
            );
        }
    }

    #[test]
    fn growth_sanity_small() {
        let table = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 60);
        let report = growth_report(&table, (40, 60));
        assert!((report.ratio_at_n_max - 1.0).abs() < 0.1);
        assert!(report.fitted_residual_constant.is_finite());
        assert_eq!(report.rows[0].n, 40);
    }
}
