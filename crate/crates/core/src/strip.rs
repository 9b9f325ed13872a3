//! Strip decomposition: generating functions D_k for walks of the symmetric
//! family ending on the line x + y = k, under the substitution
//! t = q/(1+q^2).
//!
//! D_k(y) is a degree-k polynomial in y over Q(q). The recurrence divides by
//! (yq - 1)(y - q); both divisions must be exact, and are performed in
//! Z[q][y] (the second via coefficient reversal, which turns qy - 1 into the
//! monic y - q). Denominators are kept factored into cyclotomics throughout,
//! so reduction is trial division rather than gcd on huge polynomials.

use crate::enumerate::CountTable;
use crate::qpoly::{cyclotomic, q_pow_plus_one_cyclotomic_indices, QPoly};
use crate::series::TruncSeries;
use crate::steps::{RegionConstraint, StepSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StripError {
    #[error("recurrence division failed to cancel at k={k}")]
    CancellationFailed { k: usize },
    #[error("strip functions require the symmetric preset on the quarter plane")]
    WrongTable,
    #[error("table depth {have} is below the requested order {want}")]
    TableTooShallow { have: usize, want: usize },
}

/// Polynomial in y with QPoly coefficients; index = y-degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly {
    pub ycoeffs: Vec<QPoly>,
}

impl BiPoly {
    fn one() -> Self {
        BiPoly {
            ycoeffs: vec![QPoly::one()],
        }
    }

    fn degree(&self) -> usize {
        self.ycoeffs.len().saturating_sub(1)
    }

    /// Substitutes y = q.
    pub fn at_y_eq_q(&self) -> QPoly {
        let mut acc = QPoly::zero();
        for (j, c) in self.ycoeffs.iter().enumerate() {
            acc = acc.add(&c.shift_up(j));
        }
        acc
    }

    /// Substitutes y = 1.
    pub fn at_y_eq_one(&self) -> QPoly {
        let mut acc = QPoly::zero();
        for c in &self.ycoeffs {
            acc = acc.add(c);
        }
        acc
    }

    /// Exact division by the monic (y - q); None when the remainder is
    /// nonzero.
    fn div_y_minus_q(&self) -> Option<BiPoly> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        let mut quot = vec![QPoly::zero(); d];
        let mut carry = self.ycoeffs[d].clone();
        for j in (1..=d).rev() {
            quot[j - 1] = carry.clone();
            carry = self.ycoeffs[j - 1].add(&carry.shift_up(1));
        }
        if carry.is_zero() {
            Some(BiPoly { ycoeffs: quot })
        } else {
            None
        }
    }

    /// Exact division by (qy - 1), via reversal: y^d P(1/y) is divisible by
    /// (y - q) exactly when P is divisible by (qy - 1), with quotient the
    /// negated reversal.
    fn div_qy_minus_one(&self) -> Option<BiPoly> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        let mut rev = self.ycoeffs.clone();
        rev.reverse();
        let q = BiPoly { ycoeffs: rev }.div_y_minus_q()?;
        let mut out: Vec<QPoly> = q.ycoeffs.into_iter().map(|c| c.neg()).collect();
        out.reverse();
        Some(BiPoly { ycoeffs: out })
    }
}

/// Denominator as a multiset of cyclotomic factors (index -> multiplicity).
pub type FactoredDenom = BTreeMap<usize, u32>;

fn denom_poly(f: &FactoredDenom) -> QPoly {
    let mut acc = QPoly::one();
    for (&d, &m) in f {
        let c = cyclotomic(d);
        for _ in 0..m {
            acc = acc.mul(&c);
        }
    }
    acc
}

fn denom_mul(a: &FactoredDenom, b: &FactoredDenom) -> FactoredDenom {
    let mut out = a.clone();
    for (&d, &m) in b {
        *out.entry(d).or_insert(0) += m;
    }
    out
}

fn denom_lcm(a: &FactoredDenom, b: &FactoredDenom) -> FactoredDenom {
    let mut out = a.clone();
    for (&d, &m) in b {
        let e = out.entry(d).or_insert(0);
        *e = (*e).max(m);
    }
    out
}

/// a / b as a polynomial cofactor (requires b <= a pointwise).
fn denom_cofactor(a: &FactoredDenom, b: &FactoredDenom) -> QPoly {
    let mut acc = QPoly::one();
    for (&d, &m) in a {
        let have = b.get(&d).copied().unwrap_or(0);
        assert!(have <= m, "cofactor would be fractional");
        let c = cyclotomic(d);
        for _ in 0..(m - have) {
            acc = acc.mul(&c);
        }
    }
    acc
}

fn factored_q_pow_plus_one(m: usize) -> FactoredDenom {
    let mut out = FactoredDenom::new();
    for d in q_pow_plus_one_cyclotomic_indices(m) {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

/// Strip generating function specialized at y = 1, as a reduced rational
/// function with factored denominator.
#[derive(Clone, Debug)]
pub struct StripGF {
    pub k: usize,
    pub num: QPoly,
    pub denom: FactoredDenom,
    pub provenance: &'static str,
}

impl StripGF {
    pub fn denom_poly(&self) -> QPoly {
        denom_poly(&self.denom)
    }

    pub fn reduced_denominator_degree(&self) -> i64 {
        self.denom_poly().degree()
    }
}

/// The full strip chain: y-polynomials D_k(y) (as numerator/denominator
/// pairs) and the reduced values D_k(1).
pub struct StripChain {
    /// numerators N_k for even k (index k/2); D_k(y) = N_k(y,q)/Delta_k.
    numer_y: Vec<BiPoly>,
    /// Delta_k as the list of (q^m + 1) factor sizes m.
    denom_y: Vec<Vec<usize>>,
    at_one: Vec<StripGF>,
}

impl StripChain {
    pub fn new() -> Self {
        StripChain {
            numer_y: vec![BiPoly::one()],
            denom_y: vec![Vec::new()],
            at_one: vec![StripGF {
                k: 0,
                num: QPoly::one(),
                denom: FactoredDenom::new(),
                provenance: "recurrence",
            }],
        }
    }

    pub fn max_k(&self) -> usize {
        (self.numer_y.len() - 1) * 2
    }

    /// Extends the chain to the given even line index.
    pub fn extend_to(&mut self, k_max: usize) -> Result<(), StripError> {
        assert!(k_max % 2 == 0, "line index must be even for this step set");
        while self.max_k() < k_max {
            let k = self.max_k() + 2;
            self.step(k)?;
        }
        Ok(())
    }

    /// One recurrence step:
    /// D_k(y) = [q^3 D_{k-2}(q) (y^{k+2} + 1) - q y^2 D_{k-2}(y) (q^{k+2}+1)]
    ///          / [(q^{k+2}+1)(yq-1)(y-q)],
    /// D_k(1) = [q (q^{k+2}+1) D_{k-2}(1) - 2 q^3 D_{k-2}(q)]
    ///          / [(q^{k+2}+1)(q-1)^2].
    fn step(&mut self, k: usize) -> Result<(), StripError> {
        let idx = k / 2 - 1;
        let prev = &self.numer_y[idx];
        let prev_at_q = prev.at_y_eq_q();
        let qk2 = QPoly::q_pow_plus(k + 2, 1);

        // y-polynomial numerator before division
        let mut raw = vec![QPoly::zero(); k + 3];
        let head = prev_at_q.shift_up(3);
        raw[0] = head.clone();
        raw[k + 2] = head;
        for (j, c) in prev.ycoeffs.iter().enumerate() {
            let term = c.mul(&qk2).shift_up(1);
            raw[j + 2] = raw[j + 2].sub(&term);
        }
        let raw = BiPoly { ycoeffs: raw };
        let step1 = raw
            .div_y_minus_q()
            .ok_or(StripError::CancellationFailed { k })?;
        let step2 = step1
            .div_qy_minus_one()
            .ok_or(StripError::CancellationFailed { k })?;
        if step2.degree() != k {
            return Err(StripError::CancellationFailed { k });
        }
        let mut dens = self.denom_y[idx].clone();
        dens.push(k + 2);

        // value at y = 1 through the displayed recurrence
        let prev_one = &self.at_one[idx];
        let delta_prev: FactoredDenom = self.denom_y[idx]
            .iter()
            .fold(FactoredDenom::new(), |acc, &m| {
                denom_mul(&acc, &factored_q_pow_plus_one(m))
            });
        let common = denom_lcm(&prev_one.denom, &delta_prev);
        let co1 = denom_cofactor(&common, &prev_one.denom);
        let co2 = denom_cofactor(&common, &delta_prev);
        let term1 = qk2.shift_up(1).mul(&prev_one.num).mul(&co1);
        let term2 = prev_at_q
            .mul_scalar(&BigInt::from(2))
            .shift_up(3)
            .mul(&co2);
        let mut num = term1.sub(&term2);
        let mut denom = denom_mul(&common, &factored_q_pow_plus_one(k + 2));
        *denom.entry(1).or_insert(0) += 2; // (q-1)^2
        // reduce by trial division against every denominator factor
        let factor_list: Vec<usize> = denom.keys().copied().collect();
        for d in factor_list {
            let c = cyclotomic(d);
            while denom.get(&d).copied().unwrap_or(0) > 0 {
                match num.div_exact(&c) {
                    Some(q) => {
                        num = q;
                        let e = denom.get_mut(&d).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            denom.remove(&d);
                        }
                    }
                    None => break,
                }
            }
        }

        self.numer_y.push(step2);
        self.denom_y.push(dens);
        self.at_one.push(StripGF {
            k,
            num,
            denom,
            provenance: "recurrence",
        });
        Ok(())
    }

    /// D_k(1) as a reduced rational function.
    pub fn at_one(&self, k: usize) -> &StripGF {
        assert!(k % 2 == 0 && k <= self.max_k());
        &self.at_one[k / 2]
    }

    /// The y-polynomial coefficients of D_k(y): numerator in y and q with
    /// its factored denominator.
    pub fn y_polynomial(&self, k: usize) -> (&BiPoly, &[usize]) {
        assert!(k % 2 == 0 && k <= self.max_k());
        (&self.numer_y[k / 2], &self.denom_y[k / 2])
    }
}

impl Default for StripChain {
    fn default() -> Self {
        Self::new()
    }
}

/// The inverse substitution: the unique power series q(t) = t + t^3 + ...
/// with q = t (1 + q^2), i.e. q/(1+q^2) = t.
pub fn q_of_t(order: i64) -> TruncSeries {
    assert!(order >= 1);
    let t = TruncSeries::t_power(1, order);
    let mut q = t.clone();
    for _ in 0..(order / 2 + 1) {
        q = t.mul(&TruncSeries::one(order).add(&q.mul(&q))).truncate(order);
    }
    q
}

/// Expands a strip value D_k(1) as a series in t via q(t).
pub fn expand_at_one(gf: &StripGF, q_series: &TruncSeries, q_powers: &[TruncSeries]) -> TruncSeries {
    let order = q_series.order();
    let eval = |p: &QPoly| -> TruncSeries {
        let mut acc = TruncSeries::zero(order);
        for (d, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&q_powers[d].scale(&BigRational::from_integer(c.clone())));
            }
        }
        acc
    };
    let num = eval(&gf.num);
    let den = eval(&gf.denom_poly());
    num.mul(&den.reciprocal().expect("denominator nonzero at q=0"))
}

#[derive(Clone, Debug, Serialize)]
pub struct StripLineCheck {
    pub k: usize,
    pub matches_oracle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch_exponent: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StripReport {
    pub k_max: usize,
    pub order: i64,
    pub per_line: Vec<StripLineCheck>,
    pub sum_matches_counting_series: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum_first_mismatch: Option<i64>,
    pub passed: bool,
}

/// Checks every even line k <= k_max against the oracle at y = 1 to the
/// given order, and checks that the sum over all contributing lines
/// (k <= 2*order) reproduces the counting series.
pub fn verify_strip(
    k_max: usize,
    order: i64,
    table: &CountTable,
) -> Result<StripReport, StripError> {
    if !(table.steps() == &StepSet::preset_s()
        && table.region() == RegionConstraint::QuarterPlane)
    {
        return Err(StripError::WrongTable);
    }
    if table.n_max() < order as usize {
        return Err(StripError::TableTooShallow {
            have: table.n_max(),
            want: order as usize,
        });
    }
    let sum_k = 2 * order as usize;
    let mut chain = StripChain::new();
    chain.extend_to(k_max.max(sum_k))?;

    let q = q_of_t(order + 1);
    let max_deg = (0..=sum_k / 2)
        .map(|i| {
            let gf = &chain.at_one[i];
            gf.num.degree().max(gf.denom_poly().degree()) as usize
        })
        .max()
        .unwrap_or(0);
    let q_powers = crate::ratq::series_powers(&q, max_deg);

    let mut per_line = Vec::new();
    for k in (0..=k_max).step_by(2) {
        let series = expand_at_one(chain.at_one(k), &q, &q_powers);
        let line = table.line_totals(k);
        let mut mismatch = None;
        for (n, coeffs) in line.iter().enumerate().take(order as usize + 1) {
            let oracle: BigRational = BigRational::from_integer(BigInt::from(
                coeffs.iter().fold(num_bigint::BigUint::zero(), |a, c| a + c),
            ));
            if series.coeff(n as i64) != oracle {
                mismatch = Some(n as i64);
                break;
            }
        }
        per_line.push(StripLineCheck {
            k,
            matches_oracle: mismatch.is_none(),
            first_mismatch_exponent: mismatch,
        });
    }

    // the k-sum reproduces the counting series (walks of length n end on
    // lines k <= 2n)
    let mut total = TruncSeries::zero(order + 1);
    for k in (0..=sum_k).step_by(2) {
        total = total.add(&expand_at_one(chain.at_one(k), &q, &q_powers));
    }
    let mut sum_mismatch = None;
    for n in 0..=order {
        let oracle = BigRational::from_integer(BigInt::from(table.total(n as usize)));
        if total.coeff(n) != oracle {
            sum_mismatch = Some(n);
            break;
        }
    }

    let passed = per_line.iter().all(|c| c.matches_oracle) && sum_mismatch.is_none();
    Ok(StripReport {
        k_max,
        order,
        per_line,
        sum_matches_counting_series: sum_mismatch.is_none(),
        sum_first_mismatch: sum_mismatch,
        passed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyFactor {
    pub poly: String,
    pub cyclotomic_index: usize,
    pub exponent: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyEntry {
    pub k: usize,
    pub denominator_factors: Vec<SurveyFactor>,
    pub reduced_degree: i64,
    /// Whether each cyclotomic factor of q^{k+2}+1 survives reduction as a
    /// true pole of D_k(1). Recorded, never asserted.
    pub new_factors_survived: Vec<(usize, bool)>,
    pub unit_circle_roots_found: usize,
    /// Largest angular gap (radians) in the cumulative set of denominator
    /// root angles up to this k.
    pub max_angular_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub k_max: usize,
    pub entries: Vec<SurveyEntry>,
    /// All denominator roots found lie exactly on the unit circle
    /// (cyclotomic denominators), so their distance histogram is trivial.
    pub all_roots_on_unit_circle: bool,
}

/// Surveys the reduced denominators of D_k(1): which would-be poles survive
/// reduction, and how densely their angles fill the unit circle.
///
/// Observational: whether the full pole set is dense in the circle is a
/// conjecture, not something finite data can assert.
pub fn pole_survey(k_max: usize) -> Result<SurveyReport, StripError> {
    let mut chain = StripChain::new();
    chain.extend_to(k_max)?;
    let mut angles: Vec<f64> = Vec::new();
    let mut entries = Vec::new();
    for k in (2..=k_max).step_by(2) {
        let gf = chain.at_one(k);
        let mut factors = Vec::new();
        let mut roots = 0usize;
        for (&d, &e) in &gf.denom {
            factors.push(SurveyFactor {
                poly: format!("{:?}", cyclotomic(d)),
                cyclotomic_index: d,
                exponent: e,
            });
            let phi_deg = cyclotomic(d).degree() as usize;
            roots += phi_deg * e as usize;
            for j in 1..=d {
                if num_integer::Integer::gcd(&j, &d) == 1 {
                    angles.push(2.0 * std::f64::consts::PI * j as f64 / d as f64);
                }
            }
        }
        let new_factors_survived = q_pow_plus_one_cyclotomic_indices(k + 2)
            .into_iter()
            .map(|d| (d, gf.denom.contains_key(&d)))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let max_gap = if angles.len() < 2 {
            2.0 * std::f64::consts::PI
        } else {
            let mut gap: f64 = 0.0;
            for w in angles.windows(2) {
                gap = gap.max(w[1] - w[0]);
            }
            gap.max(angles[0] + 2.0 * std::f64::consts::PI - angles[angles.len() - 1])
        };
        entries.push(SurveyEntry {
            k,
            denominator_factors: factors,
            reduced_degree: gf.reduced_denominator_degree(),
            new_factors_survived,
            unit_circle_roots_found: roots,
            max_angular_gap: max_gap,
        });
    }
    Ok(SurveyReport {
        k_max,
        entries,
        all_roots_on_unit_circle: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_walks;
    use crate::series::rat_int;

    #[test]
    fn q_of_t_catalan_heads_and_round_trip() {
        let q = q_of_t(10);
        assert_eq!(q.coeff(1), rat_int(1));
        assert_eq!(q.coeff(3), rat_int(1));
        assert_eq!(q.coeff(5), rat_int(2));
        assert_eq!(q.coeff(7), rat_int(5));
        assert_eq!(q.coeff(9), rat_int(14));
        assert_eq!(q.coeff(2), rat_int(0));
        // q/(1+q^2) = t
        let one = TruncSeries::one(10);
        let back = q.mul(&one.add(&q.mul(&q)).reciprocal().unwrap());
        assert!(back.agrees_with(&TruncSeries::t_power(1, 10)));
    }

    #[test]
    fn first_step_matches_hand_value() {
        let mut chain = StripChain::new();
        chain.extend_to(2).unwrap();
        let (n2, dens) = chain.y_polynomial(2);
        // D_2(y) = (q^2 y^2 + q(1+q^2) y + q^2) / (q^4 + 1)
        assert_eq!(dens, &[4]);
        assert_eq!(
            n2.ycoeffs,
            vec![
                QPoly::from_i64(&[0, 0, 1]),
                QPoly::from_i64(&[0, 1, 0, 1]),
                QPoly::from_i64(&[0, 0, 1]),
            ]
        );
        // D_2(1) = q(q+1)^2/(q^4+1); q^4+1 is the 8th cyclotomic
        let d2 = chain.at_one(2);
        assert_eq!(d2.num, QPoly::from_i64(&[0, 1, 2, 1]));
        assert_eq!(d2.denom.get(&8), Some(&1));
        assert_eq!(d2.denom.len(), 1);
    }

    #[test]
    fn at_one_recurrence_agrees_with_y_chain_specialization() {
        // Two independent routes to D_k(1): the dedicated displayed
        // recurrence, and the full y-polynomial chain evaluated at y = 1.
        let mut chain = StripChain::new();
        chain.extend_to(10).unwrap();
        for k in (2..=10usize).step_by(2) {
            let (bi, dens) = chain.y_polynomial(k);
            let num_at_one = bi.at_y_eq_one();
            let delta: QPoly = dens
                .iter()
                .fold(QPoly::one(), |acc, &m| acc.mul(&QPoly::q_pow_plus(m, 1)));
            let gf = chain.at_one(k);
            // cross-multiplied equality of the two rational functions
            let lhs = num_at_one.mul(&gf.denom_poly());
            let rhs = gf.num.mul(&delta);
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn y_palindromic_coefficients() {
        // Walks reflected across x = y reverse the height polynomial.
        let mut chain = StripChain::new();
        chain.extend_to(8).unwrap();
        for k in (2..=8usize).step_by(2) {
            let (p, _) = chain.y_polynomial(k);
            for j in 0..=k {
                assert_eq!(p.ycoeffs[j], p.ycoeffs[k - j], "k={k} j={j}");
            }
        }
    }

    #[test]
    fn d2_series_head() {
        let mut chain = StripChain::new();
        chain.extend_to(2).unwrap();
        let q = q_of_t(8);
        let powers = crate::ratq::series_powers(&q, 8);
        let s = expand_at_one(chain.at_one(2), &q, &powers);
        // t + 2t^2 + 2t^3 + ...
        assert_eq!(s.coeff(0), rat_int(0));
        assert_eq!(s.coeff(1), rat_int(1));
        assert_eq!(s.coeff(2), rat_int(2));
        assert_eq!(s.coeff(3), rat_int(2));
    }

    #[test]
    fn verify_against_oracle_small() {
        let table = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 12);
        let report = verify_strip(8, 12, &table).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn d4_denominator_keeps_primitive_twelfth_roots() {
        let mut chain = StripChain::new();
        chain.extend_to(4).unwrap();
        let d4 = chain.at_one(4);
        // q^6 + 1 = phi_4 phi_12. The primitive-12th-root factor survives
        // reduction as a true pole; the phi_4 part cancels. This is exactly
        // the survival question the survey records per line.
        assert!(d4.denom.contains_key(&12), "{:?}", d4.denom);
        assert!(!d4.denom.contains_key(&4), "{:?}", d4.denom);
        let survey = pole_survey(4).unwrap();
        let e4 = survey.entries.iter().find(|e| e.k == 4).unwrap();
        assert!(e4.new_factors_survived.contains(&(12, true)));
        assert!(e4.new_factors_survived.contains(&(4, false)));
    }

    #[test]
    fn survey_gaps_shrink() {
        let report = pole_survey(12).unwrap();
        let gaps: Vec<f64> = report.entries.iter().map(|e| e.max_angular_gap).collect();
        for w in gaps.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "gaps {gaps:?}");
        }
        assert!(report.all_roots_on_unit_circle);
    }

    #[test]
    fn rejects_wrong_tables() {
        let t_table = count_walks(&StepSet::preset_t(), RegionConstraint::QuarterPlane, 4);
        assert!(matches!(
            verify_strip(2, 4, &t_table),
            Err(StripError::WrongTable)
        ));
        let shallow = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 4);
        assert!(matches!(
            verify_strip(2, 8, &shallow),
            Err(StripError::TableTooShallow { .. })
        ));
    }
}
