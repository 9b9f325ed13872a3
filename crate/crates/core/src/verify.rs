//! The composite verification run: every cross-check the library offers,
//! executed with one configuration and rolled into a single deterministic
//! report. Exit-code policy: a false `passed` anywhere means the mathematics
//! disagreed, which callers (CLI, CI) surface as exit 1.

use crate::asymptotics;
use crate::enumerate::{count_walks, functional_equation_check, Axis};
use crate::kernel::{Family, KernelModel};
use crate::nu;
use crate::qanalysis;
use crate::series::rat;
use crate::steps::{RegionConstraint, StepSet};
use crate::strip;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Series order for the generating-function/oracle comparisons.
    pub order: i64,
    /// Certify pole loci for n = 2..=poles_max_n.
    pub poles_max_n: usize,
    /// Decimal digits for the root finder.
    pub precision: u32,
    /// Order for the symbolic kernel-root identity checks.
    pub identity_order: i64,
    /// Strip verification: even lines up to k_max at this order.
    pub strip_k_max: usize,
    pub strip_order: i64,
    /// Imaginary-axis case checks run for n = 1..=nu_max_n on a grid of
    /// +-[grid_start, grid_stop] with step grid_step.
    pub nu_max_n: usize,
    pub grid_step_denom: i64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 50,
            poles_max_n: 10,
            precision: 60,
            identity_order: 30,
            strip_k_max: 20,
            strip_order: 30,
            nu_max_n: 12,
            grid_step_denom: 200,
        }
    }
}

pub struct VerifyOutcome {
    pub passed: bool,
    pub report: serde_json::Value,
}

pub fn verify_all(cfg: &VerifyConfig) -> VerifyOutcome {
    let mut groups: BTreeMap<String, serde_json::Value> = BTreeMap::new();
    let mut all_ok = true;
    let add = |groups: &mut BTreeMap<String, serde_json::Value>,
                   all_ok: &mut bool,
                   name: &str,
                   passed: bool,
                   detail: serde_json::Value| {
        *all_ok &= passed;
        groups.insert(name.to_string(), json!({"passed": passed, "detail": detail}));
    };

    // Exact enumeration tables used by several groups.
    let order = cfg.order;
    let s_table = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, order as usize);
    let t_table = count_walks(&StepSet::preset_t(), RegionConstraint::QuarterPlane, order as usize);

    // Functional equations replayed against the tables.
    for (name, table) in [("functional_equation_S", &s_table), ("functional_equation_T", &t_table)] {
        let rep = functional_equation_check(table).expect("preset tables");
        add(
            &mut groups,
            &mut all_ok,
            name,
            rep.passed,
            serde_json::to_value(&rep).unwrap(),
        );
    }

    // Kernel-root identities.
    for (name, family) in [
        ("kernel_identities_S", Family::SetS),
        ("kernel_identities_T", Family::SetT),
    ] {
        let model = KernelModel::new(family, cfg.identity_order);
        let checks = model.verify_root_identities();
        let passed = checks.iter().all(|c| c.passed());
        add(
            &mut groups,
            &mut all_ok,
            name,
            passed,
            serde_json::to_value(&checks).unwrap(),
        );
    }

    // Generating functions against the oracle.
    for (name, family, table) in [
        ("gf_oracle_S", Family::SetS, &s_table),
        ("gf_oracle_T", Family::SetT, &t_table),
    ] {
        let model = KernelModel::new(family, order + 1);
        let scalar = model.scalar_series();
        let mut first_mismatch: Option<(String, i64)> = None;
        for n in 0..=order {
            let w = BigRational::from_integer(BigInt::from(table.total(n as usize)));
            if scalar.counting.coeff(n) != w {
                first_mismatch = Some(("counting".into(), n));
                break;
            }
        }
        let bx = table.boundary_totals(Axis::X);
        let by = table.boundary_totals(Axis::Y);
        if first_mismatch.is_none() {
            for n in 0..=order {
                let ox = BigRational::from_integer(BigInt::from(bx[n as usize].clone()));
                let oy = BigRational::from_integer(BigInt::from(by[n as usize].clone()));
                if scalar.x_axis.coeff(n) != ox {
                    first_mismatch = Some(("x_axis".into(), n));
                    break;
                }
                if scalar.y_axis.coeff(n) != oy {
                    first_mismatch = Some(("y_axis".into(), n));
                    break;
                }
            }
        }
        let passed = first_mismatch.is_none();
        add(
            &mut groups,
            &mut all_ok,
            name,
            passed,
            json!({"order": order, "first_mismatch": first_mismatch}),
        );
    }

    // Pole certifications for the symmetric family.
    {
        let mut reports = Vec::new();
        let mut passed = true;
        for n in 2..=cfg.poles_max_n {
            match qanalysis::certify_thm_work(n, 4 * n, cfg.precision) {
                Ok(rep) => {
                    passed &= rep.passed() && rep.palindromic;
                    reports.push(serde_json::to_value(&rep).unwrap());
                }
                Err(e) => {
                    passed = false;
                    reports.push(json!({"n": n, "error": e.to_string()}));
                }
            }
        }
        add(&mut groups, &mut all_ok, "pole_certifications", passed, json!(reports));
    }

    // Closed form vs recurrence for the reciprocal iterates.
    {
        let mut passed = true;
        for n in 0..=cfg.poles_max_n.max(12) {
            passed &= qanalysis::ybar_closed(n) == qanalysis::ybar_recurrence(n);
            passed &= qanalysis::xbar_closed(n) == qanalysis::xbar_recurrence(n);
        }
        let depth = cfg.poles_max_n.max(12);
        add(
            &mut groups,
            &mut all_ok,
            "iterate_closed_forms",
            passed,
            json!({"max_n": depth}),
        );
    }

    // Imaginary-axis sign function and brackets.
    {
        let mut passed = true;
        let one = rat(1, 1);
        let two = rat(2, 1);
        let mut brackets = Vec::new();
        for m in 1..=10usize {
            let p = qanalysis::imaginary_axis_parts(m, &one);
            passed &= p.c1 == rat(0, 1) && p.c2 == rat(4, 1);
            passed &= qanalysis::imaginary_axis_sign(m, &two) == -1;
            let ((lo, hi), _) = qanalysis::bracket_roots_f(m, 10);
            passed &= lo >= one && hi <= two;
            brackets.push(json!({
                "m": m,
                "lo": lo.to_string(),
                "hi": hi.to_string(),
            }));
        }
        add(&mut groups, &mut all_ok, "imaginary_axis", passed, json!(brackets));
    }

    // Nu case analysis.
    {
        let grid = nu::symmetric_grid(
            &rat(1, 20),
            &rat(4, 1),
            &rat(1, cfg.grid_step_denom),
        );
        let mut reports = Vec::new();
        let mut passed = true;
        for n in 1..=cfg.nu_max_n {
            let rep = nu::nu_case_checks(n, &grid);
            passed &= rep.passed;
            reports.push(serde_json::to_value(&rep).unwrap());
        }
        add(&mut groups, &mut all_ok, "nu_cases", passed, json!(reports));
    }

    // The asymptotic constant.
    {
        let a = asymptotics::alpha(10);
        let sum_lo: BigRational = a.sum_lower.parse().unwrap();
        let sum_hi: BigRational = a.sum_upper.parse().unwrap();
        let passed =
            a.decimal == "0.1731788836" && sum_lo > rat(2, 5) && sum_hi < rat(1, 2);
        add(
            &mut groups,
            &mut all_ok,
            "alpha",
            passed,
            serde_json::to_value(&a).unwrap(),
        );
    }

    // Half-plane closed form against its oracle.
    {
        let hp_order = 40usize;
        let table = count_walks(&StepSet::preset_s(), RegionConstraint::HalfPlaneY, hp_order);
        let series = asymptotics::half_plane_closed_form(hp_order as i64 + 1);
        let boundary = table.boundary_totals(Axis::X);
        let mut first_mismatch = None;
        for (n, c) in boundary.iter().enumerate() {
            if series.coeff(n as i64) != BigRational::from_integer(BigInt::from(c.clone())) {
                first_mismatch = Some(n);
                break;
            }
        }
        // Even coefficients are 2^m Catalan(m).
        let mut catalan_ok = true;
        for m in 0..=hp_order / 2 {
            let expect = BigRational::from_integer(asymptotics::two_pow_catalan(m).into());
            catalan_ok &= series.coeff(2 * m as i64) == expect;
        }
        let passed = first_mismatch.is_none() && catalan_ok;
        add(
            &mut groups,
            &mut all_ok,
            "half_plane",
            passed,
            json!({"order": hp_order, "first_mismatch": first_mismatch, "catalan_form": catalan_ok}),
        );
    }

    // Fibonacci identity at t = 1/3.
    {
        let mut fib = asymptotics::FibSequence::new();
        let mut passed = true;
        for n in 0..=40usize {
            let f2n = BigRational::from_integer(BigInt::from(fib.get(2 * n)));
            passed &= asymptotics::y_at_one_third(n) * f2n == rat(1, 1);
        }
        add(
            &mut groups,
            &mut all_ok,
            "fibonacci_identity",
            passed,
            json!({"max_n": 40}),
        );
    }

    // Strip decomposition against the oracle.
    {
        let table = count_walks(
            &StepSet::preset_s(),
            RegionConstraint::QuarterPlane,
            cfg.strip_order as usize,
        );
        match strip::verify_strip(cfg.strip_k_max, cfg.strip_order, &table) {
            Ok(rep) => {
                let passed = rep.passed;
                add(
                    &mut groups,
                    &mut all_ok,
                    "strip",
                    passed,
                    serde_json::to_value(&rep).unwrap(),
                );
            }
            Err(e) => add(&mut groups, &mut all_ok, "strip", false, json!(e.to_string())),
        }
    }

    let report = json!({
        "config": {
            "order": cfg.order,
            "poles_max_n": cfg.poles_max_n,
            "precision": cfg.precision,
            "identity_order": cfg.identity_order,
            "strip_k_max": cfg.strip_k_max,
            "strip_order": cfg.strip_order,
            "nu_max_n": cfg.nu_max_n,
        },
        "passed": all_ok,
        "groups": groups,
    });
    VerifyOutcome {
        passed: all_ok,
        report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_verify_all_passes_and_is_deterministic() {
        let cfg = VerifyConfig {
            order: 12,
            poles_max_n: 3,
            precision: 40,
            identity_order: 10,
            strip_k_max: 4,
            strip_order: 6,
            nu_max_n: 4,
            grid_step_denom: 10,
        };
        let a = verify_all(&cfg);
        assert!(a.passed, "{}", serde_json::to_string_pretty(&a.report).unwrap());
        let b = verify_all(&cfg);
        assert_eq!(
            serde_json::to_string(&a.report).unwrap(),
            serde_json::to_string(&b.report).unwrap()
        );
    }
}
