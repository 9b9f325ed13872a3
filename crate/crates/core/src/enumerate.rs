//! Exact dynamic-programming enumeration of restricted lattice walks.
//!
//! This is the ground-truth oracle: every generating-function identity in the
//! other modules is ultimately checked against these big-integer counts.

use crate::steps::{RegionConstraint, StepSet};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

/// One layer of the table: counts for all endpoints of walks of length `n`.
///
/// Dense storage over the rectangle reachable at that length.
#[derive(Clone, Debug)]
struct Layer {
    min_i: i64,
    min_j: i64,
    width: usize,
    height: usize,
    data: Vec<BigUint>,
}

impl Layer {
    fn new(region: RegionConstraint, n: usize) -> Self {
        let n = n as i64;
        let (min_i, max_i) = match region {
            RegionConstraint::QuarterPlane => (0, n),
            _ => (-n, n),
        };
        let (min_j, max_j) = match region {
            RegionConstraint::Unrestricted => (-n, n),
            _ => (0, n),
        };
        let width = (max_i - min_i + 1) as usize;
        let height = (max_j - min_j + 1) as usize;
        Layer {
            min_i,
            min_j,
            width,
            height,
            data: vec![BigUint::zero(); width * height],
        }
    }

    fn idx(&self, i: i64, j: i64) -> Option<usize> {
        if i < self.min_i || j < self.min_j {
            return None;
        }
        let di = (i - self.min_i) as usize;
        let dj = (j - self.min_j) as usize;
        if di >= self.width || dj >= self.height {
            return None;
        }
        Some(dj * self.width + di)
    }

    fn get(&self, i: i64, j: i64) -> BigUint {
        self.idx(i, j)
            .map(|k| self.data[k].clone())
            .unwrap_or_else(BigUint::zero)
    }

    /// Iterates non-zero entries in (j, i) row-major order.
    fn iter_nonzero(&self) -> impl Iterator<Item = (i64, i64, &BigUint)> {
        self.data.iter().enumerate().filter_map(move |(k, c)| {
            if c.is_zero() {
                None
            } else {
                let i = self.min_i + (k % self.width) as i64;
                let j = self.min_j + (k / self.width) as i64;
                Some((i, j, c))
            }
        })
    }
}

/// Exact counts of walks of every length up to `n_max`, indexed by endpoint.
#[derive(Clone, Debug)]
pub struct CountTable {
    steps: StepSet,
    region: RegionConstraint,
    n_max: usize,
    layers: Vec<Layer>,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("length {n} out of range (table holds 0..={n_max})")]
    LengthOutOfRange { n: usize, n_max: usize },
}

/// Builds the full table by the layer recurrence: a walk of length n is a
/// walk of length n-1 plus one legal step.
pub fn count_walks(steps: &StepSet, region: RegionConstraint, n_max: usize) -> CountTable {
    let mut layers = Vec::with_capacity(n_max + 1);
    let mut base = Layer::new(region, 0);
    let k = base.idx(0, 0).expect("origin in layer 0");
    base.data[k] = BigUint::from(1u32);
    layers.push(base);
    for n in 1..=n_max {
        let prev = &layers[n - 1];
        let mut layer = Layer::new(region, n);
        for dj in 0..layer.height {
            let j = layer.min_j + dj as i64;
            for di in 0..layer.width {
                let i = layer.min_i + di as i64;
                let mut acc = BigUint::zero();
                for s in steps.steps() {
                    let pi = i - s.dx as i64;
                    let pj = j - s.dy as i64;
                    if region.contains(pi, pj) {
                        if let Some(k) = prev.idx(pi, pj) {
                            acc += &prev.data[k];
                        }
                    }
                }
                let k = dj * layer.width + di;
                layer.data[k] = acc;
            }
        }
        layers.push(layer);
    }
    CountTable {
        steps: steps.clone(),
        region,
        n_max,
        layers,
    }
}

impl CountTable {
    pub fn steps(&self) -> &StepSet {
        &self.steps
    }

    pub fn region(&self) -> RegionConstraint {
        self.region
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Exact count of walks of length `n` ending at `(i,j)`; zero off-support.
    pub fn coefficient(&self, n: usize, i: i64, j: i64) -> Result<BigUint, TableError> {
        if n > self.n_max {
            return Err(TableError::LengthOutOfRange { n, n_max: self.n_max });
        }
        Ok(self.layers[n].get(i, j))
    }

    /// Total number of walks of length `n` (all endpoints).
    pub fn total(&self, n: usize) -> BigUint {
        self.layers[n]
            .data
            .iter()
            .fold(BigUint::zero(), |acc, c| acc + c)
    }

    /// Totals for every length, i.e. the coefficients of the counting series.
    pub fn totals(&self) -> Vec<BigUint> {
        (0..=self.n_max).map(|n| self.total(n)).collect()
    }

    /// Per-length sums over one axis: X keeps j = 0, Y keeps i = 0.
    pub fn boundary_totals(&self, axis: Axis) -> Vec<BigUint> {
        (0..=self.n_max)
            .map(|n| {
                let layer = &self.layers[n];
                let mut acc = BigUint::zero();
                match axis {
                    Axis::X => {
                        for i in layer.min_i..layer.min_i + layer.width as i64 {
                            acc += layer.get(i, 0);
                        }
                    }
                    Axis::Y => {
                        for j in layer.min_j..layer.min_j + layer.height as i64 {
                            acc += layer.get(0, j);
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Counts of walks ending on the line x + y = k, split by final height.
    ///
    /// Entry n is the coefficient list of the height polynomial: index j
    /// holds the number of walks of length n ending at (k-j, j).
    pub fn line_totals(&self, k: usize) -> Vec<Vec<BigUint>> {
        (0..=self.n_max)
            .map(|n| {
                (0..=k)
                    .map(|j| self.layers[n].get(k as i64 - j as i64, j as i64))
                    .collect()
            })
            .collect()
    }

    /// Overwrites one entry. Only for fault-injection in tests.
    #[doc(hidden)]
    pub fn set_count(&mut self, n: usize, i: i64, j: i64, value: BigUint) {
        let layer = &mut self.layers[n];
        let k = layer.idx(i, j).expect("entry inside layer bounds");
        layer.data[k] = value;
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut rows = Vec::new();
        for (n, layer) in self.layers.iter().enumerate() {
            for (i, j, c) in layer.iter_nonzero() {
                rows.push(TableRow {
                    n,
                    i,
                    j,
                    count: c.to_string(),
                });
            }
        }
        serde_json::json!({
            "steps": self.steps.spec_string(),
            "region": self.region.label(),
            "n_max": self.n_max,
            "rows": rows,
        })
    }
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    i: i64,
    j: i64,
    count: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    X,
    Y,
}

/// Outcome of replaying the walk functional equation against a table.
#[derive(Clone, Debug, Serialize)]
pub struct FeqReport {
    pub steps: String,
    pub n_checked: usize,
    pub passed: bool,
    pub first_violation: Option<(usize, i64, i64)>,
}

#[derive(Debug, Error)]
pub enum FeqError {
    #[error("functional-equation check supports only the S and T presets")]
    UnsupportedStepSet,
    #[error("functional-equation check requires a quarter-plane table")]
    WrongRegion,
}

/// Checks, coefficient by coefficient, that the table satisfies the
/// quarter-plane functional equation for its step set: the free-step
/// transfer of layer n-1 minus the two boundary corrections (the south-east
/// step off y = 0 and the north-west step off x = 0) must reproduce layer n
/// exactly, with every term outside the quadrant cancelling.
///
/// The boundary series are re-derived from the table itself, so corruption
/// of any entry is detected at that entry.
pub fn functional_equation_check(table: &CountTable) -> Result<FeqReport, FeqError> {
    if !(table.steps.is_preset_s() || table.steps.is_preset_t()) {
        return Err(FeqError::UnsupportedStepSet);
    }
    if table.region != RegionConstraint::QuarterPlane {
        return Err(FeqError::WrongRegion);
    }
    let steps = table.steps.steps().to_vec();
    let mut first_violation = None;
    'outer: for n in 1..=table.n_max {
        let prev = &table.layers[n - 1];
        let side = n as i64 + 2;
        // Coordinates shifted by +1 so that index 0 represents -1.
        let w = side as usize;
        let mut rhs = vec![BigInt::zero(); w * w];
        let at = |i: i64, j: i64| -> usize { ((j + 1) as usize) * w + (i + 1) as usize };
        for (i, j, c) in prev.iter_nonzero() {
            let c = BigInt::from(c.clone());
            for s in &steps {
                rhs[at(i + s.dx as i64, j + s.dy as i64)] += &c;
            }
            // Correction terms: walks on an axis must not leave the quadrant.
            if j == 0 {
                rhs[at(i + 1, -1)] -= &c;
            }
            if i == 0 {
                rhs[at(-1, j + 1)] -= &c;
            }
        }
        for j in -1..side - 1 {
            for i in -1..side - 1 {
                let expected = &rhs[at(i, j)];
                let actual = if i >= 0 && j >= 0 {
                    BigInt::from(table.layers[n].get(i, j))
                } else {
                    BigInt::zero()
                };
                if *expected != actual {
                    first_violation = Some((n, i, j));
                    break 'outer;
                }
            }
        }
    }
    Ok(FeqReport {
        steps: table.steps.spec_string(),
        n_checked: table.n_max,
        passed: first_violation.is_none(),
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// Independent brute force: enumerate every step sequence.
    fn brute_force(steps: &StepSet, region: RegionConstraint, n: usize) -> Vec<((i64, i64), u64)> {
        let mut endpoints: Vec<(i64, i64)> = vec![(0, 0)];
        for _ in 0..n {
            let mut next = Vec::new();
            for &(i, j) in &endpoints {
                for s in steps.steps() {
                    let (ni, nj) = (i + s.dx as i64, j + s.dy as i64);
                    if region.contains(ni, nj) {
                        next.push((ni, nj));
                    }
                }
            }
            endpoints = next;
        }
        let mut sorted = endpoints;
        sorted.sort_unstable();
        let mut out: Vec<((i64, i64), u64)> = Vec::new();
        for p in sorted {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_for_both_presets() {
        for steps in [StepSet::preset_s(), StepSet::preset_t()] {
            let table = count_walks(&steps, RegionConstraint::QuarterPlane, 7);
            for n in 0..=7 {
                let expected = brute_force(&steps, RegionConstraint::QuarterPlane, n);
                let mut total = BigUint::zero();
                for ((i, j), c) in &expected {
                    assert_eq!(
                        table.coefficient(n, *i, *j).unwrap(),
                        BigUint::from(*c),
                        "steps {:?} n={n} at ({i},{j})",
                        steps.name()
                    );
                    total += BigUint::from(*c);
                }
                assert_eq!(table.total(n), total);
            }
        }
    }

    #[test]
    fn counting_series_heads() {
        let s = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 3);
        let w: Vec<u64> = (0..=3).map(|n| s.total(n).try_into().unwrap()).collect();
        assert_eq!(w, vec![1, 1, 3, 7]);
        let t = count_walks(&StepSet::preset_t(), RegionConstraint::QuarterPlane, 3);
        let w: Vec<u64> = (0..=3).map(|n| t.total(n).try_into().unwrap()).collect();
        assert_eq!(w, vec![1, 1, 2, 4]);
    }

    #[test]
    fn single_legal_first_step() {
        let s = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 1);
        assert_eq!(s.coefficient(1, 1, 1).unwrap(), BigUint::one());
        assert_eq!(s.total(1), BigUint::one());
        assert_eq!(s.coefficient(1, -1, 1).unwrap(), BigUint::zero());
    }

    #[test]
    fn specific_coefficients() {
        let s = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 2);
        assert_eq!(s.coefficient(2, 0, 2).unwrap(), BigUint::one());
        assert_eq!(s.coefficient(0, 0, 0).unwrap(), BigUint::one());
        assert!(s.coefficient(3, 0, 0).is_err());
    }

    #[test]
    fn boundary_sums() {
        let s = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 2);
        let bx: Vec<u64> = s
            .boundary_totals(Axis::X)
            .into_iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(bx, vec![1, 0, 1]);
        let by: Vec<u64> = s
            .boundary_totals(Axis::Y)
            .into_iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(by, vec![1, 0, 1]);
        let t = count_walks(&StepSet::preset_t(), RegionConstraint::QuarterPlane, 2);
        let by: Vec<u64> = t
            .boundary_totals(Axis::Y)
            .into_iter()
            .map(|c| c.try_into().unwrap())
            .collect();
        assert_eq!(by, vec![1, 1, 1]);
    }

    #[test]
    fn line_decomposition() {
        let s = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 2);
        // x + y = 0: only the empty walk.
        let d0 = s.line_totals(0);
        assert_eq!(d0[0], vec![BigUint::one()]);
        assert!(d0[1].iter().all(|c| c.is_zero()));
        assert!(d0[2].iter().all(|c| c.is_zero()));
        // x + y = 2 at n = 1: the single walk NE ends at (1,1).
        let d2 = s.line_totals(2);
        assert_eq!(d2[1], vec![BigUint::zero(), BigUint::one(), BigUint::zero()]);
        // x + y = 2 at n = 2: (2,0) and (0,2).
        assert_eq!(d2[2], vec![BigUint::one(), BigUint::zero(), BigUint::one()]);
    }

    #[test]
    fn conservation_and_monotone_restriction() {
        let steps = StepSet::preset_s();
        let free = count_walks(&steps, RegionConstraint::Unrestricted, 8);
        for n in 0..=8usize {
            assert_eq!(free.total(n), BigUint::from(3u32).pow(n as u32));
        }
        let quarter = count_walks(&steps, RegionConstraint::QuarterPlane, 8);
        let half = count_walks(&steps, RegionConstraint::HalfPlaneY, 8);
        for n in 0..=8usize {
            for i in 0..=n as i64 {
                for j in 0..=n as i64 {
                    let q = quarter.coefficient(n, i, j).unwrap();
                    let h = half.coefficient(n, i, j).unwrap();
                    let f = free.coefficient(n, i, j).unwrap();
                    assert!(q <= h && h <= f, "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn symmetry_and_parity_of_s() {
        let table = count_walks(&StepSet::preset_s(), RegionConstraint::QuarterPlane, 9);
        for n in 0..=9usize {
            for i in 0..=n as i64 {
                for j in 0..=n as i64 {
                    let c = table.coefficient(n, i, j).unwrap();
                    assert_eq!(c, table.coefficient(n, j, i).unwrap());
                    if !c.is_zero() {
                        assert_eq!((i + j) % 2, 0, "parity at n={n} ({i},{j})");
                        assert!(i + j <= 2 * n as i64);
                    }
                }
            }
        }
    }

    #[test]
    fn determinism() {
        let a = count_walks(&StepSet::preset_t(), RegionConstraint::QuarterPlane, 12);
        let b = count_walks(&StepSet::preset_t(), RegionConstraint::QuarterPlane, 12);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn functional_equation_passes_and_detects_faults() {
        for steps in [StepSet::preset_s(), StepSet::preset_t()] {
            let table = count_walks(&steps, RegionConstraint::QuarterPlane, 20);
            let report = functional_equation_check(&table).unwrap();
            assert!(report.passed, "{:?}", report.first_violation);

            let mut corrupted = table.clone();
            let good = corrupted.coefficient(5, 1, 1).unwrap();
            corrupted.set_count(5, 1, 1, good + BigUint::one());
            let report = functional_equation_check(&corrupted).unwrap();
            assert!(!report.passed);
            assert_eq!(report.first_violation, Some((5, 1, 1)));
        }
    }

    #[test]
    fn rejects_unsupported_checker_input() {
        let arb = StepSet::new(&[(1, 1)]).unwrap();
        let table = count_walks(&arb, RegionConstraint::QuarterPlane, 3);
        assert!(matches!(
            functional_equation_check(&table),
            Err(FeqError::UnsupportedStepSet)
        ));
        let half = count_walks(&StepSet::preset_s(), RegionConstraint::HalfPlaneY, 3);
        assert!(matches!(
            functional_equation_check(&half),
            Err(FeqError::WrongRegion)
        ));
    }
}
