//! Step sets and region constraints for nearest-neighbour lattice walks.

use serde::Serialize;
use thiserror::Error;

/// A single step, both coordinates in {-1, 0, 1}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Step {
    pub dx: i8,
    pub dy: i8,
}

impl Step {
    pub fn new(dx: i8, dy: i8) -> Result<Self, StepSetError> {
        if !(-1..=1).contains(&dx) || !(-1..=1).contains(&dy) {
            return Err(StepSetError::OutOfRange { dx, dy });
        }
        if dx == 0 && dy == 0 {
            return Err(StepSetError::ZeroStep);
        }
        Ok(Step { dx, dy })
    }
}

/// An ordered, duplicate-free, nonempty set of steps.
#[derive(Clone, Debug, Eq)]
pub struct StepSet {
    steps: Vec<Step>,
    name: Option<String>,
}

/// Equality is by step list; the optional label is cosmetic.
impl PartialEq for StepSet {
    fn eq(&self, other: &Self) -> bool {
        self.steps == other.steps
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepSetError {
    #[error("step ({dx},{dy}) outside {{-1,0,1}}^2")]
    OutOfRange { dx: i8, dy: i8 },
    #[error("the zero step (0,0) is not allowed")]
    ZeroStep,
    #[error("duplicate step ({dx},{dy})")]
    Duplicate { dx: i8, dy: i8 },
    #[error("step set is empty")]
    Empty,
}

/// Parse error with the byte offset of the offending token.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseStepError {
    #[error("malformed token {token:?} at offset {at}")]
    Malformed { token: String, at: usize },
    #[error("duplicate step ({dx},{dy}) at offset {at}")]
    Duplicate { dx: i8, dy: i8, at: usize },
    #[error("empty step set")]
    Empty,
}

impl StepSet {
    pub fn new(pairs: &[(i8, i8)]) -> Result<Self, StepSetError> {
        if pairs.is_empty() {
            return Err(StepSetError::Empty);
        }
        let mut steps = Vec::with_capacity(pairs.len());
        for &(dx, dy) in pairs {
            let s = Step::new(dx, dy)?;
            if steps.contains(&s) {
                return Err(StepSetError::Duplicate { dx, dy });
            }
            steps.push(s);
        }
        Ok(StepSet { steps, name: None })
    }

    /// The symmetric set {NW, NE, SE}.
    pub fn preset_s() -> Self {
        let mut s = StepSet::new(&[(-1, 1), (1, 1), (1, -1)]).unwrap();
        s.name = Some("S".into());
        s
    }

    /// The asymmetric set {NW, N, SE}.
    pub fn preset_t() -> Self {
        let mut s = StepSet::new(&[(-1, 1), (0, 1), (1, -1)]).unwrap();
        s.name = Some("T".into());
        s
    }

    /// Parses either a preset name ("S", "T") or a semicolon list of
    /// "(dx,dy)" pairs / compass tokens (N, NE, E, SE, S, SW, W, NW).
    ///
    /// A bare "S" is the preset; write "(0,-1)" for the single south step.
    pub fn parse(spec: &str) -> Result<Self, ParseStepError> {
        let trimmed = spec.trim();
        match trimmed {
            "S" => return Ok(StepSet::preset_s()),
            "T" => return Ok(StepSet::preset_t()),
            "" => return Err(ParseStepError::Empty),
            _ => {}
        }
        let mut steps: Vec<Step> = Vec::new();
        let mut offset = 0usize;
        for raw in spec.split(';') {
            let at = offset + (raw.len() - raw.trim_start().len());
            let token = raw.trim();
            offset += raw.len() + 1;
            if token.is_empty() {
                return Err(ParseStepError::Malformed {
                    token: raw.to_string(),
                    at,
                });
            }
            let (dx, dy) = parse_token(token).ok_or_else(|| ParseStepError::Malformed {
                token: token.to_string(),
                at,
            })?;
            let step = Step::new(dx, dy).map_err(|_| ParseStepError::Malformed {
                token: token.to_string(),
                at,
            })?;
            if steps.contains(&step) {
                return Err(ParseStepError::Duplicate { dx, dy, at });
            }
            steps.push(step);
        }
        if steps.is_empty() {
            return Err(ParseStepError::Empty);
        }
        Ok(StepSet { steps, name: None })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// True if the set is invariant under swapping the two coordinates.
    pub fn is_xy_symmetric(&self) -> bool {
        self.steps
            .iter()
            .all(|s| self.steps.contains(&Step { dx: s.dy, dy: s.dx }))
    }

    pub fn is_preset_s(&self) -> bool {
        *self == StepSet::preset_s()
    }

    pub fn is_preset_t(&self) -> bool {
        *self == StepSet::preset_t()
    }

    pub fn spec_string(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        self.steps
            .iter()
            .map(|s| format!("({},{})", s.dx, s.dy))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn parse_token(token: &str) -> Option<(i8, i8)> {
    match token {
        "N" => return Some((0, 1)),
        "NE" => return Some((1, 1)),
        "E" => return Some((1, 0)),
        "SE" => return Some((1, -1)),
        "S" => return Some((0, -1)),
        "SW" => return Some((-1, -1)),
        "W" => return Some((-1, 0)),
        "NW" => return Some((-1, 1)),
        _ => {}
    }
    let inner = token.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let dx: i8 = a.trim().parse().ok()?;
    let dy: i8 = b.trim().parse().ok()?;
    Some((dx, dy))
}

/// Which part of the plane the walk must stay in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum RegionConstraint {
    QuarterPlane,
    HalfPlaneY,
    Unrestricted,
}

impl RegionConstraint {
    pub fn contains(&self, i: i64, j: i64) -> bool {
        match self {
            RegionConstraint::QuarterPlane => i >= 0 && j >= 0,
            RegionConstraint::HalfPlaneY => j >= 0,
            RegionConstraint::Unrestricted => true,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            RegionConstraint::QuarterPlane => "quarter-plane",
            RegionConstraint::HalfPlaneY => "half-plane-y",
            RegionConstraint::Unrestricted => "unrestricted",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_match_their_step_lists() {
        assert_eq!(
            StepSet::parse("S").unwrap().steps(),
            StepSet::new(&[(-1, 1), (1, 1), (1, -1)]).unwrap().steps()
        );
        assert_eq!(
            StepSet::parse("T").unwrap().steps(),
            StepSet::new(&[(-1, 1), (0, 1), (1, -1)]).unwrap().steps()
        );
    }

    #[test]
    fn parses_pair_and_compass_tokens() {
        let single = StepSet::parse("(1,1)").unwrap();
        assert_eq!(single.steps(), &[Step { dx: 1, dy: 1 }]);
        let mixed = StepSet::parse("NW; (0,1) ;SE").unwrap();
        assert_eq!(mixed, StepSet::preset_t());
        assert_eq!(StepSet::parse("N").unwrap().steps(), &[Step { dx: 0, dy: 1 }]);
    }

    #[test]
    fn reports_position_of_bad_token() {
        let err = StepSet::parse("NE;xx;SE").unwrap_err();
        assert_eq!(
            err,
            ParseStepError::Malformed {
                token: "xx".into(),
                at: 3
            }
        );
        let err = StepSet::parse("NE;NE").unwrap_err();
        assert_eq!(err, ParseStepError::Duplicate { dx: 1, dy: 1, at: 3 });
        assert_eq!(StepSet::parse("  ").unwrap_err(), ParseStepError::Empty);
        assert!(matches!(
            StepSet::parse("(0,0)").unwrap_err(),
            ParseStepError::Malformed { .. }
        ));
    }

    #[test]
    fn symmetry_detection() {
        assert!(StepSet::preset_s().is_xy_symmetric());
        assert!(!StepSet::preset_t().is_xy_symmetric());
    }
}
