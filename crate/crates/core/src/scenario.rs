//! Perception versus reality: knowledge-gap scenarios, uncertainty-variability
//! scenarios, the perception-reality matrix and uncertainty posets.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::{GapAssessment, UncertaintySpec, UvScenario};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScenarioError {
    #[error("needs uncertain with a certain solution is not a recognised scenario")]
    UndefinedScenario,
    #[error("unknown uncertainty level '{0}'")]
    UnknownLevel(String),
    #[error("uncertainty order has a cycle through '{0}'")]
    InvalidPoset(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GapKind {
    /// Perceived gaps equal actual gaps.
    Efficient,
    /// Perceived gaps miss some actual ones and add none.
    IllusoryProgress,
    /// Perceived gaps include every actual one plus some that do not exist.
    ExcessWaste,
    /// Both missed and phantom gaps.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapScenario {
    pub decision: String,
    pub kind: GapKind,
    /// Actual gaps nobody perceived.
    pub unknown_unknowns: usize,
    /// Perceived gaps that were not real.
    pub phantom_gaps: usize,
}

pub fn classify_gap_scenario(a: &GapAssessment) -> GapScenario {
    let unknown_unknowns = a.actual.difference(&a.perceived).count();
    let phantom_gaps = a.perceived.difference(&a.actual).count();
    let kind = match (unknown_unknowns > 0, phantom_gaps > 0) {
        (false, false) => GapKind::Efficient,
        (true, false) => GapKind::IllusoryProgress,
        (false, true) => GapKind::ExcessWaste,
        (true, true) => GapKind::Mixed,
    };
    GapScenario { decision: a.decision.clone(), kind, unknown_unknowns, phantom_gaps }
}

/// Scenario for the given uncertainty in the needs (problem) space and the
/// solution space.
pub fn classify_uv(needs_uncertain: bool, solution_uncertain: bool) -> Result<UvScenario, ScenarioError> {
    match (needs_uncertain, solution_uncertain) {
        (false, false) => Ok(UvScenario::UV1),
        (false, true) => Ok(UvScenario::UV2),
        (true, true) => Ok(UvScenario::UV3),
        (true, false) => Err(ScenarioError::UndefinedScenario),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Alignment {
    Aligned,
    ModerateWaste,
    HighWaste,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WasteKind {
    None,
    /// Uncertainty underestimated.
    Illusory,
    /// Uncertainty overestimated.
    Excess,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PerceptionCell {
    pub perceived: UvScenario,
    pub actual: UvScenario,
    pub alignment: Alignment,
    pub waste_kind: WasteKind,
}

pub fn perception_reality_cell(perceived: UvScenario, actual: UvScenario) -> PerceptionCell {
    let distance = perceived.index().abs_diff(actual.index());
    let alignment = match distance {
        0 => Alignment::Aligned,
        1 => Alignment::ModerateWaste,
        _ => Alignment::HighWaste,
    };
    let waste_kind = match perceived.cmp(&actual) {
        std::cmp::Ordering::Equal => WasteKind::None,
        std::cmp::Ordering::Less => WasteKind::Illusory,
        std::cmp::Ordering::Greater => WasteKind::Excess,
    };
    PerceptionCell { perceived, actual, alignment, waste_kind }
}

/// The full 3x3 matrix, rows by perceived scenario.
pub fn perception_reality_matrix() -> [[PerceptionCell; 3]; 3] {
    UvScenario::ALL.map(|p| UvScenario::ALL.map(|a| perception_reality_cell(p, a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DesignApproach {
    PointBased,
    SetBased,
    RapidLearningCycles,
}

impl DesignApproach {
    pub fn description(self) -> &'static str {
        match self {
            DesignApproach::PointBased => "point-based serial/concurrent engineering",
            DesignApproach::SetBased => "set-based design, close technical knowledge gaps",
            DesignApproach::RapidLearningCycles => "rapid learning cycles / fast iterations with customer insight",
        }
    }
}

pub fn recommend_approach(uv: UvScenario) -> DesignApproach {
    match uv {
        UvScenario::UV1 => DesignApproach::PointBased,
        UvScenario::UV2 => DesignApproach::SetBased,
        UvScenario::UV3 => DesignApproach::RapidLearningCycles,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LifecycleStage {
    Infancy,
    Growth,
    Maturity,
}

pub fn expected_uv_for_stage(stage: LifecycleStage) -> UvScenario {
    match stage {
        LifecycleStage::Infancy => UvScenario::UV3,
        LifecycleStage::Growth => UvScenario::UV2,
        LifecycleStage::Maturity => UvScenario::UV1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PosetOrdering {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Uncertainty levels ordered by the reflexive-transitive closure of a
/// Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncertaintyScale {
    /// level -> every level strictly above it
    above: BTreeMap<String, BTreeSet<String>>,
}

impl UncertaintyScale {
    /// `order` holds `(lower, higher)` covering pairs.
    pub fn new<S: AsRef<str>>(levels: &[S], order: &[(S, S)]) -> Result<Self, ScenarioError> {
        let mut up: BTreeMap<String, BTreeSet<String>> =
            levels.iter().map(|l| (l.as_ref().to_string(), BTreeSet::new())).collect();
        for (lo, hi) in order {
            let (lo, hi) = (lo.as_ref(), hi.as_ref());
            if !up.contains_key(hi) {
                return Err(ScenarioError::UnknownLevel(hi.to_string()));
            }
            up.get_mut(lo).ok_or_else(|| ScenarioError::UnknownLevel(lo.to_string()))?.insert(hi.to_string());
        }
        let mut above = BTreeMap::new();
        for level in up.keys() {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&str> = up[level].iter().map(String::as_str).collect();
            while let Some(next) = stack.pop() {
                if next == level {
                    return Err(ScenarioError::InvalidPoset(level.clone()));
                }
                if seen.insert(next.to_string()) {
                    stack.extend(up[next].iter().map(String::as_str));
                }
            }
            above.insert(level.clone(), seen);
        }
        Ok(Self { above })
    }

    pub fn from_spec(spec: &UncertaintySpec) -> Result<Self, ScenarioError> {
        Self::new(&spec.levels, &spec.order)
    }

    /// Total order Low < Medium < High.
    pub fn low_medium_high() -> Self {
        Self::new(&["Low", "Medium", "High"], &[("Low", "Medium"), ("Medium", "High")]).expect("chain is a poset")
    }

    /// Levels "0" through "100" in natural order.
    pub fn percentage() -> Self {
        let levels: Vec<String> = (0..=100).map(|i| i.to_string()).collect();
        let order: Vec<(String, String)> = (0..100).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        Self::new(&levels, &order).expect("chain is a poset")
    }

    pub fn levels(&self) -> impl Iterator<Item = &String> {
        self.above.keys()
    }

    pub fn contains(&self, level: &str) -> bool {
        self.above.contains_key(level)
    }

    pub fn compare(&self, a: &str, b: &str) -> Result<PosetOrdering, ScenarioError> {
        let up_a = self.above.get(a).ok_or_else(|| ScenarioError::UnknownLevel(a.to_string()))?;
        let up_b = self.above.get(b).ok_or_else(|| ScenarioError::UnknownLevel(b.to_string()))?;
        Ok(if a == b {
            PosetOrdering::Equal
        } else if up_a.contains(b) {
            PosetOrdering::Less
        } else if up_b.contains(a) {
            PosetOrdering::Greater
        } else {
            PosetOrdering::Incomparable
        })
    }
}

pub fn poset_compare(scale: &UncertaintyScale, a: &str, b: &str) -> Result<PosetOrdering, ScenarioError> {
    scale.compare(a, b)
}
