//! CVSS (create, validate, store, share/use) maturity scorecards, the phase
//! ladder for deploying a knowledge value stream, and waste-point checks.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::Config;
use crate::flow;
use crate::flux::{self, FluxVerdict};
use crate::model::{Dataset, DecisionRecord, Dimension, Rating, Scorecard};
use crate::scenario::{classify_gap_scenario, GapKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MaturityError {
    #[error("dimension has no rated items")]
    EmptyDimension,
    #[error("score {0} is outside [0, 100]")]
    OutOfRange(f64),
}

/// `100 * (sum - n) / (8n)` over rating values SA=9, A=7, D=3, SD=1, so that
/// all-SD scores 0 and all-SA scores 100.
pub fn dimension_score(ratings: &[Rating]) -> Result<f64, MaturityError> {
    if ratings.is_empty() {
        return Err(MaturityError::EmptyDimension);
    }
    let n = ratings.len() as f64;
    let sum: u32 = ratings.iter().map(|r| r.value()).sum();
    Ok(100.0 * (f64::from(sum) - n) / (8.0 * n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Band {
    Weak,
    Marginal,
    Effective,
    Robust,
}

/// Band edges: Weak below `weak_below`, Marginal up to and including
/// `marginal_max`, Effective up to and including `effective_max`, Robust above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandThresholds {
    pub weak_below: f64,
    pub marginal_max: f64,
    pub effective_max: f64,
}

impl Default for BandThresholds {
    fn default() -> Self {
        Self { weak_below: 25.0, marginal_max: 50.0, effective_max: 80.0 }
    }
}

pub fn band_of(score: f64, t: &BandThresholds) -> Result<Band, MaturityError> {
    if !(0.0..=100.0).contains(&score) {
        return Err(MaturityError::OutOfRange(score));
    }
    Ok(if score < t.weak_below {
        Band::Weak
    } else if score <= t.marginal_max {
        Band::Marginal
    } else if score <= t.effective_max {
        Band::Effective
    } else {
        Band::Robust
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionResult {
    pub score: f64,
    pub band: Band,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaturityResult {
    pub team: String,
    pub timestamp: String,
    /// Every CVSS dimension; `None` means not assessed.
    pub dimensions: BTreeMap<Dimension, Option<DimensionResult>>,
    /// Unweighted mean of the assessed dimensions.
    pub overall: Option<f64>,
}

impl MaturityResult {
    pub fn assessed(&self) -> impl Iterator<Item = (Dimension, DimensionResult)> + '_ {
        self.dimensions.iter().filter_map(|(d, r)| r.map(|r| (*d, r)))
    }
}

pub fn cvss_assessment(s: &Scorecard, bands: &BandThresholds) -> Result<MaturityResult, MaturityError> {
    if s.items.is_empty() {
        return Err(MaturityError::EmptyDimension);
    }
    let mut by_dim: BTreeMap<Dimension, Vec<Rating>> = BTreeMap::new();
    for item in &s.items {
        by_dim.entry(item.dimension).or_default().push(item.rating);
    }
    let mut dimensions = BTreeMap::new();
    for dim in Dimension::ALL {
        let result = match by_dim.get(&dim) {
            Some(ratings) => {
                let score = dimension_score(ratings)?;
                Some(DimensionResult { score, band: band_of(score, bands)? })
            }
            None => None,
        };
        dimensions.insert(dim, result);
    }
    let scores: Vec<f64> = dimensions.values().flatten().map(|r| r.score).collect();
    let overall = (!scores.is_empty()).then(|| scores.iter().sum::<f64>() / scores.len() as f64);
    Ok(MaturityResult { team: s.team.clone(), timestamp: s.timestamp.clone(), dimensions, overall })
}

/// Assess every scorecard of the dataset, oldest first.
pub fn assessment_history(d: &Dataset, bands: &BandThresholds) -> Result<Vec<MaturityResult>, MaturityError> {
    let mut cards: Vec<&Scorecard> = d.scorecards.iter().collect();
    cards.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.team.cmp(&b.team)));
    cards.into_iter().map(|s| cvss_assessment(s, bands)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseThresholds {
    pub flux_optimal_share: f64,
    pub gap_efficient_share: f64,
}

impl Default for PhaseThresholds {
    fn default() -> Self {
        Self { flux_optimal_share: 0.70, gap_efficient_share: 0.80 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleEvaluation {
    pub rule: &'static str,
    /// Phase this rule lets a team leave.
    pub exits_phase: u8,
    pub satisfied: bool,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseStatus {
    pub current_phase: u8,
    pub rules: Vec<RuleEvaluation>,
}

fn share(hits: usize, total: usize) -> Option<f64> {
    (total > 0).then(|| hits as f64 / total as f64)
}

/// Area verdicts, skipping areas without decisions.
pub fn area_flux_verdicts(d: &Dataset, favorable_threshold: f64) -> BTreeMap<String, Option<FluxVerdict>> {
    d.area_ids()
        .into_iter()
        .map(|area| {
            let graph = d.flow_graph(area);
            let decisions: Vec<&DecisionRecord> = d.decisions_in(area).collect();
            let verdict = flux::flux_assessment(area, &graph, &decisions, favorable_threshold).ok().map(|a| a.verdict);
            (area.to_string(), verdict)
        })
        .collect()
}

/// Evaluate the phase exit rules in order. The current phase is the first
/// one whose exit rules are not all met, or 5 when every rule holds.
pub fn phase_status(d: &Dataset, history: &[MaturityResult], config: &Config) -> PhaseStatus {
    let t = config.phase();
    let mut rules = Vec::new();

    let dataset_present = !d.actors.is_empty() || !d.areas.is_empty();
    rules.push(RuleEvaluation {
        rule: "dataset_present",
        exits_phase: 1,
        satisfied: dataset_present,
        evidence: format!("{} actors, {} areas", d.actors.len(), d.areas.len()),
    });

    rules.push(RuleEvaluation {
        rule: "baseline_assessment",
        exits_phase: 2,
        satisfied: !history.is_empty(),
        evidence: format!("{} maturity assessment(s)", history.len()),
    });
    let blocked: Vec<&str> = d
        .area_ids()
        .into_iter()
        .filter(|area| {
            let g = d.flow_graph(area);
            flow::density(&g).is_err() || flow::reciprocity(&g).is_err()
        })
        .collect();
    rules.push(RuleEvaluation {
        rule: "flow_baseline",
        exits_phase: 2,
        satisfied: blocked.is_empty(),
        evidence: if blocked.is_empty() {
            format!("flow metrics computable for all {} area(s)", d.areas.len())
        } else {
            format!("flow metrics not computable for: {}", blocked.join(", "))
        },
    });

    // latest assessment per team
    let mut latest: BTreeMap<&str, &MaturityResult> = BTreeMap::new();
    for r in history {
        latest.insert(r.team.as_str(), r);
    }
    let weak: Vec<String> = latest
        .values()
        .flat_map(|r| r.assessed().filter(|(_, x)| x.band < Band::Effective).map(|(dim, x)| format!("{}:{dim} {:.1}%", r.team, x.score)))
        .collect();
    let any_assessed = latest.values().any(|r| r.assessed().next().is_some());
    rules.push(RuleEvaluation {
        rule: "dimensions_effective",
        exits_phase: 3,
        satisfied: any_assessed && weak.is_empty(),
        evidence: if !any_assessed {
            "no assessed dimensions".to_string()
        } else if weak.is_empty() {
            "every assessed dimension is Effective or better".to_string()
        } else {
            format!("below Effective: {}", weak.join(", "))
        },
    });

    let verdicts = area_flux_verdicts(d, config.favorable_threshold);
    let optimal = verdicts.values().filter(|v| **v == Some(FluxVerdict::Optimal)).count();
    let optimal_share = share(optimal, verdicts.len());
    rules.push(RuleEvaluation {
        rule: "flux_optimal_share",
        exits_phase: 4,
        satisfied: optimal_share.is_some_and(|s| s >= t.flux_optimal_share),
        evidence: format!("{optimal}/{} areas with optimal flux", verdicts.len()),
    });
    let efficient = d.gaps.iter().filter(|g| classify_gap_scenario(g).kind == GapKind::Efficient).count();
    let efficient_share = share(efficient, d.gaps.len());
    rules.push(RuleEvaluation {
        rule: "gap_efficient_share",
        exits_phase: 4,
        satisfied: efficient_share.is_some_and(|s| s >= t.gap_efficient_share),
        evidence: format!("{efficient}/{} gap assessments efficient", d.gaps.len()),
    });

    let current_phase = (1..=4u8)
        .find(|phase| rules.iter().any(|r| r.exits_phase == *phase && !r.satisfied))
        .unwrap_or(5);
    PhaseStatus { current_phase, rules }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WasteThresholds {
    pub creation_tacit_above: f64,
    pub creation_min_cut_points: usize,
    pub validation_unrecorded_above: f64,
    pub sharing_reciprocity_below: f64,
    pub learning_uncertainty_above: f64,
}

impl Default for WasteThresholds {
    fn default() -> Self {
        Self {
            creation_tacit_above: 80.0,
            creation_min_cut_points: 1,
            validation_unrecorded_above: 0.30,
            sharing_reciprocity_below: 20.0,
            learning_uncertainty_above: 0.6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WastePoint {
    /// Tacit-heavy areas that hang on single persons.
    CreationLoss,
    /// Learning-cycle outcomes not fed back.
    ValidationFeedback,
    /// Knowledge hoarding.
    SharingHoarding,
    /// Decisions made without surfacing known gaps.
    WishfulThinking,
    /// Long cycles with unfavorable consequences.
    LearningCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WasteFlag {
    pub point: WastePoint,
    pub triggered: bool,
    pub evidence: String,
}

fn flag(point: WastePoint, hits: Vec<String>, clean: &str) -> WasteFlag {
    WasteFlag {
        point,
        triggered: !hits.is_empty(),
        evidence: if hits.is_empty() { clean.to_string() } else { hits.join("; ") },
    }
}

/// One flag per waste point, in declaration order.
pub fn waste_diagnostics(d: &Dataset, config: &Config) -> Vec<WasteFlag> {
    let t = config.waste();
    let weights = config.lcc_weights();
    let mut creation = Vec::new();
    let mut sharing = Vec::new();
    let mut learning = Vec::new();
    for area in d.area_ids() {
        let g = d.flow_graph(area);
        if let Ok((tacit, _)) = flow::tacit_explicit_split(&g) {
            let cuts = flow::cut_points(&g);
            if tacit > t.creation_tacit_above && cuts.len() >= t.creation_min_cut_points {
                let names: Vec<&str> = cuts.iter().map(String::as_str).collect();
                creation.push(format!("{area}: tacit {tacit:.0}%, cut points {}", names.join(", ")));
            }
        }
        if let Ok(r) = flow::reciprocity(&g) {
            if r < t.sharing_reciprocity_below {
                sharing.push(format!("{area}: reciprocity {r:.0}%"));
            }
        }
        if let Ok(u) = flux::uncertainty_from_lcc(d.decisions_in(area), &weights) {
            if u > t.learning_uncertainty_above {
                learning.push(format!("{area}: learning-cycle uncertainty {u:.2}"));
            }
        }
    }

    let unrecorded = d.decisions.iter().filter(|x| x.lcc.is_none()).count();
    let validation = match share(unrecorded, d.decisions.len()) {
        Some(s) if s > t.validation_unrecorded_above => {
            vec![format!("{unrecorded}/{} decisions lack a recorded learning cycle", d.decisions.len())]
        }
        _ => Vec::new(),
    };
    let wishful: Vec<String> = d
        .gaps
        .iter()
        .filter(|g| !g.actual.is_empty() && g.perceived.is_empty())
        .map(|g| format!("{}: {} actual gap(s), none perceived", g.decision, g.actual.len()))
        .collect();

    vec![
        flag(WastePoint::CreationLoss, creation, "no tacit-heavy area depends on a cut point"),
        flag(WastePoint::ValidationFeedback, validation, "learning cycles are fed back"),
        flag(WastePoint::SharingHoarding, sharing, "reciprocity adequate in every area"),
        flag(WastePoint::WishfulThinking, wishful, "gaps surfaced before deciding"),
        flag(WastePoint::LearningCycle, learning, "no area dominated by long unfavorable cycles"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ScorecardItem;
    use Rating::*;

    #[test]
    fn score_examples() {
        assert_eq!(dimension_score(&[SD, D, A, SA]).unwrap(), 50.0);
        assert_eq!(dimension_score(&[SA; 4]).unwrap(), 100.0);
        assert_eq!(dimension_score(&[A; 8]).unwrap(), 75.0);
        assert_eq!(dimension_score(&[SD; 3]).unwrap(), 0.0);
        assert_eq!(dimension_score(&[]), Err(MaturityError::EmptyDimension));
    }

    #[test]
    fn band_examples() {
        let t = BandThresholds::default();
        let b = |s| band_of(s, &t).unwrap();
        assert_eq!(b(0.0), Band::Weak);
        assert_eq!(b(24.9), Band::Weak);
        assert_eq!(b(25.0), Band::Marginal);
        assert_eq!(b(50.0), Band::Marginal);
        assert_eq!(b(50.5), Band::Effective);
        assert_eq!(b(80.0), Band::Effective);
        assert_eq!(b(80.1), Band::Robust);
        assert_eq!(b(100.0), Band::Robust);
        assert_eq!(band_of(100.5, &t), Err(MaturityError::OutOfRange(100.5)));
        assert!(band_of(f64::NAN, &t).is_err());
    }

    fn card(items: &[(Dimension, Rating)]) -> Scorecard {
        Scorecard {
            team: "t".into(),
            timestamp: "2024-01-01".into(),
            items: items.iter().map(|(d, r)| ScorecardItem { dimension: *d, statement: String::new(), rating: *r }).collect(),
        }
    }

    #[test]
    fn single_dimension_card() {
        let r = cvss_assessment(&card(&[(Dimension::Store, SA), (Dimension::Store, SA)]), &BandThresholds::default()).unwrap();
        assert_eq!(r.dimensions[&Dimension::Store], Some(DimensionResult { score: 100.0, band: Band::Robust }));
        assert_eq!(r.dimensions[&Dimension::Create], None);
        assert_eq!(r.overall, Some(100.0));
        assert_eq!(cvss_assessment(&card(&[]), &BandThresholds::default()), Err(MaturityError::EmptyDimension));
    }
}
