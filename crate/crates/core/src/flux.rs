//! Knowledge flux, learning-cycle statistics, decision codification and the
//! one-dimensional projection of decisions.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::flow::FlowGraph;
use crate::model::{AttributeValue, Codebook, Consequence, CycleDuration, DecisionRecord};
use crate::pca::{self, PcaError};

pub const DEFAULT_FAVORABLE_THRESHOLD: f64 = 0.70;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FluxError {
    #[error("no decisions recorded for the area")]
    NoDecisions,
    #[error("no decision has a recorded learning-cycle outcome")]
    NoRecordedOutcomes,
    #[error("no codebook entry for {attribute} = '{value}'")]
    MissingCodebookEntry { attribute: String, value: String },
    #[error("decision '{decision}' has attributes {found:?}, expected {expected:?}")]
    HeterogeneousAttributes { decision: String, expected: Vec<String>, found: Vec<String> },
    #[error("need at least 2 decisions with recorded outcomes to project, found {0}")]
    TooFewOutcomes(usize),
    #[error(transparent)]
    Pca(#[from] PcaError),
}

/// Ties per decision.
pub fn knowledge_flux(tie_count: usize, decision_count: usize) -> Result<f64, FluxError> {
    if decision_count == 0 {
        return Err(FluxError::NoDecisions);
    }
    Ok(tie_count as f64 / decision_count as f64)
}

/// Share of recorded outcomes that are LC1 or LC2. Decisions without a
/// recorded outcome are ignored.
pub fn favorable_lcc_rate<'a>(decisions: impl IntoIterator<Item = &'a DecisionRecord>) -> Result<f64, FluxError> {
    let (favorable, recorded) = decisions
        .into_iter()
        .filter_map(|d| d.lcc)
        .fold((0usize, 0usize), |(f, r), o| (f + usize::from(o.consequence.is_favorable()), r + 1));
    if recorded == 0 {
        return Err(FluxError::NoRecordedOutcomes);
    }
    Ok(favorable as f64 / recorded as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FluxVerdict {
    Optimal,
    EnhanceFlux,
    InsufficientData,
}

impl FluxVerdict {
    pub fn recommendation(self) -> &'static str {
        match self {
            FluxVerdict::Optimal => "flux is adequate: decisions predominantly meet favorable learning cycles",
            FluxVerdict::EnhanceFlux => {
                "enhance flux: increase knowledge ties / bring additional knowledge actors \
                 (experts, design databases) into the decision-making network"
            }
            FluxVerdict::InsufficientData => "record learning-cycle outcomes before judging the flux",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluxAssessment {
    pub area: String,
    pub tie_count: usize,
    pub decision_count: usize,
    pub flux: f64,
    pub favorable_rate: Option<f64>,
    pub verdict: FluxVerdict,
    pub recommendation: String,
}

/// Flux of the area's graph against its decisions, judged by how often those
/// decisions met favorable learning cycles.
pub fn flux_assessment(
    area: &str,
    graph: &FlowGraph,
    decisions: &[&DecisionRecord],
    favorable_threshold: f64,
) -> Result<FluxAssessment, FluxError> {
    let tie_count = graph.ties().len();
    let flux = knowledge_flux(tie_count, decisions.len())?;
    let favorable_rate = favorable_lcc_rate(decisions.iter().copied()).ok();
    let verdict = match favorable_rate {
        None => FluxVerdict::InsufficientData,
        Some(r) if r >= favorable_threshold => FluxVerdict::Optimal,
        Some(_) => FluxVerdict::EnhanceFlux,
    };
    Ok(FluxAssessment {
        area: area.to_string(),
        tie_count,
        decision_count: decisions.len(),
        flux,
        favorable_rate,
        verdict,
        recommendation: verdict.recommendation().to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LccCell {
    pub consequence: Consequence,
    pub duration: CycleDuration,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LccDistribution {
    pub area: String,
    /// Non-zero cells only, ordered by consequence then duration.
    pub counts: Vec<LccCell>,
    pub recorded_total: usize,
    pub unrecorded_total: usize,
}

impl LccDistribution {
    pub fn count(&self, consequence: Consequence, duration: CycleDuration) -> usize {
        self.counts
            .iter()
            .find(|c| c.consequence == consequence && c.duration == duration)
            .map_or(0, |c| c.count)
    }
}

pub fn lcc_distribution<'a>(area: &str, decisions: impl IntoIterator<Item = &'a DecisionRecord>) -> LccDistribution {
    let mut tally: BTreeMap<(Consequence, CycleDuration), usize> = BTreeMap::new();
    let mut unrecorded = 0;
    for d in decisions {
        match d.lcc {
            Some(o) => *tally.entry((o.consequence, o.duration)).or_default() += 1,
            None => unrecorded += 1,
        }
    }
    LccDistribution {
        area: area.to_string(),
        recorded_total: tally.values().sum(),
        unrecorded_total: unrecorded,
        counts: tally.into_iter().map(|((consequence, duration), count)| LccCell { consequence, duration, count }).collect(),
    }
}

/// Weight tables for the learning-cycle uncertainty score, indexed by
/// consequence (LC1..LC4) and duration (short, medium, long).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LccWeights {
    pub consequence: [f64; 4],
    pub duration: [f64; 3],
}

impl Default for LccWeights {
    fn default() -> Self {
        Self { consequence: [0.0, 0.25, 0.6, 1.0], duration: [0.5, 0.75, 1.0] }
    }
}

impl LccWeights {
    pub fn cell(&self, consequence: Consequence, duration: CycleDuration) -> f64 {
        self.consequence[consequence as usize] * self.duration[duration as usize]
    }
}

/// Mean consequence-times-duration weight over recorded outcomes; long
/// LC4 cycles push it towards 1.
pub fn uncertainty_from_lcc<'a>(
    decisions: impl IntoIterator<Item = &'a DecisionRecord>,
    weights: &LccWeights,
) -> Result<f64, FluxError> {
    let (sum, n) = decisions
        .into_iter()
        .filter_map(|d| d.lcc)
        .fold((0.0, 0usize), |(s, n), o| (s + weights.cell(o.consequence, o.duration), n + 1));
    if n == 0 {
        return Err(FluxError::NoRecordedOutcomes);
    }
    Ok(sum / n as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EncodedMatrix {
    /// Standardized rows (zero mean, unit sample standard deviation).
    pub rows: Vec<Vec<f64>>,
    pub row_ids: Vec<String>,
    pub dims: Vec<String>,
    /// Zero-variance attributes that were removed.
    pub dropped: Vec<String>,
}

/// Raw numeric rows before standardization, columns in attribute-name order.
pub fn encode_raw(
    decisions: &[&DecisionRecord],
    codebook: &Codebook,
) -> Result<(Vec<Vec<f64>>, Vec<String>), FluxError> {
    let Some(first) = decisions.first() else {
        return Ok((Vec::new(), Vec::new()));
    };
    let dims: Vec<String> = first.attributes.keys().cloned().collect();
    let mut rows = Vec::with_capacity(decisions.len());
    for d in decisions {
        let names: Vec<String> = d.attributes.keys().cloned().collect();
        if names != dims {
            return Err(FluxError::HeterogeneousAttributes { decision: d.id.clone(), expected: dims, found: names });
        }
        let row = d
            .attributes
            .iter()
            .map(|(name, value)| match value {
                AttributeValue::Number(x) => Ok(*x),
                AttributeValue::Code(code) => codebook.get(name).and_then(|m| m.get(code)).copied().ok_or_else(|| {
                    FluxError::MissingCodebookEntry { attribute: name.clone(), value: code.clone() }
                }),
            })
            .collect::<Result<Vec<f64>, FluxError>>()?;
        rows.push(row);
    }
    Ok((rows, dims))
}

/// Codify decisions as a standardized numeric matrix. Categorical values go
/// through the codebook; zero-variance columns are dropped with a warning.
pub fn encode_decision_matrix(decisions: &[&DecisionRecord], codebook: &Codebook) -> Result<EncodedMatrix, FluxError> {
    let (raw, dims) = encode_raw(decisions, codebook)?;
    let n = raw.len();
    let mut keep = Vec::new();
    let mut dropped = Vec::new();
    let mut stats = Vec::new();
    for (j, name) in dims.iter().enumerate() {
        let mean = raw.iter().map(|r| r[j]).sum::<f64>() / n.max(1) as f64;
        let var = if n < 2 { 0.0 } else { raw.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / (n - 1) as f64 };
        if var > 0.0 {
            keep.push(j);
            stats.push((mean, var.sqrt()));
        } else {
            dropped.push(name.clone());
        }
    }
    if !dropped.is_empty() {
        log::warn!("dropping zero-variance attributes: {}", dropped.join(", "));
    }
    let rows = raw
        .iter()
        .map(|r| keep.iter().zip(&stats).map(|(&j, (mean, sd))| (r[j] - mean) / sd).collect())
        .collect();
    Ok(EncodedMatrix {
        rows,
        row_ids: decisions.iter().map(|d| d.id.clone()).collect(),
        dims: keep.iter().map(|&j| dims[j].clone()).collect(),
        dropped,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionPoint {
    pub decision: String,
    pub coordinate: f64,
    pub consequence: Consequence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Projection {
    pub points: Vec<ProjectionPoint>,
    pub dims: Vec<String>,
    pub dropped: Vec<String>,
    pub component: pca::PrincipalComponent,
}

/// Project decisions with a recorded outcome onto the first principal
/// component of their standardized attributes, sorted by coordinate.
pub fn project_decisions_1d(decisions: &[&DecisionRecord], codebook: &Codebook) -> Result<Projection, FluxError> {
    let with_outcome: Vec<&DecisionRecord> = decisions.iter().copied().filter(|d| d.lcc.is_some()).collect();
    if with_outcome.len() < 2 {
        return Err(if with_outcome.is_empty() {
            FluxError::NoRecordedOutcomes
        } else {
            FluxError::TooFewOutcomes(with_outcome.len())
        });
    }
    let m = encode_decision_matrix(&with_outcome, codebook)?;
    if m.dims.is_empty() {
        return Err(PcaError::DegenerateData.into());
    }
    let component = pca::first_principal_component(&m.rows)?;
    let mut points: Vec<ProjectionPoint> = with_outcome
        .iter()
        .zip(&m.rows)
        .map(|(d, row)| ProjectionPoint {
            decision: d.id.clone(),
            coordinate: pca::dot(row, &component.direction),
            consequence: d.lcc.expect("filtered above").consequence,
        })
        .collect();
    points.sort_by(|a, b| a.coordinate.total_cmp(&b.coordinate).then_with(|| a.decision.cmp(&b.decision)));
    Ok(Projection { points, dims: m.dims, dropped: m.dropped, component })
}

/// Attribute names used by the decisions, for diagnostics.
pub fn attribute_names<'a>(decisions: impl IntoIterator<Item = &'a DecisionRecord>) -> BTreeSet<&'a str> {
    decisions.into_iter().flat_map(|d| d.attributes.keys().map(String::as_str)).collect()
}
