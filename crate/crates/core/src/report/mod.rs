//! Flow-flux reports: per-area health rows, the full analysis bundle, and
//! its text/JSON/CSV/SVG renderings.

mod render;
mod svg;

use std::collections::BTreeMap;

use serde::Serialize;

pub use render::{render_report, Format, Rendered, FLOW_FLUX_HEADERS};
pub use svg::{density_reciprocity_svg, emit_svg_plots, flux_svg, PlotFrame};

use crate::config::Config;
use crate::flow::{self, FlowError, FlowSummary};
use crate::flux::{self, FluxAssessment, FluxVerdict, LccDistribution, Projection};
use crate::maturity::{self, MaturityResult, PhaseStatus, WasteFlag};
use crate::model::{Dataset, DecisionRecord};
use crate::scenario::{self, Alignment, GapKind, GapScenario, PerceptionCell};

pub const SCHEMA_VERSION: &str = "kvstream_report_v1";

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("unsupported format '{0}' (expected text, json or csv)")]
    UnsupportedFormat(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: std::path::PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Health {
    RED,
    YELLOW,
    GREEN,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HealthThresholds {
    pub red_density_below: f64,
    pub red_reciprocity_below: f64,
    pub red_tacit_above: f64,
    pub green_density_min: f64,
    pub green_reciprocity_min: f64,
}

impl Default for HealthThresholds {
    fn default() -> Self {
        Self {
            red_density_below: 0.35,
            red_reciprocity_below: 20.0,
            red_tacit_above: 50.0,
            green_density_min: 0.6,
            green_reciprocity_min: 50.0,
        }
    }
}

/// RED for sparse, one-directional, tacit-dominated flow; GREEN for dense
/// reciprocal flow; YELLOW otherwise. An explicit-dominant area escapes RED.
pub fn health_of(density: f64, reciprocity_pct: f64, tacit_pct: f64, t: &HealthThresholds) -> Health {
    if density < t.red_density_below && reciprocity_pct < t.red_reciprocity_below && tacit_pct > t.red_tacit_above {
        Health::RED
    } else if density >= t.green_density_min && reciprocity_pct >= t.green_reciprocity_min {
        Health::GREEN
    } else {
        Health::YELLOW
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservationThresholds {
    pub low_reciprocity_below: f64,
    pub tacit_heavy_above: f64,
    pub explicit_heavy_above: f64,
}

impl Default for ObservationThresholds {
    fn default() -> Self {
        Self { low_reciprocity_below: 20.0, tacit_heavy_above: 70.0, explicit_heavy_above: 70.0 }
    }
}

pub const OBS_LOW_RECIPROCITY: &str = "Encourage more reciprocity or mutual knowledge sharing within the team";
pub const OBS_TACIT_HEAVY: &str =
    "Increase reliance on explicit body of knowledge (K-briefs / A3s) to raise the explicit knowledge share";
pub const OBS_EXPLICIT_HEAVY: &str = "Ensure awareness in team on decision databases";
pub const OBS_CLIQUES: &str = "Presence of cliques - conditions ideal for initiating community of practice";
pub const OBS_SINGLE_POINT: &str = "Single Point Failure Risk";
pub const OBS_NO_SINGLE_POINT: &str = "No single point failures";
pub const OBS_ENHANCE_FLUX: &str = "Enhance knowledge flux - increase knowledge ties / bring additional knowledge actors";

/// Template observations for one area, in a fixed order.
pub fn observations(summary: &FlowSummary, verdict: Option<FluxVerdict>, t: &ObservationThresholds) -> Vec<String> {
    let mut out = Vec::new();
    if summary.reciprocity.is_some_and(|r| r < t.low_reciprocity_below) {
        out.push(OBS_LOW_RECIPROCITY.to_string());
    }
    if summary.tacit_pct.is_some_and(|p| p > t.tacit_heavy_above) {
        out.push(OBS_TACIT_HEAVY.to_string());
    }
    if summary.explicit_pct.is_some_and(|p| p > t.explicit_heavy_above) {
        out.push(OBS_EXPLICIT_HEAVY.to_string());
    }
    if !summary.cliques.is_empty() {
        out.push(OBS_CLIQUES.to_string());
    }
    if summary.cut_points.is_empty() {
        out.push(OBS_NO_SINGLE_POINT.to_string());
    } else {
        let names: Vec<&str> = summary.cut_points.iter().map(String::as_str).collect();
        out.push(format!(
            "{OBS_SINGLE_POINT} ({}) - spread their knowledge to others and make it more explicit",
            names.join(", ")
        ));
    }
    if verdict == Some(FluxVerdict::EnhanceFlux) {
        out.push(OBS_ENHANCE_FLUX.to_string());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowFluxRow {
    pub area: String,
    pub name: String,
    pub density: Option<f64>,
    pub reciprocity: Option<f64>,
    pub tacit_pct: Option<f64>,
    pub explicit_pct: Option<f64>,
    pub flux: Option<f64>,
    pub observations: Vec<String>,
    pub health: Option<Health>,
    /// Set when the row's metrics could not all be computed.
    pub insufficient_data: Option<String>,
}

fn area_decisions<'a>(d: &'a Dataset, area: &'a str) -> Vec<&'a DecisionRecord> {
    d.decisions_in(area).collect()
}

/// One row per area, sorted by area id. Areas whose metrics are undefined
/// get a row marked as insufficient data instead of failing the report.
pub fn build_flow_flux_report(d: &Dataset, config: &Config) -> Vec<FlowFluxRow> {
    let health_t = config.health();
    let obs_t = config.observations();
    d.area_ids()
        .into_iter()
        .map(|area| {
            let graph = d.flow_graph(area);
            let decisions = area_decisions(d, area);
            let assessment = flux::flux_assessment(area, &graph, &decisions, config.favorable_threshold).ok();
            let name = d.area(area).map_or_else(|| area.to_string(), |a| a.name.clone());
            let mut row = FlowFluxRow {
                area: area.to_string(),
                name,
                density: None,
                reciprocity: None,
                tacit_pct: None,
                explicit_pct: None,
                flux: assessment.as_ref().map(|a| a.flux),
                observations: Vec::new(),
                health: None,
                insufficient_data: None,
            };
            match flow::flow_summary(&graph, &config.flow(), config.most_approached_k) {
                Ok(s) => {
                    row.density = s.density;
                    row.reciprocity = s.reciprocity;
                    row.tacit_pct = s.tacit_pct;
                    row.explicit_pct = s.explicit_pct;
                    row.observations = observations(&s, assessment.as_ref().map(|a| a.verdict), &obs_t);
                    match (s.density, s.reciprocity, s.tacit_pct) {
                        (Some(den), Some(rec), Some(tac)) => row.health = Some(health_of(den, rec, tac, &health_t)),
                        _ => row.insufficient_data = Some(FlowError::NoPersonTies.to_string()),
                    }
                }
                Err(e) => row.insufficient_data = Some(e.to_string()),
            }
            row
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaFlow {
    pub area: String,
    pub summary: Option<FlowSummary>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaFlux {
    pub area: String,
    pub assessment: Option<FluxAssessment>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaLcc {
    pub area: String,
    pub distribution: LccDistribution,
    pub uncertainty: Option<f64>,
    pub projection: Option<Projection>,
    pub projection_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerceptionEntry {
    pub decision: String,
    pub cell: PerceptionCell,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapSection {
    pub scenarios: Vec<GapScenario>,
    pub tally: BTreeMap<GapKind, usize>,
    pub perception: Vec<PerceptionEntry>,
    pub perception_tally: BTreeMap<Alignment, usize>,
}

pub fn flow_section(d: &Dataset, config: &Config) -> Vec<AreaFlow> {
    d.area_ids()
        .into_iter()
        .map(|area| match flow::flow_summary(&d.flow_graph(area), &config.flow(), config.most_approached_k) {
            Ok(s) => AreaFlow { area: area.to_string(), summary: Some(s), error: None },
            Err(e) => AreaFlow { area: area.to_string(), summary: None, error: Some(e.to_string()) },
        })
        .collect()
}

pub fn flux_section(d: &Dataset, config: &Config) -> Vec<AreaFlux> {
    d.area_ids()
        .into_iter()
        .map(|area| {
            let decisions = area_decisions(d, area);
            match flux::flux_assessment(area, &d.flow_graph(area), &decisions, config.favorable_threshold) {
                Ok(a) => AreaFlux { area: area.to_string(), assessment: Some(a), error: None },
                Err(e) => AreaFlux { area: area.to_string(), assessment: None, error: Some(e.to_string()) },
            }
        })
        .collect()
}

pub fn lcc_section(d: &Dataset, config: &Config) -> Vec<AreaLcc> {
    let weights = config.lcc_weights();
    d.area_ids()
        .into_iter()
        .map(|area| {
            let decisions = area_decisions(d, area);
            let projection = flux::project_decisions_1d(&decisions, &d.codebook);
            AreaLcc {
                area: area.to_string(),
                distribution: flux::lcc_distribution(area, decisions.iter().copied()),
                uncertainty: flux::uncertainty_from_lcc(decisions.iter().copied(), &weights).ok(),
                projection_error: projection.as_ref().err().map(ToString::to_string),
                projection: projection.ok(),
            }
        })
        .collect()
}

pub fn gap_section(d: &Dataset) -> GapSection {
    let scenarios: Vec<GapScenario> = d.gaps.iter().map(scenario::classify_gap_scenario).collect();
    let mut tally: BTreeMap<GapKind, usize> =
        [GapKind::Efficient, GapKind::IllusoryProgress, GapKind::ExcessWaste, GapKind::Mixed].map(|k| (k, 0)).into();
    for s in &scenarios {
        *tally.entry(s.kind).or_default() += 1;
    }
    let perception: Vec<PerceptionEntry> = d
        .gaps
        .iter()
        .filter_map(|g| {
            let (p, a) = (g.perceived_uv?, g.actual_uv?);
            Some(PerceptionEntry { decision: g.decision.clone(), cell: scenario::perception_reality_cell(p, a) })
        })
        .collect();
    let mut perception_tally: BTreeMap<Alignment, usize> =
        [Alignment::Aligned, Alignment::ModerateWaste, Alignment::HighWaste].map(|k| (k, 0)).into();
    for p in &perception {
        *perception_tally.entry(p.cell.alignment).or_default() += 1;
    }
    GapSection { scenarios, tally, perception, perception_tally }
}

/// Parts of a report; subcommands build only the sections they print.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Section {
    FlowFlux,
    Flow,
    Flux,
    Lcc,
    Gaps,
    Maturity,
    Phase,
    Waste,
}

impl Section {
    pub const ALL: [Section; 8] = [
        Section::FlowFlux,
        Section::Flow,
        Section::Flux,
        Section::Lcc,
        Section::Gaps,
        Section::Maturity,
        Section::Phase,
        Section::Waste,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportBundle {
    pub schema: &'static str,
    pub generated_at: String,
    pub config: Config,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow_flux: Option<Vec<FlowFluxRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow: Option<Vec<AreaFlow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flux: Option<Vec<AreaFlux>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lcc: Option<Vec<AreaLcc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaps: Option<GapSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maturity: Option<Vec<MaturityResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub waste: Option<Vec<WasteFlag>>,
}

/// Assemble the requested sections. A pure function of its inputs; the
/// timestamp is injected so that output is reproducible.
pub fn build_report(d: &Dataset, config: &Config, sections: &[Section], generated_at: impl Into<String>) -> ReportBundle {
    let want = |s: Section| sections.contains(&s);
    let history = || {
        maturity::assessment_history(d, &config.bands()).unwrap_or_else(|e| {
            log::warn!("skipping maturity history: {e}");
            Vec::new()
        })
    };
    ReportBundle {
        schema: SCHEMA_VERSION,
        generated_at: generated_at.into(),
        config: config.clone(),
        flow_flux: want(Section::FlowFlux).then(|| build_flow_flux_report(d, config)),
        flow: want(Section::Flow).then(|| flow_section(d, config)),
        flux: want(Section::Flux).then(|| flux_section(d, config)),
        lcc: want(Section::Lcc).then(|| lcc_section(d, config)),
        gaps: want(Section::Gaps).then(|| gap_section(d)),
        maturity: want(Section::Maturity).then(history),
        phase: want(Section::Phase).then(|| maturity::phase_status(d, &history(), config)),
        waste: want(Section::Waste).then(|| maturity::waste_diagnostics(d, config)),
    }
}

pub fn now_timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}
