//! Every tunable threshold in one flat, JSON-overridable table.
//!
//! The on-disk form is a JSON object mapping threshold names to numbers;
//! keys left out keep their defaults and unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::flow::FlowThresholds;
use crate::flux::LccWeights;
use crate::maturity::{BandThresholds, PhaseThresholds, WasteThresholds};
use crate::report::{HealthThresholds, ObservationThresholds};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    Parse { path: String, source: serde_json::Error },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub density_hi: f64,
    pub reciprocity_hi: f64,
    pub most_approached_k: usize,

    pub favorable_threshold: f64,
    pub lcc_weight_lc1: f64,
    pub lcc_weight_lc2: f64,
    pub lcc_weight_lc3: f64,
    pub lcc_weight_lc4: f64,
    pub duration_weight_short: f64,
    pub duration_weight_medium: f64,
    pub duration_weight_long: f64,

    pub health_red_density_below: f64,
    pub health_red_reciprocity_below: f64,
    pub health_red_tacit_above: f64,
    pub health_green_density_min: f64,
    pub health_green_reciprocity_min: f64,

    pub observation_low_reciprocity_below: f64,
    pub observation_tacit_heavy_above: f64,
    pub observation_explicit_heavy_above: f64,

    pub band_weak_below: f64,
    pub band_marginal_max: f64,
    pub band_effective_max: f64,

    pub phase_flux_optimal_share: f64,
    pub phase_gap_efficient_share: f64,

    pub waste_creation_tacit_above: f64,
    pub waste_creation_min_cut_points: f64,
    pub waste_validation_unrecorded_above: f64,
    pub waste_sharing_reciprocity_below: f64,
    pub waste_learning_uncertainty_above: f64,
}

impl Default for Config {
    fn default() -> Self {
        let flow = FlowThresholds::default();
        let lcc = LccWeights::default();
        let health = HealthThresholds::default();
        let obs = ObservationThresholds::default();
        let bands = BandThresholds::default();
        let phase = PhaseThresholds::default();
        let waste = WasteThresholds::default();
        Self {
            density_hi: flow.density_hi,
            reciprocity_hi: flow.reciprocity_hi,
            most_approached_k: 3,
            favorable_threshold: crate::flux::DEFAULT_FAVORABLE_THRESHOLD,
            lcc_weight_lc1: lcc.consequence[0],
            lcc_weight_lc2: lcc.consequence[1],
            lcc_weight_lc3: lcc.consequence[2],
            lcc_weight_lc4: lcc.consequence[3],
            duration_weight_short: lcc.duration[0],
            duration_weight_medium: lcc.duration[1],
            duration_weight_long: lcc.duration[2],
            health_red_density_below: health.red_density_below,
            health_red_reciprocity_below: health.red_reciprocity_below,
            health_red_tacit_above: health.red_tacit_above,
            health_green_density_min: health.green_density_min,
            health_green_reciprocity_min: health.green_reciprocity_min,
            observation_low_reciprocity_below: obs.low_reciprocity_below,
            observation_tacit_heavy_above: obs.tacit_heavy_above,
            observation_explicit_heavy_above: obs.explicit_heavy_above,
            band_weak_below: bands.weak_below,
            band_marginal_max: bands.marginal_max,
            band_effective_max: bands.effective_max,
            phase_flux_optimal_share: phase.flux_optimal_share,
            phase_gap_efficient_share: phase.gap_efficient_share,
            waste_creation_tacit_above: waste.creation_tacit_above,
            waste_creation_min_cut_points: waste.creation_min_cut_points as f64,
            waste_validation_unrecorded_above: waste.validation_unrecorded_above,
            waste_sharing_reciprocity_below: waste.sharing_reciprocity_below,
            waste_learning_uncertainty_above: waste.learning_uncertainty_above,
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let p = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: p.clone(), source })?;
        Self::from_json(&text).map_err(|source| ConfigError::Parse { path: p, source })
    }

    pub fn flow(&self) -> FlowThresholds {
        FlowThresholds { density_hi: self.density_hi, reciprocity_hi: self.reciprocity_hi }
    }

    pub fn lcc_weights(&self) -> LccWeights {
        LccWeights {
            consequence: [self.lcc_weight_lc1, self.lcc_weight_lc2, self.lcc_weight_lc3, self.lcc_weight_lc4],
            duration: [self.duration_weight_short, self.duration_weight_medium, self.duration_weight_long],
        }
    }

    pub fn health(&self) -> HealthThresholds {
        HealthThresholds {
            red_density_below: self.health_red_density_below,
            red_reciprocity_below: self.health_red_reciprocity_below,
            red_tacit_above: self.health_red_tacit_above,
            green_density_min: self.health_green_density_min,
            green_reciprocity_min: self.health_green_reciprocity_min,
        }
    }

    pub fn observations(&self) -> ObservationThresholds {
        ObservationThresholds {
            low_reciprocity_below: self.observation_low_reciprocity_below,
            tacit_heavy_above: self.observation_tacit_heavy_above,
            explicit_heavy_above: self.observation_explicit_heavy_above,
        }
    }

    pub fn bands(&self) -> BandThresholds {
        BandThresholds {
            weak_below: self.band_weak_below,
            marginal_max: self.band_marginal_max,
            effective_max: self.band_effective_max,
        }
    }

    pub fn phase(&self) -> PhaseThresholds {
        PhaseThresholds {
            flux_optimal_share: self.phase_flux_optimal_share,
            gap_efficient_share: self.phase_gap_efficient_share,
        }
    }

    pub fn waste(&self) -> WasteThresholds {
        WasteThresholds {
            creation_tacit_above: self.waste_creation_tacit_above,
            creation_min_cut_points: self.waste_creation_min_cut_points.max(0.0) as usize,
            validation_unrecorded_above: self.waste_validation_unrecorded_above,
            sharing_reciprocity_below: self.waste_sharing_reciprocity_below,
            learning_uncertainty_above: self.waste_learning_uncertainty_above,
        }
    }
}
