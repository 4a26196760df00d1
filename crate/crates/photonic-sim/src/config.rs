//! The apparatus as one JSON document.

use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisSetting;
use crate::detect::DetectorConfig;
use crate::mode::DETECTOR_COUNT;
use crate::pdc::PdcConfig;
use crate::{PhotonicError, Result};

/// Scalar-or-per-detector efficiency.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Efficiency {
    Uniform(f64),
    PerDetector(Vec<f64>),
}

impl Default for Efficiency {
    fn default() -> Self {
        Efficiency::Uniform(1.0)
    }
}

/// Per-station wave-plate angles, degrees.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct WaveplateAngles {
    pub hwp_deg: f64,
    pub qwp_deg: f64,
}

/// Apparatus configuration:
/// `{K, phi, p_max, photon_cap, splittings, efficiency, dark_count_prob,
/// analysis}`. `analysis` lists per-exit wave-plate angles in degrees in the
/// fixed order a1, a2, a3, b1, b2, b3 and defaults to H/V everywhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ApparatusConfig {
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default = "default_p_max")]
    pub p_max: u32,
    /// Defaults to `2 * p_max`; lowering it truncates the emission sum.
    #[serde(default)]
    pub photon_cap: Option<u32>,
    #[serde(default = "default_splittings_cfg")]
    pub splittings: Vec<f64>,
    #[serde(default)]
    pub efficiency: Efficiency,
    #[serde(default)]
    pub dark_count_prob: f64,
    #[serde(default)]
    pub analysis: Option<[WaveplateAngles; 6]>,
}

fn default_p_max() -> u32 {
    4
}

fn default_splittings_cfg() -> Vec<f64> {
    crate::network::default_splittings()
}

impl ApparatusConfig {
    /// The default operating point: `tanh^2 K = 1/15`, compensated phase,
    /// one emission order above the six-photon protocols, ideal detectors.
    pub fn default_operating_point() -> Self {
        Self {
            k: (1.0 / 15f64.sqrt()).atanh(),
            phi: 0.0,
            p_max: default_p_max(),
            photon_cap: None,
            splittings: default_splittings_cfg(),
            efficiency: Efficiency::default(),
            dark_count_prob: 0.0,
            analysis: None,
        }
    }

    pub fn pdc_config(&self) -> Result<PdcConfig> {
        // a photon cap below 2*p_max truncates the emission sum further
        let effective_p_max = match self.photon_cap {
            Some(cap) => self.p_max.min(cap / 2).max(1),
            None => self.p_max,
        };
        PdcConfig::new(self.k, self.phi, effective_p_max)
    }

    pub fn detector_config(&self) -> Result<DetectorConfig> {
        let efficiency = match &self.efficiency {
            Efficiency::Uniform(eta) => [*eta; DETECTOR_COUNT],
            Efficiency::PerDetector(values) => {
                if values.len() != DETECTOR_COUNT {
                    return Err(PhotonicError::BadConfig(format!(
                        "efficiency list holds {} entries, expected {DETECTOR_COUNT}",
                        values.len()
                    )));
                }
                let mut arr = [0.0; DETECTOR_COUNT];
                arr.copy_from_slice(values);
                arr
            }
        };
        DetectorConfig::new(efficiency, self.dark_count_prob)
    }

    pub fn analysis_setting(&self) -> AnalysisSetting {
        match &self.analysis {
            None => AnalysisSetting::identity(),
            Some(angles) => {
                let pairs: [(f64, f64); 6] =
                    std::array::from_fn(|i| (angles[i].hwp_deg, angles[i].qwp_deg));
                AnalysisSetting::from_waveplate_angles(&pairs)
            }
        }
    }

    /// Source state pushed through the fan-out (exit modes populated,
    /// analysis not yet applied).
    pub fn build_exit_state(&self) -> Result<crate::fock::FockVector> {
        let source = crate::pdc::build_pdc_state(&self.pdc_config()?)?;
        crate::network::build_fanout_network(&source, &self.splittings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_schema() {
        let json = r#"{
            "K": 0.26,
            "phi": 0.0,
            "p_max": 3,
            "splittings": [0.7071067811865476, 0.7071067811865476],
            "efficiency": 0.15,
            "dark_count_prob": 0.0,
            "analysis": [
                {"hwp_deg": 0.0, "qwp_deg": 0.0},
                {"hwp_deg": 0.0, "qwp_deg": 0.0},
                {"hwp_deg": 0.0, "qwp_deg": 0.0},
                {"hwp_deg": 22.5, "qwp_deg": 0.0},
                {"hwp_deg": 22.5, "qwp_deg": 0.0},
                {"hwp_deg": 22.5, "qwp_deg": 0.0}
            ]
        }"#;
        let cfg: ApparatusConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.p_max, 3);
        assert!(cfg.pdc_config().is_ok());
        assert!(cfg.detector_config().is_ok());
    }

    #[test]
    fn minimal_document_uses_defaults() {
        let cfg: ApparatusConfig = serde_json::from_str(r#"{"K": 0.3}"#).unwrap();
        assert_eq!(cfg.p_max, 4);
        assert_eq!(cfg.splittings.len(), 2);
        assert!(matches!(cfg.efficiency, Efficiency::Uniform(eta) if eta == 1.0));
    }

    #[test]
    fn per_detector_efficiency_list_is_validated() {
        let cfg: ApparatusConfig =
            serde_json::from_str(r#"{"K": 0.3, "efficiency": [0.5, 0.5]}"#).unwrap();
        assert!(cfg.detector_config().is_err());
    }

    #[test]
    fn photon_cap_truncates_the_emission_sum() {
        let mut cfg = ApparatusConfig::default_operating_point();
        cfg.photon_cap = Some(4);
        assert_eq!(cfg.pdc_config().unwrap().p_max, 2);
    }
}
