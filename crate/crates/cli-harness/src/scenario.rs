//! Scenario configuration: which protocol, on which machinery, how sampled.

use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use photonic_sim::ApparatusConfig;
use qstate_core::PureState;
use rsp_engine::{ProtocolKind, ProtocolSpec};
use serde::Deserialize;
use singlet_family::BasisPair;

use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Ideal,
    Photonic,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BasisSpec {
    Named(String),
    Explicit {
        psi: [[f64; 2]; 2],
        psi_bar: [[f64; 2]; 2],
    },
}

impl BasisSpec {
    pub fn to_basis_pair(&self) -> Result<BasisPair> {
        match self {
            BasisSpec::Named(name) => match name.as_str() {
                "hv" => Ok(BasisPair::hv()),
                "da" => Ok(BasisPair::da()),
                "lr" => Ok(BasisPair::lr()),
                other => Err(HarnessError::Config(format!(
                    "unknown basis name '{other}' (expected hv, da, or lr)"
                ))),
            },
            BasisSpec::Explicit { psi, psi_bar } => {
                let mk = |a: &[[f64; 2]; 2]| {
                    PureState::single_qubit(C64::new(a[0][0], a[0][1]), C64::new(a[1][0], a[1][1]))
                };
                let psi = mk(psi).map_err(|e| HarnessError::Config(e.to_string()))?;
                let psi_bar = mk(psi_bar).map_err(|e| HarnessError::Config(e.to_string()))?;
                BasisPair::new(psi, psi_bar).map_err(|e| HarnessError::Config(e.to_string()))
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct ProtocolConfig {
    pub kind: String,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub basis: Option<BasisSpec>,
    #[serde(default)]
    pub theta: Option<f64>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub traced_count: Option<usize>,
}

impl ProtocolConfig {
    pub fn to_spec(&self) -> Result<ProtocolSpec> {
        let basis = match &self.basis {
            Some(spec) => spec.to_basis_pair()?,
            None => BasisPair::hv(),
        };
        let err = |e: rsp_engine::RspError| HarnessError::Config(e.to_string());
        match self.kind.as_str() {
            "single_qubit" => Ok(ProtocolSpec::single_qubit(basis)),
            "product_copies" => {
                let k = self.k.ok_or_else(|| {
                    HarnessError::Config("product_copies needs an explicit k".to_string())
                })?;
                ProtocolSpec::product_copies(basis, k).map_err(err)
            }
            "bell" => Ok(ProtocolSpec::bell(basis)),
            "w" => Ok(ProtocolSpec::w(basis, false)),
            "w_bar" => Ok(ProtocolSpec::w(basis, true)),
            "ghz" => Ok(ProtocolSpec::ghz(
                basis,
                self.theta.unwrap_or(std::f64::consts::FRAC_PI_3),
            )),
            "non_max_entangled" => {
                let alpha = self.alpha.ok_or_else(|| {
                    HarnessError::Config("non_max_entangled needs alpha".to_string())
                })?;
                ProtocolSpec::non_max(basis, alpha).map_err(err)
            }
            "trace_mixture" => {
                let traced = self.traced_count.ok_or_else(|| {
                    HarnessError::Config("trace_mixture needs traced_count".to_string())
                })?;
                ProtocolSpec::trace_mixture(basis, traced).map_err(err)
            }
            "no_measurement_mixture" => Ok(ProtocolSpec::no_measurement(basis)),
            other => Err(HarnessError::Config(format!(
                "unknown protocol kind '{other}'"
            ))),
        }
    }
}

fn default_format() -> String {
    "json".to_string()
}

/// A full scenario document.
#[derive(Clone, Debug, Deserialize)]
pub struct ScenarioConfig {
    pub mode: Mode,
    pub protocol: ProtocolConfig,
    #[serde(default)]
    pub apparatus: Option<ApparatusConfig>,
    /// 0 = exact evaluation.
    #[serde(default)]
    pub shots: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_format")]
    pub output: String,
    #[serde(default)]
    pub out_path: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ScenarioConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == Mode::Photonic {
            if self.apparatus.is_none() {
                return Err(HarnessError::Config(
                    "photonic mode requires an apparatus block".to_string(),
                ));
            }
            let kind = self.protocol.to_spec()?.kind;
            if matches!(
                kind,
                ProtocolKind::TraceMixture | ProtocolKind::NoMeasurementMixture
            ) {
                return Err(HarnessError::Config(
                    "mixture protocols run in ideal mode only".to_string(),
                ));
            }
        }
        Ok(())
    }
}
