//! Scenario runner: exact or sampled outcome reports.

use std::path::Path;

use rsp_engine::{run_protocol, OutcomeRecord, PartnerState, ProtocolTarget};
use serde::Serialize;
use singlet_family::make_singlet;

use crate::commands::{
    analysis_for_protocol, binomial_std_error, density_matrix_record, prepare, sample_outcomes,
};
use crate::scenario::{Mode, ScenarioConfig};
use crate::{HarnessError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct OutcomeRow {
    pub label: String,
    pub probability: f64,
    pub std_error: f64,
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub mode: String,
    pub protocol: String,
    pub shots: u64,
    pub seed: u64,
    /// Total probability of the accepted outcome set.
    pub acceptance_probability: f64,
    /// Fidelity of the prepared state against the protocol target.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    pub rows: Vec<OutcomeRow>,
    /// Partner density matrix (photonic mode), re/im pairs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner_matrix: Option<Vec<Vec<[f64; 2]>>>,
    /// Full outcome records with partner state vectors (ideal mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcomes_detail: Option<Vec<OutcomeRecord>>,
}

pub fn run(scenario: &ScenarioConfig, shots: u64, seed: u64) -> Result<RunReport> {
    match scenario.mode {
        Mode::Ideal => run_ideal(scenario, shots, seed),
        Mode::Photonic => run_photonic(scenario, shots, seed),
    }
}

/// Write the click-count CSV for a photonic scenario: the exact pattern
/// distribution, with sampled counts when `shots > 0`.
pub fn write_click_counts(
    scenario: &ScenarioConfig,
    shots: u64,
    seed: u64,
    path: &Path,
) -> Result<()> {
    if scenario.mode != Mode::Photonic {
        return Err(HarnessError::Config(
            "click counts come from photonic scenarios".to_string(),
        ));
    }
    scenario.validate()?;
    let spec = scenario.protocol.to_spec()?;
    let apparatus = scenario.apparatus.as_ref().expect("validated");
    let exit = apparatus.build_exit_state()?;
    let det = apparatus.detector_config()?;
    let setting = analysis_for_protocol(&spec)?;
    let dist = photonic_sim::click_distribution(&exit, &setting, &det)?;
    let counts = if shots > 0 {
        Some(photonic_sim::sample_clicks(&dist, shots, seed)?)
    } else {
        None
    };
    std::fs::write(path, photonic_sim::clicks_to_csv(&dist, counts.as_ref()))?;
    Ok(())
}

fn run_ideal(scenario: &ScenarioConfig, shots: u64, seed: u64) -> Result<RunReport> {
    let spec = scenario.protocol.to_spec()?;
    let shared = make_singlet(spec.k)?;
    let outcomes = run_protocol(&shared, &spec)?;
    let target = match rsp_engine::protocol_target(&spec)? {
        ProtocolTarget::Pure(t) => Some(t),
        ProtocolTarget::Mixture(_) => None,
    };
    let acceptance_probability: f64 = outcomes
        .iter()
        .filter(|o| o.accepted)
        .map(|o| o.probability)
        .sum();
    if acceptance_probability < 1e-15 {
        return Err(HarnessError::Degenerate(
            "acceptance set carries no probability".to_string(),
        ));
    }

    let exact: Vec<f64> = outcomes.iter().map(|o| o.probability).collect();
    let sampled = if shots > 0 {
        Some(sample_outcomes(&exact, shots, seed))
    } else {
        None
    };

    let mut fidelity_of_accepted = None;
    let mut rows = Vec::with_capacity(outcomes.len());
    for (i, outcome) in outcomes.iter().enumerate() {
        let fid = match (&outcome.partner, &target) {
            (Some(p), Some(t)) => Some(p.fidelity_with_pure(t)?),
            _ => None,
        };
        if outcome.accepted && fidelity_of_accepted.is_none() && outcome.probability > 1e-15 {
            fidelity_of_accepted = fid;
        }
        let (probability, std_error) = match &sampled {
            Some(counts) => {
                let p_hat = counts[i] as f64 / shots as f64;
                (p_hat, binomial_std_error(p_hat, shots))
            }
            None => (outcome.probability, 0.0),
        };
        rows.push(OutcomeRow {
            label: outcome.label.clone(),
            probability,
            std_error,
            accepted: outcome.accepted,
            fidelity: fid,
        });
    }
    Ok(RunReport {
        mode: "ideal".to_string(),
        protocol: format!("{:?}", spec.kind),
        shots,
        seed,
        acceptance_probability,
        fidelity: fidelity_of_accepted,
        rows,
        partner_matrix: None,
        outcomes_detail: Some(outcomes.iter().map(|o| o.to_record()).collect()),
    })
}

fn run_photonic(scenario: &ScenarioConfig, shots: u64, seed: u64) -> Result<RunReport> {
    let spec = scenario.protocol.to_spec()?;
    let preparation = prepare(scenario)?;
    let PartnerState::Mixed(rho) = &preparation.partner else {
        unreachable!("photonic preparations are density matrices");
    };

    // partner readout in the protocol basis: outcome probabilities are the
    // diagonal of the analysis-frame state, i.e. Born terms of the basis
    let exact = crate::commands::born_probabilities(&preparation.partner, &spec.basis)?;
    let n = exact.len().trailing_zeros() as usize;
    let labels: Vec<String> = (0..exact.len())
        .map(|idx| {
            (0..n)
                .map(|q| if (idx >> (n - 1 - q)) & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect();
    let sampled = if shots > 0 {
        Some(sample_outcomes(&exact, shots, seed))
    } else {
        None
    };
    let rows = labels
        .into_iter()
        .enumerate()
        .map(|(i, label)| {
            let (probability, std_error) = match &sampled {
                Some(counts) => {
                    let p_hat = counts[i] as f64 / shots as f64;
                    (p_hat, binomial_std_error(p_hat, shots))
                }
                None => (exact[i], 0.0),
            };
            OutcomeRow {
                label,
                probability,
                std_error,
                accepted: true,
                fidelity: None,
            }
        })
        .collect();
    Ok(RunReport {
        mode: "photonic".to_string(),
        protocol: format!("{:?}", spec.kind),
        shots,
        seed,
        acceptance_probability: preparation.acceptance_probability,
        fidelity: preparation.fidelity,
        rows,
        partner_matrix: Some(density_matrix_record(rho)),
        outcomes_detail: None,
    })
}

impl RunReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,probability,std_error,accepted,fidelity\n");
        for row in &self.rows {
            let fid = row
                .fidelity
                .map(|f| format!("{f:.12}"))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{:.12},{:.12},{},{}\n",
                row.label, row.probability, row.std_error, row.accepted, fid
            ));
        }
        out
    }
}
