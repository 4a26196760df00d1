//! The `rsp-sim` subcommands.

pub mod decompose;
pub mod run;
pub mod selftest;
pub mod sweep;
pub mod table1;
pub mod tomography;

use photonic_sim::{
    conditional_partner_state, AnalysisSetting, ClickPattern, Spatial, PARTNER_EXITS,
};
use qstate_core::{DensityMatrix, PureState};
use rsp_engine::{run_protocol, PartnerState, ProtocolSpec, ProtocolTarget};
use singlet_family::make_singlet;

use crate::scenario::{Mode, ScenarioConfig};
use crate::{HarnessError, Result};

/// A prepared partner state, however the scenario produced it. States are
/// expressed in the computational (H/V) frame.
pub struct Preparation {
    pub description: String,
    pub acceptance_probability: f64,
    pub partner: PartnerState,
    /// Fidelity against the protocol's pure target, where one exists.
    pub fidelity: Option<f64>,
}

/// Run a scenario far enough to hold the prepared partner state.
pub fn prepare(scenario: &ScenarioConfig) -> Result<Preparation> {
    scenario.validate()?;
    let spec = scenario.protocol.to_spec()?;
    match scenario.mode {
        Mode::Ideal => prepare_ideal(&spec),
        Mode::Photonic => prepare_photonic(scenario, &spec),
    }
}

fn pure_target(spec: &ProtocolSpec) -> Result<Option<PureState>> {
    Ok(match rsp_engine::protocol_target(spec)? {
        ProtocolTarget::Pure(t) => Some(t),
        ProtocolTarget::Mixture(_) => None,
    })
}

fn prepare_ideal(spec: &ProtocolSpec) -> Result<Preparation> {
    let shared = make_singlet(spec.k)?;
    let outcomes = run_protocol(&shared, spec)?;
    let accepted_probability: f64 = outcomes
        .iter()
        .filter(|o| o.accepted)
        .map(|o| o.probability)
        .sum();
    let first = outcomes
        .into_iter()
        .find(|o| o.accepted && o.probability > 1e-15 && o.partner.is_some())
        .ok_or_else(|| {
            HarnessError::Degenerate("no accepted outcome carries probability".to_string())
        })?;
    let partner = first.partner.expect("filtered on presence");
    let fidelity = match pure_target(spec)? {
        Some(t) => Some(partner.fidelity_with_pure(&t)?),
        None => None,
    };
    Ok(Preparation {
        description: format!("ideal {:?} outcome {}", spec.kind, first.label),
        acceptance_probability: accepted_probability,
        partner,
        fidelity,
    })
}

/// Alice's designated accepted pattern as clicks, together with the station
/// count the protocol uses.
fn designated_alice_pattern(spec: &ProtocolSpec) -> Result<(ClickPattern, usize)> {
    let stations = spec.alice_qubits();
    let accepted = spec.accepted_patterns();
    let bits = accepted
        .first()
        .ok_or_else(|| HarnessError::Config("protocol accepts no outcome".to_string()))?;
    Ok((ClickPattern::from_alice_bits(bits), stations))
}

fn prepare_photonic(scenario: &ScenarioConfig, spec: &ProtocolSpec) -> Result<Preparation> {
    let apparatus = scenario
        .apparatus
        .as_ref()
        .expect("validated: photonic mode carries an apparatus");
    let exit = apparatus.build_exit_state()?;
    let det = apparatus.detector_config()?;
    let setting = analysis_for_protocol(spec)?;
    let (pattern, stations) = designated_alice_pattern(spec)?;
    let partner_stations: Vec<Spatial> = PARTNER_EXITS[..stations].to_vec();
    let Some((probability, rho_frame)) =
        conditional_partner_state(&exit, pattern, &partner_stations, &setting, &det)?
    else {
        return Err(HarnessError::Degenerate(
            "the designated coincidence pattern carries no probability".to_string(),
        ));
    };
    // back to the computational frame: rho_hv = U^dagger rho U with U the
    // partner analysis unitary
    let u = spec.basis.measurement_unitary();
    let rho_hv = rho_frame.conjugate_product_unitary(&u.dagger());
    let fidelity = match pure_target(spec)? {
        Some(t) => Some(rho_hv.fidelity_with_pure(&t)?),
        None => None,
    };
    Ok(Preparation {
        description: format!(
            "photonic {:?}, alice pattern {}, {} partner station(s)",
            spec.kind, pattern, stations
        ),
        acceptance_probability: probability,
        partner: PartnerState::Mixed(rho_hv),
        fidelity,
    })
}

/// Analysis setting realizing the protocol: Alice's stations use the
/// protocol's per-station bases, the partner stations read out in the
/// protocol basis pair.
pub fn analysis_for_protocol(spec: &ProtocolSpec) -> Result<AnalysisSetting> {
    let mut setting = AnalysisSetting::identity();
    let bases = spec.station_bases()?;
    for (pos, (first, second)) in bases.iter().enumerate() {
        setting.set_station_basis(pos, first, second)?;
    }
    for pos in 0..spec.alice_qubits() {
        setting.set_station_basis(3 + pos, spec.basis.psi(), spec.basis.psi_bar())?;
    }
    Ok(setting)
}

/// Tomography basis letters.
pub fn basis_letters(name: &str) -> Result<(singlet_family::BasisPair, [char; 2])> {
    match name {
        "hv" => Ok((singlet_family::BasisPair::hv(), ['H', 'V'])),
        "da" => Ok((singlet_family::BasisPair::da(), ['D', 'A'])),
        "lr" => Ok((singlet_family::BasisPair::lr(), ['L', 'R'])),
        other => Err(HarnessError::Config(format!(
            "unknown tomography basis '{other}'"
        ))),
    }
}

/// Born probabilities of a prepared state over a product basis.
pub fn born_probabilities(
    state: &PartnerState,
    basis: &singlet_family::BasisPair,
) -> Result<Vec<f64>> {
    let n = match state {
        PartnerState::Pure(s) => s.n_qubits(),
        PartnerState::Mixed(rho) => rho.n_qubits(),
    };
    let mut probs = Vec::with_capacity(1 << n);
    for idx in 0..(1usize << n) {
        let bits: Vec<bool> = (0..n).map(|q| (idx >> (n - 1 - q)) & 1 == 1).collect();
        let ket = basis.product(&bits);
        let p = match state {
            PartnerState::Pure(s) => ket.inner(s).norm_sqr(),
            PartnerState::Mixed(rho) => rho.fidelity_with_pure(&ket)?,
        };
        probs.push(p);
    }
    Ok(probs)
}

/// Sample outcome counts from exact probabilities, deterministic per seed.
pub fn sample_outcomes(probs: &[f64], shots: u64, seed: u64) -> Vec<u64> {
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let total: f64 = probs.iter().sum();
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in probs {
        acc += p;
        cumulative.push(acc);
    }
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..shots {
        let x: f64 = rng.gen::<f64>() * total;
        let idx = cumulative
            .partition_point(|&c| c < x)
            .min(probs.len() - 1);
        counts[idx] += 1;
    }
    counts
}

/// Binomial standard error of a sampled frequency.
pub fn binomial_std_error(p_hat: f64, shots: u64) -> f64 {
    if shots == 0 {
        0.0
    } else {
        (p_hat * (1.0 - p_hat) / shots as f64).sqrt()
    }
}

pub fn density_matrix_record(rho: &DensityMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..rho.dim())
        .map(|i| {
            (0..rho.dim())
                .map(|j| {
                    let e = rho.entry(i, j);
                    [e.re, e.im]
                })
                .collect()
        })
        .collect()
}
