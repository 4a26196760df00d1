//! Running protocols: outcome lists, success probabilities, corrections.

use num_complex::Complex64 as C64;
use qstate_core::{DensityMatrix, PureState, Unitary2, PIPELINE_TOL};
use singlet_family::{make_bell_pair, make_ghz, make_singlet, make_w3, BasisPair, BellKind, GhzSign};

use crate::mixture::partner_mixture;
use crate::protocol::{alice_projector_set, ProtocolKind, ProtocolSpec};
use crate::{Result, RspError};

/// Correction the partners applied (or would apply) to an outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Correction {
    None,
    /// sigma_z on each partner qubit.
    SigmaZEach,
}

/// Conditional state delivered to the partners.
#[derive(Clone, Debug)]
pub enum PartnerState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl PartnerState {
    pub fn fidelity_with_pure(&self, target: &PureState) -> Result<f64> {
        match self {
            PartnerState::Pure(s) => Ok(s.fidelity_with(target)?),
            PartnerState::Mixed(rho) => Ok(rho.fidelity_with_pure(target)?),
        }
    }
}

/// One row of a protocol run.
#[derive(Clone, Debug)]
pub struct RspOutcome {
    pub label: String,
    pub probability: f64,
    pub accepted: bool,
    pub partner: Option<PartnerState>,
    pub correction: Correction,
}

/// The ideal state a protocol aims to hand the partners.
#[derive(Clone, Debug)]
pub enum ProtocolTarget {
    Pure(PureState),
    /// Components with their oracle-computed weights.
    Mixture(Vec<(f64, PureState)>),
}

/// The ideal target of a protocol, used for fidelity reporting.
pub fn protocol_target(spec: &ProtocolSpec) -> Result<ProtocolTarget> {
    let basis = &spec.basis;
    match spec.kind {
        ProtocolKind::SingleQubit => Ok(ProtocolTarget::Pure(basis.psi().clone())),
        ProtocolKind::ProductCopies => Ok(ProtocolTarget::Pure(
            basis.product(&vec![false; spec.alice_qubits()]),
        )),
        ProtocolKind::Bell => Ok(ProtocolTarget::Pure(make_bell_pair(
            basis,
            BellKind::PsiPlusAnticorrelated,
        ))),
        ProtocolKind::W => Ok(ProtocolTarget::Pure(make_w3(basis, false))),
        ProtocolKind::WBar => Ok(ProtocolTarget::Pure(make_w3(basis, true))),
        ProtocolKind::Ghz => Ok(ProtocolTarget::Pure(make_ghz(basis, GhzSign::Minus))),
        ProtocolKind::NonMaxEntangled => {
            let (s, c) = spec.alpha.sin_cos();
            let norm = (c.powi(4) + s.powi(4)).sqrt();
            let bb = basis.product(&[true, true]);
            let pp = basis.product(&[false, false]);
            let amps: Vec<C64> = bb
                .amplitudes()
                .iter()
                .zip(pp.amplitudes())
                .map(|(b, p)| (b * c * c - p * s * s) / norm)
                .collect();
            Ok(ProtocolTarget::Pure(PureState::new(2, amps)?))
        }
        ProtocolKind::TraceMixture | ProtocolKind::NoMeasurementMixture => {
            let report = crate::mixture::trace_mixture_report(
                basis,
                spec.traced_count_effective(),
            )?;
            Ok(ProtocolTarget::Mixture(report.component_states(basis)))
        }
    }
}

/// Run the protocol on the shared singlet; Alice owns the first k/2 qubits.
pub fn run_protocol(shared: &PureState, spec: &ProtocolSpec) -> Result<Vec<RspOutcome>> {
    if shared.n_qubits() != spec.k {
        return Err(RspError::SharedStateMismatch {
            expected: spec.k,
            got: shared.n_qubits(),
        });
    }
    match spec.kind {
        ProtocolKind::TraceMixture | ProtocolKind::NoMeasurementMixture => {
            run_mixture_protocol(shared, spec)
        }
        _ => {
            let mut outcomes = Vec::new();
            for alice in alice_projector_set(spec)? {
                let projection = shared.project(&alice.projector)?;
                outcomes.push(RspOutcome {
                    label: alice.label,
                    probability: projection.probability,
                    accepted: alice.accepted,
                    partner: projection.conditional.map(PartnerState::Pure),
                    correction: Correction::None,
                });
            }
            Ok(outcomes)
        }
    }
}

fn run_mixture_protocol(shared: &PureState, spec: &ProtocolSpec) -> Result<Vec<RspOutcome>> {
    let traced: Vec<usize> =
        (spec.alice_qubits() - spec.traced_count_effective()..spec.alice_qubits()).collect();
    let mut outcomes = Vec::new();
    for alice in alice_projector_set(spec)? {
        let measured: Vec<(usize, PureState)> = alice
            .projector
            .targets()
            .iter()
            .map(|(i, s)| (*i, s.clone()))
            .collect();
        let (probability, partner) = partner_mixture(shared, &measured, &traced)?;
        outcomes.push(RspOutcome {
            label: alice.label,
            probability,
            accepted: alice.accepted,
            partner: Some(PartnerState::Mixed(partner)),
            correction: Correction::None,
        });
    }
    Ok(outcomes)
}

/// Sum of accepted outcome probabilities on the ideal shared singlet.
pub fn success_probability(spec: &ProtocolSpec) -> Result<f64> {
    let shared = make_singlet(spec.k)?;
    Ok(run_protocol(&shared, spec)?
        .iter()
        .filter(|o| o.accepted)
        .map(|o| o.probability)
        .sum())
}

/// Apply the sigma_z-per-qubit correction to an outcome's partner state.
///
/// The basis pair must lie on the H/V equator (`psi = (|H> + e^{i phi}|V>)
/// / sqrt(2)`); there sigma_z acts as the NOT gate on the pair, mapping a
/// psi-bar-type preparation onto the psi-type target up to a global phase.
pub fn apply_equator_correction(outcome: &RspOutcome, basis: &BasisPair) -> Result<RspOutcome> {
    if !basis.is_equatorial(1e-9) {
        return Err(RspError::NotEquatorial);
    }
    let Some(PartnerState::Pure(partner)) = &outcome.partner else {
        return Err(RspError::MixedCorrection);
    };
    let corrected = partner.apply_product_unitary(&Unitary2::sigma_z());
    Ok(RspOutcome {
        label: outcome.label.clone(),
        probability: outcome.probability,
        accepted: outcome.accepted,
        partner: Some(PartnerState::Pure(corrected)),
        correction: Correction::SigmaZEach,
    })
}

/// Success probability when rejected outcomes that the sigma_z correction
/// maps onto the target count as successes. Requires an equatorial basis.
pub fn success_probability_with_correction(spec: &ProtocolSpec) -> Result<f64> {
    if !spec.basis.is_equatorial(1e-9) {
        return Err(RspError::NotEquatorial);
    }
    let ProtocolTarget::Pure(target) = protocol_target(spec)? else {
        return Err(RspError::MixedCorrection);
    };
    let shared = make_singlet(spec.k)?;
    let mut total = 0.0;
    for outcome in run_protocol(&shared, spec)? {
        if outcome.accepted {
            total += outcome.probability;
            continue;
        }
        if outcome.probability < qstate_core::NULL_OUTCOME_TOL {
            continue;
        }
        let corrected = apply_equator_correction(&outcome, &spec.basis)?;
        if let Some(partner) = &corrected.partner {
            if (partner.fidelity_with_pure(&target)? - 1.0).abs() < PIPELINE_TOL {
                total += outcome.probability;
            }
        }
    }
    Ok(total)
}

/// The non-max-entangled outcome: Alice projects her two qubits onto
/// `cos(a)|psi> + sin(a)|psi-bar>` and `cos(a)|psi> - sin(a)|psi-bar>`
/// (`plus_first` picks which station takes the plus sign) and the partners
/// collapse onto `(cos^2 a |bb> - sin^2 a |pp>) / sqrt(cos^4 a + sin^4 a)`.
///
/// Both probability and state are computed from the four-photon singlet, not
/// assumed.
pub fn nonmax_outcome(
    basis: &BasisPair,
    alpha: f64,
    plus_first: bool,
) -> Result<(f64, PureState)> {
    let spec = ProtocolSpec::non_max(basis.clone(), alpha)?;
    let bases = spec.station_bases()?;
    // `plus_first` picks which station carries the plus sign; the shared
    // state is symmetric under swapping Alice's pair, so both orders
    // collapse the partners identically.
    let (a, b) = if plus_first { (0, 1) } else { (1, 0) };
    let projector = qstate_core::ProductProjector::new(vec![
        (0, bases[a].0.clone()),
        (1, bases[b].0.clone()),
    ])?;
    let shared = make_singlet(4)?;
    let projection = shared.project(&projector)?;
    let Some(partner) = projection.conditional else {
        return Err(RspError::NullOutcome);
    };
    Ok((projection.probability, partner))
}

/// The symmetrizer restatement of the protocol: for Alice registering the
/// product state `a_1 (x) a_2 (x) a_3` on the six-photon singlet, the
/// partners are left with the normalized symmetric projection of
/// `orth(a_1) (x) orth(a_2) (x) orth(a_3)`.
pub fn symmetrizer_prediction(alice_states: &[PureState]) -> Option<PureState> {
    let orth = |s: &PureState| {
        let a = s.amplitude(0);
        let b = s.amplitude(1);
        PureState::single_qubit(-b.conj(), a.conj()).expect("unit vector")
    };
    let mut product = orth(alice_states.first()?);
    for s in &alice_states[1..] {
        product = product.tensor(&orth(s));
    }
    let (_, projected) = product.symmetric_projection();
    projected
}

/// Outcomes of the GHZ protocol whose conditional partner state is an exact
/// GHZ-class state (every single-qubit marginal maximally mixed), with the
/// achievable total probability. The designated outcome is always included;
/// the conjugate-GHZ outcome appears as well but needs a bit-flip rather
/// than a sigma_z correction.
pub fn extended_ghz_acceptance(spec: &ProtocolSpec) -> Result<(Vec<String>, f64)> {
    let shared = make_singlet(spec.k)?;
    let mut labels = Vec::new();
    let mut total = 0.0;
    for outcome in run_protocol(&shared, spec)? {
        let Some(PartnerState::Pure(partner)) = &outcome.partner else {
            continue;
        };
        if is_ghz_class(partner) {
            labels.push(outcome.label.clone());
            total += outcome.probability;
        }
    }
    Ok((labels, total))
}

fn is_ghz_class(state: &PureState) -> bool {
    if state.n_qubits() != 3 {
        return false;
    }
    let rho = DensityMatrix::from_pure(state);
    (0..3).all(|q| {
        let reduced = rho.partial_trace(&[q]).expect("valid index");
        (reduced.entry(0, 0).re - 0.5).abs() < PIPELINE_TOL
            && (reduced.entry(1, 1).re - 0.5).abs() < PIPELINE_TOL
            && reduced.entry(0, 1).norm() < PIPELINE_TOL
    })
}
