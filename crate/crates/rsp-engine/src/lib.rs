//! Remote state preparation protocols over a shared multi-photon singlet.
//!
//! Each protocol is a complete product measurement for Alice (who holds the
//! first k/2 qubits), a set of accepted outcomes, and an optional correction
//! rule for the partners. Running a protocol yields every outcome with its
//! exact probability and the conditional partner state.

pub mod mixture;
pub mod protocol;
pub mod records;
pub mod run;

pub use mixture::{partner_mixture, trace_mixture_report, MixtureComponent, MixtureWeightReport};
pub use protocol::{alice_projector_set, AliceOutcome, ProtocolKind, ProtocolSpec};
pub use records::{OutcomeRecord, StateRecord};
pub use run::{
    apply_equator_correction, extended_ghz_acceptance, nonmax_outcome, protocol_target,
    run_protocol, success_probability, success_probability_with_correction,
    symmetrizer_prediction, Correction, PartnerState, ProtocolTarget, RspOutcome,
};

#[derive(Debug, thiserror::Error)]
pub enum RspError {
    #[error("protocol kind {kind:?} is incompatible with k = {k}")]
    IncompatibleKind {
        kind: protocol::ProtocolKind,
        k: usize,
    },
    #[error("alpha = {0} lies outside the open interval (0, pi/2)")]
    DegenerateAlpha(f64),
    #[error("traced_count = {0} must be between 1 and 3")]
    InvalidTracedCount(usize),
    #[error("shared state holds {got} qubits, protocol expects {expected}")]
    SharedStateMismatch { expected: usize, got: usize },
    #[error("basis pair is not on the H/V equator of the Bloch sphere")]
    NotEquatorial,
    #[error("correction applies to pure partner states only")]
    MixedCorrection,
    #[error("measured and traced sets must partition Alice's qubits")]
    BadPartition,
    #[error("outcome has probability below the null threshold")]
    NullOutcome,
    #[error(transparent)]
    Core(#[from] qstate_core::QStateError),
    #[error(transparent)]
    Singlet(#[from] singlet_family::SingletError),
}

pub type Result<T> = std::result::Result<T, RspError>;
