//! Bosonic Fock-space model of the multiphoton interferometer: a pulsed PDC
//! source feeding two spatial arms, a beam-splitter fan-out into six exit
//! modes, wave-plate polarization analysis, lossy threshold detectors, and
//! coincidence post-selection.
//!
//! The pipeline is `build_pdc_state -> build_fanout_network ->
//! apply_analysis -> {postselect | click_distribution |
//! conditional_partner_state}`. All stages are pure functions over immutable
//! sparse state vectors with deterministic (ordered) term iteration, so
//! results are reproducible bit for bit.

pub mod analysis;
pub mod config;
pub mod detect;
pub mod fock;
pub mod mode;
pub mod network;
pub mod pdc;
pub mod postselect;
pub mod sample;

pub use analysis::{apply_analysis, hwp, qwp, standard_waveplate_angles, AnalysisSetting};
pub use config::ApparatusConfig;
pub use detect::{
    click_distribution, coincidence_statistics, conditional_partner_state,
    contamination_fraction, ClickPattern, CoincidenceStats, DetectorConfig,
};
pub use fock::FockVector;
pub use mode::{detector_index, OpticalMode, Pol, Spatial, ALICE_EXITS, EXIT_MODES, PARTNER_EXITS};
pub use network::{apply_beam_splitter, build_fanout_network};
pub use pdc::{build_pdc_state, emission_order_probability, pdc_captured_norm, PdcConfig};
pub use postselect::postselect_one_photon_per_mode;
pub use sample::{clicks_to_csv, sample_clicks};

#[derive(Debug, thiserror::Error)]
pub enum PhotonicError {
    #[error("transmissivity {0} outside (0, 1]")]
    BadTransmissivity(f64),
    #[error("beam splitter output ports must differ")]
    SameOutputPorts,
    #[error("occupation exceeds the photon cap {cap}")]
    PhotonCapExceeded { cap: u32 },
    #[error("detector efficiency {0} outside (0, 1]")]
    BadEfficiency(f64),
    #[error("dark count probability {0} outside [0, 0.01]")]
    BadDarkCount(f64),
    #[error("state still occupies the source modes; run the fan-out first")]
    SourceModesOccupied,
    #[error("invalid click pattern: {0}")]
    BadPattern(String),
    #[error("shot count must be positive")]
    ZeroShots,
    #[error("squeezing parameter K = {0} must be positive")]
    BadSqueezing(f64),
    #[error("p_max must be at least 1")]
    BadOrder,
    #[error("splittings list must hold 2 or 4 transmissivities, got {0}")]
    BadSplittings(usize),
    #[error("configuration error: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Core(#[from] qstate_core::QStateError),
}

pub type Result<T> = std::result::Result<T, PhotonicError>;
