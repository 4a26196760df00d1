//! Constructors for the named multi-qubit states of the protocol layer
//! (generalized singlets, W states, GHZ states, Bell pairs) and a brute-force
//! decomposition oracle that expands a singlet over Alice's product basis.
//!
//! The singlets are built from their printed H/V amplitudes; everything else
//! works in an arbitrary orthonormal polarization basis pair.

pub mod basis;
pub mod decompose;
pub mod states;

pub use basis::BasisPair;
pub use decompose::{
    adjudicate_bell_variant, adjudicate_wbar_line, decompose_singlet, AdjudicationFinding,
    BranchRecord, DecompositionBranch, DecompositionReport,
};
pub use states::{make_bell_pair, make_ghz, make_singlet, make_w3, BellKind, GhzSign};

#[derive(Debug, thiserror::Error)]
pub enum SingletError {
    #[error("singlet size {0} is not one of 2, 4, 6")]
    InvalidSize(usize),
    #[error("basis states are not an orthonormal pair")]
    NotOrthonormal,
    #[error(transparent)]
    Core(#[from] qstate_core::QStateError),
}

pub type Result<T> = std::result::Result<T, SingletError>;
