//! Exact finite-dimensional quantum-state algebra: pure states, density
//! matrices, product projections, partial trace, fidelity, and Haar-random
//! special unitaries.
//!
//! Conventions used throughout:
//! * qubit 0 is the leftmost ket symbol, so `|HHVV>` is the bit string `0011`
//!   with bit value 0 for `H` and 1 for `V`;
//! * all stored states are unit vectors (density matrices have unit trace);
//! * algebraic identities hold to `ALGEBRAIC_TOL`, composed pipelines to
//!   `PIPELINE_TOL`.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so concurrent evaluation is safe. Random sampling takes an
//! explicit seed and is deterministic.

pub mod density;
pub mod projector;
pub mod pure;
pub mod unitary;

pub use density::DensityMatrix;
pub use projector::{ProductProjector, Projection};
pub use pure::PureState;
pub use unitary::{random_special_unitary, Unitary2};

pub use num_complex::Complex64;

/// Tolerance for single algebraic identities (normalization, unitarity).
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Tolerance for composed multi-operation pipelines.
pub const PIPELINE_TOL: f64 = 1e-10;
/// Projection probabilities below this threshold count as a null outcome.
pub const NULL_OUTCOME_TOL: f64 = 1e-15;

/// Errors raised by state construction and the operations on states.
#[derive(Debug, thiserror::Error)]
pub enum QStateError {
    #[error("amplitude count {len} is not 2^{n_qubits}")]
    DimensionMismatch { n_qubits: usize, len: usize },
    #[error("states live on different qubit counts: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },
    #[error("state norm^2 = {norm_sqr} differs from 1 beyond tolerance")]
    NotNormalized { norm_sqr: f64 },
    #[error("a state must hold at least one qubit")]
    NoQubits,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("matrix determinant is not 1 (got {re}+{im}i)")]
    NotSpecial { re: f64, im: f64 },
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("matrix trace {trace} differs from 1 beyond tolerance")]
    BadTrace { trace: f64 },
    #[error("matrix has eigenvalue {value} below the positivity floor")]
    NegativeEigenvalue { value: f64 },
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },
    #[error("qubit index {index} listed twice")]
    DuplicateIndex { index: usize },
    #[error("projector target at qubit {index} is not a single-qubit state")]
    NotSingleQubit { index: usize },
    #[error("keep set must not be empty")]
    EmptyKeepSet,
    #[error("permutation {perm:?} is not a rearrangement of 0..{n_qubits}")]
    BadPermutation { perm: Vec<usize>, n_qubits: usize },
}

pub type Result<T> = std::result::Result<T, QStateError>;
