//! Protocol specifications and the projector sets they induce for Alice.

use num_complex::Complex64 as C64;
use qstate_core::{ProductProjector, PureState};
use singlet_family::BasisPair;

use crate::{Result, RspError};

/// Which preparation the protocol targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProtocolKind {
    /// One copy of psi from the two-photon singlet.
    SingleQubit,
    /// k/2 copies of psi from the k-photon singlet.
    ProductCopies,
    /// The two-qubit pair state from the four-photon singlet.
    Bell,
    /// The three-qubit W state from the six-photon singlet.
    W,
    /// The conjugate W state.
    WBar,
    /// The GHZ-class collapse from angled projections, theta = pi/3 default.
    Ghz,
    /// Non-maximally entangled two-qubit state, parameterized by alpha.
    NonMaxEntangled,
    /// Partners receive a mixture: Alice measures some qubits and ignores
    /// (traces out) the rest.
    TraceMixture,
    /// Alice sends the success signal without measuring at all.
    NoMeasurementMixture,
}

/// A fully parameterized protocol instance.
#[derive(Clone, Debug)]
pub struct ProtocolSpec {
    pub kind: ProtocolKind,
    pub basis: BasisPair,
    pub k: usize,
    /// GHZ projection angle; pi/3 gives the balanced GHZ collapse.
    pub theta: f64,
    /// Non-max entanglement angle, in the open interval (0, pi/2).
    pub alpha: f64,
    /// Number of Alice qubits ignored in the mixture protocols.
    pub traced_count: usize,
}

impl ProtocolSpec {
    pub fn new(kind: ProtocolKind, basis: BasisPair, k: usize) -> Result<Self> {
        let spec = Self {
            kind,
            basis,
            k,
            theta: std::f64::consts::FRAC_PI_3,
            alpha: std::f64::consts::FRAC_PI_4,
            traced_count: 3,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn single_qubit(basis: BasisPair) -> Self {
        Self::new(ProtocolKind::SingleQubit, basis, 2).expect("valid")
    }

    pub fn product_copies(basis: BasisPair, k: usize) -> Result<Self> {
        Self::new(ProtocolKind::ProductCopies, basis, k)
    }

    pub fn bell(basis: BasisPair) -> Self {
        Self::new(ProtocolKind::Bell, basis, 4).expect("valid")
    }

    pub fn w(basis: BasisPair, conjugate: bool) -> Self {
        let kind = if conjugate {
            ProtocolKind::WBar
        } else {
            ProtocolKind::W
        };
        Self::new(kind, basis, 6).expect("valid")
    }

    pub fn ghz(basis: BasisPair, theta: f64) -> Self {
        let mut spec = Self::new(ProtocolKind::Ghz, basis, 6).expect("valid");
        spec.theta = theta;
        spec
    }

    pub fn non_max(basis: BasisPair, alpha: f64) -> Result<Self> {
        if !(alpha > 1e-12 && alpha < std::f64::consts::FRAC_PI_2 - 1e-12) {
            return Err(RspError::DegenerateAlpha(alpha));
        }
        let mut spec = Self::new(ProtocolKind::NonMaxEntangled, basis, 4)?;
        spec.alpha = alpha;
        Ok(spec)
    }

    pub fn trace_mixture(basis: BasisPair, traced_count: usize) -> Result<Self> {
        if !(1..=3).contains(&traced_count) {
            return Err(RspError::InvalidTracedCount(traced_count));
        }
        let mut spec = Self::new(ProtocolKind::TraceMixture, basis, 6)?;
        spec.traced_count = traced_count;
        Ok(spec)
    }

    pub fn no_measurement(basis: BasisPair) -> Self {
        Self::new(ProtocolKind::NoMeasurementMixture, basis, 6).expect("valid")
    }

    /// Number of qubits Alice measures or ignores.
    pub fn alice_qubits(&self) -> usize {
        self.k / 2
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            ProtocolKind::SingleQubit => self.k == 2,
            ProtocolKind::ProductCopies => matches!(self.k, 2 | 4 | 6),
            ProtocolKind::Bell | ProtocolKind::NonMaxEntangled => self.k == 4,
            ProtocolKind::W
            | ProtocolKind::WBar
            | ProtocolKind::Ghz
            | ProtocolKind::TraceMixture
            | ProtocolKind::NoMeasurementMixture => self.k == 6,
        };
        if ok {
            Ok(())
        } else {
            Err(RspError::IncompatibleKind {
                kind: self.kind,
                k: self.k,
            })
        }
    }

    /// The per-station measurement bases, as (first, second) orthonormal
    /// state pairs. Outcome labels index into these: bit 0 = first state.
    pub fn station_bases(&self) -> Result<Vec<(PureState, PureState)>> {
        let psi = self.basis.psi().clone();
        let psi_bar = self.basis.psi_bar().clone();
        let plain = |n: usize| vec![(psi.clone(), psi_bar.clone()); n];
        match self.kind {
            ProtocolKind::SingleQubit => Ok(plain(1)),
            ProtocolKind::ProductCopies | ProtocolKind::W | ProtocolKind::WBar => {
                Ok(plain(self.alice_qubits()))
            }
            ProtocolKind::Bell => Ok(plain(2)),
            ProtocolKind::Ghz => {
                let (s, c) = self.theta.sin_cos();
                Ok(vec![
                    (psi.clone(), psi_bar.clone()),
                    (
                        superpose(&psi, &psi_bar, c, s),
                        superpose(&psi, &psi_bar, s, -c),
                    ),
                    (
                        superpose(&psi, &psi_bar, c, -s),
                        superpose(&psi, &psi_bar, s, c),
                    ),
                ])
            }
            ProtocolKind::NonMaxEntangled => {
                let (s, c) = self.alpha.sin_cos();
                Ok(vec![
                    (
                        superpose(&psi, &psi_bar, c, s),
                        superpose(&psi, &psi_bar, s, -c),
                    ),
                    (
                        superpose(&psi, &psi_bar, c, -s),
                        superpose(&psi, &psi_bar, s, c),
                    ),
                ])
            }
            ProtocolKind::TraceMixture | ProtocolKind::NoMeasurementMixture => {
                Ok(plain(self.alice_qubits() - self.traced_count_effective()))
            }
        }
    }

    pub(crate) fn traced_count_effective(&self) -> usize {
        match self.kind {
            ProtocolKind::TraceMixture => self.traced_count,
            ProtocolKind::NoMeasurementMixture => self.alice_qubits(),
            _ => 0,
        }
    }

    /// Accepted outcome patterns, as bit strings over the station bases.
    pub fn accepted_patterns(&self) -> Vec<Vec<bool>> {
        match self.kind {
            // Alice registers psi-bar; the partner is left with psi.
            ProtocolKind::SingleQubit => vec![vec![true]],
            ProtocolKind::ProductCopies => vec![vec![true; self.alice_qubits()]],
            // "psi psi-bar or psi-bar psi at a pair of her stations"
            ProtocolKind::Bell => vec![vec![false, true], vec![true, false]],
            // one psi among two psi-bar
            ProtocolKind::W => vec![
                vec![false, true, true],
                vec![true, false, true],
                vec![true, true, false],
            ],
            ProtocolKind::WBar => vec![
                vec![true, false, false],
                vec![false, true, false],
                vec![false, false, true],
            ],
            // the single designated angled projection
            ProtocolKind::Ghz => vec![vec![false, false, false]],
            ProtocolKind::NonMaxEntangled => vec![vec![false, false]],
            ProtocolKind::TraceMixture => {
                let measured = self.alice_qubits() - self.traced_count_effective();
                vec![vec![false; measured]]
            }
            ProtocolKind::NoMeasurementMixture => vec![vec![]],
        }
    }
}

fn superpose(a: &PureState, b: &PureState, ca: f64, cb: f64) -> PureState {
    let amps: Vec<C64> = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x * ca + y * cb)
        .collect();
    PureState::new(1, amps).expect("orthonormal combination")
}

/// One entry of Alice's complete product measurement.
#[derive(Clone, Debug)]
pub struct AliceOutcome {
    /// Bit string over the station bases, e.g. "011".
    pub label: String,
    pub bits: Vec<bool>,
    pub projector: ProductProjector,
    pub accepted: bool,
}

/// The complete product measurement (resolving the identity on Alice's
/// measured qubits) with acceptance flags.
pub fn alice_projector_set(spec: &ProtocolSpec) -> Result<Vec<AliceOutcome>> {
    let bases = spec.station_bases()?;
    let accepted = spec.accepted_patterns();
    let m = bases.len();
    let mut outcomes = Vec::with_capacity(1 << m);
    if m == 0 {
        return Ok(vec![AliceOutcome {
            label: String::new(),
            bits: vec![],
            projector: ProductProjector::new(vec![])?,
            accepted: true,
        }]);
    }
    for pattern in 0..(1usize << m) {
        let bits: Vec<bool> = (0..m).map(|q| (pattern >> (m - 1 - q)) & 1 == 1).collect();
        let targets: Vec<(usize, PureState)> = bits
            .iter()
            .enumerate()
            .map(|(q, &second)| {
                let (first, alt) = &bases[q];
                (q, if second { alt.clone() } else { first.clone() })
            })
            .collect();
        outcomes.push(AliceOutcome {
            label: bits.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            accepted: accepted.contains(&bits),
            bits,
            projector: ProductProjector::new(targets)?,
        });
    }
    Ok(outcomes)
}
