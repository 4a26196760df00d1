//! The named states: generalized singlets (from their printed H/V
//! amplitudes), W states, GHZ states, and Bell pairs in arbitrary bases.

use num_complex::Complex64 as C64;
use qstate_core::PureState;

use crate::basis::BasisPair;
use crate::{Result, SingletError};

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Index of a ket given as a bit pattern string over {0 = H, 1 = V}.
fn idx(bits: &[u8]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// The rotationally invariant k-photon singlet, k in {2, 4, 6}, in the H/V
/// basis.
///
/// * k = 2: `(|HV> - |VH>)/sqrt(2)`
/// * k = 4: `(1/sqrt(3)) [ (|HHVV> + |VVHH>)
///   - (1/2)(|HVHV> + |HVVH> + |VHHV> + |VHVH>) ]`
/// * k = 6: `(1/2)(|HHHVVV> - |VVVHHH>)
///   + (1/6)[ (|VVH>+|VHV>+|HVV>)(|VHH>+|HVH>+|HHV>)
///   - (|VHH>+|HVH>+|HHV>)(|VVH>+|VHV>+|HVV>) ]`
pub fn make_singlet(k: usize) -> Result<PureState> {
    match k {
        2 => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let mut amps = vec![re(0.0); 4];
            amps[0b01] = re(h);
            amps[0b10] = re(-h);
            Ok(PureState::new(2, amps)?)
        }
        4 => {
            let s3 = 3f64.sqrt();
            let mut amps = vec![re(0.0); 16];
            amps[idx(&[0, 0, 1, 1])] = re(1.0 / s3);
            amps[idx(&[1, 1, 0, 0])] = re(1.0 / s3);
            for pattern in [[0, 1, 0, 1], [0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 1, 0]] {
                amps[idx(&pattern)] = re(-1.0 / (2.0 * s3));
            }
            Ok(PureState::new(4, amps)?)
        }
        6 => {
            let mut amps = vec![re(0.0); 64];
            amps[idx(&[0, 0, 0, 1, 1, 1])] = re(0.5);
            amps[idx(&[1, 1, 1, 0, 0, 0])] = re(-0.5);
            let one_v: [[u8; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
            let two_v: [[u8; 3]; 3] = [[1, 1, 0], [1, 0, 1], [0, 1, 1]];
            for a in &one_v {
                for b in &two_v {
                    let joined: Vec<u8> = a.iter().chain(b.iter()).copied().collect();
                    amps[idx(&joined)] = re(-1.0 / 6.0);
                }
            }
            for a in &two_v {
                for b in &one_v {
                    let joined: Vec<u8> = a.iter().chain(b.iter()).copied().collect();
                    amps[idx(&joined)] = re(1.0 / 6.0);
                }
            }
            Ok(PureState::new(6, amps)?)
        }
        other => Err(SingletError::InvalidSize(other)),
    }
}

/// The three-qubit W state `(|psi psi psi-bar> + |psi psi-bar psi> +
/// |psi-bar psi psi>)/sqrt(3)`; the conjugate flag swaps psi and psi-bar,
/// giving the W-bar state.
pub fn make_w3(basis: &BasisPair, conjugate: bool) -> PureState {
    let basis = if conjugate {
        basis.conjugated()
    } else {
        basis.clone()
    };
    let patterns = [
        [false, false, true],
        [false, true, false],
        [true, false, false],
    ];
    let s3 = 3f64.sqrt().recip();
    let mut amps = vec![re(0.0); 8];
    for p in patterns {
        let ket = basis.product(&p);
        for (slot, a) in amps.iter_mut().zip(ket.amplitudes()) {
            *slot += a * s3;
        }
    }
    PureState::new(3, amps).expect("orthogonal patterns give a unit vector")
}

/// Relative sign of the three singly-flipped kets in [`make_ghz`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GhzSign {
    /// `(1/2)(|bbb> - |bpp> - |pbp> - |ppb>)`, the state the protocol
    /// collapses onto (a GHZ state in the circular basis derived from the
    /// pair).
    Minus,
    /// `(1/2)(|bbb> + |bpp> + |pbp> + |ppb>)`, a GHZ state exactly in the
    /// diagonal/antidiagonal basis derived from the pair.
    Plus,
}

/// A GHZ-class three-qubit state over the basis pair, with `b = psi-bar`,
/// `p = psi` in the pattern notation of [`GhzSign`].
pub fn make_ghz(basis: &BasisPair, sign: GhzSign) -> PureState {
    let s = match sign {
        GhzSign::Minus => -0.5,
        GhzSign::Plus => 0.5,
    };
    let mut amps = vec![re(0.0); 8];
    let add = |amps: &mut Vec<C64>, ket: PureState, w: f64| {
        for (slot, a) in amps.iter_mut().zip(ket.amplitudes()) {
            *slot += a * w;
        }
    };
    add(&mut amps, basis.product(&[true, true, true]), 0.5);
    add(&mut amps, basis.product(&[true, false, false]), s);
    add(&mut amps, basis.product(&[false, true, false]), s);
    add(&mut amps, basis.product(&[false, false, true]), s);
    PureState::new(3, amps).expect("orthogonal patterns give a unit vector")
}

/// Which two-qubit Bell state to construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellKind {
    /// `(|psi psi> + |psi-bar psi-bar>)/sqrt(2)` - the form printed for the
    /// pair state accompanying the four-photon decomposition.
    PsiPlusCorrelated,
    /// `(|psi psi-bar> + |psi-bar psi>)/sqrt(2)` - the form the decomposition
    /// oracle actually produces.
    PsiPlusAnticorrelated,
    /// `(|psi psi-bar> - |psi-bar psi>)/sqrt(2)`.
    Singlet,
}

/// A normalized Bell pair over the basis (the 1/sqrt(2) prefactor is always
/// applied).
pub fn make_bell_pair(basis: &BasisPair, which: BellKind) -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (first, second, sign) = match which {
        BellKind::PsiPlusCorrelated => ([false, false], [true, true], 1.0),
        BellKind::PsiPlusAnticorrelated => ([false, true], [true, false], 1.0),
        BellKind::Singlet => ([false, true], [true, false], -1.0),
    };
    let mut amps = vec![re(0.0); 4];
    for (slot, a) in amps.iter_mut().zip(basis.product(&first).amplitudes()) {
        *slot += a * h;
    }
    for (slot, a) in amps.iter_mut().zip(basis.product(&second).amplitudes()) {
        *slot += a * sign * h;
    }
    PureState::new(2, amps).expect("orthogonal patterns give a unit vector")
}
