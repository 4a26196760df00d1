//! Orthonormal single-qubit basis pairs {psi, psi-bar}.

use num_complex::Complex64 as C64;
use qstate_core::{PureState, Unitary2, ALGEBRAIC_TOL};

use crate::{Result, SingletError};

/// An orthonormal pair of single-qubit polarization states. `psi` plays the
/// role of the target polarization, `psi_bar` its orthogonal complement.
#[derive(Clone, Debug)]
pub struct BasisPair {
    psi: PureState,
    psi_bar: PureState,
}

impl BasisPair {
    pub fn new(psi: PureState, psi_bar: PureState) -> Result<Self> {
        if psi.n_qubits() != 1 || psi_bar.n_qubits() != 1 {
            return Err(SingletError::NotOrthonormal);
        }
        if psi.inner(&psi_bar).norm() > ALGEBRAIC_TOL {
            return Err(SingletError::NotOrthonormal);
        }
        Ok(Self { psi, psi_bar })
    }

    /// Derive the canonical orthogonal complement `(-conj(b), conj(a))`.
    pub fn from_psi(psi: PureState) -> Result<Self> {
        let a = psi.amplitude(0);
        let b = psi.amplitude(1);
        let psi_bar = PureState::single_qubit(-b.conj(), a.conj())?;
        Self::new(psi, psi_bar)
    }

    /// Horizontal/vertical.
    pub fn hv() -> Self {
        Self {
            psi: PureState::basis_state(1, 0),
            psi_bar: PureState::basis_state(1, 1),
        }
    }

    /// Diagonal/antidiagonal `(|H> +/- |V>)/sqrt(2)`.
    pub fn da() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            psi: PureState::single_qubit(C64::new(h, 0.0), C64::new(h, 0.0)).unwrap(),
            psi_bar: PureState::single_qubit(C64::new(h, 0.0), C64::new(-h, 0.0)).unwrap(),
        }
    }

    /// Left/right circular `(|H> +/- i|V>)/sqrt(2)`.
    pub fn lr() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            psi: PureState::single_qubit(C64::new(h, 0.0), C64::new(0.0, h)).unwrap(),
            psi_bar: PureState::single_qubit(C64::new(h, 0.0), C64::new(0.0, -h)).unwrap(),
        }
    }

    /// Rotate both elements by the same unitary.
    pub fn rotated(&self, u: &Unitary2) -> Self {
        let rot = |s: &PureState| {
            let out = u.apply([s.amplitude(0), s.amplitude(1)]);
            PureState::single_qubit(out[0], out[1]).expect("unitary preserves norm")
        };
        Self {
            psi: rot(&self.psi),
            psi_bar: rot(&self.psi_bar),
        }
    }

    /// Swap the roles of psi and psi-bar.
    pub fn conjugated(&self) -> Self {
        Self {
            psi: self.psi_bar.clone(),
            psi_bar: self.psi.clone(),
        }
    }

    pub fn psi(&self) -> &PureState {
        &self.psi
    }

    pub fn psi_bar(&self) -> &PureState {
        &self.psi_bar
    }

    /// Pick psi (false) or psi-bar (true).
    pub fn state(&self, bar: bool) -> &PureState {
        if bar {
            &self.psi_bar
        } else {
            &self.psi
        }
    }

    /// Tensor product over a bit pattern, false = psi, true = psi-bar.
    pub fn product(&self, bits: &[bool]) -> PureState {
        assert!(!bits.is_empty());
        let mut out = self.state(bits[0]).clone();
        for &b in &bits[1..] {
            out = out.tensor(self.state(b));
        }
        out
    }

    /// Measurement unitary mapping psi to |0> and psi-bar to |1>.
    pub fn measurement_unitary(&self) -> Unitary2 {
        Unitary2::from_basis_rows(&self.psi, &self.psi_bar).expect("orthonormal pair")
    }

    /// True when the pair lies on the H/V equator of the Bloch sphere,
    /// i.e. `|<H|psi>| = 1/sqrt(2)` within `tol`.
    pub fn is_equatorial(&self, tol: f64) -> bool {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        (self.psi.amplitude(0).norm() - h).abs() <= tol
            && (self.psi_bar.amplitude(0).norm() - h).abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_bases_are_orthonormal() {
        for basis in [BasisPair::hv(), BasisPair::da(), BasisPair::lr()] {
            assert!(basis.psi().inner(basis.psi_bar()).norm() < 1e-15);
            assert!((basis.psi().norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn complement_is_orthogonal() {
        let psi = PureState::single_qubit(C64::new(0.6, 0.0), C64::new(0.0, 0.8)).unwrap();
        let pair = BasisPair::from_psi(psi).unwrap();
        assert!(pair.psi().inner(pair.psi_bar()).norm() < 1e-15);
    }

    #[test]
    fn equator_detection() {
        assert!(BasisPair::da().is_equatorial(1e-9));
        assert!(BasisPair::lr().is_equatorial(1e-9));
        assert!(!BasisPair::hv().is_equatorial(1e-9));
    }

    #[test]
    fn rejects_non_orthogonal_pair() {
        let d = BasisPair::da();
        assert!(BasisPair::new(d.psi().clone(), d.psi().clone()).is_err());
    }
}
