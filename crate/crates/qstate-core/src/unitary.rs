//! Single-qubit unitaries and Haar-distributed SU(2) sampling.

use num_complex::Complex64 as C64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{QStateError, Result, ALGEBRAIC_TOL};

/// A 2x2 unitary acting on one polarization qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary2 {
    m: [[C64; 2]; 2],
    special: bool,
}

impl Unitary2 {
    /// Build from an explicit matrix, checking unitarity.
    pub fn new(m: [[C64; 2]; 2]) -> Result<Self> {
        if !is_unitary(&m) {
            return Err(QStateError::NotUnitary);
        }
        Ok(Self { m, special: false })
    }

    /// Build a special unitary, additionally checking `det = 1`.
    pub fn special(m: [[C64; 2]; 2]) -> Result<Self> {
        let u = Self::new(m)?;
        let d = u.det();
        if (d - C64::new(1.0, 0.0)).norm() > ALGEBRAIC_TOL {
            return Err(QStateError::NotSpecial { re: d.re, im: d.im });
        }
        Ok(Self {
            special: true,
            ..u
        })
    }

    /// Measurement-basis unitary: rows are the bra vectors of the two
    /// orthonormal analysis states, so `u * psi = |0>`.
    pub fn from_basis_rows(psi: &crate::PureState, psi_bar: &crate::PureState) -> Result<Self> {
        if psi.n_qubits() != 1 || psi_bar.n_qubits() != 1 {
            return Err(QStateError::NotSingleQubit { index: 0 });
        }
        Self::new([
            [psi.amplitude(0).conj(), psi.amplitude(1).conj()],
            [psi_bar.amplitude(0).conj(), psi_bar.amplitude(1).conj()],
        ])
    }

    pub fn identity() -> Self {
        Self {
            m: [
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            ],
            special: true,
        }
    }

    /// Pauli X (H <-> V exchange); determinant -1.
    pub fn sigma_x() -> Self {
        Self {
            m: [
                [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            ],
            special: false,
        }
    }

    /// Pauli Z (phase flip on V); determinant -1.
    pub fn sigma_z() -> Self {
        Self {
            m: [
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(0.0, 0.0), C64::new(-1.0, 0.0)],
            ],
            special: false,
        }
    }

    /// Hadamard (H <-> D relabeling); determinant -1.
    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            m: [
                [C64::new(h, 0.0), C64::new(h, 0.0)],
                [C64::new(h, 0.0), C64::new(-h, 0.0)],
            ],
            special: false,
        }
    }

    /// Diagonal phase gate `diag(1, e^{i phi})`.
    pub fn phase(phi: f64) -> Self {
        Self {
            m: [
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(0.0, 0.0), C64::from_polar(1.0, phi)],
            ],
            special: false,
        }
    }

    pub fn matrix(&self) -> &[[C64; 2]; 2] {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.m[row][col]
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    pub fn dagger(&self) -> Self {
        Self {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
            special: self.special,
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let a = &self.m;
        let b = &other.m;
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self {
            m,
            special: self.special && other.special,
        }
    }

    /// Apply to a single-qubit amplitude pair.
    pub fn apply(&self, amp: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * amp[0] + self.m[0][1] * amp[1],
            self.m[1][0] * amp[0] + self.m[1][1] * amp[1],
        ]
    }
}

fn is_unitary(m: &[[C64; 2]; 2]) -> bool {
    // U^dagger U = I
    let mut prod = [[C64::new(0.0, 0.0); 2]; 2];
    for (i, row) in prod.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
        }
    }
    let id = |i: usize, j: usize| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0);
    (0..2).all(|i| (0..2).all(|j| (prod[i][j] - id(i, j)).norm() <= ALGEBRAIC_TOL))
}

/// Draw a Haar-distributed element of SU(2), deterministic per seed.
///
/// Columns of a complex Gaussian matrix are orthonormalized (QR with a
/// real-positive R diagonal, which is Haar on U(2)) and the result is scaled
/// by an inverse square root of its determinant to reach SU(2).
pub fn random_special_unitary(seed: u64) -> Unitary2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = || {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    };
    let a = [g(), g()];
    let b = [g(), g()];

    let na = (a[0].norm_sqr() + a[1].norm_sqr()).sqrt();
    let q0 = [a[0] / na, a[1] / na];
    let r01 = q0[0].conj() * b[0] + q0[1].conj() * b[1];
    let v = [b[0] - q0[0] * r01, b[1] - q0[1] * r01];
    let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let q1 = [v[0] / nv, v[1] / nv];

    let m = [[q0[0], q1[0]], [q0[1], q1[1]]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    // principal square root of the determinant phase
    let half_phase = C64::from_polar(1.0, det.arg() / 2.0);
    let m = [
        [m[0][0] / half_phase, m[0][1] / half_phase],
        [m[1][0] / half_phase, m[1][1] / half_phase],
    ];
    Unitary2::special(m).expect("construction yields SU(2)")
}
