//! Pure states as dense complex amplitude vectors over n polarization qubits.

use num_complex::Complex64 as C64;

use crate::projector::{ProductProjector, Projection};
use crate::unitary::Unitary2;
use crate::{QStateError, Result, ALGEBRAIC_TOL, NULL_OUTCOME_TOL};

/// A normalized pure state of `n_qubits` qubits.
///
/// Amplitudes are indexed by bit strings where qubit 0 supplies the most
/// significant bit, so index `0b0011` of a 4-qubit state is `|HHVV>`.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl PureState {
    /// Build a state from explicit amplitudes, checking length and norm.
    pub fn new(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(QStateError::NoQubits);
        }
        if amps.len() != 1 << n_qubits {
            return Err(QStateError::DimensionMismatch {
                n_qubits,
                len: amps.len(),
            });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(QStateError::NotNormalized { norm_sqr });
        }
        Ok(Self { n_qubits, amps })
    }

    /// Build from possibly unnormalized amplitudes by rescaling.
    pub fn normalized(n_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr < NULL_OUTCOME_TOL {
            return Err(QStateError::NotNormalized { norm_sqr });
        }
        let scale = norm_sqr.sqrt().recip();
        Self::new(n_qubits, amps.into_iter().map(|a| a * scale).collect())
    }

    /// The computational basis state with the given index.
    pub fn basis_state(n_qubits: usize, index: usize) -> Self {
        assert!(n_qubits >= 1 && index < (1 << n_qubits));
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = C64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    /// A single qubit `alpha|0> + beta|1>`.
    pub fn single_qubit(alpha: C64, beta: C64) -> Result<Self> {
        Self::new(1, vec![alpha, beta])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.amps
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean distance `||self - other||`, for exact vector comparisons.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Fidelity `|<target|self>|^2` with a pure target.
    pub fn fidelity_with(&self, target: &Self) -> Result<f64> {
        if self.n_qubits != target.n_qubits {
            return Err(QStateError::QubitCountMismatch {
                left: self.n_qubits,
                right: target.n_qubits,
            });
        }
        Ok(target.inner(self).norm_sqr())
    }

    /// Tensor product; `self` supplies the leading (leftmost) qubits.
    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.n_qubits + other.n_qubits;
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Self { n_qubits: n, amps }
    }

    /// Apply the same single-qubit unitary to every qubit: `u^{tensor n}`.
    pub fn apply_product_unitary(&self, u: &Unitary2) -> Self {
        let mut out = self.clone();
        for q in 0..self.n_qubits {
            out = out.apply_unitary_at(u, q).expect("index in range");
        }
        out
    }

    /// Apply a single-qubit unitary to one qubit.
    pub fn apply_unitary_at(&self, u: &Unitary2, qubit: usize) -> Result<Self> {
        if qubit >= self.n_qubits {
            return Err(QStateError::IndexOutOfRange {
                index: qubit,
                n_qubits: self.n_qubits,
            });
        }
        let bit = 1 << (self.n_qubits - 1 - qubit);
        let m = u.matrix();
        let mut amps = self.amps.clone();
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | bit];
                amps[i] = m[0][0] * a0 + m[0][1] * a1;
                amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amps,
        })
    }

    /// Project a subset of qubits onto the product state given by `projector`.
    ///
    /// Returns the outcome probability together with the renormalized
    /// conditional state of the unmeasured qubits (kept in their original
    /// order). A probability below the null-outcome threshold yields no
    /// conditional state.
    pub fn project(&self, projector: &ProductProjector) -> Result<Projection> {
        for (index, _) in projector.targets() {
            if *index >= self.n_qubits {
                return Err(QStateError::IndexOutOfRange {
                    index: *index,
                    n_qubits: self.n_qubits,
                });
            }
        }
        let measured: Vec<usize> = projector.targets().iter().map(|(i, _)| *i).collect();
        let kept: Vec<usize> = (0..self.n_qubits).filter(|q| !measured.contains(q)).collect();

        let m = measured.len();
        let kdim = 1usize << kept.len();
        let mut cond = vec![C64::new(0.0, 0.0); kdim];
        for (j, slot) in cond.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for x in 0..(1usize << m) {
                // overlap of the projector with the measured bits set to x
                let mut weight = C64::new(1.0, 0.0);
                for (pos, (_, target)) in projector.targets().iter().enumerate() {
                    let b = (x >> (m - 1 - pos)) & 1;
                    weight *= target.amplitude(b).conj();
                }
                if weight.norm_sqr() == 0.0 {
                    continue;
                }
                let mut full = 0usize;
                for (pos, q) in measured.iter().enumerate() {
                    if (x >> (m - 1 - pos)) & 1 == 1 {
                        full |= 1 << (self.n_qubits - 1 - q);
                    }
                }
                for (pos, q) in kept.iter().enumerate() {
                    if (j >> (kept.len() - 1 - pos)) & 1 == 1 {
                        full |= 1 << (self.n_qubits - 1 - q);
                    }
                }
                acc += weight * self.amps[full];
            }
            *slot = acc;
        }

        let probability: f64 = cond.iter().map(|a| a.norm_sqr()).sum();
        if kept.is_empty() {
            // full projection: probability only
            return Ok(Projection {
                probability,
                conditional: None,
            });
        }
        if probability < NULL_OUTCOME_TOL {
            return Ok(Projection {
                probability,
                conditional: None,
            });
        }
        let scale = probability.sqrt().recip();
        let state = Self {
            n_qubits: kept.len(),
            amps: cond.into_iter().map(|a| a * scale).collect(),
        };
        Ok(Projection {
            probability,
            conditional: Some(state),
        })
    }

    /// Rearrange qubits so that output qubit `i` is input qubit `perm[i]`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(QStateError::BadPermutation {
                perm: perm.to_vec(),
                n_qubits: n,
            });
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(QStateError::BadPermutation {
                    perm: perm.to_vec(),
                    n_qubits: n,
                });
            }
            seen[p] = true;
        }
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for (i, slot) in amps.iter_mut().enumerate() {
            let mut src = 0usize;
            for (out_q, &in_q) in perm.iter().enumerate() {
                if (i >> (n - 1 - out_q)) & 1 == 1 {
                    src |= 1 << (n - 1 - in_q);
                }
            }
            *slot = self.amps[src];
        }
        Ok(Self { n_qubits: n, amps })
    }

    /// Orthogonal projection onto the permutation-symmetric subspace.
    ///
    /// Returns the squared norm of the projected component and, when that
    /// weight is nonzero, the renormalized symmetric state.
    pub fn symmetric_projection(&self) -> (f64, Option<Self>) {
        let n = self.n_qubits;
        let perms = permutations(n);
        let mut amps = vec![C64::new(0.0, 0.0); self.amps.len()];
        for perm in &perms {
            let permuted = self.permute_qubits(perm).expect("valid permutation");
            for (slot, a) in amps.iter_mut().zip(permuted.amps) {
                *slot += a;
            }
        }
        let scale = 1.0 / perms.len() as f64;
        for a in amps.iter_mut() {
            *a *= scale;
        }
        let weight: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if weight < NULL_OUTCOME_TOL {
            return (weight, None);
        }
        let s = weight.sqrt().recip();
        (
            weight,
            Some(Self {
                n_qubits: n,
                amps: amps.into_iter().map(|a| a * s).collect(),
            }),
        )
    }

    /// Rephase so the first nonzero amplitude is real and positive.
    pub fn canonical_phase(&self) -> Self {
        let first = self
            .amps
            .iter()
            .find(|a| a.norm_sqr() > NULL_OUTCOME_TOL)
            .copied()
            .unwrap_or(C64::new(1.0, 0.0));
        let phase = first / first.norm();
        let inv = phase.conj();
        Self {
            n_qubits: self.n_qubits,
            amps: self.amps.iter().map(|a| a * inv).collect(),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
