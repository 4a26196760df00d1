//! Density matrices for mixed preparations and lossy conditionals.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::pure::PureState;
use crate::unitary::Unitary2;
use crate::{QStateError, Result, ALGEBRAIC_TOL};

/// Floor below which an eigenvalue counts as negative rather than rounding
/// noise.
const POSITIVITY_FLOOR: f64 = -1e-10;

/// A Hermitian, trace-one, positive-semidefinite operator on n qubits,
/// stored row-major in the computational basis.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    n_qubits: usize,
    dim: usize,
    entries: Vec<C64>,
}

impl DensityMatrix {
    /// Build from explicit entries, checking Hermiticity, trace and
    /// positivity.
    pub fn new(n_qubits: usize, entries: Vec<C64>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(QStateError::NoQubits);
        }
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(QStateError::DimensionMismatch {
                n_qubits,
                len: entries.len(),
            });
        }
        let rho = Self {
            n_qubits,
            dim,
            entries,
        };
        for i in 0..dim {
            for j in i..dim {
                if (rho.entry(i, j) - rho.entry(j, i).conj()).norm() > ALGEBRAIC_TOL {
                    return Err(QStateError::NotHermitian);
                }
            }
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > ALGEBRAIC_TOL || trace.im.abs() > ALGEBRAIC_TOL {
            return Err(QStateError::BadTrace { trace: trace.re });
        }
        if let Some(&min) = rho
            .eigenvalues()
            .first()
            .filter(|&&min| min < POSITIVITY_FLOOR)
        {
            return Err(QStateError::NegativeEigenvalue { value: min });
        }
        Ok(rho)
    }

    /// The rank-one projector `|s><s|`.
    pub fn from_pure(s: &PureState) -> Self {
        let dim = s.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(s.amplitude(i) * s.amplitude(j).conj());
            }
        }
        Self {
            n_qubits: s.n_qubits(),
            dim,
            entries,
        }
    }

    /// Convex mixture of pure states. Weights must sum to one.
    pub fn from_mixture(parts: &[(f64, PureState)]) -> Result<Self> {
        let total: f64 = parts.iter().map(|(w, _)| *w).sum();
        if (total - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(QStateError::BadTrace { trace: total });
        }
        let n = parts
            .first()
            .map(|(_, s)| s.n_qubits())
            .ok_or(QStateError::NoQubits)?;
        let dim = 1usize << n;
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        for (w, s) in parts {
            if s.n_qubits() != n {
                return Err(QStateError::QubitCountMismatch {
                    left: n,
                    right: s.n_qubits(),
                });
            }
            for i in 0..dim {
                for j in 0..dim {
                    entries[i * dim + j] += w * s.amplitude(i) * s.amplitude(j).conj();
                }
            }
        }
        Ok(Self {
            n_qubits: n,
            dim,
            entries,
        })
    }

    /// Accumulate unnormalized outer products `sum_i v_i v_i^dagger` and
    /// normalize by the total weight. Used for conditional mixtures where the
    /// branch vectors carry their own amplitudes.
    pub fn from_unnormalized_branches(n_qubits: usize, branches: &[Vec<C64>]) -> Result<Self> {
        let dim = 1usize << n_qubits;
        let mut entries = vec![C64::new(0.0, 0.0); dim * dim];
        let mut weight = 0.0;
        for v in branches {
            if v.len() != dim {
                return Err(QStateError::DimensionMismatch {
                    n_qubits,
                    len: v.len(),
                });
            }
            weight += v.iter().map(|a| a.norm_sqr()).sum::<f64>();
            for i in 0..dim {
                for j in 0..dim {
                    entries[i * dim + j] += v[i] * v[j].conj();
                }
            }
        }
        if weight < crate::NULL_OUTCOME_TOL {
            return Err(QStateError::BadTrace { trace: weight });
        }
        let scale = weight.recip();
        for e in entries.iter_mut() {
            *e *= scale;
        }
        Ok(Self {
            n_qubits,
            dim,
            entries,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Trace out every qubit not listed in `keep`; kept qubits stay in their
    /// original relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(QStateError::EmptyKeepSet);
        }
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let mut seen = std::collections::BTreeSet::new();
        for &q in &keep {
            if q >= self.n_qubits {
                return Err(QStateError::IndexOutOfRange {
                    index: q,
                    n_qubits: self.n_qubits,
                });
            }
            if !seen.insert(q) {
                return Err(QStateError::DuplicateIndex { index: q });
            }
        }
        let traced: Vec<usize> = (0..self.n_qubits).filter(|q| !keep.contains(q)).collect();
        let kn = keep.len();
        let kdim = 1usize << kn;
        let tdim = 1usize << traced.len();

        // compose a full index from kept bits x and traced bits z
        let compose = |x: usize, z: usize| -> usize {
            let mut full = 0usize;
            for (pos, &q) in keep.iter().enumerate() {
                if (x >> (kn - 1 - pos)) & 1 == 1 {
                    full |= 1 << (self.n_qubits - 1 - q);
                }
            }
            for (pos, &q) in traced.iter().enumerate() {
                if (z >> (traced.len() - 1 - pos)) & 1 == 1 {
                    full |= 1 << (self.n_qubits - 1 - q);
                }
            }
            full
        };

        let mut entries = vec![C64::new(0.0, 0.0); kdim * kdim];
        for x in 0..kdim {
            for y in 0..kdim {
                let mut acc = C64::new(0.0, 0.0);
                for z in 0..tdim {
                    acc += self.entry(compose(x, z), compose(y, z));
                }
                entries[x * kdim + y] = acc;
            }
        }
        Ok(DensityMatrix {
            n_qubits: kn,
            dim: kdim,
            entries,
        })
    }

    /// Fidelity `<target|rho|target>` with a pure target.
    pub fn fidelity_with_pure(&self, target: &PureState) -> Result<f64> {
        if target.n_qubits() != self.n_qubits {
            return Err(QStateError::QubitCountMismatch {
                left: self.n_qubits,
                right: target.n_qubits(),
            });
        }
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += target.amplitude(i).conj() * self.entry(i, j) * target.amplitude(j);
            }
        }
        Ok(acc.re)
    }

    /// Conjugate by the same single-qubit unitary on every qubit:
    /// `u^{tensor n} rho u^{dagger tensor n}`.
    pub fn conjugate_product_unitary(&self, u: &Unitary2) -> Self {
        let mut entries = self.entries.clone();
        for q in 0..self.n_qubits {
            let bit = 1 << (self.n_qubits - 1 - q);
            let m = u.matrix();
            // rows
            for i in 0..self.dim {
                if i & bit == 0 {
                    for j in 0..self.dim {
                        let a0 = entries[i * self.dim + j];
                        let a1 = entries[(i | bit) * self.dim + j];
                        entries[i * self.dim + j] = m[0][0] * a0 + m[0][1] * a1;
                        entries[(i | bit) * self.dim + j] = m[1][0] * a0 + m[1][1] * a1;
                    }
                }
            }
            // columns (right-multiply by u^dagger)
            for j in 0..self.dim {
                if j & bit == 0 {
                    for i in 0..self.dim {
                        let a0 = entries[i * self.dim + j];
                        let a1 = entries[i * self.dim + (j | bit)];
                        entries[i * self.dim + j] = a0 * m[0][0].conj() + a1 * m[0][1].conj();
                        entries[i * self.dim + (j | bit)] =
                            a0 * m[1][0].conj() + a1 * m[1][1].conj();
                    }
                }
            }
        }
        Self {
            n_qubits: self.n_qubits,
            dim: self.dim,
            entries,
        }
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_fn(self.dim, self.dim, |i, j| self.entry(i, j));
        let mut vals: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// Purity `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self.entry(i, j) * self.entry(j, i)).re;
            }
        }
        acc
    }

    /// Largest entrywise absolute difference, for invariance checks.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn two_qubit_singlet() -> PureState {
        PureState::new(
            2,
            vec![
                c(0.0, 0.0),
                c(FRAC_1_SQRT_2, 0.0),
                c(-FRAC_1_SQRT_2, 0.0),
                c(0.0, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trace_over_half_of_singlet_is_maximally_mixed() {
        let rho = DensityMatrix::from_pure(&two_qubit_singlet());
        let reduced = rho.partial_trace(&[1]).unwrap();
        assert!((reduced.entry(0, 0) - c(0.5, 0.0)).norm() < 1e-12);
        assert!((reduced.entry(1, 1) - c(0.5, 0.0)).norm() < 1e-12);
        assert!(reduced.entry(0, 1).norm() < 1e-12);
        assert!((reduced.trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn keeping_all_qubits_returns_the_input() {
        let rho = DensityMatrix::from_pure(&two_qubit_singlet());
        let same = rho.partial_trace(&[0, 1]).unwrap();
        assert!(rho.max_abs_diff(&same) < 1e-14);
    }

    #[test]
    fn empty_keep_set_is_rejected() {
        let rho = DensityMatrix::from_pure(&two_qubit_singlet());
        assert!(rho.partial_trace(&[]).is_err());
    }

    #[test]
    fn fidelity_of_pure_states() {
        let h = PureState::basis_state(1, 0);
        let v = PureState::basis_state(1, 1);
        let rho_h = DensityMatrix::from_pure(&h);
        assert!((rho_h.fidelity_with_pure(&h).unwrap() - 1.0).abs() < 1e-12);
        assert!(rho_h.fidelity_with_pure(&v).unwrap().abs() < 1e-12);
    }

    #[test]
    fn fidelity_of_maximally_mixed_with_any_pure_is_half() {
        let h = PureState::basis_state(1, 0);
        let v = PureState::basis_state(1, 1);
        let mixed = DensityMatrix::from_mixture(&[(0.5, h), (0.5, v)]).unwrap();
        let d = PureState::single_qubit(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!((mixed.fidelity_with_pure(&d).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fidelity_rejects_dimension_mismatch() {
        let rho = DensityMatrix::from_pure(&two_qubit_singlet());
        let h = PureState::basis_state(1, 0);
        assert!(rho.fidelity_with_pure(&h).is_err());
    }

    #[test]
    fn construction_rejects_non_hermitian() {
        let mut entries = vec![c(0.0, 0.0); 4];
        entries[0] = c(0.5, 0.0);
        entries[1] = c(0.5, 0.0);
        entries[3] = c(0.5, 0.0);
        assert!(DensityMatrix::new(1, entries).is_err());
    }

    #[test]
    fn construction_rejects_negative_operator() {
        // Hermitian, trace 1, but with eigenvalues 1.5 and -0.5.
        let entries = vec![c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)];
        assert!(matches!(
            DensityMatrix::new(1, entries),
            Err(QStateError::NegativeEigenvalue { .. })
        ));
    }

    #[test]
    fn eigenvalues_of_hermitian_complex_matrix() {
        // [[0, i], [-i, 0]] has eigenvalues -1 and 1; mix with identity to
        // make a valid state: rho = (I + sigma_y)/2 with eigenvalues 0, 1.
        let entries = vec![c(0.5, 0.0), c(0.0, 0.5), c(0.0, -0.5), c(0.5, 0.0)];
        let rho = DensityMatrix::new(1, entries).unwrap();
        let vals = rho.eigenvalues();
        assert!(vals[0].abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }
}
