//! Product projectors: one single-qubit target state per measured qubit.

use crate::pure::PureState;
use crate::{QStateError, Result};

/// A local product measurement outcome: qubit `index` is projected onto
/// `state`. Indices are distinct; unlisted qubits are left untouched.
#[derive(Clone, Debug)]
pub struct ProductProjector {
    targets: Vec<(usize, PureState)>,
}

impl ProductProjector {
    pub fn new(targets: Vec<(usize, PureState)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for (index, state) in &targets {
            if state.n_qubits() != 1 {
                return Err(QStateError::NotSingleQubit { index: *index });
            }
            if !seen.insert(*index) {
                return Err(QStateError::DuplicateIndex { index: *index });
            }
        }
        let mut targets = targets;
        targets.sort_by_key(|(i, _)| *i);
        Ok(Self { targets })
    }

    /// Targets sorted by qubit index.
    pub fn targets(&self) -> &[(usize, PureState)] {
        &self.targets
    }

    pub fn indices(&self) -> Vec<usize> {
        self.targets.iter().map(|(i, _)| *i).collect()
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }
}

/// Result of projecting a state onto a [`ProductProjector`].
#[derive(Clone, Debug)]
pub struct Projection {
    /// Squared norm of the projected component.
    pub probability: f64,
    /// Renormalized state of the unmeasured qubits; `None` on a null outcome
    /// or when every qubit was measured.
    pub conditional: Option<PureState>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn rejects_duplicate_indices() {
        let v = PureState::basis_state(1, 1);
        assert!(ProductProjector::new(vec![(0, v.clone()), (0, v)]).is_err());
    }

    #[test]
    fn rejects_multi_qubit_targets() {
        let vv = PureState::new(
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        assert!(ProductProjector::new(vec![(0, vv)]).is_err());
    }
}
