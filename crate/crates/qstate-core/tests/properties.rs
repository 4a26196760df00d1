//! Property tests for the state algebra: norm preservation under product
//! unitaries and completeness of product-basis projections.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qstate_core::{random_special_unitary, ProductProjector, PureState};

fn random_state(n_qubits: usize, seeds: &[f64]) -> PureState {
    let dim = 1usize << n_qubits;
    let amps: Vec<C64> = (0..dim)
        .map(|i| {
            let re = seeds[(2 * i) % seeds.len()];
            let im = seeds[(2 * i + 1) % seeds.len()];
            C64::new(re, im)
        })
        .collect();
    PureState::normalized(n_qubits, amps).unwrap()
}

fn seed_vec() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..1.0, 16).prop_filter("nonzero", |v| {
        v.iter().map(|x| x * x).sum::<f64>() > 1e-6
    })
}

proptest! {
    #[test]
    fn product_unitaries_preserve_norm(seeds in seed_vec(), n in 1usize..4, seed in 0u64..1000) {
        let state = random_state(n, &seeds);
        let u = random_special_unitary(seed);
        let rotated = state.apply_product_unitary(&u);
        prop_assert!((rotated.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_outcomes_are_complete(seeds in seed_vec(), seed in 0u64..1000) {
        // Project qubits 0 and 2 of a 3-qubit state onto a random orthonormal
        // basis pair; the four outcome probabilities must sum to one.
        let state = random_state(3, &seeds);
        let u = random_special_unitary(seed);
        let psi = PureState::single_qubit(u.entry(0, 0), u.entry(1, 0)).unwrap();
        let psi_bar = PureState::single_qubit(u.entry(0, 1), u.entry(1, 1)).unwrap();
        let mut total = 0.0;
        for bits in 0..4u8 {
            let pick = |b: u8| if b == 0 { psi.clone() } else { psi_bar.clone() };
            let proj = ProductProjector::new(vec![
                (0, pick(bits >> 1 & 1)),
                (2, pick(bits & 1)),
            ]).unwrap();
            total += state.project(&proj).unwrap().probability;
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tensor_norm_is_product_of_norms(a in seed_vec(), b in seed_vec()) {
        let left = random_state(2, &a);
        let right = random_state(1, &b);
        let combined = left.tensor(&right);
        prop_assert!((combined.norm() - 1.0).abs() < 1e-12);
    }
}
