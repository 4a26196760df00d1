//! Rotational-invariance suites for the generalized singlets and the
//! basis-independence of the decomposition oracle.

use qstate_core::{random_special_unitary, DensityMatrix};
use singlet_family::{decompose_singlet, make_singlet, make_w3, BasisPair};

#[test]
fn singlets_are_invariant_under_100_random_su2_rotations() {
    for k in [2, 4, 6] {
        let singlet = make_singlet(k).unwrap();
        for seed in 0..100u64 {
            let u = random_special_unitary(seed);
            let rotated = singlet.apply_product_unitary(&u);
            let dev = rotated.distance(&singlet);
            assert!(
                dev < 1e-10,
                "k={k} seed={seed}: vector deviation {dev} after rotation"
            );
        }
    }
}

#[test]
fn reduced_states_are_invariant_under_local_rotations() {
    // Tr_S |S_k><S_k| commutes with u^{(x) keep} for special unitaries u.
    let subsets: [(usize, &[usize]); 6] = [
        (2, &[0]),
        (4, &[0, 1]),
        (4, &[1, 3]),
        (6, &[3, 4, 5]),
        (6, &[0, 2, 4]),
        (6, &[1, 5]),
    ];
    for (k, keep) in subsets {
        let rho = DensityMatrix::from_pure(&make_singlet(k).unwrap());
        let reduced = rho.partial_trace(keep).unwrap();
        for seed in 200..220u64 {
            let u = random_special_unitary(seed);
            let conjugated = reduced.conjugate_product_unitary(&u);
            let dev = reduced.max_abs_diff(&conjugated);
            assert!(
                dev < 1e-10,
                "k={k} keep={keep:?} seed={seed}: deviation {dev}"
            );
        }
    }
}

#[test]
fn partial_trace_is_basis_independent() {
    // Conjugating the full state by u^{(x) k} before tracing gives the same
    // reduced matrix as tracing first and conjugating the kept part.
    for (k, keep) in [(4usize, vec![2usize, 3]), (6, vec![3, 4, 5])] {
        let singlet = make_singlet(k).unwrap();
        for seed in 300..310u64 {
            let u = random_special_unitary(seed);
            let rotated_first = DensityMatrix::from_pure(&singlet.apply_product_unitary(&u))
                .partial_trace(&keep)
                .unwrap();
            let traced_first = DensityMatrix::from_pure(&singlet)
                .partial_trace(&keep)
                .unwrap()
                .conjugate_product_unitary(&u);
            let dev = rotated_first.max_abs_diff(&traced_first);
            assert!(dev < 1e-10, "k={k} seed={seed}: deviation {dev}");
        }
    }
}

#[test]
fn traced_half_of_six_photon_singlet_has_flat_rank_four_spectrum() {
    let rho = DensityMatrix::from_pure(&make_singlet(6).unwrap());
    let reduced = rho.partial_trace(&[3, 4, 5]).unwrap();
    let eigen = reduced.eigenvalues();
    for v in &eigen[..4] {
        assert!(v.abs() < 1e-10);
    }
    for v in &eigen[4..] {
        assert!((v - 0.25).abs() < 1e-10);
    }
    // the support is the symmetric subspace: the four named states are
    // eigenvectors with eigenvalue 1/4
    let hv = BasisPair::hv();
    for state in [
        hv.product(&[false, false, false]),
        hv.product(&[true, true, true]),
        make_w3(&hv, false),
        make_w3(&hv, true),
    ] {
        let overlap = reduced.fidelity_with_pure(&state).unwrap();
        assert!((overlap - 0.25).abs() < 1e-10);
    }
}

#[test]
fn decomposition_magnitudes_are_basis_independent() {
    for k in [4usize, 6] {
        let reference = decompose_singlet(k, &BasisPair::hv()).unwrap();
        let mut ref_mags: Vec<f64> = reference
            .branches
            .iter()
            .map(|b| b.coefficient.norm())
            .collect();
        ref_mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for seed in 400..410u64 {
            let u = random_special_unitary(seed);
            let rotated = decompose_singlet(k, &BasisPair::hv().rotated(&u)).unwrap();
            let mut mags: Vec<f64> = rotated
                .branches
                .iter()
                .map(|b| b.coefficient.norm())
                .collect();
            mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(mags.len(), ref_mags.len());
            for (a, b) in mags.iter().zip(&ref_mags) {
                assert!((a - b).abs() < 1e-10, "k={k} seed={seed}");
            }
        }
    }
}

#[test]
fn six_photon_partner_components_live_in_the_symmetric_subspace() {
    for seed in [0u64, 17, 91] {
        let basis = BasisPair::hv().rotated(&random_special_unitary(seed));
        let report = decompose_singlet(6, &basis).unwrap();
        for branch in &report.branches {
            let (weight, projected) = branch.partner.symmetric_projection();
            assert!((weight - 1.0).abs() < 1e-12, "branch {}", branch.label());
            let sym = projected.unwrap();
            assert!(sym.distance(&branch.partner) < 1e-12);
        }
    }
}

#[test]
fn orthogonality_of_the_named_three_qubit_states() {
    for seed in [5u64, 23] {
        let basis = BasisPair::hv().rotated(&random_special_unitary(seed));
        let states = [
            make_w3(&basis, false),
            make_w3(&basis, true),
            basis.product(&[false, false, false]),
            basis.product(&[true, true, true]),
        ];
        for i in 0..states.len() {
            for j in (i + 1)..states.len() {
                assert!(
                    states[i].inner(&states[j]).norm() < 1e-12,
                    "states {i} and {j} overlap"
                );
            }
        }
    }
}

#[test]
fn reconstruction_works_in_rotated_bases() {
    for k in [4usize, 6] {
        let basis = BasisPair::hv().rotated(&random_special_unitary(77));
        let report = decompose_singlet(k, &basis).unwrap();
        assert!((report.reconstruction_fidelity() - 1.0).abs() < 1e-10);
    }
}
