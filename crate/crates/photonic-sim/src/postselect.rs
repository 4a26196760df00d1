//! Coincidence post-selection: project coherently onto exactly one photon
//! per listed exit mode and read the result as polarization qubits.

use num_complex::Complex64 as C64;
use qstate_core::PureState;

use crate::fock::FockVector;
use crate::mode::{OpticalMode, Pol, Spatial};

/// Project onto the subspace with exactly one photon in each listed spatial
/// mode (either polarization) and zero photons everywhere else, mapping the
/// surviving component to a qubit register (qubit i = modes[i], H = 0,
/// V = 1, in the current polarization frame).
///
/// Returns the post-selection probability (relative to the captured weight
/// of the input) and the renormalized qubit state, or `None` on a
/// zero-probability subspace.
pub fn postselect_one_photon_per_mode(
    fv: &FockVector,
    modes: &[Spatial],
) -> Option<(f64, PureState)> {
    let n = modes.len();
    assert!(n >= 1, "post-selection needs at least one mode");
    let h_idx: Vec<usize> = modes
        .iter()
        .map(|&s| OpticalMode::new(s, Pol::H).index())
        .collect();
    let v_idx: Vec<usize> = modes
        .iter()
        .map(|&s| OpticalMode::new(s, Pol::V).index())
        .collect();
    let listed: std::collections::BTreeSet<usize> =
        h_idx.iter().chain(v_idx.iter()).copied().collect();

    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
    for (occ, amp) in fv.terms() {
        // unlisted modes must be empty
        if occ
            .iter()
            .enumerate()
            .any(|(i, &c)| c > 0 && !listed.contains(&i))
        {
            continue;
        }
        let mut index = 0usize;
        let mut good = true;
        for q in 0..n {
            match (occ[h_idx[q]], occ[v_idx[q]]) {
                (1, 0) => {}
                (0, 1) => index |= 1 << (n - 1 - q),
                _ => {
                    good = false;
                    break;
                }
            }
        }
        if good {
            amps[index] += amp;
        }
    }
    let probability: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if probability < 1e-15 {
        return None;
    }
    let scale = probability.sqrt().recip();
    let state = PureState::new(n, amps.into_iter().map(|a| a * scale).collect())
        .expect("renormalized projection");
    Some((probability, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode::MODE_COUNT;

    #[test]
    fn vacuum_input_yields_null() {
        let fv = FockVector::vacuum(2);
        assert!(postselect_one_photon_per_mode(&fv, &[Spatial::A1, Spatial::B1]).is_none());
    }

    #[test]
    fn single_pair_maps_to_qubits() {
        let mut fv = FockVector::empty(2);
        let mut occ = [0u8; MODE_COUNT];
        occ[OpticalMode::new(Spatial::A1, Pol::H).index()] = 1;
        occ[OpticalMode::new(Spatial::B1, Pol::V).index()] = 1;
        fv.add_term(occ, C64::new(0.6, 0.0)).unwrap();
        // a term with two photons in one listed mode is excluded
        let mut bad = [0u8; MODE_COUNT];
        bad[OpticalMode::new(Spatial::A1, Pol::H).index()] = 2;
        fv.add_term(bad, C64::new(0.8, 0.0)).unwrap();
        let (p, state) =
            postselect_one_photon_per_mode(&fv, &[Spatial::A1, Spatial::B1]).unwrap();
        assert!((p - 0.36).abs() < 1e-12);
        assert!((state.amplitude(0b01).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn photons_outside_the_listed_modes_disqualify_a_term() {
        let mut fv = FockVector::empty(4);
        let mut occ = [0u8; MODE_COUNT];
        occ[OpticalMode::new(Spatial::A1, Pol::H).index()] = 1;
        occ[OpticalMode::new(Spatial::B1, Pol::H).index()] = 1;
        occ[OpticalMode::new(Spatial::B3, Pol::V).index()] = 1;
        fv.add_term(occ, C64::new(1.0, 0.0)).unwrap();
        assert!(postselect_one_photon_per_mode(&fv, &[Spatial::A1, Spatial::B1]).is_none());
    }
}
