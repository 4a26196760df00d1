//! The beam-splitter fan-out of Fig.-1 style: each source arm passes a
//! compensating birefringent element and two consecutive polarization-
//! independent splitters, dividing it over three exit modes.

use num_complex::Complex64 as C64;

use crate::fock::FockVector;
use crate::mode::{OpticalMode, Pol, Spatial};
use crate::{PhotonicError, Result};

/// Apply one polarization-independent beam splitter: every photon in the
/// `input` spatial mode routes to `out_t` with amplitude `t` or `out_r` with
/// amplitude `sqrt(1 - t^2)` (real convention, no reflection phase - the
/// apparatus compensates splitter phases with birefringent optics).
pub fn apply_beam_splitter(
    fv: &FockVector,
    input: Spatial,
    out_t: Spatial,
    out_r: Spatial,
    t: f64,
) -> Result<FockVector> {
    if out_t == out_r {
        return Err(PhotonicError::SameOutputPorts);
    }
    let mut out = fv.clone();
    for pol in [Pol::H, Pol::V] {
        out = out.split_single_mode(
            OpticalMode::new(input, pol),
            OpticalMode::new(out_t, pol),
            OpticalMode::new(out_r, pol),
            t,
        )?;
    }
    Ok(out)
}

/// Expand a 2- or 4-entry transmissivity list to per-arm pairs
/// `[(t1_a, t2_a), (t1_b, t2_b)]`.
fn arm_splittings(splittings: &[f64]) -> Result<[(f64, f64); 2]> {
    match splittings {
        [t1, t2] => Ok([(*t1, *t2), (*t1, *t2)]),
        [t1a, t2a, t1b, t2b] => Ok([(*t1a, *t2a), (*t1b, *t2b)]),
        other => Err(PhotonicError::BadSplittings(other.len())),
    }
}

pub fn default_splittings() -> Vec<f64> {
    vec![std::f64::consts::FRAC_1_SQRT_2; 2]
}

/// Fan each source arm out into its three exit modes.
///
/// Arm A first passes the compensating birefringent element (a half-wave
/// phase on its V polarization); this fixes the inter-polarization sign the
/// source terms need so that the post-selected exits carry the generalized
/// singlets at `phi = 0`. Then splitter 1 sends `t` into exit 1 and the
/// remainder into splitter 2, which divides it over exits 2 and 3.
///
/// `splittings` holds two transmissivities applied to both arms, or four
/// for per-arm control; the default is 50/50 everywhere. Single-photon exit
/// amplitudes are `(t1, r1 t2, r1 r2)`.
pub fn build_fanout_network(fv: &FockVector, splittings: &[f64]) -> Result<FockVector> {
    let arms = arm_splittings(splittings)?;
    let mut out = fv.polarization_phase(Spatial::A, C64::new(1.0, 0.0), C64::new(-1.0, 0.0));
    let plan = [
        (Spatial::A, Spatial::A1, Spatial::A2, Spatial::A3, arms[0]),
        (Spatial::B, Spatial::B1, Spatial::B2, Spatial::B3, arms[1]),
    ];
    for (src, exit1, exit2, exit3, (t1, t2)) in plan {
        out = apply_beam_splitter(&out, src, exit1, src, t1)?;
        out = apply_beam_splitter(&out, src, exit2, exit3, t2)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode::MODE_COUNT;
    use crate::pdc::{build_pdc_state, PdcConfig};

    #[test]
    fn single_photon_fanout_probabilities_are_half_quarter_quarter() {
        let mut fv = FockVector::empty(2);
        let mut occ = [0u8; MODE_COUNT];
        occ[OpticalMode::new(Spatial::A, Pol::H).index()] = 1;
        fv.add_term(occ, C64::new(1.0, 0.0)).unwrap();
        let out = build_fanout_network(&fv, &default_splittings()).unwrap();
        let prob = |s: Spatial| {
            let mut occ = [0u8; MODE_COUNT];
            occ[OpticalMode::new(s, Pol::H).index()] = 1;
            out.amplitude(&occ).norm_sqr()
        };
        assert!((prob(Spatial::A1) - 0.5).abs() < 1e-12);
        assert!((prob(Spatial::A2) - 0.25).abs() < 1e-12);
        assert!((prob(Spatial::A3) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn fanout_preserves_norm_of_the_full_source_state() {
        let cfg = PdcConfig::default_operating_point(3);
        let fv = build_pdc_state(&cfg).unwrap();
        let before = fv.total_weight();
        let out = build_fanout_network(&fv, &default_splittings()).unwrap();
        assert!((out.total_weight() - before).abs() < 1e-12);
        assert!(out.source_modes_empty());
    }

    #[test]
    fn splittings_list_length_is_validated() {
        let fv = FockVector::vacuum(2);
        assert!(build_fanout_network(&fv, &[0.5]).is_err());
        assert!(build_fanout_network(&fv, &[0.5, 0.5, 0.5]).is_err());
        assert!(build_fanout_network(&fv, &[0.8, 0.6, 0.7, 0.5]).is_ok());
    }

    #[test]
    fn beam_splitter_preserves_photon_number_per_term() {
        let cfg = PdcConfig::new(0.4, 0.0, 2).unwrap();
        let fv = build_pdc_state(&cfg).unwrap();
        let out = apply_beam_splitter(&fv, Spatial::A, Spatial::A1, Spatial::A, 0.7).unwrap();
        for (occ, _) in out.terms() {
            let total: u32 = occ.iter().map(|&n| n as u32).sum();
            assert!(total.is_multiple_of(2) && total <= 4);
        }
        assert!((out.total_weight() - fv.total_weight()).abs() < 1e-12);
    }
}
