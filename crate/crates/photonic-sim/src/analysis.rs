//! Polarization analysis stations: half- and quarter-wave plate Jones
//! matrices composed per exit mode, followed by a polarizing beam splitter
//! whose transmitted port feeds the "H" detector.

use num_complex::Complex64 as C64;
use qstate_core::{PureState, Unitary2};

use crate::fock::FockVector;
use crate::mode::EXIT_MODES;
use crate::Result;

/// Half-wave plate with fast axis at `theta` radians from horizontal.
pub fn hwp(theta: f64) -> Unitary2 {
    let c = (2.0 * theta).cos();
    let s = (2.0 * theta).sin();
    Unitary2::new([
        [C64::new(c, 0.0), C64::new(s, 0.0)],
        [C64::new(s, 0.0), C64::new(-c, 0.0)],
    ])
    .expect("HWP Jones matrix is unitary")
}

/// Quarter-wave plate with fast axis at `theta` radians from horizontal.
pub fn qwp(theta: f64) -> Unitary2 {
    let c = theta.cos();
    let s = theta.sin();
    let phase = C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
    let cross = C64::new(1.0, -1.0) * s * c;
    Unitary2::new([
        [
            phase * C64::new(c * c, s * s),
            phase * cross,
        ],
        [
            phase * cross,
            phase * C64::new(s * s, c * c),
        ],
    ])
    .expect("QWP Jones matrix is unitary")
}

/// Wave-plate angle pairs (degrees) whose composite analyzes the named
/// standard basis: H/V, D/A, or L/R.
pub fn standard_waveplate_angles(basis: &str) -> Option<(f64, f64)> {
    match basis {
        "hv" => Some((0.0, 0.0)),
        "da" => Some((22.5, 0.0)),
        "lr" => Some((0.0, -45.0)),
        _ => None,
    }
}

/// One polarization unitary per exit mode, in the fixed exit order
/// A1, A2, A3, B1, B2, B3. A photon in analysis state `psi` exits the
/// transmitted ("H") port: the stored matrix maps `psi` to `|H>`.
#[derive(Clone, Debug)]
pub struct AnalysisSetting {
    per_mode: [Unitary2; 6],
}

impl AnalysisSetting {
    /// Analyze H/V everywhere.
    pub fn identity() -> Self {
        Self {
            per_mode: std::array::from_fn(|_| Unitary2::identity()),
        }
    }

    /// The same analysis unitary at every station.
    pub fn uniform(u: &Unitary2) -> Self {
        Self {
            per_mode: std::array::from_fn(|_| u.clone()),
        }
    }

    pub fn from_matrices(per_mode: [Unitary2; 6]) -> Self {
        Self { per_mode }
    }

    /// Analyze the orthonormal pair (psi, psi_bar) at one station: the
    /// station matrix has rows `<psi|` and `<psi_bar|`.
    pub fn set_station_basis(&mut self, exit_position: usize, psi: &PureState, psi_bar: &PureState) -> Result<()> {
        self.per_mode[exit_position] = Unitary2::from_basis_rows(psi, psi_bar)?;
        Ok(())
    }

    /// Build from per-station (HWP, QWP) angles in degrees.
    ///
    /// The composite `QWP(q) * HWP(h)` is port-phase canonicalized (each row
    /// rescaled to a real-positive leading entry); port phases are
    /// unobservable behind photon-counting detectors, and canonicalizing
    /// makes the post-analysis frame coincide with the analyzed basis
    /// exactly.
    pub fn from_waveplate_angles(angles_deg: &[(f64, f64); 6]) -> Self {
        let per_mode = std::array::from_fn(|i| {
            let (h_deg, q_deg) = angles_deg[i];
            let composite = qwp(q_deg.to_radians()).mul(&hwp(h_deg.to_radians()));
            canonical_port_phases(&composite)
        });
        Self { per_mode }
    }

    pub fn station(&self, exit_position: usize) -> &Unitary2 {
        &self.per_mode[exit_position]
    }
}

/// Rescale each row by a unit phase so its first non-negligible entry is
/// real positive.
fn canonical_port_phases(u: &Unitary2) -> Unitary2 {
    let m = u.matrix();
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for (row, out_row) in m.iter().zip(out.iter_mut()) {
        let lead = if row[0].norm() > 1e-9 { row[0] } else { row[1] };
        let phase = (lead / lead.norm()).conj();
        out_row[0] = row[0] * phase;
        out_row[1] = row[1] * phase;
    }
    Unitary2::new(out).expect("rephasing preserves unitarity")
}

/// Rotate the polarization of every exit mode by its station matrix.
pub fn apply_analysis(fv: &FockVector, setting: &AnalysisSetting) -> FockVector {
    let mut out = fv.clone();
    for (pos, spatial) in EXIT_MODES.iter().enumerate() {
        out = out.mix_polarization(*spatial, setting.station(pos));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use singlet_family::BasisPair;

    fn max_entry_diff(a: &Unitary2, b: &Unitary2) -> f64 {
        let (ma, mb) = (a.matrix(), b.matrix());
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((ma[i][j] - mb[i][j]).norm());
            }
        }
        worst
    }

    #[test]
    fn wave_plates_are_unitary() {
        for angle in [0.0, 0.2, 0.5, 1.1] {
            let h = hwp(angle);
            let q = qwp(angle);
            assert!((h.det().norm() - 1.0).abs() < 1e-12);
            assert!((q.det().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hwp_at_22_5_degrees_analyzes_the_diagonal_basis() {
        let da = BasisPair::da();
        let expected = Unitary2::from_basis_rows(da.psi(), da.psi_bar()).unwrap();
        let (h_deg, q_deg) = standard_waveplate_angles("da").unwrap();
        let setting = AnalysisSetting::from_waveplate_angles(&[(h_deg, q_deg); 6]);
        assert!(max_entry_diff(setting.station(0), &expected) < 1e-12);
    }

    #[test]
    fn standard_angle_recipes_reach_all_three_bases() {
        for (name, pair) in [
            ("hv", BasisPair::hv()),
            ("da", BasisPair::da()),
            ("lr", BasisPair::lr()),
        ] {
            let (h_deg, q_deg) = standard_waveplate_angles(name).unwrap();
            let setting = AnalysisSetting::from_waveplate_angles(&[(h_deg, q_deg); 6]);
            let expected = Unitary2::from_basis_rows(pair.psi(), pair.psi_bar()).unwrap();
            assert!(
                max_entry_diff(setting.station(0), &expected) < 1e-12,
                "basis {name}"
            );
        }
    }

    #[test]
    fn identity_setting_leaves_states_unchangedesque() {
        let fv = FockVector::vacuum(2);
        let out = apply_analysis(&fv, &AnalysisSetting::identity());
        assert_eq!(out.len(), 1);
        assert!((out.total_weight() - 1.0).abs() < 1e-15);
    }
}
