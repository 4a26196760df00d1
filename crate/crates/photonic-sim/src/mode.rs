//! Optical mode labels: two source arms, six exit modes, two polarizations.

use serde::{Deserialize, Serialize};

/// Spatial mode labels. `A`/`B` are the two PDC emission arms; the numbered
/// labels are the exit modes after the fan-out (A1-A3 are Alice's stations,
/// B1-B3 her partners').
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spatial {
    A,
    B,
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pol {
    H,
    V,
}

/// A concrete bosonic mode: spatial label plus polarization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpticalMode {
    pub spatial: Spatial,
    pub pol: Pol,
}

pub const SPATIAL_COUNT: usize = 8;
pub const MODE_COUNT: usize = 16;
pub const DETECTOR_COUNT: usize = 12;

pub const EXIT_MODES: [Spatial; 6] = [
    Spatial::A1,
    Spatial::A2,
    Spatial::A3,
    Spatial::B1,
    Spatial::B2,
    Spatial::B3,
];
pub const ALICE_EXITS: [Spatial; 3] = [Spatial::A1, Spatial::A2, Spatial::A3];
pub const PARTNER_EXITS: [Spatial; 3] = [Spatial::B1, Spatial::B2, Spatial::B3];

impl Spatial {
    pub fn index(self) -> usize {
        match self {
            Spatial::A => 0,
            Spatial::B => 1,
            Spatial::A1 => 2,
            Spatial::A2 => 3,
            Spatial::A3 => 4,
            Spatial::B1 => 5,
            Spatial::B2 => 6,
            Spatial::B3 => 7,
        }
    }

    pub fn is_exit(self) -> bool {
        !matches!(self, Spatial::A | Spatial::B)
    }

    /// Position within the fixed exit ordering A1, A2, A3, B1, B2, B3.
    pub fn exit_position(self) -> Option<usize> {
        EXIT_MODES.iter().position(|&m| m == self)
    }
}

impl OpticalMode {
    pub fn new(spatial: Spatial, pol: Pol) -> Self {
        Self { spatial, pol }
    }

    /// Index into occupation vectors: spatial index * 2 + polarization.
    pub fn index(self) -> usize {
        self.spatial.index() * 2 + if self.pol == Pol::V { 1 } else { 0 }
    }
}

/// Detector index in the fixed order a1H, a1V, a2H, ..., b3V.
pub fn detector_index(spatial: Spatial, pol: Pol) -> usize {
    let pos = spatial
        .exit_position()
        .expect("detectors sit on exit modes only");
    pos * 2 + if pol == Pol::V { 1 } else { 0 }
}

/// The (spatial, pol) pair behind a detector index.
pub fn detector_mode(index: usize) -> OpticalMode {
    assert!(index < DETECTOR_COUNT);
    OpticalMode::new(
        EXIT_MODES[index / 2],
        if index % 2 == 1 { Pol::V } else { Pol::H },
    )
}

/// Human-readable detector name, e.g. `a1H`.
pub fn detector_name(index: usize) -> String {
    let m = detector_mode(index);
    format!(
        "{}{}",
        format!("{:?}", m.spatial).to_lowercase(),
        if m.pol == Pol::V { "V" } else { "H" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detector_order_is_a1h_first_b3v_last() {
        assert_eq!(detector_index(Spatial::A1, Pol::H), 0);
        assert_eq!(detector_index(Spatial::A1, Pol::V), 1);
        assert_eq!(detector_index(Spatial::B3, Pol::V), 11);
        assert_eq!(detector_name(0), "a1H");
        assert_eq!(detector_name(11), "b3V");
    }

    #[test]
    fn mode_indices_are_distinct() {
        let mut seen = std::collections::BTreeSet::new();
        for s in [
            Spatial::A,
            Spatial::B,
            Spatial::A1,
            Spatial::A2,
            Spatial::A3,
            Spatial::B1,
            Spatial::B2,
            Spatial::B3,
        ] {
            for pol in [Pol::H, Pol::V] {
                assert!(seen.insert(OpticalMode::new(s, pol).index()));
            }
        }
        assert_eq!(seen.len(), MODE_COUNT);
    }
}
