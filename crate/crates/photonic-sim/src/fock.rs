//! Sparse superpositions over photon-occupation states of the 16 optical
//! modes, with the two bosonic primitives every apparatus element reduces
//! to: splitting one mode into two and mixing the two polarizations of one
//! spatial mode.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use qstate_core::Unitary2;

use crate::mode::{OpticalMode, Spatial, MODE_COUNT};
use crate::{PhotonicError, Result};

/// Photon occupation per optical mode, indexed by [`OpticalMode::index`].
pub type Occupation = [u8; MODE_COUNT];

/// Amplitudes below this squared magnitude are dropped after each stage;
/// the dust is orders of magnitude under every stated tolerance.
const PRUNE_TOL: f64 = 1e-30;

/// Factorials up to the largest photon cap we ever hold in one mode.
fn factorial(n: u8) -> f64 {
    const TABLE: [f64; 17] = [
        1.0,
        1.0,
        2.0,
        6.0,
        24.0,
        120.0,
        720.0,
        5040.0,
        40320.0,
        362880.0,
        3628800.0,
        39916800.0,
        479001600.0,
        6227020800.0,
        87178291200.0,
        1307674368000.0,
        20922789888000.0,
    ];
    TABLE[n as usize]
}

fn binomial(n: u8, k: u8) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// A sparse Fock-space vector. Terms iterate in a fixed (lexicographic)
/// order, so reductions are deterministic. The squared-amplitude sum may be
/// below one under truncation or conditioning; the deficit is tracked.
#[derive(Clone, Debug)]
pub struct FockVector {
    terms: BTreeMap<Occupation, C64>,
    photon_cap: u32,
}

impl FockVector {
    pub fn vacuum(photon_cap: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert([0u8; MODE_COUNT], C64::new(1.0, 0.0));
        Self { terms, photon_cap }
    }

    pub fn empty(photon_cap: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            photon_cap,
        }
    }

    pub fn photon_cap(&self) -> u32 {
        self.photon_cap
    }

    /// Add an amplitude to one occupation term.
    pub fn add_term(&mut self, occ: Occupation, amp: C64) -> Result<()> {
        let total: u32 = occ.iter().map(|&n| n as u32).sum();
        if total > self.photon_cap {
            return Err(PhotonicError::PhotonCapExceeded {
                cap: self.photon_cap,
            });
        }
        *self.terms.entry(occ).or_insert(C64::new(0.0, 0.0)) += amp;
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupation, &C64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn amplitude(&self, occ: &Occupation) -> C64 {
        self.terms.get(occ).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Captured squared-amplitude sum.
    pub fn total_weight(&self) -> f64 {
        self.terms.values().map(|a| a.norm_sqr()).sum()
    }

    /// How far the captured weight falls short of a unit vector.
    pub fn deficit(&self) -> f64 {
        (1.0 - self.total_weight()).max(0.0)
    }

    /// Keep only terms with the given total photon number (emission order
    /// `p` corresponds to `2p` photons).
    pub fn restricted_to_total_photons(&self, total: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(occ, _)| occ.iter().map(|&n| n as u32).sum::<u32>() == total)
            .map(|(occ, amp)| (*occ, *amp))
            .collect();
        Self {
            terms,
            photon_cap: self.photon_cap,
        }
    }

    /// Rescale to unit captured weight.
    pub fn renormalized(&self) -> Self {
        let w = self.total_weight();
        assert!(w > 0.0, "cannot normalize an empty vector");
        let s = w.sqrt().recip();
        Self {
            terms: self.terms.iter().map(|(occ, a)| (*occ, a * s)).collect(),
            photon_cap: self.photon_cap,
        }
    }

    /// True when no term occupies the source arms.
    pub fn source_modes_empty(&self) -> bool {
        let a_h = OpticalMode::new(Spatial::A, crate::mode::Pol::H).index();
        let a_v = OpticalMode::new(Spatial::A, crate::mode::Pol::V).index();
        let b_h = OpticalMode::new(Spatial::B, crate::mode::Pol::H).index();
        let b_v = OpticalMode::new(Spatial::B, crate::mode::Pol::V).index();
        self.terms
            .keys()
            .all(|occ| occ[a_h] == 0 && occ[a_v] == 0 && occ[b_h] == 0 && occ[b_v] == 0)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, a| a.norm_sqr() > PRUNE_TOL);
    }

    /// Route every photon of `src` into `dst_t` (amplitude `t`) and `dst_r`
    /// (amplitude `r = sqrt(1 - t^2)`), with bosonic normalization. Either
    /// destination may coincide with the source (the photons re-enter the
    /// same label); the destinations must differ from each other.
    ///
    /// Creation operators map as `src -> t dst_t + r dst_r`, which preserves
    /// the squared-amplitude sum and the photon number of every term.
    pub fn split_single_mode(
        &self,
        src: OpticalMode,
        dst_t: OpticalMode,
        dst_r: OpticalMode,
        t: f64,
    ) -> Result<Self> {
        if dst_t == dst_r {
            return Err(PhotonicError::SameOutputPorts);
        }
        if !(t > 0.0 && t <= 1.0) {
            return Err(PhotonicError::BadTransmissivity(t));
        }
        let r = (1.0 - t * t).max(0.0).sqrt();
        let si = src.index();
        let ti = dst_t.index();
        let ri = dst_r.index();
        let mut out = Self::empty(self.photon_cap);
        for (occ, amp) in &self.terms {
            let n = occ[si];
            if n == 0 {
                out.add_term(*occ, *amp)?;
                continue;
            }
            let mut base = *occ;
            base[si] = 0;
            let m_t = base[ti];
            let m_r = base[ri];
            let inv_src_norm = factorial(n).sqrt().recip();
            for k in 0..=n {
                let weight = binomial(n, k)
                    * t.powi(k as i32)
                    * r.powi((n - k) as i32)
                    * (factorial(m_t + k).sqrt() / factorial(m_t).sqrt())
                    * (factorial(m_r + n - k).sqrt() / factorial(m_r).sqrt())
                    * inv_src_norm;
                if weight == 0.0 {
                    continue;
                }
                let mut occ2 = base;
                occ2[ti] += k;
                occ2[ri] += n - k;
                out.add_term(occ2, amp * weight)?;
            }
        }
        out.prune();
        Ok(out)
    }

    /// Apply a polarization Jones matrix to one spatial mode: creation
    /// operators transform as `c_H -> W00 c_H + W10 c_V`,
    /// `c_V -> W01 c_H + W11 c_V`, so single-photon states transform as
    /// `|pol> -> W |pol>`.
    pub fn mix_polarization(&self, spatial: Spatial, jones: &Unitary2) -> Self {
        let hi = OpticalMode::new(spatial, crate::mode::Pol::H).index();
        let vi = OpticalMode::new(spatial, crate::mode::Pol::V).index();
        let w = jones.matrix();
        let (a, b) = (w[0][0], w[0][1]);
        let (c, d) = (w[1][0], w[1][1]);
        let mut out = Self::empty(self.photon_cap);
        for (occ, amp) in &self.terms {
            let n_h = occ[hi];
            let n_v = occ[vi];
            if n_h == 0 && n_v == 0 {
                out.add_term(*occ, *amp).expect("photon count unchanged");
                continue;
            }
            let mut base = *occ;
            base[hi] = 0;
            base[vi] = 0;
            let inv_norm = (factorial(n_h) * factorial(n_v)).sqrt().recip();
            for j in 0..=n_h {
                for l in 0..=n_v {
                    let m0 = j + l;
                    let m1 = n_h + n_v - m0;
                    let coeff = binomial(n_h, j)
                        * binomial(n_v, l)
                        * (factorial(m0) * factorial(m1)).sqrt()
                        * inv_norm;
                    let weight = a.powu(j as u32)
                        * c.powu((n_h - j) as u32)
                        * b.powu(l as u32)
                        * d.powu((n_v - l) as u32)
                        * coeff;
                    if weight.norm_sqr() == 0.0 {
                        continue;
                    }
                    let mut occ2 = base;
                    occ2[hi] += m0;
                    occ2[vi] += m1;
                    out.add_term(occ2, amp * weight)
                        .expect("photon count unchanged");
                }
            }
        }
        out.prune();
        out
    }

    /// Multiply each term by `phase_h^{n_H} * phase_v^{n_V}` of one spatial
    /// mode (a birefringent element; diagonal fast path of
    /// [`Self::mix_polarization`]).
    pub fn polarization_phase(&self, spatial: Spatial, phase_h: C64, phase_v: C64) -> Self {
        let hi = OpticalMode::new(spatial, crate::mode::Pol::H).index();
        let vi = OpticalMode::new(spatial, crate::mode::Pol::V).index();
        let terms = self
            .terms
            .iter()
            .map(|(occ, amp)| {
                (
                    *occ,
                    amp * phase_h.powu(occ[hi] as u32) * phase_v.powu(occ[vi] as u32),
                )
            })
            .collect();
        Self {
            terms,
            photon_cap: self.photon_cap,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode::Pol;

    fn mode(s: Spatial, p: Pol) -> OpticalMode {
        OpticalMode::new(s, p)
    }

    fn single_photon(m: OpticalMode, cap: u32) -> FockVector {
        let mut fv = FockVector::empty(cap);
        let mut occ = [0u8; MODE_COUNT];
        occ[m.index()] = 1;
        fv.add_term(occ, C64::new(1.0, 0.0)).unwrap();
        fv
    }

    #[test]
    fn one_photon_split_is_balanced_at_half() {
        let t = std::f64::consts::FRAC_1_SQRT_2;
        let fv = single_photon(mode(Spatial::A, Pol::H), 4);
        let out = fv
            .split_single_mode(
                mode(Spatial::A, Pol::H),
                mode(Spatial::A1, Pol::H),
                mode(Spatial::A2, Pol::H),
                t,
            )
            .unwrap();
        assert_eq!(out.len(), 2);
        for (_, amp) in out.terms() {
            assert!((amp.norm() - t).abs() < 1e-12);
        }
        assert!((out.total_weight() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_photon_split_carries_bosonic_weights() {
        // amplitudes (1/2, 1/sqrt(2), 1/2) over (2,0), (1,1), (0,2)
        let t = std::f64::consts::FRAC_1_SQRT_2;
        let mut fv = FockVector::empty(4);
        let mut occ = [0u8; MODE_COUNT];
        occ[mode(Spatial::A, Pol::H).index()] = 2;
        fv.add_term(occ, C64::new(1.0, 0.0)).unwrap();
        let out = fv
            .split_single_mode(
                mode(Spatial::A, Pol::H),
                mode(Spatial::A1, Pol::H),
                mode(Spatial::A2, Pol::H),
                t,
            )
            .unwrap();
        let get = |k1: u8, k2: u8| {
            let mut occ = [0u8; MODE_COUNT];
            occ[mode(Spatial::A1, Pol::H).index()] = k1;
            occ[mode(Spatial::A2, Pol::H).index()] = k2;
            out.amplitude(&occ)
        };
        assert!((get(2, 0).re - 0.5).abs() < 1e-12);
        assert!((get(1, 1).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((get(0, 2).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fully_transmitting_split_relabels() {
        let fv = single_photon(mode(Spatial::A, Pol::V), 4);
        let out = fv
            .split_single_mode(
                mode(Spatial::A, Pol::V),
                mode(Spatial::A1, Pol::V),
                mode(Spatial::A2, Pol::V),
                1.0,
            )
            .unwrap();
        assert_eq!(out.len(), 1);
        let mut occ = [0u8; MODE_COUNT];
        occ[mode(Spatial::A1, Pol::V).index()] = 1;
        assert!((out.amplitude(&occ).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn split_rejects_bad_arguments() {
        let fv = single_photon(mode(Spatial::A, Pol::H), 4);
        assert!(fv
            .split_single_mode(
                mode(Spatial::A, Pol::H),
                mode(Spatial::A1, Pol::H),
                mode(Spatial::A1, Pol::H),
                0.5,
            )
            .is_err());
        assert!(fv
            .split_single_mode(
                mode(Spatial::A, Pol::H),
                mode(Spatial::A1, Pol::H),
                mode(Spatial::A2, Pol::H),
                1.5,
            )
            .is_err());
    }

    #[test]
    fn polarization_mix_preserves_weight_and_counts() {
        let mut fv = FockVector::empty(6);
        let mut occ = [0u8; MODE_COUNT];
        occ[mode(Spatial::A1, Pol::H).index()] = 2;
        occ[mode(Spatial::A1, Pol::V).index()] = 1;
        fv.add_term(occ, C64::new(1.0, 0.0)).unwrap();
        let out = fv.mix_polarization(Spatial::A1, &Unitary2::hadamard());
        assert!((out.total_weight() - 1.0).abs() < 1e-12);
        for (occ, _) in out.terms() {
            let total: u32 = occ.iter().map(|&n| n as u32).sum();
            assert_eq!(total, 3);
        }
    }

    #[test]
    fn hadamard_mix_sends_single_h_to_equal_superposition() {
        let fv = single_photon(mode(Spatial::B1, Pol::H), 4);
        let out = fv.mix_polarization(Spatial::B1, &Unitary2::hadamard());
        let mut occ_h = [0u8; MODE_COUNT];
        occ_h[mode(Spatial::B1, Pol::H).index()] = 1;
        let mut occ_v = [0u8; MODE_COUNT];
        occ_v[mode(Spatial::B1, Pol::V).index()] = 1;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((out.amplitude(&occ_h).re - h).abs() < 1e-12);
        assert!((out.amplitude(&occ_v).re - h).abs() < 1e-12);
    }

    #[test]
    fn photon_cap_is_enforced() {
        let mut fv = FockVector::empty(2);
        let mut occ = [0u8; MODE_COUNT];
        occ[0] = 3;
        assert!(matches!(
            fv.add_term(occ, C64::new(1.0, 0.0)),
            Err(PhotonicError::PhotonCapExceeded { .. })
        ));
    }
}
