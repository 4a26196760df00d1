//! The pulsed type-II down-conversion source.
//!
//! Emission order p places p photon pairs in the two conjugate arms with
//! amplitude `tanh^p(K) e^{i m phi} / cosh^2(K)` on the Fock term
//! `|m H_a, (p-m) V_a, (p-m) H_b, m V_b>`, m = 0..p. `K` is the effective
//! squeezing (crystal nonlinearity, pump power, filtering); `phi` is the
//! residual uncompensated birefringence phase between the polarizations,
//! zero at the compensated operating point.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::fock::FockVector;
use crate::mode::{OpticalMode, Pol, Spatial, MODE_COUNT};
use crate::{PhotonicError, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PdcConfig {
    /// Squeezing parameter K > 0. Keep below 1 so the truncated sum carries
    /// nearly all the weight.
    pub squeezing: f64,
    /// Residual birefringence phase, radians; 0 = compensated.
    pub phase: f64,
    /// Truncation order of the emission sum.
    pub p_max: u32,
}

impl PdcConfig {
    pub fn new(squeezing: f64, phase: f64, p_max: u32) -> Result<Self> {
        if squeezing <= 0.0 {
            return Err(PhotonicError::BadSqueezing(squeezing));
        }
        if p_max == 0 {
            return Err(PhotonicError::BadOrder);
        }
        Ok(Self {
            squeezing,
            phase,
            p_max,
        })
    }

    /// The operating point where a single-pair emission is ten times more
    /// probable than a double pair: `tanh^2 K = 1/15`.
    pub fn default_operating_point(p_max: u32) -> Self {
        Self {
            squeezing: (1.0 / 15f64.sqrt()).atanh(),
            phase: 0.0,
            p_max,
        }
    }
}

/// Build the truncated source state on arms A and B. The photon cap of the
/// returned vector is `2 * p_max`; the truncation deficit is available via
/// [`FockVector::deficit`].
pub fn build_pdc_state(cfg: &PdcConfig) -> Result<FockVector> {
    let mut fv = FockVector::empty(2 * cfg.p_max);
    let tanh_k = cfg.squeezing.tanh();
    let prefactor = cfg.squeezing.cosh().powi(2).recip();
    let a_h = OpticalMode::new(Spatial::A, Pol::H).index();
    let a_v = OpticalMode::new(Spatial::A, Pol::V).index();
    let b_h = OpticalMode::new(Spatial::B, Pol::H).index();
    let b_v = OpticalMode::new(Spatial::B, Pol::V).index();
    for p in 0..=cfg.p_max {
        let order_amp = prefactor * tanh_k.powi(p as i32);
        for m in 0..=p {
            let mut occ = [0u8; MODE_COUNT];
            occ[a_h] = m as u8;
            occ[a_v] = (p - m) as u8;
            occ[b_h] = (p - m) as u8;
            occ[b_v] = m as u8;
            let amp = C64::from_polar(order_amp, cfg.phase * m as f64);
            fv.add_term(occ, amp)?;
        }
    }
    Ok(fv)
}

/// Weight of the order-p emission, `(p+1) tanh^{2p} K / cosh^4 K`.
pub fn emission_order_probability(cfg: &PdcConfig, p: u32) -> f64 {
    let x = cfg.squeezing.tanh().powi(2);
    (p as f64 + 1.0) * x.powi(p as i32) / cfg.squeezing.cosh().powi(4)
}

/// Closed form of the captured weight up to `p_max`,
/// `sum_p (p+1) tanh^{2p} K / cosh^4 K`.
pub fn pdc_captured_norm(squeezing: f64, p_max: u32) -> f64 {
    let x = squeezing.tanh().powi(2);
    let c4 = squeezing.cosh().powi(4);
    (0..=p_max).map(|p| (p as f64 + 1.0) * x.powi(p as i32)).sum::<f64>() / c4
}
