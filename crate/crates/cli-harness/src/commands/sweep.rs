//! Parameter sweeps: six-fold rate proxy, contamination, mean prepared
//! fidelity as functions of pump strength or detector efficiency.

use photonic_sim::{
    coincidence_statistics, conditional_partner_state, AnalysisSetting, ApparatusConfig,
    ClickPattern, DetectorConfig, PARTNER_EXITS,
};
use qstate_core::ProductProjector;
use serde::Serialize;
use singlet_family::{make_singlet, BasisPair};

use crate::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepParam {
    /// Pump squeezing parameter K.
    K,
    /// Uniform detector efficiency.
    Eta,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub value: f64,
    /// Probability of an accepted six-fold coincidence.
    pub rate: f64,
    pub contamination: f64,
    /// Probability-weighted mean fidelity of the conditional partner states
    /// over Alice's H/V patterns, against the ideal conditionals.
    pub mean_fidelity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub param: String,
    pub rows: Vec<SweepRow>,
}

pub fn sweep(
    param: SweepParam,
    start: f64,
    stop: f64,
    steps: usize,
    base: &ApparatusConfig,
) -> Result<SweepReport> {
    if steps == 0 {
        return Err(HarnessError::Config("sweep needs at least one step".to_string()));
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let fraction = if steps == 1 {
            0.0
        } else {
            i as f64 / (steps - 1) as f64
        };
        let value = start + (stop - start) * fraction;
        let mut cfg = base.clone();
        match param {
            SweepParam::K => cfg.k = value,
            SweepParam::Eta => cfg.efficiency = photonic_sim::config::Efficiency::Uniform(value),
        }
        let pdc = cfg.pdc_config()?;
        let det = cfg.detector_config()?;
        let stats = coincidence_statistics(&pdc, &det, 6, &cfg.splittings)?;
        let mean_fidelity = mean_conditional_fidelity(&cfg, &det)?;
        rows.push(SweepRow {
            value,
            rate: stats.accepted,
            contamination: stats.fraction(),
            mean_fidelity,
        });
    }
    Ok(SweepReport {
        param: format!("{param:?}"),
        rows,
    })
}

fn mean_conditional_fidelity(cfg: &ApparatusConfig, det: &DetectorConfig) -> Result<f64> {
    let exit = cfg.build_exit_state()?;
    let setting = AnalysisSetting::identity();
    let singlet = make_singlet(6)?;
    let hv = BasisPair::hv();
    let mut weighted = 0.0;
    let mut total = 0.0;
    for bits in 0..8usize {
        let alice_bits: Vec<bool> = (0..3).map(|q| bits >> (2 - q) & 1 == 1).collect();
        let pattern = ClickPattern::from_alice_bits(&alice_bits);
        let Some((p, rho)) =
            conditional_partner_state(&exit, pattern, &PARTNER_EXITS, &setting, det)?
        else {
            continue;
        };
        let targets: Vec<(usize, qstate_core::PureState)> = alice_bits
            .iter()
            .enumerate()
            .map(|(q, &bar)| (q, hv.state(bar).clone()))
            .collect();
        let ideal = singlet
            .project(&ProductProjector::new(targets)?)?
            .conditional
            .expect("H/V patterns have weight on the singlet");
        weighted += p * rho.fidelity_with_pure(&ideal)?;
        total += p;
    }
    if total <= 0.0 {
        return Err(HarnessError::Degenerate(
            "no six-fold coincidence carries probability".to_string(),
        ));
    }
    Ok(weighted / total)
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!("{},rate,contamination,mean_fidelity\n", self.param);
        for row in &self.rows {
            out.push_str(&format!(
                "{:.9},{:.12e},{:.12},{:.12}\n",
                row.value, row.rate, row.contamination, row.mean_fidelity
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_is_rejected() {
        let base = ApparatusConfig::default_operating_point();
        assert!(sweep(SweepParam::K, 0.1, 0.2, 0, &base).is_err());
    }

    #[test]
    fn eta_sweep_ends_contamination_free() {
        let mut base = ApparatusConfig::default_operating_point();
        base.p_max = 4;
        let report = sweep(SweepParam::Eta, 0.5, 1.0, 2, &base).unwrap();
        let last = report.rows.last().unwrap();
        assert!(last.contamination.abs() < 1e-15);
        assert!((last.mean_fidelity - 1.0).abs() < 1e-9);
        assert!(report.rows[0].contamination > 0.0);
    }
}
