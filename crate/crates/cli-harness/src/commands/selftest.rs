//! Quick sanity battery: table regression, singlet emergence, sampled
//! statistics against exact enumeration, tomography normalization.

use photonic_sim::{
    click_distribution, postselect_one_photon_per_mode, sample_clicks, AnalysisSetting,
    ApparatusConfig, PdcConfig, Spatial,
};
use serde::Serialize;
use singlet_family::make_singlet;

use crate::commands::{table1::table1, tomography::tomography};
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

pub fn selftest(seed: u64) -> Result<SelftestReport> {
    let mut checks = Vec::new();

    // probability table regression
    {
        let report = table1()?;
        let worst = report.rows[..5]
            .iter()
            .map(|r| (r.probability - r.table_value).abs())
            .fold(0.0, f64::max);
        let ghz_dev = (report.ghz.designated_probability - 1.0 / 16.0).abs();
        checks.push(Check {
            name: "table-regression".to_string(),
            passed: worst < 1e-12 && ghz_dev < 1e-12,
            detail: format!("max deviation {worst:.2e}; ghz designated deviation {ghz_dev:.2e}"),
        });
    }

    // four-photon singlet emergence
    {
        let cfg = PdcConfig::default_operating_point(2);
        let source = photonic_sim::build_pdc_state(&cfg)?;
        let fanned =
            photonic_sim::build_fanout_network(&source, &photonic_sim::network::default_splittings())?;
        let restricted = fanned.restricted_to_total_photons(4);
        let fidelity = postselect_one_photon_per_mode(
            &restricted,
            &[Spatial::A1, Spatial::A2, Spatial::B1, Spatial::B2],
        )
        .map(|(_, state)| {
            state
                .fidelity_with(&make_singlet(4).expect("4 is valid"))
                .expect("dimensions agree")
        })
        .unwrap_or(0.0);
        checks.push(Check {
            name: "singlet-emergence".to_string(),
            passed: (fidelity - 1.0).abs() < 1e-9,
            detail: format!("four-photon post-selection fidelity {fidelity:.12}"),
        });
    }

    // sampled click statistics against exact enumeration (4 sigma, patterns
    // above 1e-3 where the normal approximation holds)
    {
        let mut cfg = ApparatusConfig::default_operating_point();
        cfg.p_max = 3;
        cfg.efficiency = photonic_sim::config::Efficiency::Uniform(0.4);
        let exit = cfg.build_exit_state()?;
        let det = cfg.detector_config()?;
        let dist = click_distribution(&exit, &AnalysisSetting::identity(), &det)?;
        let shots = 50_000u64;
        let counts = sample_clicks(&dist, shots, seed)?;
        let total: f64 = dist.values().sum();
        let mut worst_pull: f64 = 0.0;
        let mut failures = 0usize;
        for (pattern, p) in &dist {
            let p_norm = p / total;
            if p_norm < 1e-3 {
                continue;
            }
            let observed = counts.get(pattern).copied().unwrap_or(0) as f64 / shots as f64;
            let sigma = (p_norm * (1.0 - p_norm) / shots as f64).sqrt();
            let pull = (observed - p_norm).abs() / sigma;
            worst_pull = worst_pull.max(pull);
            if pull > 4.0 {
                failures += 1;
            }
        }
        checks.push(Check {
            name: "sampler-vs-exact".to_string(),
            passed: failures == 0,
            detail: format!("worst pull {worst_pull:.2} sigma over patterns above 1e-3"),
        });
    }

    // tomography normalization
    {
        let scenario: crate::scenario::ScenarioConfig = serde_json::from_str(
            r#"{"mode": "ideal", "protocol": {"kind": "w"}}"#,
        )?;
        let report = tomography(
            &scenario,
            &["hv".to_string(), "da".to_string(), "lr".to_string()],
            0,
            seed,
        )?;
        let worst = report
            .sections
            .iter()
            .map(|s| (s.rows.iter().map(|r| r.probability).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);
        checks.push(Check {
            name: "tomography-normalization".to_string(),
            passed: worst < 1e-9,
            detail: format!("worst per-basis deviation from 1: {worst:.2e}"),
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(SelftestReport { checks, passed })
}

impl SelftestReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            out.push_str(&format!(
                "{} {} - {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                check.name,
                check.detail
            ));
        }
        out.push_str(if self.passed {
            "selftest passed\n"
        } else {
            "selftest FAILED\n"
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_with_the_default_seed() {
        let report = selftest(0).unwrap();
        assert!(report.passed, "{}", report.to_text());
    }
}
