//! Per-basis outcome probabilities of the prepared partner state, mirroring
//! renormalized detection-probability reports.

use serde::Serialize;

use crate::commands::{
    basis_letters, binomial_std_error, born_probabilities, prepare, sample_outcomes,
};
use crate::report::ReportRow;
use crate::scenario::ScenarioConfig;
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct TomographySection {
    pub basis: String,
    pub rows: Vec<ReportRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TomographyReport {
    pub prepared: String,
    pub acceptance_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
    pub shots: u64,
    pub sections: Vec<TomographySection>,
}

pub fn tomography(
    scenario: &ScenarioConfig,
    bases: &[String],
    shots: u64,
    seed: u64,
) -> Result<TomographyReport> {
    let preparation = prepare(scenario)?;
    let mut sections = Vec::new();
    for (section_index, name) in bases.iter().enumerate() {
        let (pair, letters) = basis_letters(name)?;
        let probs = born_probabilities(&preparation.partner, &pair)?;
        let n = probs.len().trailing_zeros() as usize;
        let labels: Vec<String> = (0..probs.len())
            .map(|idx| {
                (0..n)
                    .map(|q| letters[(idx >> (n - 1 - q)) & 1])
                    .collect()
            })
            .collect();
        let rows = if shots == 0 {
            labels
                .into_iter()
                .zip(&probs)
                .map(|(label, &p)| ReportRow {
                    label,
                    probability: p,
                    std_error: 0.0,
                    fidelity: None,
                })
                .collect()
        } else {
            let counts = sample_outcomes(&probs, shots, seed.wrapping_add(section_index as u64));
            labels
                .into_iter()
                .zip(counts)
                .map(|(label, c)| {
                    let p_hat = c as f64 / shots as f64;
                    ReportRow {
                        label,
                        probability: p_hat,
                        std_error: binomial_std_error(p_hat, shots),
                        fidelity: None,
                    }
                })
                .collect()
        };
        sections.push(TomographySection {
            basis: name.clone(),
            rows,
        });
    }
    Ok(TomographyReport {
        prepared: preparation.description,
        acceptance_probability: preparation.acceptance_probability,
        fidelity: preparation.fidelity,
        shots,
        sections,
    })
}

impl TomographyReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("basis,label,probability,std_error\n");
        for section in &self.sections {
            for row in &section.rows {
                out.push_str(&format!(
                    "{},{},{:.12},{:.12}\n",
                    section.basis, row.label, row.probability, row.std_error
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::ScenarioConfig;

    fn ideal_scenario(kind: &str, extra: &str) -> ScenarioConfig {
        let json = format!(
            r#"{{"mode": "ideal", "protocol": {{"kind": "{kind}"{extra}}}}}"#
        );
        serde_json::from_str(&json).unwrap()
    }

    #[test]
    fn prepared_diagonal_state_in_its_eigenbasis() {
        let scenario = ideal_scenario("single_qubit", r#", "basis": "da""#);
        let report = tomography(&scenario, &["da".to_string()], 0, 0).unwrap();
        let rows = &report.sections[0].rows;
        assert!((rows[0].probability - 1.0).abs() < 1e-12);
        assert!(rows[1].probability.abs() < 1e-12);
    }

    #[test]
    fn prepared_h_in_the_diagonal_basis_is_unbiased() {
        let scenario = ideal_scenario("single_qubit", "");
        let report = tomography(&scenario, &["da".to_string()], 0, 0).unwrap();
        let rows = &report.sections[0].rows;
        assert!((rows[0].probability - 0.5).abs() < 1e-12);
        assert!((rows[1].probability - 0.5).abs() < 1e-12);
    }

    #[test]
    fn w_state_in_hv_has_three_equal_lines() {
        let scenario = ideal_scenario("w", "");
        let report = tomography(&scenario, &["hv".to_string()], 0, 0).unwrap();
        let rows = &report.sections[0].rows;
        let third = 1.0 / 3.0;
        for row in rows {
            let expected = match row.label.as_str() {
                "HHV" | "HVH" | "VHH" => third,
                _ => 0.0,
            };
            assert!(
                (row.probability - expected).abs() < 1e-12,
                "{}: {}",
                row.label,
                row.probability
            );
        }
    }

    #[test]
    fn probabilities_sum_to_one_per_basis() {
        for kind in ["w", "ghz", "bell", "no_measurement_mixture"] {
            let scenario = ideal_scenario(kind, "");
            let report = tomography(
                &scenario,
                &["hv".to_string(), "da".to_string(), "lr".to_string()],
                0,
                0,
            )
            .unwrap();
            for section in &report.sections {
                let total: f64 = section.rows.iter().map(|r| r.probability).sum();
                assert!(
                    (total - 1.0).abs() < 1e-9,
                    "{kind}/{}: sum {total}",
                    section.basis
                );
            }
        }
    }

    #[test]
    fn sampled_rows_carry_errors_and_are_seed_stable() {
        let scenario = ideal_scenario("w", "");
        let a = tomography(&scenario, &["hv".to_string()], 4000, 7).unwrap();
        let b = tomography(&scenario, &["hv".to_string()], 4000, 7).unwrap();
        for (x, y) in a.sections[0].rows.iter().zip(&b.sections[0].rows) {
            assert_eq!(x.probability, y.probability);
        }
        let hhv = a.sections[0]
            .rows
            .iter()
            .find(|r| r.label == "HHV")
            .unwrap();
        assert!(hhv.std_error > 0.0);
        assert!((hhv.probability - 1.0 / 3.0).abs() < 4.0 * hhv.std_error);
    }
}
