//! Expose the singlet decomposition oracle and its typo adjudications.

use serde::Serialize;
use singlet_family::{
    adjudicate_bell_variant, adjudicate_wbar_line, decompose_singlet, AdjudicationFinding,
    BranchRecord,
};

use crate::commands::basis_letters;
use crate::{HarnessError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeReport {
    pub k: usize,
    pub basis: String,
    pub reconstruction_fidelity: f64,
    pub branches: Vec<BranchRecord>,
    pub findings: Vec<AdjudicationFinding>,
    #[serde(skip)]
    pub table: String,
}

pub fn decompose(k: usize, basis_name: &str) -> Result<DecomposeReport> {
    if !matches!(k, 4 | 6) {
        return Err(HarnessError::Config(format!(
            "decomposition covers k = 4 or 6, got {k}"
        )));
    }
    let (basis, _) = basis_letters(basis_name)?;
    let report = decompose_singlet(k, &basis)?;
    let findings = match k {
        4 => vec![adjudicate_bell_variant(&basis)?],
        _ => vec![adjudicate_wbar_line(&basis)?],
    };
    Ok(DecomposeReport {
        k,
        basis: basis_name.to_string(),
        reconstruction_fidelity: report.reconstruction_fidelity(),
        branches: report.records(),
        table: report.to_table(),
        findings,
    })
}

impl DecomposeReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "decomposition of the {}-photon singlet over the {} basis\n\
             reconstruction fidelity: {:.12}\n\n{}",
            self.k, self.basis, self.reconstruction_fidelity, self.table
        );
        for finding in &self.findings {
            out.push_str(&format!(
                "\nfinding [{}]\n  printed form:  {}\n  oracle result: {}\n  \
                 matches printed: {}\n  {}\n",
                finding.id, finding.printed, finding.computed, finding.matches_printed,
                finding.note
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_adjudications_reject_the_printed_variants() {
        let four = decompose(4, "hv").unwrap();
        assert!((four.reconstruction_fidelity - 1.0).abs() < 1e-10);
        assert_eq!(four.findings.len(), 1);
        assert!(!four.findings[0].matches_printed);

        let six = decompose(6, "hv").unwrap();
        assert!((six.reconstruction_fidelity - 1.0).abs() < 1e-10);
        assert!(!six.findings[0].matches_printed);
    }

    #[test]
    fn rejects_unsupported_sizes() {
        assert!(decompose(2, "hv").is_err());
        assert!(decompose(8, "hv").is_err());
    }

    #[test]
    fn text_rendering_mentions_the_findings() {
        let report = decompose(4, "hv").unwrap();
        let text = report.to_text();
        assert!(text.contains("bell-variant"));
        assert!(text.contains("anticorrelated"));
    }
}
