//! JSON-friendly views of protocol outcomes (complex numbers as re/im pairs).

use serde::Serialize;

use crate::run::{Correction, PartnerState, RspOutcome};

/// Serializable state payload.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StateRecord {
    Pure { amplitudes: Vec<[f64; 2]> },
    Mixed { matrix: Vec<Vec<[f64; 2]>> },
}

/// Serializable protocol outcome row.
#[derive(Clone, Debug, Serialize)]
pub struct OutcomeRecord {
    pub label: String,
    pub probability: f64,
    pub accepted: bool,
    pub correction: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<StateRecord>,
}

impl RspOutcome {
    pub fn to_record(&self) -> OutcomeRecord {
        OutcomeRecord {
            label: self.label.clone(),
            probability: self.probability,
            accepted: self.accepted,
            correction: match self.correction {
                Correction::None => "none".to_string(),
                Correction::SigmaZEach => "sigma_z_each".to_string(),
            },
            partner: self.partner.as_ref().map(|p| match p {
                PartnerState::Pure(s) => StateRecord::Pure {
                    amplitudes: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
                },
                PartnerState::Mixed(rho) => StateRecord::Mixed {
                    matrix: (0..rho.dim())
                        .map(|i| (0..rho.dim()).map(|j| {
                            let e = rho.entry(i, j);
                            [e.re, e.im]
                        }).collect())
                        .collect(),
                },
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::protocol::ProtocolSpec;
    use crate::run::run_protocol;
    use singlet_family::{make_singlet, BasisPair};

    #[test]
    fn outcomes_serialize_to_json() {
        let spec = ProtocolSpec::bell(BasisPair::hv());
        let shared = make_singlet(4).unwrap();
        let outcomes = run_protocol(&shared, &spec).unwrap();
        let records: Vec<_> = outcomes.iter().map(|o| o.to_record()).collect();
        let json = serde_json::to_string(&records).unwrap();
        assert!(json.contains("\"probability\""));
        assert!(json.contains("\"amplitudes\""));
    }
}
