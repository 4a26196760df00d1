//! Report containers and rendering.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

/// One labeled probability row. `std_error` is zero in exact mode;
/// `fidelity` is filled where a target comparison makes sense.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub probability: f64,
    pub std_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fidelity: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Write rendered output to the path or stdout.
pub fn emit(text: &str, out_path: Option<&Path>) -> crate::Result<()> {
    match out_path {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

/// Render rows as a CSV block with the fixed column set.
pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut out = String::from("label,probability,std_error,fidelity\n");
    for row in rows {
        let fid = row
            .fidelity
            .map(|f| format!("{f:.12}"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{:.12},{:.12},{}\n",
            row.label, row.probability, row.std_error, fid
        ));
    }
    out
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> crate::Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}
