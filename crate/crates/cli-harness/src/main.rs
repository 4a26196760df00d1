//! `rsp-sim`: remote state preparation simulator front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cli_harness::commands::{
    decompose::decompose,
    run::run,
    selftest::selftest,
    sweep::{sweep, SweepParam},
    table1::table1,
    tomography::tomography,
};
use cli_harness::report::{emit, to_json_pretty, Format};
use cli_harness::scenario::ScenarioConfig;
use cli_harness::{HarnessError, Result};

#[derive(Parser)]
#[command(
    name = "rsp-sim",
    version,
    about = "Multi-location remote state preparation over multi-photon singlets: \
             probability tables, tomography reports, photonic scenario runs, sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Preparation probabilities over the ideal singlets, with the doubled
    /// column for equatorial bases.
    Table1 {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-basis outcome probabilities of a prepared state.
    Tomography {
        /// Scenario document (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated list from hv, da, lr.
        #[arg(long, value_delimiter = ',', default_value = "hv,da,lr")]
        bases: Vec<String>,
        /// 0 = exact probabilities.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a scenario exactly or with sampled statistics.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the click-count CSV (photonic mode) to this path.
        #[arg(long)]
        clicks_out: Option<PathBuf>,
    },
    /// Sweep pump strength or detector efficiency; emits CSV.
    Sweep {
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long)]
        start: f64,
        #[arg(long)]
        stop: f64,
        #[arg(long)]
        steps: usize,
        /// Apparatus document; defaults to the standard operating point.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand a singlet over Alice's product basis and adjudicate the
    /// printed expansion variants.
    Decompose {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "hv")]
        basis: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in sanity battery.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Table1 { format, out } => {
            let report = table1()?;
            let text = match format {
                Format::Json => to_json_pretty(&report)?,
                Format::Csv => report.to_csv(),
            };
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Tomography {
            config,
            bases,
            shots,
            seed,
            format,
            out,
        } => {
            let scenario = ScenarioConfig::load(&config)?;
            let shots = shots.unwrap_or(scenario.shots);
            let seed = seed.unwrap_or(scenario.seed);
            let report = tomography(&scenario, &bases, shots, seed)?;
            let text = match format {
                Format::Json => to_json_pretty(&report)?,
                Format::Csv => report.to_csv(),
            };
            emit(&text, out.as_deref().or(scenario.out_path.as_deref()))?;
            Ok(true)
        }
        Command::Run {
            config,
            shots,
            seed,
            format,
            out,
            clicks_out,
        } => {
            let scenario = ScenarioConfig::load(&config)?;
            let shots = shots.unwrap_or(scenario.shots);
            let seed = seed.unwrap_or(scenario.seed);
            let report = run(&scenario, shots, seed)?;
            if let Some(path) = &clicks_out {
                cli_harness::commands::run::write_click_counts(&scenario, shots, seed, path)?;
            }
            let use_csv = format == Format::Csv || scenario.output == "csv";
            let text = if use_csv {
                report.to_csv()
            } else {
                to_json_pretty(&report)?
            };
            emit(&text, out.as_deref().or(scenario.out_path.as_deref()))?;
            Ok(true)
        }
        Command::Sweep {
            param,
            start,
            stop,
            steps,
            config,
            out,
        } => {
            let base = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        HarnessError::Config(format!("cannot read {}: {e}", path.display()))
                    })?;
                    serde_json::from_str(&text)?
                }
                None => photonic_sim::ApparatusConfig::default_operating_point(),
            };
            let report = sweep(param, start, stop, steps, &base)?;
            emit(&report.to_csv(), out.as_deref())?;
            Ok(true)
        }
        Command::Decompose {
            k,
            basis,
            format,
            out,
        } => {
            let report = decompose(k, &basis)?;
            let text = match format {
                Format::Json => to_json_pretty(&report)?,
                Format::Csv => report.to_text(),
            };
            emit(&text, out.as_deref())?;
            Ok(true)
        }
        Command::Selftest { seed } => {
            let report = selftest(seed)?;
            emit(&report.to_text(), None)?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
