//! Command-line front end: parameter sweeps, feasibility planning, model
//! comparison, two-photon matching reports, and built-in self-checks.
//!
//! Exit codes: 0 on success, 1 when an invariant or runtime check fails,
//! 2 on configuration or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use photon_clock::spacetime::Body;
use photon_clock::sweep::PlanRow;
use photon_clock::toy::ModelReport;
use photon_clock::{config, constants, franson, sweep, toy, Error, Result};

#[derive(Parser)]
#[command(
    name = "photon-clock",
    version,
    about = "Single-photon interferometry under gravitational time dilation: \
             sweeps, feasibility planning, model comparison, self-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout; .csv/.json extensions pick the
    /// format unless --format overrides.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a TOML config file.
    Sweep {
        /// Path to the configuration file.
        config: PathBuf,
    },
    /// Reference feasibility areas: photon clock, atom clock, phase sensing.
    Table1 {
        /// Homogeneous gravitational acceleration, m/s^2.
        #[arg(long, default_value_t = 9.81)]
        g: f64,
        /// Transport speed of the atom-clock row, m/s.
        #[arg(long, default_value_t = sweep::ATOM_CLOCK_SPEED)]
        atom_speed: f64,
    },
    /// Detector statistics against enclosed area for the standard family of
    /// packet widths.
    Fig2 {
        /// Packet coherence time in femtoseconds; "inf" selects the
        /// pure-phase curve. Omit for the whole family.
        #[arg(long)]
        tperp: Option<f64>,
        /// Homogeneous gravitational acceleration, m/s^2.
        #[arg(long, default_value_t = 9.81)]
        g: f64,
        /// Grid points per curve.
        #[arg(long, default_value_t = 601)]
        samples: usize,
    },
    /// Area needed to decohere a clock of the given coherence time.
    Plan {
        /// Clock coherence time, seconds.
        #[arg(long)]
        tperp: f64,
        /// Clock transport speed, m/s. Defaults to c.
        #[arg(long)]
        speed: Option<f64>,
        /// Gravitational acceleration, m/s^2. Defaults to the value derived
        /// from Earth's mass and radius.
        #[arg(long)]
        g: Option<f64>,
    },
    /// Two-photon delay-matching report for a TOML config file.
    Franson {
        /// Path to the configuration file.
        config: PathBuf,
    },
    /// Fringe phase and visibility of every requested coupling model on one
    /// configuration.
    CompareModels {
        /// Path to the configuration file.
        config: PathBuf,
    },
    /// Internal consistency checks: discrete oracle against closed forms,
    /// the coupling-model contract table, and correlation bounds.
    SelfCheck {
        /// Randomized oracle draws.
        #[arg(long, default_value_t = 200)]
        draws: usize,
        /// Fine bin count for the discrete oracle; the coarse reference runs
        /// at bins/16.
        #[arg(long, default_value_t = 4096)]
        bins: usize,
        /// Seed of the draw generator.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn resolve_format(cli: &Cli, default: Format) -> Format {
    if let Some(f) = cli.format {
        return f;
    }
    if let Some(path) = &cli.out {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => return Format::Csv,
            Some("json") => return Format::Json,
            _ => {}
        }
    }
    default
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))
}

fn number_or_empty(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.11e}")).unwrap_or_default()
}

fn plan_rows_text(rows: &[PlanRow], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = String::from(
                "label,coherence_time_s,speed_m_per_s,nu0_rad_per_s,min_phase_rad,area_m2,area_km2\n",
            );
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{:.11e},{:.11e}\n",
                    r.label,
                    number_or_empty(r.coherence_time),
                    number_or_empty(r.speed),
                    number_or_empty(r.nu0),
                    number_or_empty(r.min_phase),
                    r.area_m2,
                    r.area_km2
                ));
            }
            Ok(out)
        }
    }
}

fn model_reports_text(reports: &[ModelReport], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut out = String::from("model,phase_rad,visibility\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{:.11e},{:.11e}\n",
                    r.model, r.phase_rad, r.visibility
                ));
            }
            Ok(out)
        }
    }
}

fn sweep_text(result: &sweep::SweepResult, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(result.to_csv()),
        Format::Json => result.to_json().map(|mut s| {
            s.push('\n');
            s
        }),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let mut passed = true;
    let text = match &cli.command {
        Command::Sweep { config: path } => {
            let config = config::sweep_from_file(path)?;
            sweep_text(&sweep::run_sweep(&config)?, resolve_format(cli, Format::Csv))?
        }
        Command::Table1 { g, atom_speed } => {
            plan_rows_text(&sweep::table1(*g, *atom_speed)?, resolve_format(cli, Format::Csv))?
        }
        Command::Fig2 { tperp, g, samples } => {
            sweep_text(&sweep::fig2(*tperp, *g, *samples)?, resolve_format(cli, Format::Csv))?
        }
        Command::Plan { tperp, speed, g } => {
            let g = g.unwrap_or_else(|| Body::earth().surface_gravity());
            let row = sweep::plan(*tperp, speed.unwrap_or(constants::C), g)?;
            plan_rows_text(std::slice::from_ref(&row), resolve_format(cli, Format::Csv))?
        }
        Command::Franson { config: path } => {
            if resolve_format(cli, Format::Json) == Format::Csv {
                return Err(Error::Config("franson reports are emitted as json only".into()));
            }
            let config = config::franson_from_file(path)?;
            to_json(&franson::matching_report(&config))?
        }
        Command::CompareModels { config: path } => {
            let setup = config::compare_from_file(path)?;
            let reports =
                toy::compare_models(&setup.models, &setup.clock, &setup.geometry, &setup.body)?;
            model_reports_text(&reports, resolve_format(cli, Format::Json))?
        }
        Command::SelfCheck { draws, bins, seed } => {
            let coarse = (bins / 16).max(2);
            let report = sweep::self_check(*draws, coarse, *bins, *seed)?;
            passed = report.passed;
            to_json(&report)?
        }
    };
    emit(&cli.out, &text)?;
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}
