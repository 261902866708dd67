//! Configuration files for the command-line front end.
//!
//! Flat TOML with one section per concern: `[sweep]` for the grid, `[mode]`
//! for the wave packet, `[geometry]` and `[body]` for the gravitational
//! setup, `[clock]` plus a top-level `models` list for coupling-model
//! series, and `[franson]` for two-photon runs. Anything the parser does
//! not recognize is rejected so typos fail loudly, and every construction
//! error is reported as a configuration error.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::constants::C;
use crate::error::{Error, Result};
use crate::franson::FransonConfig;
use crate::spacetime::{proper_time_dilation, Body, Geometry};
use crate::spectral::{GaussianPeak, SpectralMode};
use crate::sweep::{ModeChoice, SweepConfig, SweepVariable};
use crate::toy::{CouplingModel, Occupation, SystemSpec};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    sweep: Option<SweepSection>,
    mode: Option<ModeSection>,
    geometry: Option<GeometrySection>,
    body: Option<BodySection>,
    clock: Option<ClockSection>,
    models: Option<Vec<String>>,
    franson: Option<FransonSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    variable: String,
    start: f64,
    stop: f64,
    samples: usize,
    series: Option<String>,
    phi: Option<f64>,
    dtau: Option<f64>,
    /// Homogeneous-field override for the area <-> delay mapping.
    gravity: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeSection {
    kind: String,
    nu0: Option<f64>,
    sigma: Option<f64>,
    t_perp: Option<f64>,
    /// Two or three columns: frequency, amplitude [, imaginary part].
    file: Option<String>,
    /// Rows of [weight, nu0, sigma].
    peaks: Option<Vec<[f64; 3]>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometrySection {
    length: Option<f64>,
    separation: Option<f64>,
    theta: Option<f64>,
    signal_speed: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BodySection {
    gm: Option<f64>,
    radius: Option<f64>,
    surface_gravity: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClockSection {
    levels: Option<usize>,
    occupation: Option<String>,
    n: Option<u32>,
    alpha: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FransonSection {
    delta_l: f64,
    coherence_time: f64,
    phi1: Option<f64>,
    phi2: Option<f64>,
    /// Explicit delay; when absent it is derived from geometry and body.
    dtau: Option<f64>,
}

fn config_err<T>(context: &str, e: impl std::fmt::Display) -> Result<T> {
    Err(Error::Config(format!("{context}: {e}")))
}

fn parse_document(text: &str) -> Result<Document> {
    toml::from_str(text).or_else(|e| config_err("config parse error", e))
}

fn build_geometry(section: Option<&GeometrySection>) -> Result<Geometry> {
    let (l, h, theta, v) = match section {
        Some(s) => (
            s.length.unwrap_or(1e5),
            s.separation.unwrap_or(0.0),
            s.theta.unwrap_or(0.0),
            s.signal_speed.unwrap_or(C),
        ),
        None => (1e5, 0.0, 0.0, C),
    };
    Geometry::new(l, h, theta, v).or_else(|e| config_err("geometry", e))
}

fn build_body(section: Option<&BodySection>) -> Result<Body> {
    let Some(s) = section else { return Ok(Body::earth()) };
    match (s.gm, s.surface_gravity) {
        (Some(_), Some(_)) => {
            config_err("body", "give either gm or surface_gravity, not both")
        }
        (Some(gm), None) => Body::new(gm, s.radius.unwrap_or(Body::earth().radius()))
            .or_else(|e| config_err("body", e)),
        (None, Some(g)) => Body::from_surface_gravity(g, s.radius.unwrap_or(Body::earth().radius()))
            .or_else(|e| config_err("body", e)),
        (None, None) => match s.radius {
            Some(r) => Body::new(Body::earth().gm(), r).or_else(|e| config_err("body", e)),
            None => Ok(Body::earth()),
        },
    }
}

fn require<T: Copy>(value: Option<T>, context: &str, key: &str) -> Result<T> {
    value.ok_or_else(|| Error::Config(format!("{context}: missing key {key:?}")))
}

fn build_mode(section: &ModeSection, base: Option<&Path>) -> Result<ModeChoice> {
    match section.kind.as_str() {
        "gaussian" => {
            let nu0 = require(section.nu0, "mode", "nu0")?;
            let sigma = require(section.sigma, "mode", "sigma")?;
            SpectralMode::gaussian(nu0, sigma)
                .map(ModeChoice::Spectral)
                .or_else(|e| config_err("mode", e))
        }
        "multi_gaussian" => {
            let peaks = section
                .peaks
                .as_ref()
                .ok_or_else(|| Error::Config("mode: missing key \"peaks\"".into()))?
                .iter()
                .map(|&[weight, nu0, sigma]| GaussianPeak { weight, nu0, sigma })
                .collect();
            SpectralMode::multi_gaussian(peaks)
                .map(ModeChoice::Spectral)
                .or_else(|e| config_err("mode", e))
        }
        "tabulated" => {
            let file = section
                .file
                .as_ref()
                .ok_or_else(|| Error::Config("mode: missing key \"file\"".into()))?;
            let path = match base {
                Some(dir) => dir.join(file),
                None => Path::new(file).to_path_buf(),
            };
            let text = std::fs::read_to_string(&path)
                .or_else(|e| config_err(&format!("mode file {}", path.display()), e))?;
            SpectralMode::tabulated_from_str(&text)
                .map(ModeChoice::Spectral)
                .or_else(|e| config_err(&format!("mode file {}", path.display()), e))
        }
        "closed_form" => Ok(ModeChoice::ClosedFormGaussian {
            nu0: require(section.nu0, "mode", "nu0")?,
            t_perp: require(section.t_perp, "mode", "t_perp")?,
        }),
        "pure_phase" => Ok(ModeChoice::PurePhase { nu0: require(section.nu0, "mode", "nu0")? }),
        other => config_err("mode", format!("unknown kind {other:?}")),
    }
}

fn build_occupation(section: &ClockSection) -> Result<Occupation> {
    let name = section.occupation.as_deref().unwrap_or("single_particle_two_mode");
    match name {
        "single_particle_two_mode" => Ok(Occupation::SingleParticleTwoMode),
        "fock" => Ok(Occupation::Fock(require(section.n, "clock", "n")?)),
        "coherent" => Ok(Occupation::Coherent(require(section.alpha, "clock", "alpha")?)),
        other => config_err("clock", format!("unknown occupation {other:?}")),
    }
}

fn build_clock(section: Option<&ClockSection>, mode: &ModeChoice) -> Result<SystemSpec> {
    static DEFAULT: ClockSection =
        ClockSection { levels: None, occupation: None, n: None, alpha: None };
    let s = section.unwrap_or(&DEFAULT);
    let occupation = build_occupation(s)?;
    let levels = s.levels.unwrap_or(64);
    let spectral = match mode {
        ModeChoice::Spectral(m) => m.clone(),
        ModeChoice::ClosedFormGaussian { nu0, t_perp } => {
            let sigma = (t_perp / 2.0) * (t_perp / 2.0);
            SpectralMode::gaussian(*nu0, sigma).or_else(|e| config_err("clock", e))?
        }
        ModeChoice::PurePhase { .. } => {
            return config_err("clock", "a pure-phase mode carries no clock spectrum");
        }
    };
    SystemSpec::photon(&spectral, levels, occupation).or_else(|e| config_err("clock", e))
}

fn build_models(names: Option<&Vec<String>>) -> Result<Vec<CouplingModel>> {
    match names {
        None => Ok(CouplingModel::ALL.to_vec()),
        Some(list) => list
            .iter()
            .map(|name| CouplingModel::parse(name).or_else(|e| config_err("models", e)))
            .collect(),
    }
}

fn build_sweep(doc: &Document, base: Option<&Path>) -> Result<SweepConfig> {
    let sweep = doc
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config("missing [sweep] section".into()))?;
    let mode_section = doc
        .mode
        .as_ref()
        .ok_or_else(|| Error::Config("missing [mode] section".into()))?;
    let mode = build_mode(mode_section, base)?;
    let models = match &doc.models {
        None => Vec::new(),
        Some(list) => build_models(Some(list))?,
    };
    let clock = if models.is_empty() && doc.clock.is_none() {
        None
    } else {
        Some(build_clock(doc.clock.as_ref(), &mode)?)
    };
    Ok(SweepConfig {
        series: sweep.series.clone().unwrap_or_else(|| "mode".to_string()),
        variable: SweepVariable::parse(&sweep.variable)?,
        start: sweep.start,
        stop: sweep.stop,
        samples: sweep.samples,
        mode,
        geometry: build_geometry(doc.geometry.as_ref())?,
        body: build_body(doc.body.as_ref())?,
        gravity_override: sweep.gravity,
        phi: sweep.phi.unwrap_or(0.0),
        dtau: sweep.dtau.unwrap_or(0.0),
        models,
        clock,
    })
}

fn build_franson(doc: &Document) -> Result<FransonConfig> {
    let section = doc
        .franson
        .as_ref()
        .ok_or_else(|| Error::Config("missing [franson] section".into()))?;
    let dtau = match section.dtau {
        Some(d) => d,
        None => {
            let geometry = build_geometry(doc.geometry.as_ref())?;
            let body = build_body(doc.body.as_ref())?;
            proper_time_dilation(&geometry, &body)
                .or_else(|e| config_err("franson", e))?
                .weak_field
        }
    };
    Ok(FransonConfig {
        dtau,
        delta_l: section.delta_l,
        phi1: section.phi1.unwrap_or(0.0),
        phi2: section.phi2.unwrap_or(0.0),
        coherence_time: section.coherence_time,
    })
}

/// Everything a model-comparison run needs.
#[derive(Debug, Clone)]
pub struct CompareSetup {
    pub models: Vec<CouplingModel>,
    pub clock: SystemSpec,
    pub geometry: Geometry,
    pub body: Body,
}

fn build_compare(doc: &Document, base: Option<&Path>) -> Result<CompareSetup> {
    let mode_section = doc
        .mode
        .as_ref()
        .ok_or_else(|| Error::Config("missing [mode] section".into()))?;
    let mode = build_mode(mode_section, base)?;
    Ok(CompareSetup {
        models: build_models(doc.models.as_ref())?,
        clock: build_clock(doc.clock.as_ref(), &mode)?,
        geometry: build_geometry(doc.geometry.as_ref())?,
        body: build_body(doc.body.as_ref())?,
    })
}

pub fn sweep_from_str(text: &str) -> Result<SweepConfig> {
    build_sweep(&parse_document(text)?, None)
}

pub fn sweep_from_file(path: &Path) -> Result<SweepConfig> {
    let text = std::fs::read_to_string(path)
        .or_else(|e| config_err(&format!("config {}", path.display()), e))?;
    build_sweep(&parse_document(&text)?, path.parent())
}

pub fn franson_from_str(text: &str) -> Result<FransonConfig> {
    build_franson(&parse_document(text)?)
}

pub fn franson_from_file(path: &Path) -> Result<FransonConfig> {
    let text = std::fs::read_to_string(path)
        .or_else(|e| config_err(&format!("config {}", path.display()), e))?;
    build_franson(&parse_document(&text)?)
}

pub fn compare_from_str(text: &str) -> Result<CompareSetup> {
    build_compare(&parse_document(text)?, None)
}

pub fn compare_from_file(path: &Path) -> Result<CompareSetup> {
    let text = std::fs::read_to_string(path)
        .or_else(|e| config_err(&format!("config {}", path.display()), e))?;
    build_compare(&parse_document(&text)?, path.parent())
}

/// Render a tabulated mode back to the two/three column text format, mostly
/// for writing fixtures and examples.
pub fn tabulated_to_string(nu: &[f64], amp: &[Complex64]) -> String {
    let mut out = String::from("# nu_rad_per_s amplitude_re amplitude_im\n");
    for (n, a) in nu.iter().zip(amp) {
        out.push_str(&format!("{:.17e} {:.17e} {:.17e}\n", n, a.re, a.im));
    }
    out
}
