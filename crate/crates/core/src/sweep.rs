//! Parameter sweeps, feasibility planning, and the built-in cross-check
//! harness behind the command-line front end.
//!
//! A sweep walks one variable (enclosed area, arm delay, detection phase,
//! spectral width, or tilt angle) through a uniform grid, runs the
//! gravity -> mode -> interferometer pipeline at every sample, and emits
//! rows ready for CSV or JSON. Coupling-model series can ride along on the
//! same grid. Everything here is deterministic: identical configurations
//! produce byte-identical output.

use serde::{Deserialize, Serialize};

use crate::constants::{C, C2, C3};
use crate::error::{Error, Result};
use crate::fock;
use crate::franson;
use crate::interferometer::{self, Ports};
use crate::spacetime::{dilation_from_area, proper_time_dilation, Body, Geometry};
use crate::spectral::SpectralMode;
use crate::toy::{self, CouplingModel, Occupation, SystemSpec};

/// Quantity walked by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    /// Enclosed interferometer area, m^2.
    Area,
    /// Arm proper-time delay, s.
    Dtau,
    /// Controllable detection phase, rad.
    Phase,
    /// Gaussian width parameter sigma, s^2.
    Sigma,
    /// Tilt angle of the arm separation against the vertical, rad.
    Theta,
}

impl SweepVariable {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "area" => Ok(SweepVariable::Area),
            "dtau" => Ok(SweepVariable::Dtau),
            "phase" => Ok(SweepVariable::Phase),
            "sigma" => Ok(SweepVariable::Sigma),
            "theta" => Ok(SweepVariable::Theta),
            other => Err(Error::Config(format!(
                "unknown sweep variable {other:?}; expected area, dtau, phase, sigma or theta"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepVariable::Area => "area",
            SweepVariable::Dtau => "dtau",
            SweepVariable::Phase => "phase",
            SweepVariable::Sigma => "sigma",
            SweepVariable::Theta => "theta",
        }
    }
}

/// How the wave-packet series is evaluated.
#[derive(Debug, Clone)]
pub enum ModeChoice {
    /// Full spectral route: overlap integral of the given mode.
    Spectral(SpectralMode),
    /// Gaussian closed form exp(-(dtau/t_perp)^2) with phase nu0 dtau.
    /// Also the way to reach widths whose spectrum would spill below nu = 0.
    ClosedFormGaussian { nu0: f64, t_perp: f64 },
    /// Infinitely long pulse: unit visibility, pure phase nu0 dtau.
    PurePhase { nu0: f64 },
}

/// One sweep specification. `dtau` and `phi` hold the fixed values used when
/// they are not the swept variable; `gravity_override` replaces the body's
/// surface gravity in the area <-> delay mapping (homogeneous-field
/// convention); coupling-model series additionally need a `clock`.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub series: String,
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub samples: usize,
    pub mode: ModeChoice,
    pub geometry: Geometry,
    pub body: Body,
    pub gravity_override: Option<f64>,
    pub phi: f64,
    pub dtau: f64,
    pub models: Vec<CouplingModel>,
    pub clock: Option<SystemSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub series: String,
    pub x: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub visibility: f64,
    pub phase_rad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Scientific notation with 12 significant digits: enough to round-trip
    /// f64 for these magnitudes while keeping files diffable.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("series,x,p_plus,p_minus,visibility,phase_rad\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.11e},{:.11e},{:.11e},{:.11e},{:.11e}\n",
                r.series, r.x, r.p_plus, r.p_minus, r.visibility, r.phase_rad
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&self.rows)
            .map_err(|e| Error::Config(format!("serialization failed: {e}")))
    }
}

fn validate(config: &SweepConfig) -> Result<()> {
    if config.samples < 2 {
        return Err(Error::Config(format!(
            "a sweep needs at least 2 samples, got {}",
            config.samples
        )));
    }
    if !(config.start < config.stop) || !config.start.is_finite() || !config.stop.is_finite() {
        return Err(Error::Config(format!(
            "sweep range must satisfy start < stop, got [{}, {}]",
            config.start, config.stop
        )));
    }
    if !config.models.is_empty() {
        if config.clock.is_none() {
            return Err(Error::Config(
                "coupling-model series need a clock specification".into(),
            ));
        }
        if config.variable == SweepVariable::Sigma {
            return Err(Error::Config(
                "coupling-model series are not defined for sigma sweeps".into(),
            ));
        }
    }
    if config.variable == SweepVariable::Theta
        && (config.start < 0.0 || config.stop > std::f64::consts::FRAC_PI_2)
    {
        return Err(Error::Config(format!(
            "theta sweeps must stay inside [0, pi/2], got [{}, {}]",
            config.start, config.stop
        )));
    }
    if config.variable == SweepVariable::Sigma {
        sigma_mode_nu0(&config.mode)?;
    }
    Ok(())
}

/// Center frequency for sigma sweeps, which rebuild the mode per sample.
fn sigma_mode_nu0(mode: &ModeChoice) -> Result<f64> {
    match mode {
        ModeChoice::Spectral(SpectralMode::Gaussian { nu0, .. })
        | ModeChoice::ClosedFormGaussian { nu0, .. } => Ok(*nu0),
        _ => Err(Error::Config(
            "sigma sweeps need a gaussian mode to vary".into(),
        )),
    }
}

/// Wave-packet series at one sample: detection probabilities plus the fringe
/// parameters, phase folded into [0, 2 pi).
fn mode_point(mode: &ModeChoice, dtau: f64, phi: f64) -> (Ports, f64, f64) {
    let tau = std::f64::consts::TAU;
    match mode {
        ModeChoice::Spectral(m) => {
            let overlap = m.overlap_with_shift(dtau);
            let (vis, phase) = (overlap.norm(), overlap.arg());
            (interferometer::ports(vis, phase, phi), vis, phase.rem_euclid(tau))
        }
        ModeChoice::ClosedFormGaussian { nu0, t_perp } => {
            let vis = interferometer::gaussian_visibility(*t_perp, dtau);
            let phase = interferometer::phase_shift(*nu0, dtau);
            (interferometer::ports(vis, phase, phi), vis, phase.rem_euclid(tau))
        }
        ModeChoice::PurePhase { nu0 } => {
            let phase = interferometer::phase_shift(*nu0, dtau);
            (interferometer::ports(1.0, phase, phi), 1.0, phase.rem_euclid(tau))
        }
    }
}

/// The grid is inclusive on both ends; the final sample is pinned to `stop`
/// so the printed range is exact.
fn grid_point(config: &SweepConfig, i: usize) -> f64 {
    if i + 1 == config.samples {
        config.stop
    } else {
        config.start + (config.stop - config.start) * i as f64 / (config.samples - 1) as f64
    }
}

fn with_sample_context<T>(r: Result<T>, variable: SweepVariable, i: usize, x: f64) -> Result<T> {
    r.map_err(|e| {
        Error::Domain(format!("sweep sample {i} at {} = {x:e}: {e}", variable.name()))
    })
}

/// Geometry seen by coupling models at one sample. Area and delay samples
/// rescale the arm separation (delays are inverted through the uniform-field
/// relation before handing the models a real geometry); tilt samples rotate
/// the configured geometry.
fn sample_geometry(config: &SweepConfig, x: f64) -> Result<Geometry> {
    let geo = &config.geometry;
    match config.variable {
        SweepVariable::Area => {
            let h = x / (geo.length() * geo.theta().cos());
            Geometry::new(geo.length(), h, geo.theta(), geo.signal_speed())
        }
        SweepVariable::Dtau => {
            let g = config.body.surface_gravity();
            let h_eff = x * C2 * geo.signal_speed() / (g * geo.length());
            Geometry::new(geo.length(), h_eff / geo.theta().cos(), geo.theta(), geo.signal_speed())
        }
        SweepVariable::Theta => {
            Geometry::new(geo.length(), geo.separation(), x, geo.signal_speed())
        }
        SweepVariable::Phase | SweepVariable::Sigma => Ok(*geo),
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    validate(config)?;
    let g = config
        .gravity_override
        .unwrap_or_else(|| config.body.surface_gravity());
    let mut rows = Vec::with_capacity(config.samples * (1 + config.models.len()));

    for i in 0..config.samples {
        let x = grid_point(config, i);
        let (dtau, phi) = match config.variable {
            SweepVariable::Area => (
                with_sample_context(
                    dilation_from_area(g, x, config.geometry.signal_speed()),
                    config.variable,
                    i,
                    x,
                )?,
                config.phi,
            ),
            SweepVariable::Dtau => (x, config.phi),
            SweepVariable::Phase => (config.dtau, x),
            SweepVariable::Sigma => (config.dtau, config.phi),
            SweepVariable::Theta => {
                let geo = sample_geometry(config, x)?;
                let dtau = with_sample_context(
                    proper_time_dilation(&geo, &config.body).map(|d| d.weak_field),
                    config.variable,
                    i,
                    x,
                )?;
                (dtau, config.phi)
            }
        };

        let (ports, vis, phase) = if config.variable == SweepVariable::Sigma {
            let nu0 = sigma_mode_nu0(&config.mode)?;
            let mode = with_sample_context(
                SpectralMode::gaussian(nu0, x),
                config.variable,
                i,
                x,
            )?;
            mode_point(&ModeChoice::Spectral(mode), dtau, phi)
        } else {
            mode_point(&config.mode, dtau, phi)
        };
        rows.push(SweepRow {
            series: config.series.clone(),
            x,
            p_plus: ports.p_plus,
            p_minus: ports.p_minus,
            visibility: vis,
            phase_rad: phase,
        });

        if let Some(clock) = &config.clock {
            let geo = with_sample_context(sample_geometry(config, x), config.variable, i, x)?;
            for &model in &config.models {
                let fringe = with_sample_context(
                    toy::predict(model, clock, &geo, &config.body),
                    config.variable,
                    i,
                    x,
                )?;
                let ports = interferometer::ports(fringe.visibility, fringe.phase, phi);
                rows.push(SweepRow {
                    series: model.name().to_string(),
                    x,
                    p_plus: ports.p_plus,
                    p_minus: ports.p_minus,
                    visibility: fringe.visibility,
                    phase_rad: fringe.phase,
                });
            }
        }
    }
    Ok(SweepResult { rows })
}

/// Enclosed area at which a clock of coherence time t_perp fully decoheres
/// the interferometer: A = t_perp c^2 v / g.
pub fn required_area(t_perp: f64, speed: f64, g: f64) -> Result<f64> {
    if !(t_perp > 0.0) || !t_perp.is_finite() {
        return Err(Error::Domain(format!("coherence time must be > 0, got {t_perp}")));
    }
    if !(speed > 0.0) || speed > C {
        return Err(Error::Domain(format!("speed must lie in (0, c], got {speed}")));
    }
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::Domain(format!("gravity must be > 0, got {g}")));
    }
    Ok(t_perp * C2 * speed / g)
}

/// Enclosed area at which the plain phase shift nu0 dtau reaches a target
/// resolution: A = dphi c^3 / (nu0 g). No clock needed, hence the much
/// smaller scale.
pub fn required_area_for_phase(nu0: f64, min_phase: f64, g: f64) -> Result<f64> {
    if !(nu0 > 0.0) || !nu0.is_finite() {
        return Err(Error::Domain(format!("center frequency must be > 0, got {nu0}")));
    }
    if !(min_phase >= 0.0) || !min_phase.is_finite() {
        return Err(Error::Domain(format!("phase resolution must be >= 0, got {min_phase}")));
    }
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::Domain(format!("gravity must be > 0, got {g}")));
    }
    Ok(min_phase * C3 / (nu0 * g))
}

/// One feasibility row: which interferometer area a given experiment needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanRow {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coherence_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub speed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_phase: Option<f64>,
    pub area_m2: f64,
    pub area_km2: f64,
}

impl PlanRow {
    fn clock(label: &str, t_perp: f64, speed: f64, area: f64) -> PlanRow {
        PlanRow {
            label: label.to_string(),
            coherence_time: Some(t_perp),
            speed: Some(speed),
            nu0: None,
            min_phase: None,
            area_m2: area,
            area_km2: area * 1e-6,
        }
    }
}

/// Area needed to decohere a clock of coherence time `t_perp` moving at
/// `speed` in gravity `g`.
pub fn plan(t_perp: f64, speed: f64, g: f64) -> Result<PlanRow> {
    Ok(PlanRow::clock("clock_decoherence", t_perp, speed, required_area(t_perp, speed, g)?))
}

/// Speed back-solved from the published atom-clock area scale; the source
/// tabulates the area without stating the assumed velocity.
pub const ATOM_CLOCK_SPEED: f64 = 1.09e-2;

/// The three reference feasibility rows: an optical-photon clock, a slow
/// atomic clock, and plain phase-shift sensing at nu0 = 1e15 rad/s with
/// 1e-6 rad resolution.
pub fn table1(g: f64, atom_speed: f64) -> Result<Vec<PlanRow>> {
    let photon = required_area(1e-15, C, g)?;
    let atom = required_area(1e-15, atom_speed, g)?;
    let phase = required_area_for_phase(1e15, 1e-6, g)?;
    Ok(vec![
        PlanRow::clock("photon_clock", 1e-15, C, photon),
        PlanRow::clock("atom_clock", 1e-15, atom_speed, atom),
        PlanRow {
            label: "phase_sensing".to_string(),
            coherence_time: None,
            speed: None,
            nu0: Some(1e15),
            min_phase: Some(1e-6),
            area_m2: phase,
            area_km2: phase * 1e-6,
        },
    ])
}

/// Center frequency of the reference decoherence-versus-area curves.
pub const FIG2_NU0: f64 = 4e15;
/// Area span of those curves, m^2 (0 to 6000 km^2).
pub const FIG2_AREA_MAX: f64 = 6e9;

/// Detector probabilities against enclosed area for a family of packet
/// widths, given in femtoseconds. `None` emits the standard family
/// (0.05, 1, 5 fs plus the infinitely long pulse); an infinite value selects
/// the pure-phase curve alone. Closed forms are used throughout: the
/// short-pulse widths lie outside the positive-frequency regime where a
/// spectral mode can be built.
pub fn fig2(t_perp_fs: Option<f64>, g: f64, samples: usize) -> Result<SweepResult> {
    let family: Vec<f64> = match t_perp_fs {
        Some(fs) => vec![fs],
        None => vec![0.05, 1.0, 5.0, f64::INFINITY],
    };
    let mut rows = Vec::new();
    for fs in family {
        let (series, mode) = if fs.is_infinite() {
            ("pure_phase".to_string(), ModeChoice::PurePhase { nu0: FIG2_NU0 })
        } else {
            if !(fs > 0.0) {
                return Err(Error::Config(format!(
                    "packet width must be positive, got {fs} fs"
                )));
            }
            (
                format!("tperp_{fs}fs"),
                ModeChoice::ClosedFormGaussian { nu0: FIG2_NU0, t_perp: fs * 1e-15 },
            )
        };
        let config = SweepConfig {
            series,
            variable: SweepVariable::Area,
            start: 0.0,
            stop: FIG2_AREA_MAX,
            samples,
            mode,
            geometry: Geometry::vertical_photon(1.0, 0.0)?,
            body: Body::earth(),
            gravity_override: Some(g),
            phi: 0.0,
            dtau: 0.0,
            models: Vec::new(),
            clock: None,
        };
        rows.extend(run_sweep(&config)?.rows);
    }
    Ok(SweepResult { rows })
}

/// Largest tolerated gap between the binned oracle and the closed form at
/// the reference budget of `ORACLE_REFERENCE_BINS`. The binning error falls
/// as 1/bins^2, so reduced-budget runs scale the tolerance accordingly.
pub const ORACLE_TOLERANCE: f64 = 1e-6;
/// Bin count the fine tolerance is calibrated for.
pub const ORACLE_REFERENCE_BINS: usize = 4096;
/// Below this error both bin counts sit at the f64 noise floor and their
/// ordering is meaningless.
const CONVERGENCE_NOISE_FLOOR: f64 = 1e-12;
/// Fraction of randomized draws whose error must shrink under refinement.
const CONVERGENCE_FRACTION: f64 = 0.95;

/// Arm separation at which the reference photon geometry (l = 1e5 m,
/// vertical, Earth) delays one arm by exactly the 1 fs coherence time of the
/// reference packet, solved against the real potential difference.
const TOY_REFERENCE_SEPARATION: f64 = 27555.855810636943;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub draws: usize,
    pub converged: usize,
    pub required_converged: usize,
    pub max_error_fine: f64,
    pub max_error_coarse: f64,
    pub tolerance_fine: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToyContractCheck {
    /// Distance between the mean-energy and energy-operator phases, rad.
    pub phase_split: f64,
    pub visibility_mean_energy: f64,
    pub visibility_energy_operator: f64,
    pub massless_newtonian_exact: bool,
    pub smeared_exact: bool,
    pub interpolation_endpoints_exact: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BellCheck {
    pub quadruples: usize,
    pub max_chsh: f64,
    pub reference_chsh: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfCheckReport {
    pub oracle: OracleCheck,
    pub toy: ToyContractCheck,
    pub bell: BellCheck,
    pub passed: bool,
}

fn ports_gap(a: &Ports, b: &Ports) -> f64 {
    (a.p_plus - b.p_plus).abs().max((a.p_minus - b.p_minus).abs())
}

fn oracle_check(draws: usize, coarse_bins: usize, fine_bins: usize, seed: u64) -> Result<OracleCheck> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut converged = 0usize;
    let mut max_fine = 0.0f64;
    let mut max_coarse = 0.0f64;
    for _ in 0..draws {
        // Draw order is part of the reproducibility contract.
        let nu0 = rng.gen_range(2e16..6e16);
        let t_perp = rng.gen_range(3e-16..3e-15);
        let dtau = t_perp * rng.gen_range(0.0..10.0);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        let sigma = (t_perp / 2.0) * (t_perp / 2.0);
        let mode = SpectralMode::gaussian(nu0, sigma)?;
        let closed = interferometer::gaussian_ports(nu0, t_perp, dtau, phi);
        let fine = fock::oracle_ports(&mode, fine_bins, dtau, phi)?;
        let coarse = fock::oracle_ports(&mode, coarse_bins, dtau, phi)?;
        let err_fine = ports_gap(&fine, &closed);
        let err_coarse = ports_gap(&coarse, &closed);
        if err_coarse > err_fine || err_fine < CONVERGENCE_NOISE_FLOOR {
            converged += 1;
        }
        max_fine = max_fine.max(err_fine);
        max_coarse = max_coarse.max(err_coarse);
    }
    let required = ((draws as f64) * CONVERGENCE_FRACTION).ceil() as usize;
    let ratio = ORACLE_REFERENCE_BINS as f64 / fine_bins as f64;
    let tolerance = ORACLE_TOLERANCE * (ratio * ratio).max(1.0);
    Ok(OracleCheck {
        draws,
        converged,
        required_converged: required,
        max_error_fine: max_fine,
        max_error_coarse: max_coarse,
        tolerance_fine: tolerance,
        passed: max_fine < tolerance && converged >= required,
    })
}

fn toy_contract_check() -> Result<ToyContractCheck> {
    let mode = SpectralMode::gaussian(2e16, 2.5e-31)?;
    let geometry = Geometry::vertical_photon(1e5, TOY_REFERENCE_SEPARATION)?;
    let earth = Body::earth();
    let single = SystemSpec::photon(&mode, 64, Occupation::SingleParticleTwoMode)?;
    let fock1 = SystemSpec::photon(&mode, 64, Occupation::Fock(1))?;

    let sc = toy::predict(CouplingModel::SemiClassicalMeanEnergy, &single, &geometry, &earth)?;
    let qe = toy::predict(CouplingModel::QuantumEnergyOperator, &single, &geometry, &earth)?;
    let d = (sc.phase - qe.phase).abs();
    let phase_split = d.min(std::f64::consts::TAU - d);

    let newt = toy::predict(CouplingModel::NewtonianMass, &single, &geometry, &earth)?;
    let smear = toy::predict(CouplingModel::SmearedPotential, &single, &geometry, &earth)?;
    let interp_one = toy::predict(CouplingModel::Interpolating, &single, &geometry, &earth)?;
    let interp_zero = toy::predict(CouplingModel::Interpolating, &fock1, &geometry, &earth)?;
    let smear_fock = toy::predict(CouplingModel::SmearedPotential, &fock1, &geometry, &earth)?;

    let massless_newtonian_exact = newt.phase == 0.0 && newt.visibility == 1.0;
    let smeared_exact = smear.phase == 0.0 && smear.visibility == 1.0;
    let interpolation_endpoints_exact = interp_one.phase == sc.phase
        && interp_one.visibility == sc.visibility
        && interp_zero.phase == smear_fock.phase
        && interp_zero.visibility == smear_fock.visibility;

    let passed = phase_split < 1e-10
        && (sc.visibility - 1.0).abs() < 1e-9
        && (qe.visibility - (-1.0f64).exp()).abs() < 1e-9
        && massless_newtonian_exact
        && smeared_exact
        && interpolation_endpoints_exact;
    Ok(ToyContractCheck {
        phase_split,
        visibility_mean_energy: sc.visibility,
        visibility_energy_operator: qe.visibility,
        massless_newtonian_exact,
        smeared_exact,
        interpolation_endpoints_exact,
        passed,
    })
}

fn bell_check(quadruples: usize, seed: u64) -> BellCheck {
    use rand::{Rng, SeedableRng};
    let bound = 2.0 * std::f64::consts::SQRT_2;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let reference = franson::chsh(
        0.0,
        std::f64::consts::FRAC_PI_2,
        -std::f64::consts::FRAC_PI_4,
        std::f64::consts::FRAC_PI_4,
    );
    let mut max = reference;
    for _ in 0..quadruples {
        let s = franson::chsh(
            rng.gen_range(-7.0..7.0),
            rng.gen_range(-7.0..7.0),
            rng.gen_range(-7.0..7.0),
            rng.gen_range(-7.0..7.0),
        );
        max = max.max(s);
    }
    BellCheck {
        quadruples,
        max_chsh: max,
        reference_chsh: reference,
        bound,
        passed: max <= bound + 1e-12 && reference > 2.8284,
    }
}

/// Run the oracle-equivalence draws, the coupling-model contract table, and
/// the CHSH bound sweep. The report's `passed` field is the overall verdict;
/// the front end maps it to the exit status.
pub fn self_check(draws: usize, coarse_bins: usize, fine_bins: usize, seed: u64) -> Result<SelfCheckReport> {
    if draws == 0 {
        return Err(Error::Config("self-check needs at least one draw".into()));
    }
    if coarse_bins < 2 || fine_bins <= coarse_bins {
        return Err(Error::Config(format!(
            "bin counts must satisfy 2 <= coarse < fine, got {coarse_bins} and {fine_bins}"
        )));
    }
    let oracle = oracle_check(draws, coarse_bins, fine_bins, seed)?;
    let toy = toy_contract_check()?;
    let bell = bell_check(2000, seed);
    let passed = oracle.passed && toy.passed && bell.passed;
    Ok(SelfCheckReport { oracle, toy, bell, passed })
}
