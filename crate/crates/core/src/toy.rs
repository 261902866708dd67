//! Gravity-coupling toy models for a clock in spatial superposition.
//!
//! Five candidate Hamiltonians couple an internal clock to the potential,
//! differing in what plays the role of gravitating energy:
//!
//! - `NewtonianMass`: only the rest mass couples, m V(r_i).
//! - `SemiClassicalMeanEnergy`: the mean energy couples, <H_s> V(r_i)/c^2;
//!   the clock stays factorized from the path.
//! - `QuantumEnergyOperator`: the energy operator couples,
//!   H_s (1 + V(r_i)/c^2); each arm's clock ticks at its own proper rate.
//! - `SmearedPotential`: H_s (1 + <V>/c^2) with the potential averaged over
//!   both arms; no relative arm phase at all.
//! - `Interpolating`: mixes the previous two with a weight lambda = dN/<N>
//!   measuring how well the state is localized on one arm.
//!
//! All models predict a (fringe phase, visibility) pair; the first three
//! separate cleanly: no phase, phase without visibility loss, and phase with
//! visibility loss, which is what makes the coupling question testable.
//!
//! Numerics: per-level dynamical phases are huge (E_k t / hbar ~ 1e13 rad)
//! while the gravitational corrections are tiny. Each level's phase factor
//! is therefore applied as a product of a common unit phasor (bitwise equal
//! across arms, cancelling exactly in interference) and a small arm factor,
//! never as one combined angle, which would round the relative phase away.

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{C2, HBAR};
use crate::error::{Error, Result};
use crate::interferometer::{ports, FringeParameters, Ports};
use crate::quad::{self, kahan_sum};
use crate::spacetime::{potential, Body, Geometry, MAX_SEPARATION_RATIO};
use crate::spectral::SpectralMode;

/// Largest internal spectrum handled; matches the oracle grid ceiling.
pub const MAX_LEVELS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingModel {
    NewtonianMass,
    SemiClassicalMeanEnergy,
    QuantumEnergyOperator,
    SmearedPotential,
    Interpolating,
}

impl CouplingModel {
    pub const ALL: [CouplingModel; 5] = [
        CouplingModel::NewtonianMass,
        CouplingModel::SemiClassicalMeanEnergy,
        CouplingModel::QuantumEnergyOperator,
        CouplingModel::SmearedPotential,
        CouplingModel::Interpolating,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CouplingModel::NewtonianMass => "newtonian_mass",
            CouplingModel::SemiClassicalMeanEnergy => "semi_classical_mean_energy",
            CouplingModel::QuantumEnergyOperator => "quantum_energy_operator",
            CouplingModel::SmearedPotential => "smeared_potential",
            CouplingModel::Interpolating => "interpolating",
        }
    }

    /// Parse a model name as used in configs and reports.
    pub fn parse(name: &str) -> Result<Self> {
        CouplingModel::ALL
            .into_iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown coupling model {name:?}")))
    }
}

impl std::fmt::Display for CouplingModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How the clock degree of freedom is populated, for the localization
/// parameter of the interpolating model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Occupation {
    Fock(u32),
    /// Coherent state of amplitude |alpha|.
    Coherent(f64),
    SingleParticleTwoMode,
}

/// Number-spread ratio dN / <N>: 0 for Fock states, 1/|alpha| for coherent
/// states, 1 for a single particle split over two modes.
pub fn localization_parameter(occupation: Occupation) -> Result<f64> {
    match occupation {
        Occupation::Fock(0) => {
            Err(Error::Domain("localization of Fock(0) divides by zero occupation".into()))
        }
        Occupation::Fock(_) => Ok(0.0),
        Occupation::Coherent(alpha) => {
            if !(alpha > 0.0) || !alpha.is_finite() {
                return Err(Error::Domain(format!(
                    "coherent amplitude must be > 0, got {alpha}"
                )));
            }
            Ok(1.0 / alpha)
        }
        Occupation::SingleParticleTwoMode => Ok(1.0),
    }
}

/// One internal energy level and its amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub energy: f64,
    pub amplitude: Complex64,
}

/// The system under test: rest mass plus an internal spectrum.
/// Total energy of level k is m c^2 + E_k; a photon has m = 0, E_k = hbar nu_k.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub rest_mass: f64,
    pub levels: Vec<EnergyLevel>,
    pub occupation: Occupation,
}

impl SystemSpec {
    pub fn new(rest_mass: f64, mut levels: Vec<EnergyLevel>, occupation: Occupation) -> Result<Self> {
        if !(rest_mass >= 0.0) || !rest_mass.is_finite() {
            return Err(Error::Domain(format!("rest mass must be >= 0, got {rest_mass}")));
        }
        if levels.is_empty() || levels.len() > MAX_LEVELS {
            return Err(Error::Domain(format!(
                "internal spectrum needs 1..={MAX_LEVELS} levels, got {}",
                levels.len()
            )));
        }
        if levels.iter().any(|l| !l.energy.is_finite() || !l.amplitude.norm_sqr().is_finite()) {
            return Err(Error::Domain("non-finite internal level".into()));
        }
        let total = kahan_sum(levels.iter().map(|l| l.amplitude.norm_sqr()));
        if !(total > 0.0) {
            return Err(Error::Domain("internal spectrum has zero norm".into()));
        }
        let scale = 1.0 / total.sqrt();
        for l in &mut levels {
            l.amplitude *= scale;
        }
        Ok(SystemSpec { rest_mass, levels, occupation })
    }

    /// Massless system whose internal spectrum is a photon mode, discretized
    /// on a Gauss-Legendre grid over the mode's support (or the native grid
    /// of a tabulated mode).
    pub fn photon(mode: &SpectralMode, levels: usize, occupation: Occupation) -> Result<Self> {
        let (nus, weights): (Vec<f64>, Vec<f64>) = match mode {
            SpectralMode::Tabulated { nu, .. } => {
                let n = nu.len();
                let mut w = vec![0.0; n];
                if n == 1 {
                    w[0] = 1.0;
                } else {
                    w[0] = 0.5 * (nu[1] - nu[0]);
                    w[n - 1] = 0.5 * (nu[n - 1] - nu[n - 2]);
                    for i in 1..n - 1 {
                        w[i] = 0.5 * (nu[i + 1] - nu[i - 1]);
                    }
                }
                (nu.clone(), w)
            }
            _ => {
                if !(2..=MAX_LEVELS).contains(&levels) {
                    return Err(Error::Domain(format!(
                        "photon discretization needs 2..={MAX_LEVELS} levels, got {levels}"
                    )));
                }
                let (lo, hi) = mode.support();
                quad::gauss_legendre(levels, lo, hi)
            }
        };
        let levels = nus
            .iter()
            .zip(&weights)
            .map(|(&nu, &w)| EnergyLevel {
                energy: HBAR * nu,
                amplitude: mode.amplitude(nu) * w.sqrt(),
            })
            .collect();
        SystemSpec::new(0.0, levels, occupation)
    }

    /// Mean total energy <H_s> = m c^2 + sum |a_k|^2 E_k on the initial state.
    pub fn mean_energy(&self) -> f64 {
        self.rest_mass * C2 + kahan_sum(self.levels.iter().map(|l| l.amplitude.norm_sqr() * l.energy))
    }
}

/// A clock in superposition across two arms at different potentials.
/// Arm 0 is the upper arm (radius r + h_eff), arm 1 the lower (radius r).
#[derive(Debug, Clone, PartialEq)]
pub struct TwoArmState {
    pub amp: [Complex64; 2],
    pub clock: [Vec<Complex64>; 2],
    pub potential: [f64; 2],
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let re = kahan_sum(a.iter().zip(b).map(|(x, y)| x.re * y.re + x.im * y.im));
    let im = kahan_sum(a.iter().zip(b).map(|(x, y)| x.re * y.im - x.im * y.re));
    Complex64::new(re, im)
}

impl TwoArmState {
    /// Equal-amplitude superposition with both clocks in the system's
    /// initial internal state.
    pub fn balanced(spec: &SystemSpec, v_upper: f64, v_lower: f64) -> TwoArmState {
        let clock: Vec<Complex64> = spec.levels.iter().map(|l| l.amplitude).collect();
        let x = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        TwoArmState {
            amp: [x, x],
            clock: [clock.clone(), clock],
            potential: [v_upper, v_lower],
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        let n0 = kahan_sum(self.clock[0].iter().map(|c| c.re * c.re + c.im * c.im));
        let n1 = kahan_sum(self.clock[1].iter().map(|c| c.re * c.re + c.im * c.im));
        self.amp[0].norm_sqr() * n0 + self.amp[1].norm_sqr() * n1
    }

    /// Interference amplitude kappa = conj(a_0) a_1 <clock_0|clock_1>; the
    /// fringe is P_+- = 1/2 +- Re[e^{i phi} kappa] / norm.
    pub fn interference(&self) -> Complex64 {
        self.amp[0].conj() * self.amp[1] * inner(&self.clock[0], &self.clock[1])
    }

    /// Fringe visibility and phase of the recombined state, in closed form.
    /// Visibility 2|kappa|/norm, phase arg(kappa) wrapped to [0, 2 pi).
    pub fn interference_parameters(&self) -> FringeParameters {
        let kappa = self.interference();
        let visibility = (2.0 * kappa.norm() / self.norm_sqr()).clamp(0.0, 1.0);
        let phase = kappa.arg().rem_euclid(std::f64::consts::TAU);
        FringeParameters { visibility, phase }
    }

    /// Output port probabilities when the arms are recombined with offset phi
    /// on the lower arm.
    pub fn recombine(&self, phi: f64) -> Ports {
        let p = self.interference_parameters();
        ports(p.visibility, p.phase, phi)
    }
}

/// Weights of the two arms in the total norm, for potential smearing.
fn arm_weights(state: &TwoArmState) -> [f64; 2] {
    let n0 = state.amp[0].norm_sqr()
        * kahan_sum(state.clock[0].iter().map(|c| c.re * c.re + c.im * c.im));
    let n1 = state.amp[1].norm_sqr()
        * kahan_sum(state.clock[1].iter().map(|c| c.re * c.re + c.im * c.im));
    let total = n0 + n1;
    [n0 / total, n1 / total]
}

/// Evolve the two-arm state for time t under the chosen coupling.
/// Norm is preserved; only phases move.
pub fn evolve(
    model: CouplingModel,
    spec: &SystemSpec,
    state: &TwoArmState,
    t: f64,
) -> Result<TwoArmState> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("evolution time must be >= 0, got {t}")));
    }
    let mut out = state.clone();
    let rest = spec.rest_mass * C2;
    let mean = spec.mean_energy();
    let w = arm_weights(state);
    let v_mean = w[0] * state.potential[0] + w[1] * state.potential[1];

    // Common per-level free phase factor, bitwise identical across arms so it
    // cancels exactly in interference. The smeared-potential shift of the
    // level energies is arm-independent and joins it.
    let common_scale = match model {
        CouplingModel::SmearedPotential => 1.0 + v_mean / C2,
        CouplingModel::Interpolating => {
            let lambda = localization_parameter(spec.occupation)?;
            1.0 + (1.0 - lambda) * v_mean / C2
        }
        _ => 1.0,
    };
    let common: Vec<Complex64> = spec
        .levels
        .iter()
        .map(|l| Complex64::from_polar(1.0, -(rest + l.energy) * common_scale * t / HBAR))
        .collect();

    for arm in 0..2 {
        let v = state.potential[arm];
        // Arm-level phase rate, clock-independent part (acts on the arm
        // amplitude) and clock-dependent part (acts on each level).
        let amp_angle = match model {
            CouplingModel::NewtonianMass => -(spec.rest_mass * v * t) / HBAR,
            CouplingModel::SemiClassicalMeanEnergy => -(mean * v * t) / (HBAR * C2),
            CouplingModel::Interpolating => {
                let lambda = localization_parameter(spec.occupation)?;
                lambda * (-(mean * v * t) / (HBAR * C2))
            }
            CouplingModel::QuantumEnergyOperator | CouplingModel::SmearedPotential => 0.0,
        };
        out.amp[arm] *= Complex64::from_polar(1.0, amp_angle);
        for (k, level) in spec.levels.iter().enumerate() {
            let clock_angle = match model {
                CouplingModel::QuantumEnergyOperator => {
                    -((rest + level.energy) * v * t) / (HBAR * C2)
                }
                _ => 0.0,
            };
            let arm_factor = if clock_angle == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, clock_angle)
            };
            out.clock[arm][k] = state.clock[arm][k] * common[k] * arm_factor;
        }
    }
    Ok(out)
}

/// Run a model over the transit of an interferometer and report the fringe.
///
/// The state is prepared balanced with the clocks identical, evolved for the
/// transit time l/v with arm potentials V(r + h_eff) and V(r), and read out
/// through the recombination fringe.
pub fn predict(
    model: CouplingModel,
    spec: &SystemSpec,
    geometry: &Geometry,
    body: &Body,
) -> Result<FringeParameters> {
    let h_eff = geometry.effective_separation();
    let r = body.radius();
    if h_eff / r >= MAX_SEPARATION_RATIO {
        return Err(Error::Domain(format!(
            "arm separation {h_eff:.3e} m is not small against the radius {r:.3e} m"
        )));
    }
    let v_upper = potential(body, r + h_eff)?;
    let v_lower = potential(body, r)?;
    let state = TwoArmState::balanced(spec, v_upper, v_lower);
    let evolved = evolve(model, spec, &state, geometry.transit_time())?;
    Ok(evolved.interference_parameters())
}

/// One row of a model-comparison report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub model: String,
    pub phase_rad: f64,
    pub visibility: f64,
}

/// Predictions of several models on one configuration, ready for JSON.
pub fn compare_models(
    models: &[CouplingModel],
    spec: &SystemSpec,
    geometry: &Geometry,
    body: &Body,
) -> Result<Vec<ModelReport>> {
    models
        .iter()
        .map(|&m| {
            predict(m, spec, geometry, body).map(|p| ModelReport {
                model: m.name().to_string(),
                phase_rad: p.phase,
                visibility: p.visibility,
            })
        })
        .collect()
}
