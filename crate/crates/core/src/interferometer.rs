//! Two-arm interferometer: port probabilities, visibility laws, fringe scans.
//!
//! A balanced interferometer with an internal proper-time difference dtau
//! between its arms and a controllable phase offset phi sends a photon of
//! mode f to the two output ports with
//!
//!   P_+- = (1 +- Re[e^{i phi} O(dtau)]) / 2,   O(dtau) = integral |f|^2 e^{i nu dtau} dnu.
//!
//! |O| is the fringe visibility, arg(O) the fringe phase. A gaussian mode
//! gives the closed forms V = e^{-(dtau/t_perp)^2} and phase nu0 dtau; the
//! quadrature route through [`SpectralMode::overlap_with_shift`] must agree
//! with them, which the tests pin down.

use crate::error::{Error, Result};
use crate::spectral::SpectralMode;

/// Output port probabilities of one run; they sum to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ports {
    pub p_plus: f64,
    pub p_minus: f64,
}

/// Probabilities for a fringe of visibility v and phase chi at offset phi:
/// P_+- = (1 +- v cos(chi + phi)) / 2.
pub fn ports(visibility: f64, phase: f64, phi: f64) -> Ports {
    let x = 0.5 * visibility * (phase + phi).cos();
    Ports { p_plus: 0.5 + x, p_minus: 0.5 - x }
}

/// Port probabilities for an arbitrary mode, by quadrature of the overlap.
pub fn detection_probabilities(mode: &SpectralMode, dtau: f64, phi: f64) -> Ports {
    let o = mode.overlap_with_shift(dtau);
    ports(o.norm(), o.arg(), phi)
}

/// Closed-form port probabilities for a gaussian mode given its coherence
/// time t_perp = 2 sqrt(sigma). Accepts t_perp = infinity (pure phase limit).
pub fn gaussian_ports(nu0: f64, t_perp: f64, dtau: f64, phi: f64) -> Ports {
    ports(gaussian_visibility(t_perp, dtau), phase_shift(nu0, dtau), phi)
}

/// Gaussian visibility law V = e^{-(dtau/t_perp)^2}.
pub fn gaussian_visibility(t_perp: f64, dtau: f64) -> f64 {
    let r = dtau / t_perp;
    (-r * r).exp()
}

/// Two-level clock visibility law V = |cos(pi dtau / (2 t_perp))|.
pub fn two_level_visibility(t_perp: f64, dtau: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 * dtau / t_perp).cos().abs()
}

/// Relative phase accumulated between the arms, nu0 * dtau (radians).
pub fn phase_shift(nu0: f64, dtau: f64) -> f64 {
    nu0 * dtau
}

/// Which-path distinguishability sqrt(1 - V^2), the duality partner of V.
pub fn distinguishability(visibility: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&visibility) {
        return Err(Error::Domain(format!("visibility must lie in [0, 1], got {visibility}")));
    }
    let v = visibility.clamp(0.0, 1.0);
    Ok((1.0 - v * v).sqrt())
}

/// A sampled fringe P_+-(phi) over one full period.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeScan {
    pub phi: Vec<f64>,
    pub p_plus: Vec<f64>,
    pub p_minus: Vec<f64>,
}

/// Visibility and phase recovered from a scanned fringe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringeParameters {
    pub visibility: f64,
    /// chi in [0, 2 pi) such that P_+ ~ (1 + V cos(phi + chi)) / 2.
    pub phase: f64,
}

impl FringeScan {
    /// Sample a fringe at n uniform offsets spanning [0, 2 pi], endpoint
    /// included (n + 1 rows). Needs n >= 32 so extraction stays well posed.
    pub fn sample(n: usize, f: impl Fn(f64) -> Ports) -> Result<FringeScan> {
        if n < 32 {
            return Err(Error::UndersampledGrid(format!(
                "fringe scan needs at least 32 samples per period, got {n}"
            )));
        }
        let h = std::f64::consts::TAU / n as f64;
        let mut scan = FringeScan {
            phi: Vec::with_capacity(n + 1),
            p_plus: Vec::with_capacity(n + 1),
            p_minus: Vec::with_capacity(n + 1),
        };
        for k in 0..=n {
            let phi = k as f64 * h;
            let p = f(phi);
            scan.phi.push(phi);
            scan.p_plus.push(p.p_plus);
            scan.p_minus.push(p.p_minus);
        }
        Ok(scan)
    }

    /// Scan the quadrature-route probabilities of a mode.
    pub fn of_mode(mode: &SpectralMode, dtau: f64, n: usize) -> Result<FringeScan> {
        // The overlap does not depend on phi; integrate once.
        let o = mode.overlap_with_shift(dtau);
        FringeScan::sample(n, |phi| ports(o.norm(), o.arg(), phi))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("phi,p_plus,p_minus\n");
        for k in 0..self.phi.len() {
            out.push_str(&format!(
                "{:.11e},{:.11e},{:.11e}\n",
                self.phi[k], self.p_plus[k], self.p_minus[k]
            ));
        }
        out
    }
}

/// Parabolic refinement of the extremum of three uniformly spaced samples,
/// returning (offset in units of the spacing, refined value).
fn refine_extremum(left: f64, mid: f64, right: f64) -> (f64, f64) {
    let denom = left - 2.0 * mid + right;
    if denom.abs() < 1e-15 * (left.abs() + mid.abs() + right.abs() + f64::MIN_POSITIVE) {
        return (0.0, mid);
    }
    let delta = 0.5 * (left - right) / denom;
    let value = mid - 0.25 * (left - right) * delta;
    (delta, value)
}

/// Recover visibility and phase from a full-period fringe scan.
///
/// The scan must cover a full period with at least 32 uniform samples; both
/// extrema of P_+ are refined parabolically, so the recovered parameters are
/// accurate to O(h^3) in the sample spacing.
pub fn fringe_parameters(scan: &FringeScan) -> Result<FringeParameters> {
    let n = scan.phi.len().saturating_sub(1);
    if n < 32 {
        return Err(Error::UndersampledGrid(format!(
            "fringe extraction needs at least 32 samples per period, got {n}"
        )));
    }
    let span = scan.phi[n] - scan.phi[0];
    if span < std::f64::consts::TAU * (1.0 - 1e-9) {
        return Err(Error::UndersampledGrid(format!(
            "fringe extraction needs a full 2 pi scan, got span {span:.6}"
        )));
    }
    let h = span / n as f64;
    for k in 0..n {
        if ((scan.phi[k + 1] - scan.phi[k]) - h).abs() > 1e-9 * h.abs() {
            return Err(Error::UndersampledGrid("fringe scan must be uniformly spaced".into()));
        }
    }
    // One period is entries 0..n; the endpoint duplicates entry 0.
    let p = &scan.p_plus[..n];
    let (mut k_max, mut k_min) = (0, 0);
    for k in 1..n {
        if p[k] > p[k_max] {
            k_max = k;
        }
        if p[k] < p[k_min] {
            k_min = k;
        }
    }
    let at = |k: isize| p[k.rem_euclid(n as isize) as usize];
    let (d_max, p_max) = refine_extremum(at(k_max as isize - 1), p[k_max], at(k_max as isize + 1));
    let (_, neg_min) = refine_extremum(-at(k_min as isize - 1), -p[k_min], -at(k_min as isize + 1));
    let p_min = -neg_min;
    let sum = p_max + p_min;
    let visibility = if sum <= 0.0 { 0.0 } else { ((p_max - p_min) / sum).clamp(0.0, 1.0) };
    let phi_star = scan.phi[0] + (k_max as f64 + d_max) * h;
    let phase = (-phi_star).rem_euclid(std::f64::consts::TAU);
    Ok(FringeParameters { visibility, phase })
}
