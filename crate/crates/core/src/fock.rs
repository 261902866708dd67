//! Discretized single-photon reference oracle.
//!
//! The analytic port probabilities rest on a closed-form overlap integral.
//! This module rebuilds them from scratch: the mode is discretized into
//! frequency bins, the single-photon state becomes a finite amplitude
//! vector, and the interferometer acts on it bin by bin as an explicit
//! unitary. Agreement with the closed form, and its improvement under grid
//! refinement, is what the acceptance suite checks.
//!
//! Bin amplitudes are bin averages of f rather than point samples, so the
//! oracle carries a genuine O(width^2) discretization error that vanishes
//! under refinement instead of being accidentally exact on smooth modes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::interferometer::Ports;
use crate::quad::{self, QuadTol};
use crate::spectral::SpectralMode;

/// Fraction of the spectral weight the grid must cover.
pub const COVERAGE_REQUIRED: f64 = 1.0 - 1e-8;

/// Frequency bins carrying the discretized state: centers and widths.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    pub nu: Vec<f64>,
    pub width: Vec<f64>,
    /// Bin amplitudes are averages of f over the bin (true for uniform
    /// grids); a native grid point-samples instead.
    averaged: bool,
}

impl FrequencyGrid {
    /// Uniform bins over [lo, hi].
    pub fn uniform(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::Domain(format!("need at least 2 bins, got {bins}")));
        }
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Domain(format!("bad grid range [{lo}, {hi}]")));
        }
        let dn = (hi - lo) / bins as f64;
        let nu = (0..bins).map(|i| lo + (i as f64 + 0.5) * dn).collect();
        Ok(FrequencyGrid { nu, width: vec![dn; bins], averaged: true })
    }

    /// Uniform bins spanning the whole support of a mode.
    pub fn spanning(mode: &SpectralMode, bins: usize) -> Result<Self> {
        let (lo, hi) = mode.support();
        FrequencyGrid::uniform(lo, hi, bins)
    }

    /// The native grid of a tabulated mode, with trapezoid weights; on this
    /// grid the oracle reproduces the mode's own overlap rule exactly.
    pub fn native(mode: &SpectralMode) -> Result<Self> {
        let SpectralMode::Tabulated { nu, .. } = mode else {
            return Err(Error::Domain("native grids exist only for tabulated modes".into()));
        };
        let n = nu.len();
        let mut width = vec![0.0; n];
        if n == 1 {
            width[0] = 1.0;
        } else {
            width[0] = 0.5 * (nu[1] - nu[0]);
            width[n - 1] = 0.5 * (nu[n - 1] - nu[n - 2]);
            for i in 1..n - 1 {
                width[i] = 0.5 * (nu[i + 1] - nu[i - 1]);
            }
        }
        Ok(FrequencyGrid { nu: nu.clone(), width, averaged: false })
    }

    fn span(&self) -> (f64, f64) {
        let last = self.nu.len() - 1;
        (self.nu[0] - 0.5 * self.width[0], self.nu[last] + 0.5 * self.width[last])
    }
}

/// A single photon as a normalized amplitude vector over frequency bins.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    pub grid: FrequencyGrid,
    pub amp: Vec<Complex64>,
}

impl FockState {
    /// Discretize a mode onto a grid. Fails when the grid misses more than
    /// [`COVERAGE_REQUIRED`] allows of the spectral weight.
    pub fn load(mode: &SpectralMode, grid: FrequencyGrid) -> Result<Self> {
        check_coverage(mode, &grid)?;
        let mut amp: Vec<Complex64> = Vec::with_capacity(grid.nu.len());
        for (i, &center) in grid.nu.iter().enumerate() {
            let w = grid.width[i];
            let a = if grid.averaged {
                // (1/sqrt(w)) integral_bin f = bin average of f times sqrt(w).
                quad::gl5_complex(|nu| mode.amplitude(nu), center - 0.5 * w, center + 0.5 * w)
                    / w.sqrt()
            } else {
                mode.amplitude(center) * w.sqrt()
            };
            amp.push(a);
        }
        let total = quad::kahan_sum(amp.iter().map(|a| a.norm_sqr()));
        if !(total > 0.0) {
            return Err(Error::NonPhysicalSpectrum("discretized state has zero norm".into()));
        }
        let scale = 1.0 / total.sqrt();
        for a in &mut amp {
            *a *= scale;
        }
        Ok(FockState { grid, amp })
    }

    /// Total occupation, 1 up to rounding after loading.
    pub fn norm_sqr(&self) -> f64 {
        quad::kahan_sum(self.amp.iter().map(|a| a.norm_sqr()))
    }
}

fn check_coverage(mode: &SpectralMode, grid: &FrequencyGrid) -> Result<()> {
    let (glo, ghi) = grid.span();
    let (mlo, mhi) = mode.support();
    if let SpectralMode::Tabulated { .. } = mode {
        // The tabulated norm lives on its nodes; containment is the test.
        let slack = 1e-9 * (mhi - mlo).abs().max(f64::MIN_POSITIVE);
        if glo > mlo + slack || ghi < mhi - slack {
            return Err(Error::InsufficientCoverage { coverage: 0.0, required: COVERAGE_REQUIRED });
        }
        return Ok(());
    }
    let lo = glo.max(mlo);
    let hi = ghi.min(mhi);
    let coverage = if lo < hi {
        quad::integrate(
            |nu| mode.amplitude(nu).norm_sqr(),
            lo,
            hi,
            QuadTol::new(1e-13, 1e-12),
        )
    } else {
        0.0
    };
    if coverage < COVERAGE_REQUIRED {
        return Err(Error::InsufficientCoverage { coverage, required: COVERAGE_REQUIRED });
    }
    Ok(())
}

/// Port amplitude vectors after the closing beam splitter.
#[derive(Debug, Clone, PartialEq)]
pub struct PortAmplitudes {
    pub grid: FrequencyGrid,
    pub plus: Vec<Complex64>,
    pub minus: Vec<Complex64>,
}

/// Propagate a state through the interferometer: arm 1 imprints e^{-i nu tau1},
/// arm 2 imprints e^{-i nu tau2} and the offset phi, then a balanced splitter
/// recombines. Only tau1 - tau2 affects the output statistics.
pub fn interferometer_transform(
    state: &FockState,
    tau1: f64,
    tau2: f64,
    phi: f64,
) -> PortAmplitudes {
    let d = tau1 - tau2;
    let n = state.amp.len();
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for (i, &a) in state.amp.iter().enumerate() {
        let nu = state.grid.nu[i];
        // Split the arm phases into a unit-modulus common factor and the
        // small relative phase nu * d; evaluating nu * tau1 and nu * tau2
        // separately would round away the relative phase at large tau.
        let common = Complex64::from_polar(0.5, -nu * tau1) * a;
        let rel = Complex64::from_polar(1.0, phi + nu * d);
        plus.push(common * (1.0 + rel));
        minus.push(common * (1.0 - rel));
    }
    PortAmplitudes { grid: state.grid.clone(), plus, minus }
}

/// Mean photon number seen by a detector on one port.
pub fn detector_expectation(port: &[Complex64]) -> f64 {
    quad::kahan_sum(port.iter().map(|c| c.norm_sqr()))
}

impl PortAmplitudes {
    pub fn probabilities(&self) -> Ports {
        Ports {
            p_plus: detector_expectation(&self.plus),
            p_minus: detector_expectation(&self.minus),
        }
    }
}

/// Full pipeline: discretize on a spanning grid, interfere, read out.
pub fn oracle_ports(mode: &SpectralMode, bins: usize, dtau: f64, phi: f64) -> Result<Ports> {
    let grid = match mode {
        SpectralMode::Tabulated { .. } => FrequencyGrid::native(mode)?,
        _ => FrequencyGrid::spanning(mode, bins)?,
    };
    let state = FockState::load(mode, grid)?;
    Ok(interferometer_transform(&state, dtau, 0.0, phi).probabilities())
}
