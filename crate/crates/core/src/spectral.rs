//! Single-photon spectral amplitude modes.
//!
//! A mode is a normalized amplitude density f(nu) over angular frequency.
//! Everything downstream needs only two functionals of f: the shifted
//! self-overlap integral(|f(nu)|^2 e^{i nu dtau}) dnu, whose magnitude is the
//! fringe visibility, and the 1/e decay point of that magnitude, the
//! coherence time.
//!
//! Gaussian modes f = (sigma/pi)^{1/4} exp(-(sigma/2)(nu - nu0)^2) are the
//! reference case: their overlap has the closed form
//! e^{i nu0 dtau} e^{-(dtau / 2 sqrt(sigma))^2} and their coherence time is
//! t_perp = 2 sqrt(sigma). The overlap here is nevertheless evaluated by
//! quadrature over the truncated window nu0 +- 8 sigma^{-1/2} so that the
//! closed form remains an independent cross-check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{self, QuadTol};

/// Width of the effective support of an analytic gaussian, in units of
/// sigma^{-1/2} on each side of the peak. |f|^2 drops below 1e-28 outside.
pub const SUPPORT_SIGMAS: f64 = 8.0;

/// A mode is rejected when more than this fraction of its spectral weight
/// lies at non-positive frequencies, where a photon spectrum is meaningless.
pub const NEGATIVE_MASS_TOL: f64 = 1e-2;

const OVERLAP_TOL: QuadTol = QuadTol::new(1e-13, 1e-12);

/// One gaussian component of a multi-peak mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPeak {
    pub weight: f64,
    pub nu0: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralMode {
    Gaussian {
        nu0: f64,
        sigma: f64,
    },
    MultiGaussian {
        peaks: Vec<GaussianPeak>,
        /// Amplitude prefactor that makes integral(|f|^2) over the support = 1.
        norm: f64,
    },
    /// Amplitudes on an explicit frequency grid; overlaps use the trapezoid
    /// rule on the native grid. A single-line table is a monochromatic mode.
    Tabulated {
        nu: Vec<f64>,
        amp: Vec<Complex64>,
    },
}

fn gaussian_component(nu: f64, nu0: f64, sigma: f64) -> f64 {
    (sigma / std::f64::consts::PI).powf(0.25) * (-(sigma / 2.0) * (nu - nu0) * (nu - nu0)).exp()
}

impl SpectralMode {
    /// Gaussian mode centred at nu0 (rad/s) with width parameter sigma (s^2).
    pub fn gaussian(nu0: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::NonPhysicalSpectrum(format!("sigma must be > 0, got {sigma}")));
        }
        if !nu0.is_finite() || nu0 <= 0.0 {
            return Err(Error::NonPhysicalSpectrum(format!("nu0 must be > 0, got {nu0}")));
        }
        let mode = SpectralMode::Gaussian { nu0, sigma };
        mode.check_positive_support()?;
        Ok(mode)
    }

    /// Weighted sum of gaussian components, renormalized to unit total norm.
    pub fn multi_gaussian(peaks: Vec<GaussianPeak>) -> Result<Self> {
        if peaks.is_empty() {
            return Err(Error::NonPhysicalSpectrum("no gaussian components given".into()));
        }
        for p in &peaks {
            if !(p.sigma > 0.0) || !p.sigma.is_finite() || !p.nu0.is_finite() || !p.weight.is_finite()
            {
                return Err(Error::NonPhysicalSpectrum(format!(
                    "bad component (weight {}, nu0 {}, sigma {})",
                    p.weight, p.nu0, p.sigma
                )));
            }
        }
        if peaks.iter().all(|p| p.weight == 0.0) {
            return Err(Error::NonPhysicalSpectrum("all component weights are zero".into()));
        }
        let mut mode = SpectralMode::MultiGaussian { peaks, norm: 1.0 };
        let (lo, hi) = mode.support();
        let raw = quad::integrate_complex(
            |nu| Complex64::new(mode.raw_amplitude(nu).norm_sqr(), 0.0),
            lo,
            hi,
            OVERLAP_TOL,
        )
        .re;
        if !(raw > 0.0) {
            return Err(Error::NonPhysicalSpectrum("mode has zero norm".into()));
        }
        if let SpectralMode::MultiGaussian { norm, .. } = &mut mode {
            *norm = 1.0 / raw.sqrt();
        }
        mode.check_positive_support()?;
        Ok(mode)
    }

    /// Mode from explicit (nu, amplitude) samples; renormalized so the
    /// trapezoid rule on the native grid gives unit norm.
    pub fn tabulated(nu: Vec<f64>, amp: Vec<Complex64>) -> Result<Self> {
        if nu.is_empty() || nu.len() != amp.len() {
            return Err(Error::NonPhysicalSpectrum(format!(
                "need matching non-empty grids, got {} frequencies and {} amplitudes",
                nu.len(),
                amp.len()
            )));
        }
        if nu.iter().any(|x| !x.is_finite() || *x <= 0.0) {
            return Err(Error::NonPhysicalSpectrum(
                "tabulated frequencies must be finite and > 0".into(),
            ));
        }
        if nu.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonPhysicalSpectrum(
                "tabulated frequency grid must be strictly increasing".into(),
            ));
        }
        if amp.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonPhysicalSpectrum("tabulated amplitudes must be finite".into()));
        }
        let raw = trapezoid_norm_sqr(&nu, &amp);
        if !(raw > 0.0) {
            return Err(Error::NonPhysicalSpectrum("mode has zero norm".into()));
        }
        let scale = 1.0 / raw.sqrt();
        let amp = amp.into_iter().map(|a| a * scale).collect();
        Ok(SpectralMode::Tabulated { nu, amp })
    }

    /// Parse a whitespace-separated table: `nu amplitude_re [amplitude_im]`
    /// per line, `#` starts a comment.
    pub fn tabulated_from_str(text: &str) -> Result<Self> {
        let mut nu = Vec::new();
        let mut amp = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 2 && cols.len() != 3 {
                return Err(Error::Config(format!(
                    "mode table line {}: expected 2 or 3 columns, got {}",
                    idx + 1,
                    cols.len()
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>().map_err(|_| {
                    Error::Config(format!("mode table line {}: bad number {s:?}", idx + 1))
                })
            };
            nu.push(parse(cols[0])?);
            let re = parse(cols[1])?;
            let im = if cols.len() == 3 { parse(cols[2])? } else { 0.0 };
            amp.push(Complex64::new(re, im));
        }
        SpectralMode::tabulated(nu, amp)
    }

    /// Effective support (window of non-negligible amplitude).
    pub fn support(&self) -> (f64, f64) {
        match self {
            SpectralMode::Gaussian { nu0, sigma } => {
                let half = SUPPORT_SIGMAS / sigma.sqrt();
                (nu0 - half, nu0 + half)
            }
            SpectralMode::MultiGaussian { peaks, .. } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for p in peaks {
                    let half = SUPPORT_SIGMAS / p.sigma.sqrt();
                    lo = lo.min(p.nu0 - half);
                    hi = hi.max(p.nu0 + half);
                }
                (lo, hi)
            }
            SpectralMode::Tabulated { nu, .. } => (nu[0], *nu.last().unwrap()),
        }
    }

    fn raw_amplitude(&self, nu: f64) -> Complex64 {
        match self {
            SpectralMode::Gaussian { nu0, sigma } => {
                Complex64::new(gaussian_component(nu, *nu0, *sigma), 0.0)
            }
            SpectralMode::MultiGaussian { peaks, .. } => {
                let mut s = 0.0;
                for p in peaks {
                    s += p.weight * gaussian_component(nu, p.nu0, p.sigma);
                }
                Complex64::new(s, 0.0)
            }
            SpectralMode::Tabulated { nu: grid, amp } => {
                // Linear interpolation; zero outside the grid.
                if nu < grid[0] || nu > *grid.last().unwrap() || grid.len() == 1 {
                    if grid.len() == 1 && nu == grid[0] {
                        return amp[0];
                    }
                    return Complex64::new(0.0, 0.0);
                }
                let j = match grid.binary_search_by(|x| x.partial_cmp(&nu).unwrap()) {
                    Ok(j) => return amp[j],
                    Err(j) => j,
                };
                let t = (nu - grid[j - 1]) / (grid[j] - grid[j - 1]);
                amp[j - 1] * (1.0 - t) + amp[j] * t
            }
        }
    }

    /// Normalized amplitude density f(nu).
    pub fn amplitude(&self, nu: f64) -> Complex64 {
        match self {
            SpectralMode::MultiGaussian { norm, .. } => self.raw_amplitude(nu) * *norm,
            _ => self.raw_amplitude(nu),
        }
    }

    fn check_positive_support(&self) -> Result<()> {
        let (lo, hi) = self.support();
        if lo >= 0.0 {
            return Ok(());
        }
        let density = |nu: f64| Complex64::new(self.amplitude(nu).norm_sqr(), 0.0);
        let below = quad::integrate_complex(density, lo, 0.0_f64.min(hi), OVERLAP_TOL).re;
        let total = quad::integrate_complex(density, lo, hi, OVERLAP_TOL).re;
        let frac = below / total;
        if frac > NEGATIVE_MASS_TOL {
            return Err(Error::NonPhysicalSpectrum(format!(
                "support crosses nu = 0: fraction {frac:.3e} of the spectral weight is non-positive"
            )));
        }
        Ok(())
    }

    /// Shifted self-overlap integral(|f(nu)|^2 e^{i nu dtau}) dnu.
    ///
    /// Magnitude <= 1 with equality at dtau = 0; for a gaussian it equals
    /// e^{i nu0 dtau} e^{-(dtau/t_perp)^2}.
    pub fn overlap_with_shift(&self, dtau: f64) -> Complex64 {
        match self {
            SpectralMode::Tabulated { nu, amp } => {
                if nu.len() == 1 {
                    return Complex64::from_polar(1.0, nu[0] * dtau);
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 1..nu.len() {
                    let f0 = amp[j - 1].norm_sqr() * Complex64::from_polar(1.0, nu[j - 1] * dtau);
                    let f1 = amp[j].norm_sqr() * Complex64::from_polar(1.0, nu[j] * dtau);
                    acc += 0.5 * (nu[j] - nu[j - 1]) * (f0 + f1);
                }
                acc
            }
            _ => {
                let (lo, hi) = self.support();
                quad::integrate_complex(
                    |nu| {
                        Complex64::from_polar(1.0, nu * dtau) * self.amplitude(nu).norm_sqr()
                    },
                    lo,
                    hi,
                    OVERLAP_TOL,
                )
            }
        }
    }

    /// Total squared norm as the downstream machinery sees it (should be 1).
    pub fn norm_sqr(&self) -> f64 {
        match self {
            SpectralMode::Tabulated { nu, amp } => trapezoid_norm_sqr(nu, amp),
            _ => {
                let (lo, hi) = self.support();
                quad::integrate(|nu| self.amplitude(nu).norm_sqr(), lo, hi, OVERLAP_TOL)
            }
        }
    }

    /// Mean angular frequency integral(nu |f|^2) dnu.
    pub fn mean_frequency(&self) -> f64 {
        match self {
            SpectralMode::Gaussian { nu0, .. } => *nu0,
            SpectralMode::Tabulated { nu, amp } => {
                if nu.len() == 1 {
                    return nu[0];
                }
                let mut acc = 0.0;
                for j in 1..nu.len() {
                    let f0 = nu[j - 1] * amp[j - 1].norm_sqr();
                    let f1 = nu[j] * amp[j].norm_sqr();
                    acc += 0.5 * (nu[j] - nu[j - 1]) * (f0 + f1);
                }
                acc
            }
            _ => {
                let (lo, hi) = self.support();
                quad::integrate(|nu| nu * self.amplitude(nu).norm_sqr(), lo, hi, OVERLAP_TOL)
            }
        }
    }

    /// RMS spectral width around the mean frequency.
    pub fn rms_width(&self) -> f64 {
        let mean = self.mean_frequency();
        let var = match self {
            SpectralMode::Gaussian { sigma, .. } => 1.0 / (2.0 * sigma),
            SpectralMode::Tabulated { nu, amp } => {
                if nu.len() == 1 {
                    return 0.0;
                }
                let mut acc = 0.0;
                for j in 1..nu.len() {
                    let f0 = (nu[j - 1] - mean).powi(2) * amp[j - 1].norm_sqr();
                    let f1 = (nu[j] - mean).powi(2) * amp[j].norm_sqr();
                    acc += 0.5 * (nu[j] - nu[j - 1]) * (f0 + f1);
                }
                acc
            }
            _ => {
                let (lo, hi) = self.support();
                quad::integrate(
                    |nu| (nu - mean) * (nu - mean) * self.amplitude(nu).norm_sqr(),
                    lo,
                    hi,
                    OVERLAP_TOL,
                )
            }
        };
        var.max(0.0).sqrt()
    }

    /// Time shift at which |overlap| first decays to 1/e.
    ///
    /// Gaussian modes use the closed form 2 sqrt(sigma). Other modes are
    /// scanned outward and the first crossing refined by bisection; a mode
    /// whose overlap never decays inside the search window (e.g. a
    /// monochromatic line) has no finite coherence time.
    pub fn coherence_time(&self) -> Result<f64> {
        if let SpectralMode::Gaussian { sigma, .. } = self {
            return Ok(2.0 * sigma.sqrt());
        }
        let target = (-1.0f64).exp();
        let w = self.rms_width();
        let (lo, hi) = self.support();
        let span = hi - lo;
        if w <= 1e-12 * (self.mean_frequency().abs() + 1.0) || span <= 0.0 {
            return Err(Error::NoFiniteCoherenceTime);
        }
        // Gaussian-equivalent 1/e time sets the scale; the spectral span sets
        // the fastest possible beat so the scan cannot skip a crossing.
        let t_gauss = std::f64::consts::SQRT_2 / w;
        let step = (t_gauss.min(std::f64::consts::TAU / span)) / 64.0;
        let t_max = 40.0 * t_gauss;
        let mut prev = 0.0;
        let mut t = step;
        while t <= t_max {
            if self.overlap_with_shift(t).norm() < target {
                // Bisect the bracket [prev, t].
                let mut a = prev;
                let mut b = t;
                for _ in 0..200 {
                    let m = 0.5 * (a + b);
                    if self.overlap_with_shift(m).norm() < target {
                        b = m;
                    } else {
                        a = m;
                    }
                    if (b - a) <= 1e-14 * b {
                        break;
                    }
                }
                return Ok(0.5 * (a + b));
            }
            prev = t;
            t += step;
        }
        Err(Error::NoFiniteCoherenceTime)
    }
}

/// Threshold shift at which a gaussian mode's visibility drops below 1/n:
/// t = 2 sqrt(sigma ln n).
pub fn generalized_threshold(sigma: f64, n: f64) -> Result<f64> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::Domain(format!("sigma must be > 0, got {sigma}")));
    }
    if !(n > 1.0) || !n.is_finite() {
        return Err(Error::Domain(format!("visibility divisor must be > 1, got {n}")));
    }
    Ok(2.0 * (sigma * n.ln()).sqrt())
}

fn trapezoid_norm_sqr(nu: &[f64], amp: &[Complex64]) -> f64 {
    if nu.len() == 1 {
        return amp[0].norm_sqr();
    }
    let mut acc = 0.0;
    for j in 1..nu.len() {
        acc += 0.5 * (nu[j] - nu[j - 1]) * (amp[j - 1].norm_sqr() + amp[j].norm_sqr());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const NU0: f64 = 4e15;
    const SIGMA: f64 = 2.5e-31; // t_perp = 1e-15 s

    #[test]
    fn gaussian_accepts_reference_parameters() {
        let m = SpectralMode::gaussian(NU0, SIGMA).unwrap();
        assert_relative_eq!(m.coherence_time().unwrap(), 1e-15, max_relative = 1e-12);
    }

    #[test]
    fn gaussian_rejects_support_crossing_zero() {
        match SpectralMode::gaussian(1e3, SIGMA) {
            Err(Error::NonPhysicalSpectrum(msg)) => assert!(msg.contains("nu = 0")),
            other => panic!("expected non-physical spectrum, got {other:?}"),
        }
    }

    #[test]
    fn gaussian_is_normalized() {
        let m = SpectralMode::gaussian(NU0, SIGMA).unwrap();
        assert_relative_eq!(m.norm_sqr(), 1.0, max_relative = 1e-10);
    }

    #[test]
    fn overlap_magnitude_and_phase_match_closed_form() {
        // Frozen: |O| = e^{-1}, arg(O) = nu0 dtau = 4 rad (mod 2 pi).
        let m = SpectralMode::gaussian(NU0, SIGMA).unwrap();
        let o = m.overlap_with_shift(1e-15);
        assert_relative_eq!(o.norm(), 0.36787944117144233, max_relative = 1e-10);
        let phase = o.arg().rem_euclid(std::f64::consts::TAU);
        assert!((phase - 4.0).abs() < 1e-9, "phase = {phase}");
    }

    #[test]
    fn overlap_at_zero_shift_is_unity() {
        for mode in [
            SpectralMode::gaussian(NU0, SIGMA).unwrap(),
            SpectralMode::multi_gaussian(vec![
                GaussianPeak { weight: 1.0, nu0: 1.9e16, sigma: 1e-28 },
                GaussianPeak { weight: 1.0, nu0: 2.1e16, sigma: 1e-28 },
            ])
            .unwrap(),
        ] {
            let o = mode.overlap_with_shift(0.0);
            assert_relative_eq!(o.re, 1.0, max_relative = 1e-10);
            assert!(o.im.abs() < 1e-12);
        }
    }

    #[test]
    fn overlap_tracks_gaussian_closed_form_over_shifts() {
        let m = SpectralMode::gaussian(NU0, SIGMA).unwrap();
        let t_perp = 2.0 * SIGMA.sqrt();
        for k in [0.25, 0.5, 1.0, 1.7, 2.5] {
            let dtau = k * t_perp;
            let o = m.overlap_with_shift(dtau);
            let expected = Complex64::from_polar((-(dtau / t_perp).powi(2)).exp(), NU0 * dtau);
            assert!((o - expected).norm() < 1e-9, "k = {k}");
        }
    }

    #[test]
    fn double_peak_overlap_beats_and_revives() {
        // Two equal peaks split by delta: |O| = e^{-dtau^2/(4 sigma_p)}
        // |cos(delta dtau / 2)|, full revival at dtau = 2 pi / delta.
        let delta = 2e15;
        let sigma_p = 1e-28;
        let nu0 = 2e16;
        let m = SpectralMode::multi_gaussian(vec![
            GaussianPeak { weight: 1.0, nu0: nu0 - delta / 2.0, sigma: sigma_p },
            GaussianPeak { weight: 1.0, nu0: nu0 + delta / 2.0, sigma: sigma_p },
        ])
        .unwrap();
        for dtau in [2e-16, 8e-16, 1.5e-15, std::f64::consts::TAU / delta] {
            let mag = m.overlap_with_shift(dtau).norm();
            let expected =
                (-(dtau * dtau) / (4.0 * sigma_p)).exp() * (delta * dtau / 2.0).cos().abs();
            assert!((mag - expected).abs() < 1e-9, "dtau = {dtau:e}");
        }
        // Frozen revival magnitude at 2 pi / delta: 0.97562790415674020.
        let revival = m.overlap_with_shift(std::f64::consts::TAU / delta).norm();
        assert_relative_eq!(revival, 0.9756279041567402, max_relative = 1e-9);
    }

    #[test]
    fn double_peak_coherence_time_is_first_crossing() {
        let delta = 2e15;
        let m = SpectralMode::multi_gaussian(vec![
            GaussianPeak { weight: 1.0, nu0: 1.9e16, sigma: 1e-28 },
            GaussianPeak { weight: 1.0, nu0: 2.1e16, sigma: 1e-28 },
        ])
        .unwrap();
        let tc = m.coherence_time().unwrap();
        let target = (-1.0f64).exp();
        assert!((m.overlap_with_shift(tc).norm() - target).abs() < 1e-9);
        // Verified monotone up to the crossing (dense scan).
        let mut prev = 1.0 + 1e-12;
        for i in 1..=50 {
            let mag = m.overlap_with_shift(tc * i as f64 / 50.0).norm();
            assert!(mag <= prev + 1e-9, "not monotone before first crossing");
            prev = mag;
        }
        // The beat dominates: crossing well before a pure gaussian's would be.
        assert!(tc < 2.0 / delta * 1.3);
    }

    #[test]
    fn generalized_threshold_reference_value() {
        // Frozen: 2 sqrt(sigma ln 2) at sigma = 2.5e-31.
        let t = generalized_threshold(SIGMA, 2.0).unwrap();
        assert_relative_eq!(t, 8.325546111576978e-16, max_relative = 1e-13);
        assert!(generalized_threshold(SIGMA, 1.0).is_err());
        assert!(generalized_threshold(-1.0, 2.0).is_err());
    }

    #[test]
    fn threshold_is_consistent_with_overlap_decay() {
        let m = SpectralMode::gaussian(NU0, SIGMA).unwrap();
        for n in [2.0, 3.0, 10.0] {
            let t = generalized_threshold(SIGMA, n).unwrap();
            assert_relative_eq!(m.overlap_with_shift(t).norm(), 1.0 / n, max_relative = 1e-8);
        }
    }

    #[test]
    fn tabulated_parsing_and_normalization() {
        let text = "# frequency  re  im\n\
                    1.0e15  0.5\n\
                    2.0e15  1.0  0.25   # peak\n\
                    3.0e15  0.5\n";
        let m = SpectralMode::tabulated_from_str(text).unwrap();
        assert_relative_eq!(m.norm_sqr(), 1.0, max_relative = 1e-12);
        assert_relative_eq!(m.overlap_with_shift(0.0).re, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn tabulated_rejects_bad_grids() {
        assert!(SpectralMode::tabulated_from_str("2e15 1.0\n1e15 1.0\n").is_err());
        assert!(SpectralMode::tabulated_from_str("-1e15 1.0\n2e15 1.0\n").is_err());
        assert!(SpectralMode::tabulated_from_str("1e15 1.0 2.0 3.0\n").is_err());
        assert!(SpectralMode::tabulated_from_str("# nothing\n").is_err());
    }

    #[test]
    fn monochromatic_line_has_no_finite_coherence_time() {
        let m = SpectralMode::tabulated_from_str("5.0e15 1.0\n").unwrap();
        assert_eq!(m.overlap_with_shift(0.3e-15).norm(), 1.0);
        assert!(matches!(m.coherence_time(), Err(Error::NoFiniteCoherenceTime)));
    }

    #[test]
    fn mean_frequency_of_symmetric_modes() {
        let g = SpectralMode::gaussian(NU0, SIGMA).unwrap();
        assert_relative_eq!(g.mean_frequency(), NU0, max_relative = 1e-12);
        let m = SpectralMode::multi_gaussian(vec![
            GaussianPeak { weight: 1.0, nu0: 1.9e16, sigma: 1e-28 },
            GaussianPeak { weight: 1.0, nu0: 2.1e16, sigma: 1e-28 },
        ])
        .unwrap();
        assert_relative_eq!(m.mean_frequency(), 2e16, max_relative = 1e-10);
    }
}
