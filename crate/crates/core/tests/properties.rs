//! Randomized cross-module invariants.

use photon_clock::interferometer::{self, FringeScan};
use photon_clock::spacetime::{proper_time_dilation, Body, Geometry};
use photon_clock::spectral::{GaussianPeak, SpectralMode};
use photon_clock::toy::{self, CouplingModel, Occupation, SystemSpec};
use photon_clock::{fock, franson};
use proptest::prelude::*;

/// Gaussian whose spectral mass below nu = 0 is negligible for any draw:
/// the center sits at least sqrt(2 k) >= 5.6 widths above zero.
fn safe_gaussian() -> impl Strategy<Value = (SpectralMode, f64, f64)> {
    (1e15f64..1e17, 16.0f64..1e4).prop_map(|(nu0, k)| {
        let sigma = k / (nu0 * nu0);
        let mode = SpectralMode::gaussian(nu0, sigma).unwrap();
        (mode, 2.0 * sigma.sqrt(), nu0)
    })
}

fn safe_multi_gaussian() -> impl Strategy<Value = SpectralMode> {
    (
        1e16f64..1e17,
        proptest::collection::vec((0.2f64..1.0, -3.0f64..3.0, 0.3f64..3.0), 1..4),
    )
        .prop_map(|(nu0, raw)| {
            let base_sigma = 400.0 / (nu0 * nu0);
            let width = base_sigma.sqrt().recip();
            let peaks = raw
                .into_iter()
                .map(|(weight, offset, scale)| GaussianPeak {
                    weight,
                    nu0: nu0 + offset * width,
                    sigma: base_sigma * scale,
                })
                .collect();
            SpectralMode::multi_gaussian(peaks).unwrap()
        })
}

fn occupations() -> impl Strategy<Value = Occupation> {
    prop_oneof![
        Just(Occupation::SingleParticleTwoMode),
        (1u32..5).prop_map(Occupation::Fock),
        (0.5f64..100.0).prop_map(Occupation::Coherent),
    ]
}

proptest! {
    #[test]
    fn overlap_is_bounded_even_and_carries_the_center_phase(
        (mode, t_perp, nu0) in safe_gaussian(),
        factor in -5.0f64..5.0,
    ) {
        let dtau = factor * t_perp;
        let overlap = mode.overlap_with_shift(dtau);
        prop_assert!(overlap.norm() <= 1.0 + 1e-9);
        let mirrored = mode.overlap_with_shift(-dtau);
        prop_assert!((overlap.norm() - mirrored.norm()).abs() < 1e-12);
        // The phase is nu0 dtau up to whole turns, checked where the overlap
        // stands clear of the quadrature's absolute tolerance; below that the
        // argument is integration noise.
        if overlap.norm() > 1e-6 {
            let residual = overlap.arg() - nu0 * dtau;
            prop_assert!(residual.cos() > 1.0 - 1e-8, "residual {residual}");
        }
    }

    #[test]
    fn gaussian_overlap_matches_the_closed_form(
        (mode, t_perp, _nu0) in safe_gaussian(),
        factor in 0.0f64..5.0,
    ) {
        let dtau = factor * t_perp;
        let envelope = interferometer::gaussian_visibility(t_perp, dtau);
        prop_assert!((mode.overlap_with_shift(dtau).norm() - envelope).abs() < 1e-9);
    }

    #[test]
    fn detector_ports_conserve_probability(
        (mode, t_perp, _nu0) in safe_gaussian(),
        factor in 0.0f64..5.0,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let ports = interferometer::detection_probabilities(&mode, factor * t_perp, phi);
        // The overlap quadrature may overshoot unity by its own tolerance.
        prop_assert!(ports.p_plus >= -1e-9 && ports.p_plus <= 1.0 + 1e-9);
        prop_assert!(ports.p_minus >= -1e-9 && ports.p_minus <= 1.0 + 1e-9);
        prop_assert!((ports.p_plus + ports.p_minus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn multi_peak_modes_are_normalized_with_bounded_overlap(
        mode in safe_multi_gaussian(),
        dtau in 0.0f64..2e-15,
    ) {
        prop_assert!((mode.norm_sqr() - 1.0).abs() < 1e-9);
        prop_assert!(mode.overlap_with_shift(dtau).norm() <= 1.0 + 1e-9);
        let ports = interferometer::detection_probabilities(&mode, dtau, 0.3);
        prop_assert!((ports.p_plus + ports.p_minus - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scanned_fringes_recover_the_overlap_and_satisfy_duality(
        (mode, t_perp, _nu0) in safe_gaussian(),
        factor in 0.0f64..2.5,
    ) {
        let dtau = factor * t_perp;
        let scan = FringeScan::of_mode(&mode, dtau, 256).unwrap();
        let fringe = interferometer::fringe_parameters(&scan).unwrap();
        let overlap = mode.overlap_with_shift(dtau);
        prop_assert!((fringe.visibility - overlap.norm()).abs() < 1e-6);
        let residual = fringe.phase - overlap.arg();
        prop_assert!(residual.cos() > 1.0 - 1e-6, "residual {residual}");
        // Which-path information and visibility exhaust the quantum state.
        let d = interferometer::distinguishability(fringe.visibility).unwrap();
        prop_assert!((fringe.visibility.powi(2) + d.powi(2) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn dilation_grows_with_separation_and_projects_with_tilt(
        length in 1e3f64..1e6,
        h_low in 0.0f64..3e4,
        extra in 1.0f64..3e4,
        theta in 0.0f64..1.3,
    ) {
        let earth = Body::earth();
        let low = proper_time_dilation(
            &Geometry::vertical_photon(length, h_low).unwrap(),
            &earth,
        )
        .unwrap();
        let high = proper_time_dilation(
            &Geometry::vertical_photon(length, h_low + extra).unwrap(),
            &earth,
        )
        .unwrap();
        prop_assert!(high.weak_field > low.weak_field);
        prop_assert!(high.exact > low.exact);
        // Exact never exceeds the uniform-field form and stays within the
        // h/r correction of it.
        prop_assert!(high.exact <= high.weak_field);
        prop_assert!(high.exact > high.weak_field * (1.0 - 0.011));
        let tilted = proper_time_dilation(
            &Geometry::new(length, h_low + extra, theta, photon_clock::constants::C).unwrap(),
            &earth,
        )
        .unwrap();
        prop_assert!(
            (tilted.weak_field - high.weak_field * theta.cos()).abs()
                <= 1e-12 * high.weak_field
        );
    }

    #[test]
    fn toy_models_conserve_probability_and_bound_visibility(
        (mode, _t_perp, _nu0) in safe_gaussian(),
        levels in 2usize..32,
        occupation in occupations(),
        length in 1e4f64..1e6,
        separation in 0.0f64..3e4,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let spec = SystemSpec::photon(&mode, levels, occupation).unwrap();
        let geometry = Geometry::vertical_photon(length, separation).unwrap();
        let earth = Body::earth();
        for model in CouplingModel::ALL {
            let fringe = toy::predict(model, &spec, &geometry, &earth).unwrap();
            prop_assert!(fringe.visibility >= 0.0 && fringe.visibility <= 1.0);
            prop_assert!(fringe.phase >= 0.0 && fringe.phase < std::f64::consts::TAU);
            let ports = interferometer::ports(fringe.visibility, fringe.phase, phi);
            prop_assert!((ports.p_plus + ports.p_minus - 1.0).abs() < 1e-12);
            prop_assert!(ports.p_plus >= 0.0 && ports.p_minus >= 0.0);
        }
        // At full localization the interpolation is the mean-energy model,
        // bit for bit.
        if matches!(occupation, Occupation::SingleParticleTwoMode) {
            let a = toy::predict(CouplingModel::Interpolating, &spec, &geometry, &earth).unwrap();
            let b = toy::predict(
                CouplingModel::SemiClassicalMeanEnergy,
                &spec,
                &geometry,
                &earth,
            )
            .unwrap();
            prop_assert_eq!(a.phase, b.phase);
            prop_assert_eq!(a.visibility, b.visibility);
        }
    }

    #[test]
    fn binned_oracle_conserves_probability_and_tracks_the_closed_form(
        (mode, t_perp, nu0) in safe_gaussian(),
        bins in 64usize..512,
        factor in 0.0f64..3.0,
        phi in 0.0f64..std::f64::consts::TAU,
    ) {
        let dtau = factor * t_perp;
        let ports = fock::oracle_ports(&mode, bins, dtau, phi).unwrap();
        prop_assert!((ports.p_plus + ports.p_minus - 1.0).abs() < 1e-10);
        prop_assert!(ports.p_plus >= -1e-9 && ports.p_minus >= -1e-9);
        let closed = interferometer::gaussian_ports(nu0, t_perp, dtau, phi);
        prop_assert!((ports.p_plus - closed.p_plus).abs() < 5e-3);
    }

    #[test]
    fn coincidences_never_signal_and_respect_tsirelson(
        phi1 in -10.0f64..10.0,
        phi2 in -10.0f64..10.0,
        a in -7.0f64..7.0,
        a_prime in -7.0f64..7.0,
        b in -7.0f64..7.0,
        b_prime in -7.0f64..7.0,
    ) {
        let p = |c1, c2| franson::coincidence_probability(c1, c2, phi1, phi2).unwrap();
        prop_assert_eq!(p(1, 1) + p(1, -1), 0.5);
        prop_assert_eq!(p(-1, 1) + p(-1, -1), 0.5);
        prop_assert_eq!(p(1, 1) + p(-1, 1), 0.5);
        prop_assert_eq!(p(1, -1) + p(-1, -1), 0.5);
        let s = franson::chsh(a, a_prime, b, b_prime);
        prop_assert!(s <= 2.0 * std::f64::consts::SQRT_2 + 1e-12);
    }
}

/// A detection fringe carries exactly one harmonic: the discrete spectrum of
/// a scan has all its off-fundamental bins at rounding level.
#[test]
fn fringe_scans_are_spectrally_pure() {
    let mode = SpectralMode::multi_gaussian(vec![
        GaussianPeak { weight: 0.7, nu0: 4e16, sigma: 4e-31 },
        GaussianPeak { weight: 0.3, nu0: 4.3e16, sigma: 2e-31 },
    ])
    .unwrap();
    let dtau = 8e-16;
    let n = 256;
    let scan = FringeScan::of_mode(&mode, dtau, n).unwrap();
    let mean = scan.p_plus.iter().take(n).sum::<f64>() / n as f64;
    let mut buf: Vec<rustfft::num_complex::Complex<f64>> = scan
        .p_plus
        .iter()
        .take(n) // drop the duplicated 2 pi endpoint
        .map(|&p| rustfft::num_complex::Complex::new(p - mean, 0.0))
        .collect();
    rustfft::FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let overlap = mode.overlap_with_shift(dtau);
    let expected = n as f64 * overlap.norm() / 4.0;
    assert!(
        (buf[1].norm() - expected).abs() < 1e-9 * n as f64,
        "fundamental {} vs {expected}",
        buf[1].norm()
    );
    // arg X[1] is the fringe phase.
    let residual = buf[1].arg() - overlap.arg();
    assert!(residual.cos() > 1.0 - 1e-9, "residual {residual}");
    for (k, value) in buf.iter().enumerate().take(n - 1).skip(2) {
        assert!(
            value.norm() < 1e-9 * n as f64,
            "harmonic {k} has weight {}",
            value.norm()
        );
    }
}

/// Flipping the sign of the delay in the analytic model is caught by the
/// discrete oracle at any phase setting with a sine component.
#[test]
fn the_oracle_catches_a_delay_sign_error() {
    let mode = SpectralMode::gaussian(4e15, 2.5e-31).unwrap();
    let (dtau, phi) = (1e-15, 0.7);
    let oracle = fock::oracle_ports(&mode, 4096, dtau, phi).unwrap();
    let right = interferometer::gaussian_ports(4e15, 1e-15, dtau, phi);
    let wrong = interferometer::gaussian_ports(4e15, 1e-15, -dtau, phi);
    assert!((oracle.p_plus - right.p_plus).abs() < 1e-6);
    assert!((oracle.p_plus - wrong.p_plus).abs() > 0.1);
}
