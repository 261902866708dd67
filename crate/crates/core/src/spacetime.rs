//! Weak-field spacetime helpers for a static, spherically symmetric body.
//!
//! Conventions: the interferometer base sits at the body's surface radius r;
//! the second arm runs at r + h_eff where h_eff = h cos(theta), so theta = 0 is
//! a vertical interferometer and theta = pi/2 a horizontal one. Signals
//! traverse the horizontal arms of coordinate length l at speed v (v = c for
//! photons). All quantities SI.

use crate::constants::{C, C2};
use crate::error::{Error, Result};
use crate::quad::{self, QuadTol};

/// Maximum allowed arm separation relative to the body radius. The linearized
/// dilation formulas assume h << r.
pub const MAX_SEPARATION_RATIO: f64 = 1e-2;

/// A gravitating body described by its standard gravitational parameter GM and
/// the radius at which the experiment sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Body {
    gm: f64,
    radius: f64,
}

impl Body {
    pub fn new(gm: f64, radius: f64) -> Result<Self> {
        if !(gm >= 0.0) || !gm.is_finite() {
            return Err(Error::Domain(format!("GM must be finite and >= 0, got {gm}")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Domain(format!("radius must be finite and > 0, got {radius}")));
        }
        Ok(Body { gm, radius })
    }

    /// Body with a prescribed surface gravity g at `radius` (GM = g r^2).
    /// Useful for replicating uniform-field numbers exactly.
    pub fn from_surface_gravity(g: f64, radius: f64) -> Result<Self> {
        if !(g >= 0.0) || !g.is_finite() {
            return Err(Error::Domain(format!("surface gravity must be >= 0, got {g}")));
        }
        Body::new(g * radius * radius, radius)
    }

    pub fn earth() -> Self {
        Body {
            gm: crate::constants::GM_EARTH,
            radius: crate::constants::R_EARTH,
        }
    }

    pub fn gm(&self) -> f64 {
        self.gm
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Surface gravity g = GM / r^2, derived rather than hard-coded.
    pub fn surface_gravity(&self) -> f64 {
        self.gm / (self.radius * self.radius)
    }
}

/// Interferometer geometry: horizontal arm length l, arm separation h,
/// tilt theta away from vertical, and signal speed v along the arms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    length: f64,
    separation: f64,
    theta: f64,
    signal_speed: f64,
}

impl Geometry {
    pub fn new(length: f64, separation: f64, theta: f64, signal_speed: f64) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Domain(format!("arm length must be > 0, got {length}")));
        }
        if !(separation >= 0.0) || !separation.is_finite() {
            return Err(Error::Domain(format!("arm separation must be >= 0, got {separation}")));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::Domain(format!("theta must lie in [0, pi/2], got {theta}")));
        }
        if !(signal_speed > 0.0) || signal_speed > C {
            return Err(Error::Domain(format!(
                "signal speed must lie in (0, c], got {signal_speed}"
            )));
        }
        Ok(Geometry { length, separation, theta, signal_speed })
    }

    /// Vertical photon interferometer (theta = 0, v = c).
    pub fn vertical_photon(length: f64, separation: f64) -> Result<Self> {
        Geometry::new(length, separation, 0.0, C)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn signal_speed(&self) -> f64 {
        self.signal_speed
    }

    /// Radial component of the arm separation, h cos(theta).
    pub fn effective_separation(&self) -> f64 {
        self.separation * self.theta.cos()
    }

    /// Lab-frame transit time l / v of a signal along one arm.
    pub fn transit_time(&self) -> f64 {
        self.length / self.signal_speed
    }
}

/// Newtonian potential V(r) = -GM / r (J/kg).
pub fn potential(body: &Body, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be finite and > 0, got {r} m")));
    }
    Ok(-body.gm / r)
}

/// Metric factor 1 + 2V(r)/c^2 of the static weak-field line element.
fn metric_factor(body: &Body, r: f64) -> Result<f64> {
    let f = 1.0 + 2.0 * potential(body, r)? / C2;
    if f <= 0.0 {
        return Err(Error::InsideHorizon { r });
    }
    Ok(f)
}

/// Coordinate time for one arm traversal at radius r: l / (v sqrt(1 + 2V/c^2)).
pub fn coordinate_time(geometry: &Geometry, body: &Body, r: f64) -> Result<f64> {
    let f = metric_factor(body, r)?;
    Ok(geometry.length / (geometry.signal_speed * f.sqrt()))
}

/// Differential proper time accumulated between the two arms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dilation {
    /// Full metric expression, all orders in V/c^2 and in h/r.
    pub exact: f64,
    /// Uniform-field form (l/v) g h_eff / c^2 with g the surface gravity;
    /// reduces to l g h / c^3 for a vertical photon interferometer.
    pub weak_field: f64,
}

/// Proper-time difference between the upper and lower arm traversals, as
/// registered at the upper arm. Returns both the exact metric expression and
/// its standard first-order approximation so callers can quantify the
/// neglected terms.
pub fn proper_time_dilation(geometry: &Geometry, body: &Body) -> Result<Dilation> {
    let r = body.radius;
    let h_eff = geometry.effective_separation();
    if h_eff / r >= MAX_SEPARATION_RATIO {
        return Err(Error::Domain(format!(
            "arm separation too large: h_eff/r = {:.3e} (limit {MAX_SEPARATION_RATIO})",
            h_eff / r
        )));
    }
    metric_factor(body, r)?;
    metric_factor(body, r + h_eff)?;

    let t = geometry.transit_time();
    let g = body.surface_gravity();
    let weak_field = t * g * h_eff / C2;

    // exact = t [ sqrt(1 + b) / sqrt(1 + a) - 1 ] with a, b = 2V/c^2 at the
    // two radii. Forming b - a analytically avoids the catastrophic
    // cancellation of two numbers that differ at the 1e-19 level.
    let a = -2.0 * body.gm / (C2 * r);
    let b_minus_a = 2.0 * body.gm * h_eff / (C2 * r * (r + h_eff));
    let exact = if h_eff == 0.0 {
        0.0
    } else {
        t * (0.5 * (b_minus_a / (1.0 + a)).ln_1p()).exp_m1()
    };

    Ok(Dilation { exact, weak_field })
}

/// Uniform-field dilation for an interferometer of enclosed area A = l h:
/// dtau = g A / (v c^2). This is the mapping used by area sweeps and the
/// feasibility planners.
pub fn dilation_from_area(g: f64, area: f64, signal_speed: f64) -> Result<f64> {
    if !(g >= 0.0) || !area.is_finite() || area < 0.0 {
        return Err(Error::Domain(format!("need g >= 0 and area >= 0, got g = {g}, area = {area}")));
    }
    if !(signal_speed > 0.0) || signal_speed > C {
        return Err(Error::Domain(format!("signal speed must lie in (0, c], got {signal_speed}")));
    }
    Ok(g * area / (signal_speed * C2))
}

/// Proper radial distance between coordinate radii r and r + h_coord,
/// integral of dr' / sqrt(1 - 2GM/(c^2 r')). Evaluated by adaptive quadrature
/// with an absolute tolerance of 1e-15 h and relative tolerance 1e-12.
pub fn proper_radial_distance(body: &Body, r: f64, h_coord: f64) -> Result<f64> {
    if !(h_coord >= 0.0) || !h_coord.is_finite() {
        return Err(Error::Domain(format!("coordinate height must be >= 0, got {h_coord}")));
    }
    metric_factor(body, r)?; // also validates r > 0; integrand grows toward r
    if h_coord == 0.0 {
        return Ok(0.0);
    }
    if body.gm == 0.0 {
        // Flat space: proper distance equals coordinate distance identically.
        return Ok(h_coord);
    }
    let rs = 2.0 * body.gm / C2;
    let tol = QuadTol::new(1e-15 * h_coord, 1e-12);
    Ok(quad::integrate(|rp| 1.0 / (1.0 - rs / rp).sqrt(), r, r + h_coord, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{GM_EARTH, R_EARTH};
    use approx::assert_relative_eq;

    #[test]
    fn potential_at_earth_radius() {
        // Frozen from a 50-digit evaluation of -GM/r.
        let body = Body::new(3.986e14, R_EARTH).unwrap();
        let v = potential(&body, R_EARTH).unwrap();
        assert_relative_eq!(v, -6.256474650761262e7, max_relative = 1e-14);
    }

    #[test]
    fn potential_rejects_nonpositive_radius() {
        let body = Body::earth();
        assert!(matches!(potential(&body, 0.0), Err(Error::Domain(_))));
        assert!(matches!(potential(&body, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn flat_space_coordinate_time_is_l_over_c() {
        let body = Body::new(0.0, 1.0).unwrap();
        let geom = Geometry::vertical_photon(1.0, 0.0).unwrap();
        assert_eq!(coordinate_time(&geom, &body, 1.0).unwrap(), 1.0 / C);
    }

    #[test]
    fn earth_surface_coordinate_time_matches_first_order_series() {
        let body = Body::earth();
        let geom = Geometry::vertical_photon(1e5, 0.0).unwrap();
        let exact = coordinate_time(&geom, &body, R_EARTH).unwrap();
        let v = potential(&body, R_EARTH).unwrap();
        let series = 1e5 / C * (1.0 - v / C2);
        // Next series term is 1.5 (V/c^2)^2 ~ 7e-19 relative.
        assert_relative_eq!(exact, series, max_relative = 1e-15);
    }

    #[test]
    fn horizon_is_rejected() {
        let body = Body::new(1e30, 1.0).unwrap(); // r_s = 2GM/c^2 ~ 2e13 m
        let geom = Geometry::vertical_photon(1.0, 0.0).unwrap();
        assert!(matches!(
            coordinate_time(&geom, &body, 1e3),
            Err(Error::InsideHorizon { .. })
        ));
    }

    #[test]
    fn dilation_example_geometry() {
        // l = 1e5 m, h = 2.752e4 m, theta = 0, v = c, g = 9.81 m/s^2.
        // Frozen: l g h / c^3 evaluated at 50 digits.
        let body = Body::from_surface_gravity(9.81, R_EARTH).unwrap();
        let geom = Geometry::vertical_photon(1e5, 2.752e4).unwrap();
        let d = proper_time_dilation(&geom, &body).unwrap();
        assert_relative_eq!(d.weak_field, 1.0019714065417304e-15, max_relative = 1e-13);
        // The exact value differs at order h/r (frozen ratio 0.99569900677832841).
        assert_relative_eq!(d.exact / d.weak_field, 0.9956990067783284, max_relative = 1e-10);
    }

    #[test]
    fn horizontal_interferometer_has_zero_dilation() {
        let body = Body::earth();
        let geom = Geometry::new(1e5, 2.752e4, std::f64::consts::FRAC_PI_2, C).unwrap();
        let d = proper_time_dilation(&geom, &body).unwrap();
        // cos(pi/2) leaves a ~1e-17 ulp residue in h_eff; the dilation it
        // produces is ~1e-36 s, zero for every practical purpose.
        assert!(d.exact.abs() < 1e-30);
        assert!(d.weak_field.abs() < 1e-30);
    }

    #[test]
    fn rotation_law_is_cosine() {
        let body = Body::earth();
        let up = Geometry::vertical_photon(1e5, 1e3).unwrap();
        let d0 = proper_time_dilation(&up, &body).unwrap();
        for theta in [0.1, 0.7, 1.2] {
            let tilted = Geometry::new(1e5, 1e3, theta, C).unwrap();
            let dt = proper_time_dilation(&tilted, &body).unwrap();
            assert_relative_eq!(dt.weak_field / d0.weak_field, theta.cos(), max_relative = 1e-12);
        }
    }

    #[test]
    fn exact_tracks_weak_field_for_tiny_separations() {
        // For h/r << |V|/c^2 the two expressions differ only at second order
        // in the potential, bounded by 3 |V(r)|/c^2.
        let body = Body::earth();
        let bound = 3.0 * (potential(&body, R_EARTH).unwrap().abs() / C2);
        for h in [1e-6, 1e-5, 1e-4, 1e-3] {
            let geom = Geometry::vertical_photon(1e5, h).unwrap();
            let d = proper_time_dilation(&geom, &body).unwrap();
            let rel = ((d.exact - d.weak_field) / d.exact).abs();
            assert!(rel < bound, "h = {h}: rel = {rel:e}, bound = {bound:e}");
        }
    }

    #[test]
    fn separation_ratio_guard() {
        let body = Body::earth();
        let geom = Geometry::vertical_photon(1e5, 1e5).unwrap(); // h/r ~ 1.6e-2
        assert!(matches!(proper_time_dilation(&geom, &body), Err(Error::Domain(_))));
    }

    #[test]
    fn area_dilation_roundtrip() {
        // Area required for dtau = 1e-15 at g = 9.81 maps back to 1e-15.
        let area = 1e-15 * crate::constants::C3 / 9.81;
        let dtau = dilation_from_area(9.81, area, C).unwrap();
        assert_relative_eq!(dtau, 1e-15, max_relative = 1e-14);
    }

    #[test]
    fn proper_distance_one_kilometre_above_earth() {
        // Frozen from a 50-digit quadrature: 1 km of coordinate height is
        // 0.696 um longer in proper distance.
        let body = Body::earth();
        let d = proper_radial_distance(&body, R_EARTH, 1e3).unwrap();
        assert_relative_eq!(d, 1000.0000006960728, max_relative = 1e-14);
        let series = 1e3 * (1.0 + GM_EARTH / (C2 * R_EARTH));
        assert!((d - series).abs() < 1e-7); // series ignores the 1/r falloff
    }

    #[test]
    fn proper_distance_flat_space_is_exact() {
        let body = Body::new(0.0, 1.0).unwrap();
        assert_eq!(proper_radial_distance(&body, 10.0, 5.0).unwrap(), 5.0);
    }

    #[test]
    fn proper_distance_rejects_horizon_touching_interval() {
        let body = Body::new(1e30, 1.0).unwrap();
        assert!(matches!(
            proper_radial_distance(&body, 1e3, 1e3),
            Err(Error::InsideHorizon { .. })
        ));
    }

    #[test]
    fn dilation_monotone_in_length_separation_gravity() {
        let body = Body::earth();
        let base = proper_time_dilation(&Geometry::vertical_photon(1e5, 1e3).unwrap(), &body)
            .unwrap()
            .exact;
        let longer = proper_time_dilation(&Geometry::vertical_photon(2e5, 1e3).unwrap(), &body)
            .unwrap()
            .exact;
        let taller = proper_time_dilation(&Geometry::vertical_photon(1e5, 2e3).unwrap(), &body)
            .unwrap()
            .exact;
        let heavier = Body::new(2.0 * GM_EARTH, R_EARTH).unwrap();
        let stronger =
            proper_time_dilation(&Geometry::vertical_photon(1e5, 1e3).unwrap(), &heavier)
                .unwrap()
                .exact;
        assert!(longer > base && taller > base && stronger > base);
    }
}
