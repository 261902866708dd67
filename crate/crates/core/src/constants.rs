//! Physical constants (SI units throughout).

/// Speed of light in vacuum, m/s. Exact by definition.
pub const C: f64 = 299_792_458.0;

/// c^2, m^2/s^2.
pub const C2: f64 = C * C;

/// c^3, m^3/s^3.
pub const C3: f64 = C * C * C;

/// Reduced Planck constant, J s. h is exact by definition; hbar = h / 2 pi.
pub const HBAR: f64 = 6.626_070_15e-34 / std::f64::consts::TAU;

/// Standard gravitational parameter of Earth GM, m^3/s^2.
pub const GM_EARTH: f64 = 3.986_004_418e14;

/// Mean volumetric radius of Earth, m.
pub const R_EARTH: f64 = 6.371e6;
