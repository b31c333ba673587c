//! Physical constants (CODATA 2018 where exact values exist).

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Speed of light in vacuum, km/s.
pub const SPEED_OF_LIGHT_KM_S: f64 = SPEED_OF_LIGHT / 1e3;

/// Planck constant, J*s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Newtonian gravitational constant, m^3/(kg*s^2).
pub const GRAVITATIONAL: f64 = 6.674_30e-11;

/// Mean Earth radius, m.
pub const EARTH_RADIUS_M: f64 = 6.371e6;

/// Earth radius used for mirror-spacing geometry, km.
pub const EARTH_RADIUS_KM: f64 = 6.370e3;

/// Earth's moment of inertia, kg*m^2.
pub const EARTH_MOMENT_OF_INERTIA: f64 = 8.04e37;

/// Earth's sidereal angular rotation rate, rad/s.
pub const EARTH_ROTATION_RATE: f64 = 7.292_115_9e-5;

/// Reference sound pressure in air, Pa (0 dB SPL).
pub const SOUND_PRESSURE_REF: f64 = 2e-5;
