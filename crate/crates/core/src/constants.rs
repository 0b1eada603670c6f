//! CODATA 2018 values in SI units.

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permeability, H/m.
pub const MU_0: f64 = 1.256_637_062_12e-6;
/// Apery's constant.
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Thermal angular frequency k_B T / hbar, rad/s.
pub fn thermal_frequency(temperature: f64) -> f64 {
    BOLTZMANN * temperature / HBAR
}
