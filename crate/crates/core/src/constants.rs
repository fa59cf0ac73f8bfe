//! Physical constants (SI, CODATA 2018) and reference unit systems.

use std::f64::consts::PI;

/// Elementary charge (C).
pub const Q_E: f64 = 1.602_176_634e-19;

/// Electron mass (kg).
pub const M_E: f64 = 9.109_383_7015e-31;

/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;

/// Vacuum permittivity (F/m).
pub const EPS_0: f64 = 8.854_187_8128e-12;

/// Newton's gravitational constant (m^3 kg^-1 s^-2).
pub const G_NEWTON: f64 = 6.674_30e-11;

/// Atomic mass unit (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;

/// Cesium-133 mass (kg); the default ion species.
pub const M_CS: f64 = 132.905_451_961 * AMU;

/// Solar mass (kg).
pub const M_SUN: f64 = 1.988_92e30;

/// Parsec (m).
pub const PARSEC: f64 = 3.085_677_581_491_367e16;

/// Julian year (s).
pub const YEAR: f64 = 3.155_76e7;

/// q_e^2 / (4 pi eps0), the Coulomb coupling (J m).
pub fn coulomb_k() -> f64 {
    Q_E * Q_E / (4.0 * PI * EPS_0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coulomb_coupling_magnitude() {
        // e^2/(4 pi eps0) = 2.307e-28 J m = 14.40 eV Angstrom
        let k = coulomb_k();
        assert!((k - 2.307e-28).abs() / 2.307e-28 < 1e-3);
    }
}
