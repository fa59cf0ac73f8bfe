//! Dimensionless scaling between the plasma and star-cluster unit systems.
//!
//! Plasma units: m_e, 200 um, 100 ns.  Cluster units: M_sun, 1 pc, 10 Myr.
//! In these units the two Newton equations carry coupling constants
//! G' m_e^2 t_p^2 / (m_p r_p^3) and G M^2 T_c^2 / (M_c R_c^3), both of
//! order unity, which is what makes the systems dynamically equivalent.

use serde::{Deserialize, Serialize};

use crate::constants::{G_NEWTON, M_E, M_SUN, PARSEC, YEAR};
use crate::error::{Result, UcnpError};
use crate::plasma::g_prime;
use crate::plasma::Species;

/// Exponents of mass, length and time for a physical quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimension {
    pub mass: i32,
    pub length: i32,
    pub time: i32,
}

impl Dimension {
    pub const MASS: Dimension = Dimension { mass: 1, length: 0, time: 0 };
    pub const LENGTH: Dimension = Dimension { mass: 0, length: 1, time: 0 };
    pub const TIME: Dimension = Dimension { mass: 0, length: 0, time: 1 };
    pub const VELOCITY: Dimension = Dimension { mass: 0, length: 1, time: -1 };
    pub const DENSITY: Dimension = Dimension { mass: 0, length: -3, time: 0 };
    pub const ENERGY_PER_MASS: Dimension = Dimension { mass: 0, length: 2, time: -2 };

    /// Parse "mass", "length", "time", "velocity", "density",
    /// "energy_per_mass"; anything else is an error.
    pub fn parse(name: &str) -> Result<Dimension> {
        match name {
            "mass" => Ok(Dimension::MASS),
            "length" => Ok(Dimension::LENGTH),
            "time" => Ok(Dimension::TIME),
            "velocity" => Ok(Dimension::VELOCITY),
            "density" => Ok(Dimension::DENSITY),
            "energy_per_mass" => Ok(Dimension::ENERGY_PER_MASS),
            other => Err(UcnpError::InvalidInput(format!("unknown dimension '{other}'"))),
        }
    }
}

/// A base unit system: SI values of the mass, length and time units.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct UnitSystem {
    pub mass: f64,
    pub length: f64,
    pub time: f64,
}

/// Plasma units: electron mass, 200 um, 100 ns.
pub const PLASMA_UNITS: UnitSystem = UnitSystem {
    mass: M_E,
    length: 200e-6,
    time: 100e-9,
};

/// Cluster units: solar mass, 1 pc, 10 Myr.
pub const CLUSTER_UNITS: UnitSystem = UnitSystem {
    mass: M_SUN,
    length: PARSEC,
    time: 1e7 * YEAR,
};

impl UnitSystem {
    /// SI magnitude of the unit carrying the given dimension.
    pub fn scale(&self, dim: Dimension) -> f64 {
        self.mass.powi(dim.mass) * self.length.powi(dim.length) * self.time.powi(dim.time)
    }

    /// SI value -> dimensionless value in this system.
    pub fn to_dimensionless(&self, si_value: f64, dim: Dimension) -> f64 {
        si_value / self.scale(dim)
    }

    /// Dimensionless value in this system -> SI.
    pub fn to_si(&self, value: f64, dim: Dimension) -> f64 {
        value * self.scale(dim)
    }
}

/// Convert a dimensionless value from one system to another.
pub fn convert(value: f64, dim: Dimension, from: &UnitSystem, to: &UnitSystem) -> f64 {
    to.to_dimensionless(from.to_si(value, dim), dim)
}

/// Coupling constant G' m_e^2 t_p^2 / (m_p r_p^3) of the scaled plasma
/// Newton equation (dimensionless, order unity, negative).
pub fn plasma_coupling() -> f64 {
    let gp = g_prime(Species::electron()).expect("electron mass positive");
    gp * M_E * M_E * PLASMA_UNITS.time.powi(2) / (PLASMA_UNITS.mass * PLASMA_UNITS.length.powi(3))
}

/// Coupling constant G M1^2 T_c^2 / (M_c R_c^3) for equal-mass stars
/// (M1 = M_sun) in cluster units.
pub fn cluster_coupling() -> f64 {
    G_NEWTON * M_SUN * M_SUN * CLUSTER_UNITS.time.powi(2)
        / (CLUSTER_UNITS.mass * CLUSTER_UNITS.length.powi(3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_times_map_to_unity() {
        assert!((PLASMA_UNITS.to_dimensionless(100e-9, Dimension::TIME) - 1.0).abs() < 1e-15);
        assert!((CLUSTER_UNITS.to_dimensionless(1e7 * YEAR, Dimension::TIME) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_maps_to_zero() {
        assert_eq!(PLASMA_UNITS.to_dimensionless(0.0, Dimension::VELOCITY), 0.0);
        assert_eq!(convert(0.0, Dimension::DENSITY, &PLASMA_UNITS, &CLUSTER_UNITS), 0.0);
    }

    #[test]
    fn couplings_same_order() {
        let p = plasma_coupling().abs();
        let c = cluster_coupling().abs();
        let ratio = if p > c { p / c } else { c / p };
        assert!(ratio < 10.0, "couplings differ by {ratio}");
        assert!(p > 0.05 && p < 5.0, "plasma coupling {p}");
        assert!(c > 0.05 && c < 5.0, "cluster coupling {c}");
    }

    #[test]
    fn round_trip_identity() {
        for dim in [
            Dimension::MASS,
            Dimension::LENGTH,
            Dimension::TIME,
            Dimension::VELOCITY,
            Dimension::DENSITY,
            Dimension::ENERGY_PER_MASS,
        ] {
            let v = 3.14159;
            let there = convert(v, dim, &PLASMA_UNITS, &CLUSTER_UNITS);
            let back = convert(there, dim, &CLUSTER_UNITS, &PLASMA_UNITS);
            assert!((back - v).abs() / v < 1e-12);
        }
    }

    #[test]
    fn unknown_dimension_rejected() {
        assert!(Dimension::parse("charge").is_err());
        assert!(Dimension::parse("time").is_ok());
    }
}
