//! Electron kinetics in spherical ultracold neutral plasmas.
//!
//! An ultracold neutral plasma (electrons at kelvin-scale temperatures
//! trapped in the space charge of a cold ion cloud) obeys the same kinetic
//! equations as a single-mass star cluster once Newton's constant is replaced
//! by the negative coupling G' = -q_e^2/(4 pi eps0 m_e^2).  This crate
//! implements that machinery end to end:
//!
//! - [`plasma`] — physical constants, derived plasma parameters and the
//!   plasma/cluster unit scaling,
//! - [`cloud`] — Gaussian ion cloud geometry, self-similar expansion and the
//!   Lagrangian-shell Coulomb explosion,
//! - [`king`] — self-consistent Kramers-Michie-King quasi-equilibria for the
//!   trapped electrons,
//! - [`orbit`] — total potential assembly, phase-space geometry q(E), tau(E)
//!   and Eddington inversion,
//! - [`fokker_planck`] — orbit-averaged Fokker-Planck evolution with
//!   Chang-Cooper differencing, evaporation and ejection rates,
//! - [`tbr`] — three-body recombination rates, the Mansbach-Keck kernel and
//!   the bound-state master equation,
//! - [`extraction`] — threshold-field diagnostics and temperature inference
//!   from extraction scans,
//! - [`scenario`] — configuration, orchestration and file output.
//!
//! All internal arithmetic is in SI units; dimensionless scalings live at the
//! API boundary in [`plasma::units`].

pub mod cloud;
pub mod constants;
pub mod error;
pub mod extraction;
pub mod fokker_planck;
pub mod king;
pub mod numerics;
pub mod orbit;
pub mod plasma;
pub mod scenario;
pub mod tbr;

pub use error::{Result, UcnpError};
