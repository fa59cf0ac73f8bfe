//! Gaussian ion cloud geometry, self-similar expansion, adiabatic cooling
//! and the Lagrangian-shell Coulomb explosion of the unneutralized excess.
//!
//! The ion density is n_i(r,t) = n_i0 exp(-r^2 / 2 sigma(t)^2) with
//! sigma(t)^2 = sigma0^2 + v0^2 t^2.  Shell trajectories follow the implicit
//! closed-form solution of the radial Coulomb explosion (Kaplan et al. 2003
//! style): each shell feels the frozen enclosed charge excess.

use std::f64::consts::PI;

use libm::erf;
use serde::{Deserialize, Serialize};

use crate::constants::{EPS_0, K_B, M_E, Q_E};
use crate::error::{Result, UcnpError};
use crate::numerics::roots::newton_bisect;
use crate::plasma::{relaxation_time, PlasmaSpec};

/// Expanding Gaussian cloud: counts, initial radius and expansion velocity.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GaussianCloud {
    pub n_ions: f64,
    pub n_electrons: f64,
    /// Initial Gaussian radius (m).
    pub sigma0: f64,
    /// Asymptotic expansion velocity (m/s); v0^2 = k_B T_e^gamma / m_i.
    pub v0: f64,
    /// Ion mass (kg).
    pub ion_mass: f64,
    /// Ion charge (C).
    pub ion_charge: f64,
}

impl GaussianCloud {
    pub fn from_spec(spec: &PlasmaSpec) -> GaussianCloud {
        GaussianCloud {
            n_ions: spec.n_ions,
            n_electrons: spec.n_electrons,
            sigma0: spec.sigma,
            v0: (K_B * spec.t_e_gamma / spec.ion.mass).sqrt(),
            ion_mass: spec.ion.mass,
            ion_charge: spec.ion.charge,
        }
    }

    /// sigma(t)^2 = sigma0^2 + v0^2 t^2.
    pub fn sigma_at(&self, t: f64) -> f64 {
        (self.sigma0 * self.sigma0 + self.v0 * self.v0 * t * t).sqrt()
    }

    /// d sigma / dt.
    pub fn sigma_dot(&self, t: f64) -> f64 {
        self.v0 * self.v0 * t / self.sigma_at(t)
    }

    /// Central ion density at time t (m^-3).
    pub fn n_i0_at(&self, t: f64) -> f64 {
        let s = self.sigma_at(t);
        self.n_ions / (2.0 * PI * s * s).powf(1.5)
    }

    /// Ion density profile at radius r and time t (m^-3).
    pub fn density(&self, r: f64, t: f64) -> f64 {
        let s = self.sigma_at(t);
        self.n_i0_at(t) * (-r * r / (2.0 * s * s)).exp()
    }
}

/// Fraction of a Gaussian cloud enclosed inside radius r:
/// Erf(r / sqrt(2) sigma) - sqrt(2 r^2 / pi sigma^2) exp(-r^2 / 2 sigma^2).
pub fn enclosed_fraction(r: f64, sigma: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    let u = r / sigma;
    erf(u / 2f64.sqrt()) - (2.0 / PI).sqrt() * u * (-0.5 * u * u).exp()
}

/// Number of ions inside radius r at time t.
pub fn enclosed_ions(cloud: &GaussianCloud, r: f64, t: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(UcnpError::InvalidInput("enclosed_ions: r must be nonnegative".into()));
    }
    Ok(cloud.n_ions * enclosed_fraction(r, cloud.sigma_at(t)))
}

/// Ionic potential per unit electron mass (J/kg):
/// Phi_i(r) = G' m_e N_i Erf(r / sqrt(2) sigma) / r, finite at the origin.
/// Negative everywhere: the ion cloud is an attractive well for electrons.
pub fn ionic_potential(cloud: &GaussianCloud, r: f64, t: f64) -> f64 {
    let gp_me = -Q_E * Q_E / (4.0 * PI * EPS_0 * M_E); // G' m_e
    let sigma = cloud.sigma_at(t);
    if r < 1e-12 * sigma {
        return gp_me * cloud.n_ions * (2.0 / PI).sqrt() / sigma;
    }
    gp_me * cloud.n_ions * erf(r / (2f64.sqrt() * sigma)) / r
}

/// Radial gradient of the ionic potential (J/kg/m); positive (confining).
pub fn ionic_potential_gradient(cloud: &GaussianCloud, r: f64, t: f64) -> f64 {
    let gp_me = -Q_E * Q_E / (4.0 * PI * EPS_0 * M_E);
    let sigma = cloud.sigma_at(t);
    if r < 1e-12 * sigma {
        return 0.0;
    }
    // dPhi/dr = -G' m_e N_i(r) / r^2 with N_i(r) the enclosed count
    -gp_me * cloud.n_ions * enclosed_fraction(r, sigma) / (r * r)
}

/// Self-similar ion transport velocity
/// u_i(r,t) = t r (v0/sigma0)^2 / (1 + (v0 t / sigma0)^2) = r sigma_dot/sigma.
pub fn self_similar_velocity(cloud: &GaussianCloud, r: f64, t: f64) -> f64 {
    let w = (cloud.v0 / cloud.sigma0).powi(2);
    t * r * w / (1.0 + w * t * t)
}

/// Mean electron temperature after adiabatic cooling against the expansion:
/// (3/2) k T(t) = (3/2) k T(0) - (3/2) m_i v0^2 (t v0 / sigma(t))^2.
#[derive(Debug, Clone, Copy)]
pub struct CoolingState {
    pub t_e: f64,
    /// Set when the energy balance is exhausted and T was clamped at zero.
    pub exhausted: bool,
}

pub fn adiabatic_cooling(cloud: &GaussianCloud, t_e0: f64, t: f64) -> CoolingState {
    let s = cloud.sigma_at(t);
    let drained = cloud.ion_mass * cloud.v0.powi(2) * (t * cloud.v0 / s).powi(2) / K_B;
    let t_e = t_e0 - drained;
    CoolingState {
        t_e: t_e.max(0.0),
        exhausted: t_e < 0.0,
    }
}

/// Characteristic Coulomb-explosion time
/// t_CE = sqrt(4 pi eps0 m_i / (q^2 (n_i0 - n_e0))).
pub fn coulomb_explosion_time(cloud: &GaussianCloud) -> f64 {
    let n0 = cloud.n_ions / (2.0 * PI * cloud.sigma0 * cloud.sigma0).powf(1.5);
    let dn0 = n0 * (cloud.n_ions - cloud.n_electrons) / cloud.n_ions;
    (4.0 * PI * EPS_0 * cloud.ion_mass / (cloud.ion_charge * cloud.ion_charge * dn0)).sqrt()
}

/// One Lagrangian ion shell.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Shell {
    /// Initial radius (m).
    pub r_init: f64,
    /// Current radius (m).
    pub r_now: f64,
    /// Ions enclosed by the shell (frozen along the trajectory).
    pub ions_enclosed: f64,
    /// Electrons enclosed (frozen, scaled-Gaussian approximation).
    pub electrons_enclosed: f64,
    /// Set when the shell carries no net outward force.
    pub frozen: bool,
}

/// Lagrangian shell ensemble for the Coulomb explosion.
#[derive(Debug, Clone, Serialize)]
pub struct ShellEnsemble {
    pub shells: Vec<Shell>,
    pub t: f64,
    pub spike_detected: bool,
    /// Ion density at each shell's current radius (m^-3); NaN past the spike.
    pub density: Vec<f64>,
    cloud: GaussianCloud,
}

/// Solve the implicit shell trajectory: with x = r/r_i >= 1,
/// t sqrt(2 A / r_i^3) = sqrt(x(x-1)) + ln(sqrt(x) + sqrt(x-1)),
/// A = q_i^2 (N_i(r_i) - N_e(r_i)) / (4 pi eps0 m_i).
/// The left side is monotone in x so the root is unique.
pub fn shell_position(cloud: &GaussianCloud, r_init: f64, t: f64) -> Result<(f64, bool)> {
    if t < 0.0 {
        return Err(UcnpError::InvalidInput("shell_position: t must be nonnegative".into()));
    }
    let frac = enclosed_fraction(r_init, cloud.sigma0);
    let excess = frac * (cloud.n_ions - cloud.n_electrons);
    if excess <= 0.0 {
        return Ok((r_init, true));
    }
    let a = cloud.ion_charge * cloud.ion_charge * excess / (4.0 * PI * EPS_0 * cloud.ion_mass);
    let tau = t * (2.0 * a / r_init.powi(3)).sqrt();
    if tau == 0.0 {
        return Ok((r_init, false));
    }
    let g = |x: f64| (x * (x - 1.0)).max(0.0).sqrt() + (x.sqrt() + (x - 1.0).max(0.0).sqrt()).ln() - tau;
    // series start x = 1 + (tau/2)^2 (1 - tau^2/12); exact as tau -> 0
    let x0 = 1.0 + 0.25 * tau * tau * (1.0 - tau * tau / 12.0).max(0.5);
    let mut hi = x0.max(1.0 + tau);
    while g(hi) < 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(UcnpError::Convergence("shell_position: bracket expansion failed".into()));
        }
    }
    let dg = |x: f64| (x / (x - 1.0).max(1e-300)).sqrt();
    let x = newton_bisect(&g, &dg, 1.0, hi, x0.min(hi), 1e-12)?;
    Ok((r_init * x, false))
}

/// Shell radial velocity from energy conservation along the trajectory:
/// (1/2) rdot^2 = A (1/r_i - 1/r).
pub fn shell_velocity(cloud: &GaussianCloud, r_init: f64, r_now: f64) -> f64 {
    let frac = enclosed_fraction(r_init, cloud.sigma0);
    let excess = frac * (cloud.n_ions - cloud.n_electrons);
    if excess <= 0.0 || r_now <= r_init {
        return 0.0;
    }
    let a = cloud.ion_charge * cloud.ion_charge * excess / (4.0 * PI * EPS_0 * cloud.ion_mass);
    (2.0 * a * (1.0 / r_init - 1.0 / r_now)).sqrt()
}

impl ShellEnsemble {
    /// Initialize `n_shells` logarithmically spaced shells on
    /// [0.05 sigma, 8 sigma] with electrons frozen to the scaled Gaussian
    /// N_e(r) = (N_e/N_i) N_i(r).
    pub fn new(cloud: GaussianCloud, n_shells: usize) -> ShellEnsemble {
        let lo = (0.05 * cloud.sigma0).ln();
        let hi = (8.0 * cloud.sigma0).ln();
        let shells: Vec<Shell> = (0..n_shells)
            .map(|i| {
                let r = (lo + (hi - lo) * i as f64 / (n_shells as f64 - 1.0)).exp();
                let frac = enclosed_fraction(r, cloud.sigma0);
                Shell {
                    r_init: r,
                    r_now: r,
                    ions_enclosed: frac * cloud.n_ions,
                    electrons_enclosed: frac * cloud.n_electrons,
                    frozen: false,
                }
            })
            .collect();
        let density = shells.iter().map(|s| cloud.density(s.r_init, 0.0)).collect();
        ShellEnsemble {
            shells,
            t: 0.0,
            spike_detected: false,
            density,
            cloud,
        }
    }

    pub fn cloud(&self) -> &GaussianCloud {
        &self.cloud
    }

    /// Advance every shell to time t and rebuild the density by the
    /// Lagrangian mapping n(r,t) = n(r_i,0) (dr_i/dr) (r_i/r)^2.
    /// Crossed shells (or a local density above 5x the initial peak) set
    /// `spike_detected`; density past the first crossing is reported as NaN.
    pub fn evolve_to(&mut self, t: f64) -> Result<()> {
        for s in &mut self.shells {
            let (r, frozen) = shell_position(&self.cloud, s.r_init, t)?;
            s.r_now = r;
            s.frozen = frozen;
        }
        self.t = t;
        let n = self.shells.len();
        let mut crossing_at = usize::MAX;
        for i in 1..n {
            if self.shells[i].r_now <= self.shells[i - 1].r_now {
                crossing_at = i;
                break;
            }
        }
        let peak0 = self.cloud.n_i0_at(0.0);
        let mut density = vec![f64::NAN; n];
        for i in 0..n {
            if i >= crossing_at {
                break;
            }
            let (il, ih) = if i == 0 {
                (0, 1)
            } else if i == n - 1 {
                (n - 2, n - 1)
            } else {
                (i - 1, i + 1)
            };
            let dr_init = self.shells[ih].r_init - self.shells[il].r_init;
            let dr_now = self.shells[ih].r_now - self.shells[il].r_now;
            if dr_now <= 0.0 {
                crossing_at = i;
                break;
            }
            let s = &self.shells[i];
            let n0 = self.cloud.density(s.r_init, 0.0);
            density[i] = n0 * (dr_init / dr_now) * (s.r_init / s.r_now).powi(2);
        }
        let spike_by_density = density.iter().any(|d| d.is_finite() && *d > 5.0 * peak0);
        self.spike_detected = crossing_at != usize::MAX || spike_by_density;
        self.density = density;
        Ok(())
    }

    /// Radius of the densest resolved point outside the core; the spike
    /// location once `spike_detected` is set.
    pub fn peak_radius(&self) -> Option<f64> {
        let mut best: Option<(f64, f64)> = None;
        for (s, d) in self.shells.iter().zip(&self.density) {
            if d.is_finite() && s.r_init > 0.5 * self.cloud.sigma0 && best.map_or(true, |(_, bd)| *d > bd)
            {
                best = Some((s.r_now, *d));
            }
        }
        best.map(|(r, _)| r)
    }

    /// Effective Gaussian radius inferred from the central density,
    /// sigma_eff = (N_i / ((2 pi)^{3/2} n(0,t)))^{1/3}.
    pub fn sigma_from_peak_density(&self) -> f64 {
        // extrapolate the central density from the innermost shells
        let mut n0 = 0.0;
        let mut count = 0.0;
        for (s, d) in self.shells.iter().zip(&self.density).take(8) {
            if d.is_finite() {
                let u = s.r_init / self.cloud.sigma0;
                n0 += d / (-0.5 * u * u).exp();
                count += 1.0;
            }
        }
        if count == 0.0 {
            return f64::NAN;
        }
        n0 /= count;
        (self.cloud.n_ions / ((2.0 * PI).powf(1.5) * n0)).powf(1.0 / 3.0)
    }
}

/// Early-time Coulomb-expansion coefficient of the sigma-shell trajectory,
/// r(sigma0, t)/sigma0 = 1 + c (N_i/N*)^(1/2) t^2 v0^2 / sigma0^2 with
/// c = (3/4) sqrt(pi/2) [Erf(1/sqrt2) - sqrt(2/pi) e^{-1/2}] = 0.18680.
pub fn sigma_shell_expansion_coefficient() -> f64 {
    0.75 * (PI / 2.0).sqrt() * enclosed_fraction(1.0, 1.0)
}

/// Early-time expansion law of the explosion as usually quoted,
/// sigma/sigma0 ~ 1 + 0.28 (N_i/N*)^0.5 t^2 v0^2 / sigma0^2.
pub fn coulomb_expansion_law(cloud: &GaussianCloud, n_star: f64, t: f64) -> f64 {
    let eps = (cloud.n_ions / n_star).sqrt() * (t * cloud.v0 / cloud.sigma0).powi(2);
    cloud.sigma0 * (1.0 + 0.28 * eps)
}

/// Thermal-conductivity closure coefficient and locality check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConductivityCoefficient {
    /// Lambda_c = C (4/(9 sqrt pi)) 3 |G'| m_e rho lnL / sigma_v
    /// (kg m^-1 s^-1).
    pub lambda_c: f64,
    /// Collisional mean free path l = 3 t_e sigma_v (m).
    pub mean_free_path: f64,
    /// Set when l exceeds the cloud size: the local closure is suspect.
    pub nonlocal: bool,
}

/// `sigma_v` here is the one-dimensional dispersion (isothermal sound
/// speed), the convention of the fluid closure.
pub fn conductivity_coefficient(
    rho: f64,
    sigma_v: f64,
    ln_lambda: f64,
    cloud_sigma: f64,
    c_factor: f64,
) -> Result<ConductivityCoefficient> {
    if rho < 0.0 || sigma_v <= 0.0 {
        return Err(UcnpError::InvalidInput("conductivity: rho >= 0 and sigma_v > 0 required".into()));
    }
    let gp_me = Q_E * Q_E / (4.0 * PI * EPS_0 * M_E); // |G'| m_e
    let lambda_c = c_factor * (4.0 / (9.0 * PI.sqrt())) * 3.0 * gp_me * rho * ln_lambda / sigma_v;
    let gp = -Q_E * Q_E / (4.0 * PI * EPS_0 * M_E * M_E);
    let n_e = rho / M_E;
    let t_e = if n_e > 0.0 {
        relaxation_time(sigma_v, gp, M_E, n_e, ln_lambda)
    } else {
        f64::INFINITY
    };
    let mean_free_path = 3.0 * t_e * sigma_v;
    Ok(ConductivityCoefficient {
        lambda_c,
        mean_free_path,
        nonlocal: mean_free_path > cloud_sigma,
    })
}
