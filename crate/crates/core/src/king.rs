//! Self-consistent Kramers-Michie-King quasi-equilibrium for electrons in
//! the ion cloud.
//!
//! The trapped electrons relax on nanosecond time scales toward the lowered
//! Maxwellian f ~ exp(-E/kT_K) - exp(-E_t/kT_K) (King 1966); its density is
//! an analytic function F^K of the local dimensionless trap depth
//! eta_t(r) = m_e (E_t - Phi(r)) / k_B T_K, which must in turn solve the
//! Poisson equation against the frozen Gaussian ion background.  The solver
//! works in scaled variables: u = r/sigma, kappa = q^2 sigma^2 n_i0 /
//! (eps0 k T_K) (the well depth in kT units) and mu = n_e0/n_i0, and matches
//! (kappa, mu) to the requested electron count and truncation radius by
//! nested bisection.

use std::f64::consts::PI;

use libm::erf;
use serde::Serialize;

use crate::cloud::GaussianCloud;
use crate::constants::{EPS_0, K_B, M_E, Q_E};
use crate::error::{Result, UcnpError};
use crate::numerics::interp::Pchip;
use crate::numerics::ode::{integrate_adaptive, OdeOptions};
use crate::numerics::quad::adaptive_simpson;
use crate::plasma::PlasmaSpec;

/// King density function
/// F^K(x) = e^x Erf(sqrt x) - sqrt(4x/pi) (1 + 2x/3),
/// i.e. e^x Erf(sqrt x) minus the first two terms of its own power series.
/// Strictly increasing, F^K(0) = 0, F^K(x) -> e^x for large x.
pub fn king_f(x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(UcnpError::InvalidInput(format!("king_f: negative depth {x}")));
    }
    Ok(king_f_unchecked(x))
}

pub(crate) fn king_f_unchecked(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x < 0.5 {
        // closed form cancels catastrophically near zero; sum the series
        // (2/sqrt pi) sum_{n>=2} 2^n/(2n+1)!! x^{n+1/2}
        let mut term = 4.0 / 15.0 * x * x * x.sqrt(); // n = 2
        let mut sum = term;
        let mut n = 2.0;
        while term > 1e-18 * sum {
            term *= 2.0 * x / (2.0 * n + 3.0);
            sum += term;
            n += 1.0;
        }
        return 2.0 / PI.sqrt() * sum;
    }
    x.exp() * erf(x.sqrt()) - (4.0 * x / PI).sqrt() * (1.0 + 2.0 * x / 3.0)
}

/// Velocity-moment ratio entering the local temperature:
/// k T_e(r) / k T_K = 1 - (8/(15 sqrt pi)) eta_t^{5/2} / F^K(eta_t).
pub fn temperature_ratio(eta_t: f64) -> f64 {
    if eta_t <= 0.0 {
        return 0.0;
    }
    if eta_t < 0.5 {
        // both terms scale as x^{5/2}: use the series ratio,
        // F^K = (8/(15 sqrt pi)) x^{5/2} (1 + 2x/7 + (2x)^2/(7*9) + ...)
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut n = 2.0;
        loop {
            term *= 2.0 * eta_t / (2.0 * n + 3.0);
            sum += term;
            n += 1.0;
            if term < 1e-18 * sum {
                break;
            }
        }
        return 1.0 - 1.0 / sum;
    }
    let top = 8.0 / (15.0 * PI.sqrt()) * eta_t.powf(2.5);
    1.0 - top / king_f_unchecked(eta_t)
}

/// Shorthand approximation T_e ~ T_K Erf(0.22 eta_t).
pub fn temperature_ratio_erf_approx(eta_t: f64) -> f64 {
    erf(0.22 * eta_t)
}

/// Parameters of a solved King state.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KingParams {
    /// Central trap depth eta = eta_t(0).
    pub eta: f64,
    /// Kramers-King temperature (K).
    pub t_k: f64,
    /// Central electron density (m^-3).
    pub n_e0: f64,
    /// Truncation energy per unit mass, E_t = Phi(r_t) (J/kg).
    pub e_t: f64,
    /// Central potential E_0 = Phi(0) (J/kg).
    pub e0: f64,
    /// Truncation radius (m).
    pub r_t: f64,
}

impl KingParams {
    /// Normalization of the distribution so the central density is n_e0:
    /// A = n_e0 e^eta / ((2 pi k T_K / m_e)^{3/2} F^K(eta)).
    pub fn amplitude(&self) -> f64 {
        let theta = K_B * self.t_k / M_E;
        self.n_e0 * self.eta.exp() / ((2.0 * PI * theta).powf(1.5) * king_f_unchecked(self.eta))
    }

    /// Lowered-Maxwellian phase-space density at energy per mass E (J/kg);
    /// zero above the truncation energy.
    pub fn f_of_e(&self, e: f64) -> f64 {
        if e >= self.e_t {
            return 0.0;
        }
        let theta = K_B * self.t_k / M_E;
        self.amplitude() * (((self.e0 - e) / theta).exp() - (-self.eta).exp())
    }

    /// Analytic dE derivative of the distribution (below truncation).
    pub fn f_deriv(&self, e: f64) -> f64 {
        if e >= self.e_t {
            return 0.0;
        }
        let theta = K_B * self.t_k / M_E;
        -self.amplitude() / theta * ((self.e0 - e) / theta).exp()
    }
}

/// A converged self-consistent equilibrium.
#[derive(Debug, Clone, Serialize)]
pub struct KingEquilibrium {
    pub params: KingParams,
    /// Radial grid (m).
    pub r: Vec<f64>,
    /// Trap-depth profile eta_t(r), monotone nonincreasing, zero at r_t.
    pub eta_t: Vec<f64>,
    /// Electron density profile (m^-3).
    pub n_e: Vec<f64>,
    /// Ion density profile (m^-3).
    pub n_i: Vec<f64>,
    /// Local temperature profile (K).
    pub t_e: Vec<f64>,
    /// Electron count recovered from the solved profile.
    pub n_e_computed: f64,
    /// Radius where n_i = n_e (m).
    pub crossing_radius: f64,
    /// Scaled well depth kappa = q^2 sigma^2 n_i0 / (eps0 k T_K).
    pub kappa: f64,
    /// Central density ratio mu = n_e0 / n_i0.
    pub mu: f64,
    /// Gaussian radius of the frozen ion background (m).
    pub sigma: f64,
    /// Central ion density (m^-3).
    pub n_i0: f64,
}

struct ScaledSolution {
    trace_u: Vec<f64>,
    trace_eta: Vec<f64>,
    /// Trap depth carried to u_t; negative values mean the physical
    /// truncation falls inside u_t (the source is clamped past zero).
    depth_at_end: f64,
    /// int 4 pi u^2 F^K(eta_t)/F^K(eta) du over [0, u_t].
    count: f64,
}

/// Integrate the scaled Poisson equation for given (kappa, mu, eta):
/// eta_t'' + (2/u) eta_t' = -kappa [e^{-u^2/2} - mu F^K(eta_t)/F^K(eta)]
/// out to exactly u_max.  F^K is clamped at zero depth so the integration
/// continues smoothly past an interior truncation.
fn integrate_scaled(eta: f64, kappa: f64, mu: f64, u_max: f64, rtol: f64) -> Result<ScaledSolution> {
    let f_eta = king_f_unchecked(eta);
    let rhs = move |u: f64, y: &[f64], dy: &mut [f64]| {
        let fk = king_f_unchecked(y[0].max(0.0)) / f_eta;
        dy[0] = y[1];
        dy[1] = -kappa * ((-0.5 * u * u).exp() - mu * fk) - 2.0 / u * y[1];
        dy[2] = 4.0 * PI * u * u * fk;
    };
    // series start around the removable singularity at u = 0
    let u0 = 1e-6;
    let s0 = -kappa * (1.0 - mu);
    let y0 = [eta + s0 * u0 * u0 / 6.0, s0 * u0 / 3.0, 4.0 * PI / 3.0 * u0 * u0 * u0];
    let opts = OdeOptions {
        rtol,
        atol: 1e-12,
        h0: 1e-3,
        h_max: 0.5,
        max_steps: 400_000,
    };
    let tr = integrate_adaptive(&rhs, u0, u_max, &y0, &opts, None::<&fn(f64, &[f64]) -> f64>)?;
    let trace_eta: Vec<f64> = tr.y.iter().map(|y| y[0]).collect();
    let last = tr.y.last().unwrap();
    Ok(ScaledSolution {
        trace_u: tr.t,
        trace_eta,
        depth_at_end: last[0],
        count: last[2],
    })
}

/// Trap depth carried to u_t; its zero in mu locates the self-consistent
/// central density ratio.  Monotone increasing in mu (screening).
fn depth_at(eta: f64, kappa: f64, mu: f64, u_t: f64, rtol: f64) -> Result<f64> {
    Ok(integrate_scaled(eta, kappa, mu, u_t, rtol)?.depth_at_end)
}

/// Inner solve: the central density ratio mu for which eta_t(u_t) = 0.
/// None if even the bare ion background truncates beyond u_t (kappa too
/// small) or full central neutralization cannot reach u_t.
fn solve_mu(eta: f64, kappa: f64, u_t: f64, rtol: f64) -> Result<Option<f64>> {
    let g0 = depth_at(eta, kappa, 0.0, u_t, rtol)?;
    if g0 > 0.0 {
        return Ok(None);
    }
    let mut lo = 0.0;
    let mut g_lo = g0;
    let mut hi = 0.5;
    let mut g_hi;
    loop {
        g_hi = depth_at(eta, kappa, hi, u_t, rtol)?;
        if g_hi > 0.0 {
            break;
        }
        lo = hi;
        g_lo = g_hi;
        hi += 0.5 * (1.0 - hi);
        if 1.0 - hi < 1e-13 {
            return Ok(None);
        }
    }
    let g = |mu: f64| depth_at(eta, kappa, mu, u_t, rtol).unwrap_or(f64::NAN);
    let mu = crate::numerics::roots::illinois(&g, lo, hi, g_lo, g_hi, 1e-13, 80)?;
    Ok(Some(mu))
}

/// Electron count ratio N_e/N_i delivered by a (kappa, mu(kappa)) pair.
fn count_ratio(eta: f64, kappa: f64, u_t: f64, rtol: f64) -> Result<Option<(f64, f64)>> {
    let Some(mu) = solve_mu(eta, kappa, u_t, rtol)? else {
        return Ok(None);
    };
    let sol = integrate_scaled(eta, kappa, mu, u_t, rtol)?;
    let ratio = mu * sol.count / (2.0 * PI).powf(1.5);
    Ok(Some((mu, ratio)))
}

/// Solve the self-consistent King equilibrium for the given plasma state.
/// `eta` is the central trap depth, `r_t` the truncation radius in meters.
pub fn solve_selfconsistent(spec: &PlasmaSpec, eta: f64, r_t: f64) -> Result<KingEquilibrium> {
    spec.validate()?;
    if spec.n_ions <= spec.n_electrons {
        return Err(UcnpError::InvalidInput("king solve: needs N_i > N_e".into()));
    }
    if !(0.5..=30.0).contains(&eta) {
        return Err(UcnpError::InvalidInput(format!("king solve: eta = {eta} outside (0.5, 30)")));
    }
    let sigma = spec.sigma;
    let u_t = r_t / sigma;
    if u_t <= 1.0 {
        return Err(UcnpError::InvalidInput("king solve: r_t must exceed sigma".into()));
    }
    let target = spec.n_electrons / spec.n_ions;
    let rtol_scan = 1e-7;
    let rtol_final = 1e-10;

    // bracket kappa: near the bare-ion minimum the trapped fraction is
    // small; it grows monotonically with kappa (colder T_K, deeper well)
    let mut kappa_lo = eta * 1.02;
    let mut lower = None;
    for _ in 0..60 {
        match count_ratio(eta, kappa_lo, u_t, rtol_scan)? {
            Some((_, r)) if r >= target => {
                kappa_lo = eta + 0.5 * (kappa_lo - eta);
            }
            Some((_, r)) => {
                lower = Some((kappa_lo, r));
                break;
            }
            None => {
                kappa_lo *= 1.3;
            }
        }
    }
    let Some((mut klo, mut ratio_klo)) = lower else {
        return Err(UcnpError::Convergence(format!(
            "king solve: no usable lower kappa bracket (eta={eta}, u_t={u_t}, target={target})"
        )));
    };
    let mut khi = klo;
    let mut ratio_khi = ratio_klo;
    let mut found_hi = false;
    for _ in 0..80 {
        khi *= 1.5;
        match count_ratio(eta, khi, u_t, rtol_scan)? {
            Some((_, r)) if r >= target => {
                ratio_khi = r;
                found_hi = true;
                break;
            }
            Some((_, r)) => {
                klo = khi;
                ratio_klo = r;
            }
            None => break,
        }
    }
    if !found_hi {
        return Err(UcnpError::Convergence(format!(
            "king solve: electron fraction {target:.4} unreachable for eta={eta}, r_t={u_t} sigma \
             (kappa swept up to {khi:.3e})"
        )));
    }
    let h = |kappa: f64| match count_ratio(eta, kappa, u_t, rtol_scan) {
        Ok(Some((_, r))) => r - target,
        _ => f64::NAN,
    };
    let kappa = crate::numerics::roots::illinois(
        &h,
        klo,
        khi,
        ratio_klo - target,
        ratio_khi - target,
        1e-12,
        60,
    )?;
    let Some(mu) = solve_mu(eta, kappa, u_t, rtol_final)? else {
        return Err(UcnpError::Convergence("king solve: final mu solve failed".into()));
    };

    build_equilibrium(spec, eta, kappa, mu, u_t, rtol_final)
}

fn build_equilibrium(
    spec: &PlasmaSpec,
    eta: f64,
    kappa: f64,
    mu: f64,
    u_t: f64,
    rtol: f64,
) -> Result<KingEquilibrium> {
    let sigma = spec.sigma;
    let n_i0 = spec.n_i0();
    let n_e0 = mu * n_i0;
    let t_k = Q_E * Q_E * sigma * sigma * n_i0 / (EPS_0 * kappa * K_B);

    let sol = integrate_scaled(eta, kappa, mu, u_t, rtol)?;
    let mut us = sol.trace_u.clone();
    let mut etas = sol.trace_eta.clone();
    if let Some(last) = etas.last_mut() {
        if last.abs() < 1e-6 * eta {
            *last = 0.0;
        }
    }
    // strictly increasing abscissae for the interpolant
    let mut cleaned_u = Vec::with_capacity(us.len());
    let mut cleaned_e = Vec::with_capacity(us.len());
    for (u, e) in us.drain(..).zip(etas.drain(..)) {
        if cleaned_u.last().map_or(true, |p: &f64| u > *p + 1e-14) {
            cleaned_u.push(u);
            cleaned_e.push(e.max(0.0));
        }
    }
    let eta_interp = Pchip::new(cleaned_u, cleaned_e)?;
    let u_end = *eta_interp.x().last().unwrap();

    // output grid: uniform for laboratory truncation radii, geometric tail
    // for quasi-isolated solves
    let n_grid = 800usize;
    let grid_u: Vec<f64> = if u_t <= 24.0 {
        (0..n_grid).map(|i| u_t * i as f64 / (n_grid as f64 - 1.0)).collect()
    } else {
        let n_core = 320;
        let core_end = 8.0;
        let mut g: Vec<f64> = (0..n_core).map(|i| core_end * i as f64 / n_core as f64).collect();
        let n_tail = n_grid - n_core;
        let ratio = (u_t / core_end).powf(1.0 / (n_tail as f64 - 1.0));
        let mut v = core_end;
        for _ in 0..n_tail {
            g.push(v);
            v *= ratio;
        }
        *g.last_mut().unwrap() = u_t;
        g
    };

    let f_eta = king_f_unchecked(eta);
    let mut eta_t = Vec::with_capacity(grid_u.len());
    let mut n_e = Vec::with_capacity(grid_u.len());
    let mut n_i = Vec::with_capacity(grid_u.len());
    let mut t_e = Vec::with_capacity(grid_u.len());
    for &u in &grid_u {
        let e = if u <= eta_interp.x()[0] {
            eta
        } else if u >= u_end {
            0.0
        } else {
            eta_interp.eval(u).max(0.0)
        };
        eta_t.push(e);
        n_e.push(n_e0 * king_f_unchecked(e) / f_eta);
        n_i.push(n_i0 * (-0.5 * u * u).exp());
        t_e.push(t_k * temperature_ratio(e));
    }

    // crossing n_i = n_e
    let mut crossing_radius = f64::NAN;
    for i in 1..grid_u.len() {
        let d0 = n_i[i - 1] - n_e[i - 1];
        let d1 = n_i[i] - n_e[i];
        if d0 > 0.0 && d1 <= 0.0 {
            let w = d0 / (d0 - d1);
            crossing_radius = sigma * (grid_u[i - 1] + w * (grid_u[i] - grid_u[i - 1]));
            break;
        }
    }

    let n_e_computed = n_e0 * sigma.powi(3) * sol.count;
    let e_t = truncation_energy(&grid_u, &n_e, &n_i, sigma, u_t);
    let theta = K_B * t_k / M_E;
    let params = KingParams {
        eta,
        t_k,
        n_e0,
        e_t,
        e0: e_t - eta * theta,
        r_t: u_t * sigma,
    };

    Ok(KingEquilibrium {
        params,
        r: grid_u.iter().map(|u| u * sigma).collect(),
        eta_t,
        n_e,
        n_i,
        t_e,
        n_e_computed,
        crossing_radius,
        kappa,
        mu,
        sigma,
        n_i0,
    })
}

/// Absolute truncation energy E_t = Phi(r_t) with Phi(inf) = 0: the
/// point-charge potential of the net charge enclosed inside r_t.
fn truncation_energy(grid_u: &[f64], n_e: &[f64], n_i: &[f64], sigma: f64, u_t: f64) -> f64 {
    let mut q_encl = 0.0;
    for i in 1..grid_u.len() {
        let du = grid_u[i] - grid_u[i - 1];
        let f0 = grid_u[i - 1].powi(2) * (n_i[i - 1] - n_e[i - 1]);
        let f1 = grid_u[i].powi(2) * (n_i[i] - n_e[i]);
        q_encl += 0.5 * (f0 + f1) * du;
    }
    q_encl *= 4.0 * PI * sigma.powi(3);
    -Q_E * Q_E / (4.0 * PI * EPS_0 * M_E) * q_encl / (u_t * sigma)
}

impl KingEquilibrium {
    /// eta_t at radius r by interpolation on the stored grid.
    pub fn eta_t_at(&self, r: f64) -> f64 {
        crate::numerics::interp::lerp(&self.r, &self.eta_t, r)
    }

    /// Electron density at radius r (m^-3).
    pub fn n_e_at(&self, r: f64) -> f64 {
        crate::numerics::interp::lerp(&self.r, &self.n_e, r)
    }

    /// Local electron temperature (K) at radius r.
    pub fn temperature_at(&self, r: f64) -> f64 {
        self.params.t_k * temperature_ratio(self.eta_t_at(r))
    }

    /// Density-weighted global electron temperature (K).
    pub fn t_bar(&self) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 1..self.r.len() {
            let dr = self.r[i] - self.r[i - 1];
            let w0 = self.r[i - 1].powi(2) * self.n_e[i - 1];
            let w1 = self.r[i].powi(2) * self.n_e[i];
            num += 0.5 * (w0 * self.t_e[i - 1] + w1 * self.t_e[i]) * dr;
            den += 0.5 * (w0 + w1) * dr;
        }
        num / den
    }

    /// Exponent of a power-law fit n_e ~ r^p over [r_lo, r_hi].
    pub fn tail_exponent(&self, r_lo: f64, r_hi: f64) -> f64 {
        let mut lx = Vec::new();
        let mut ly = Vec::new();
        for (r, n) in self.r.iter().zip(&self.n_e) {
            if *r >= r_lo && *r <= r_hi && *n > 0.0 {
                lx.push(r.ln());
                ly.push(n.ln());
            }
        }
        crate::numerics::fit::linear_fit(&lx, &ly).1
    }

    /// Max integral-form Poisson residual of the solved eta_t, scaled by eta:
    /// eta_t(u) = eta - int_0^u s^-2 int_0^s s'^2 S ds' ds must hold with
    /// S = kappa [n_i/n_i0 - mu F^K(eta_t)/F^K(eta)].
    pub fn poisson_residual(&self) -> f64 {
        let f_eta = king_f_unchecked(self.params.eta);
        let n = self.r.len();
        let u: Vec<f64> = self.r.iter().map(|r| r / self.sigma).collect();
        let mut source = vec![0.0; n];
        for i in 0..n {
            source[i] = self.kappa
                * ((-0.5 * u[i] * u[i]).exp() - self.mu * king_f_unchecked(self.eta_t[i]) / f_eta);
        }
        let mut m = vec![0.0; n];
        for i in 1..n {
            let du = u[i] - u[i - 1];
            m[i] = m[i - 1]
                + 0.5 * (u[i - 1] * u[i - 1] * source[i - 1] + u[i] * u[i] * source[i]) * du;
        }
        let mut drop = vec![0.0; n];
        for i in 1..n {
            let du = u[i] - u[i - 1];
            let g0 = if u[i - 1] > 0.0 { m[i - 1] / (u[i - 1] * u[i - 1]) } else { 0.0 };
            let g1 = m[i] / (u[i] * u[i]);
            drop[i] = drop[i - 1] + 0.5 * (g0 + g1) * du;
        }
        let mut worst = 0.0f64;
        for i in 0..n {
            let resid = (self.params.eta - drop[i] - self.eta_t[i]) / self.params.eta;
            worst = worst.max(resid.abs());
        }
        worst
    }

    /// Cumulative velocity distribution N(<v) at the quartile shell
    /// (enclosed electron count = N_e/4), King vs a Maxwellian at T_K, both
    /// normalized at the local escape speed.  Rows: (v, King, Maxwellian).
    pub fn maxwellian_comparison(&self, n_points: usize) -> Vec<(f64, f64, f64)> {
        let mut cum = 0.0;
        let mut r_q = self.r[self.r.len() / 4];
        let total = self.n_e_computed;
        for i in 1..self.r.len() {
            let dr = self.r[i] - self.r[i - 1];
            cum += 0.5
                * (self.r[i - 1].powi(2) * self.n_e[i - 1] + self.r[i].powi(2) * self.n_e[i])
                * 4.0
                * PI
                * dr;
            if cum >= 0.25 * total {
                r_q = self.r[i];
                break;
            }
        }
        let eta_q = self.eta_t_at(r_q);
        let theta = K_B * self.params.t_k / M_E;
        let v_max = (2.0 * theta * eta_q).sqrt();
        let king_cum = |v: f64| {
            adaptive_simpson(
                &|vp: f64| {
                    let x = eta_q - 0.5 * vp * vp / theta;
                    if x <= 0.0 {
                        0.0
                    } else {
                        vp * vp * x.exp_m1()
                    }
                },
                0.0,
                v.min(v_max),
                1e-10,
            )
        };
        let maxw_cum = |v: f64| {
            adaptive_simpson(&|vp: f64| vp * vp * (-0.5 * vp * vp / theta).exp(), 0.0, v, 1e-10)
        };
        let kn = king_cum(v_max);
        let mn = maxw_cum(v_max);
        (0..n_points)
            .map(|i| {
                let v = v_max * 1.2 * i as f64 / (n_points as f64 - 1.0);
                (v, king_cum(v) / kn, maxw_cum(v) / mn)
            })
            .collect()
    }
}

/// Closed-form temperature from the counts:
/// 1.9 (eta - 2) k T_K = sqrt(2/pi) q^2 (N_i - N_e) / (4 pi eps0 sigma).
/// Valid for eta > 2.
pub fn temp_from_counts(excess: f64, sigma: f64, eta: f64) -> Result<f64> {
    if eta <= 2.0 {
        return Err(UcnpError::InvalidInput(format!(
            "temp_from_counts: eta = {eta} outside the validity domain eta > 2"
        )));
    }
    let rhs = (2.0 / PI).sqrt() * Q_E * Q_E * excess / (4.0 * PI * EPS_0 * sigma);
    Ok(rhs / (1.9 * (eta - 2.0) * K_B))
}

/// Harmonic-core estimate k T_K ~ q^2 sigma^2 (n_i0 - n_e0) / (3 eps0),
/// returned in kelvin.
pub fn harmonic_core_temperature(sigma: f64, n_i0: f64, n_e0: f64) -> f64 {
    Q_E * Q_E * sigma * sigma * (n_i0 - n_e0) / (3.0 * EPS_0 * K_B)
}

/// Frozen Gaussian cloud matching a plasma spec at expansion time t, and the
/// spec with sigma advanced to sigma(t).
pub fn cloud_at(spec: &PlasmaSpec, t: f64) -> (GaussianCloud, PlasmaSpec) {
    let cloud = GaussianCloud::from_spec(spec);
    let mut s = *spec;
    s.sigma = cloud.sigma_at(t);
    (cloud, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::quad::adaptive_simpson;

    #[test]
    fn king_f_zero_and_rejects_negative() {
        assert_eq!(king_f(0.0).unwrap(), 0.0);
        assert!(king_f(-1.0).is_err());
    }

    #[test]
    fn king_f_matches_velocity_integral_oracle() {
        // independent oracle:
        // int_0^sqrt(2x) w^2 (e^{x - w^2/2} - 1) dw = sqrt(pi/2) F^K(x)
        for x in [0.3, 1.0, 5.0, 9.0] {
            let oracle = adaptive_simpson(
                &|w: f64| w * w * ((x - 0.5 * w * w).exp() - 1.0),
                0.0,
                (2.0 * x).sqrt(),
                1e-13,
            ) / (PI / 2.0).sqrt();
            let f = king_f(x).unwrap();
            assert!((f - oracle).abs() / oracle < 1e-8, "x={x}: {f:.10e} vs {oracle:.10e}");
        }
    }

    #[test]
    fn king_f_maxwellian_asymptote() {
        let x: f64 = 40.0;
        let ratio = king_f(x).unwrap() / x.exp();
        assert!((ratio - 1.0).abs() < 0.2, "ratio {ratio}");
        let x2: f64 = 200.0;
        let ratio2 = king_f(x2).unwrap() / x2.exp();
        assert!((ratio2 - 1.0).abs() < 0.05, "ratio {ratio2}");
    }

    #[test]
    fn king_f_strictly_increasing() {
        let mut prev = 0.0;
        for i in 1..400 {
            let x = i as f64 * 0.05;
            let v = king_f(x).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn king_f_series_is_power_series_remainder() {
        // the subtracted polynomial equals the first two power-series terms
        // of e^x erf(sqrt x); checked at 20 sample points
        for i in 1..=20 {
            let x = i as f64 * 0.4;
            let full = x.exp() * erf(x.sqrt());
            let poly = (4.0 * x / PI).sqrt() * (1.0 + 2.0 * x / 3.0);
            let mut term = 2.0 / PI.sqrt() * x.sqrt();
            let mut series2 = term;
            term *= 2.0 * x / 3.0;
            series2 += term;
            assert!((poly - series2).abs() <= 1e-12 * poly.abs().max(1.0), "x={x}");
            assert!((king_f(x).unwrap() - (full - poly)).abs() < 1e-10 * full.max(1.0));
        }
    }

    #[test]
    fn temperature_ratio_limits_and_approx() {
        assert_eq!(temperature_ratio(0.0), 0.0);
        assert!(temperature_ratio(1e-6) < 1e-5);
        assert!((temperature_ratio(40.0) - 1.0).abs() < 1e-3);
        // erf(0.22 eta) approximation within 5% on [0.5, 15]
        for i in 0..60 {
            let x = 0.5 + i as f64 * (15.0 - 0.5) / 59.0;
            let exact = temperature_ratio(x);
            let approx = temperature_ratio_erf_approx(x);
            assert!(
                (exact - approx).abs() / exact < 0.05,
                "eta_t = {x}: exact {exact:.4} vs approx {approx:.4}"
            );
        }
    }

    #[test]
    fn f_of_e_truncation() {
        let p = KingParams {
            eta: 7.0,
            t_k: 100.0,
            n_e0: 1e15,
            e_t: 0.0,
            e0: -7.0 * K_B * 100.0 / M_E,
            r_t: 1e-3,
        };
        assert_eq!(p.f_of_e(0.0), 0.0);
        assert_eq!(p.f_of_e(1.0), 0.0);
        assert!(p.f_of_e(p.e0) > 0.0);
        assert!(p.f_of_e(0.5 * p.e0) < p.f_of_e(p.e0));
    }

    #[test]
    fn f_of_e_density_quadrature() {
        // integrating f over velocities at depth eta_t reproduces
        // n_e0 F^K(eta_t)/F^K(eta)
        let eta = 6.0;
        let t_k = 80.0;
        let theta = K_B * t_k / M_E;
        let e0 = -eta * theta;
        let p = KingParams {
            eta,
            t_k,
            n_e0: 2e15,
            e_t: 0.0,
            e0,
            r_t: 1e-3,
        };
        for eta_t in [4.0, 2.0, 0.8] {
            let phi = -eta_t * theta;
            let vmax = (2.0 * theta * eta_t).sqrt();
            let n = adaptive_simpson(
                &|v: f64| 4.0 * PI * v * v * p.f_of_e(phi + 0.5 * v * v),
                0.0,
                vmax,
                1e-12,
            );
            let expect = p.n_e0 * king_f_unchecked(eta_t) / king_f_unchecked(eta);
            assert!((n - expect).abs() / expect < 1e-8, "eta_t={eta_t}: {n:.6e} vs {expect:.6e}");
        }
    }

    #[test]
    fn kramers_bracket_vanishes_for_king() {
        // d/dE [ f/(kT/m) + df/dE ] = 0 identically for the King form
        let p = KingParams {
            eta: 7.0,
            t_k: 120.0,
            n_e0: 1e15,
            e_t: 0.0,
            e0: -7.0 * K_B * 120.0 / M_E,
            r_t: 1e-3,
        };
        let theta = K_B * p.t_k / M_E;
        let de = (0.0 - p.e0) / 500.0;
        let mut worst = 0.0f64;
        for i in 2..498 {
            let e = p.e0 + i as f64 * de;
            let bracket = |ee: f64| p.f_of_e(ee) / theta + p.f_deriv(ee);
            let d = (bracket(e + de) - bracket(e - de)) / (2.0 * de);
            worst = worst.max((d / (p.amplitude() / (theta * theta))).abs());
        }
        assert!(worst < 1e-10, "bracket residual {worst:.2e}");
    }

    #[test]
    fn solve_paper_regime_crossing_and_count() {
        let spec = PlasmaSpec::paper_regime();
        let eq = solve_selfconsistent(&spec, 7.0, 12.0 * spec.sigma).unwrap();
        let x = eq.crossing_radius / spec.sigma;
        assert!(x > 2.5 && x < 4.5, "crossing at {x:.2} sigma");
        assert!(
            (eq.n_e_computed - spec.n_electrons).abs() / spec.n_electrons < 1e-5,
            "N_e = {:.1}",
            eq.n_e_computed
        );
        for w in eq.eta_t.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "eta_t must not increase");
        }
        assert!(eq.eta_t.last().unwrap().abs() < 1e-5 * eq.params.eta);
        for t in &eq.t_e {
            assert!(*t <= eq.params.t_k * (1.0 + 1e-12));
        }
        assert!(eq.poisson_residual() < 1e-6, "poisson residual {:.2e}", eq.poisson_residual());
    }

    #[test]
    fn solve_mass_consistency_by_quadrature() {
        let spec = PlasmaSpec::paper_regime();
        let eq = solve_selfconsistent(&spec, 7.0, 12.0 * spec.sigma).unwrap();
        let interp = Pchip::new(eq.r.clone(), eq.n_e.clone()).unwrap();
        let total = adaptive_simpson(
            &|r: f64| 4.0 * PI * r * r * interp.eval(r),
            0.0,
            eq.params.r_t,
            1e-10,
        );
        assert!(
            (total - spec.n_electrons).abs() / spec.n_electrons < 1e-4,
            "quadrature N_e = {total:.1}"
        );
    }

    #[test]
    fn far_tail_exponent_near_minus_five_halves() {
        let spec = PlasmaSpec::paper_regime();
        let eq = solve_selfconsistent(&spec, 7.0, 200.0 * spec.sigma).unwrap();
        let p = eq.tail_exponent(6.0 * spec.sigma, 12.0 * spec.sigma);
        assert!((p + 2.5).abs() < 0.3, "tail exponent {p:.3}");
    }

    #[test]
    fn harmonic_core_estimate_within_20_percent() {
        let spec = PlasmaSpec::paper_regime();
        let eq = solve_selfconsistent(&spec, 7.0, 12.0 * spec.sigma).unwrap();
        let est = harmonic_core_temperature(spec.sigma, eq.n_i0, eq.params.n_e0);
        let ratio = est / eq.params.t_k;
        assert!((ratio - 1.0).abs() < 0.2, "harmonic/solved = {ratio:.3}");
    }

    #[test]
    fn temp_from_counts_values() {
        let t = temp_from_counts(20_000.0, 250e-6, 7.0).unwrap();
        let rhs = (2.0 / PI).sqrt() * Q_E * Q_E * 20_000.0 / (4.0 * PI * EPS_0 * 250e-6);
        assert!((t - rhs / (9.5 * K_B)).abs() / t < 1e-12);
        assert_eq!(temp_from_counts(0.0, 250e-6, 7.0).unwrap(), 0.0);
        // eta scaling: (12-2)/(7-2) = 2 gives half the temperature
        let t12 = temp_from_counts(20_000.0, 250e-6, 12.0).unwrap();
        assert!((t / t12 - 2.0).abs() < 1e-12);
        assert!(temp_from_counts(20_000.0, 250e-6, 1.5).is_err());
    }

    #[test]
    fn simplified_formula_tracks_solver() {
        let spec = PlasmaSpec::paper_regime();
        let eta = 7.0;
        let eq = solve_selfconsistent(&spec, eta, 18.0 * spec.sigma).unwrap();
        let t_formula = temp_from_counts(spec.excess(), spec.sigma, eta).unwrap();
        let ratio = t_formula / eq.params.t_k;
        assert!((ratio - 1.0).abs() < 0.2, "formula/solver = {ratio:.3}");
    }

    #[test]
    fn maxwellian_comparison_shape() {
        let spec = PlasmaSpec::paper_regime();
        let eq = solve_selfconsistent(&spec, 5.0, 12.0 * spec.sigma).unwrap();
        let table = eq.maxwellian_comparison(40);
        assert_eq!(table[0].1, 0.0);
        assert_eq!(table[0].2, 0.0);
        // beyond the escape speed the King curve saturates at 1 while the
        // Maxwellian keeps rising
        let last = table.last().unwrap();
        assert!((last.1 - 1.0).abs() < 1e-9);
        assert!(last.2 > 1.0);
    }

    #[test]
    fn solve_rejects_bad_inputs() {
        let spec = PlasmaSpec::paper_regime();
        assert!(solve_selfconsistent(&spec, 0.2, 12.0 * spec.sigma).is_err());
        let mut neutral = spec;
        neutral.n_electrons = neutral.n_ions;
        assert!(solve_selfconsistent(&neutral, 7.0, 12.0 * spec.sigma).is_err());
    }
}
