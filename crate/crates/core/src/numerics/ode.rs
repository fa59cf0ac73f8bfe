//! Adaptive Dormand-Prince 4(5) integration with event detection.

use crate::error::{Result, UcnpError};

/// Step-control options.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h0: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            h0: 1e-4,
            h_max: f64::INFINITY,
            max_steps: 2_000_000,
        }
    }
}

/// Dense solution trace: accepted step abscissae and states.
#[derive(Debug, Clone)]
pub struct OdeTrace {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    /// Set when the event function crossed zero; integration stopped there.
    pub event: Option<f64>,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate dy/dt = f(t, y) from t0 to t1, recording every accepted step.
/// If `event` is given, integration stops where it first changes sign (the
/// crossing is refined by bisection on the last step) and `trace.event`
/// holds the crossing abscissa.
pub fn integrate_adaptive<F, E>(
    f: &F,
    t0: f64,
    t1: f64,
    y0: &[f64],
    opts: &OdeOptions,
    event: Option<&E>,
) -> Result<OdeTrace>
where
    F: Fn(f64, &[f64], &mut [f64]),
    E: Fn(f64, &[f64]) -> f64,
{
    let dim = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut h = opts.h0.min(t1 - t0).max(1e-300);
    let mut trace = OdeTrace {
        t: vec![t0],
        y: vec![y.clone()],
        event: None,
    };
    let mut ev_prev = event.map(|e| e(t, &y));
    let mut k = vec![vec![0.0; dim]; 7];
    let mut ytmp = vec![0.0; dim];
    let mut steps = 0usize;

    while t < t1 {
        if steps > opts.max_steps {
            return Err(UcnpError::Convergence(format!(
                "ode: exceeded {} steps at t={t:e}",
                opts.max_steps
            )));
        }
        steps += 1;
        h = h.min(t1 - t).min(opts.h_max);

        f(t, &y, &mut k[0]);
        for s in 1..7 {
            for (i, v) in ytmp.iter_mut().enumerate() {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += h * A[s][j] * kj[i];
                }
                *v = acc;
            }
            let ts = t + C[s] * h;
            let (head, tail) = k.split_at_mut(s);
            let _ = head;
            f(ts, &ytmp, &mut tail[0]);
        }
        let mut err: f64 = 0.0;
        let mut y5 = vec![0.0; dim];
        for i in 0..dim {
            let mut v5 = y[i];
            let mut v4 = y[i];
            for (j, kj) in k.iter().enumerate() {
                v5 += h * B5[j] * kj[i];
                v4 += h * B4[j] * kj[i];
            }
            y5[i] = v5;
            let sc = opts.atol + opts.rtol * y[i].abs().max(v5.abs());
            err = err.max(((v5 - v4) / sc).abs());
        }

        if err <= 1.0 || h <= 1e-14 * (1.0 + t.abs()) {
            let t_new = t + h;
            if let (Some(e), Some(ep)) = (event, ev_prev) {
                let en = e(t_new, &y5);
                if ep * en < 0.0 {
                    let (tc, yc) = refine_event(f, e, t, &y, t_new, opts)?;
                    trace.t.push(tc);
                    trace.y.push(yc);
                    trace.event = Some(tc);
                    return Ok(trace);
                }
                ev_prev = Some(en);
            }
            t = t_new;
            y = y5;
            trace.t.push(t);
            trace.y.push(y.clone());
        }
        let fac = if err > 0.0 { 0.9 * err.powf(-0.2) } else { 5.0 };
        h *= fac.clamp(0.2, 5.0);
    }
    Ok(trace)
}

/// Re-integrate the bracketing step with bisection on the endpoint until the
/// event time is pinned to ~1e-12 relative.
fn refine_event<F, E>(
    f: &F,
    e: &E,
    t_lo: f64,
    y_lo: &[f64],
    mut t_hi: f64,
    opts: &OdeOptions,
) -> Result<(f64, Vec<f64>)>
where
    F: Fn(f64, &[f64], &mut [f64]),
    E: Fn(f64, &[f64]) -> f64,
{
    let mut lo = t_lo;
    let y_at = |tt: f64| -> Result<Vec<f64>> {
        let sub = OdeOptions {
            h0: (tt - t_lo).max(1e-300) * 0.1,
            ..*opts
        };
        let tr = integrate_adaptive(f, t_lo, tt, y_lo, &sub, None::<&fn(f64, &[f64]) -> f64>)?;
        Ok(tr.y.last().unwrap().clone())
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + t_hi);
        if (t_hi - lo).abs() < 1e-12 * (1.0 + mid.abs()) {
            break;
        }
        let ym = y_at(mid)?;
        let elo = e(lo, &y_at(lo)?);
        if elo * e(mid, &ym) <= 0.0 {
            t_hi = mid;
        } else {
            lo = mid;
        }
    }
    let yc = y_at(t_hi)?;
    Ok((t_hi, yc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let f = |_t: f64, y: &[f64], dy: &mut [f64]| dy[0] = -y[0];
        let tr = integrate_adaptive(
            &f,
            0.0,
            5.0,
            &[1.0],
            &OdeOptions::default(),
            None::<&fn(f64, &[f64]) -> f64>,
        )
        .unwrap();
        let y_end = tr.y.last().unwrap()[0];
        assert!((y_end - (-5.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn harmonic_oscillator_energy() {
        let f = |_t: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        let tr = integrate_adaptive(
            &f,
            0.0,
            20.0,
            &[1.0, 0.0],
            &OdeOptions::default(),
            None::<&fn(f64, &[f64]) -> f64>,
        )
        .unwrap();
        let y = tr.y.last().unwrap();
        let energy = y[0] * y[0] + y[1] * y[1];
        assert!((energy - 1.0).abs() < 1e-7);
    }

    #[test]
    fn event_detection_stops_at_zero_crossing() {
        // y = cos(t) crosses zero at pi/2
        let f = |_t: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        let ev = |_t: f64, y: &[f64]| y[0];
        let tr = integrate_adaptive(&f, 0.0, 10.0, &[1.0, 0.0], &OdeOptions::default(), Some(&ev)).unwrap();
        let tc = tr.event.expect("event expected");
        assert!((tc - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }
}
