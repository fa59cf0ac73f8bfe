//! Bracketed root finding.

use crate::error::{Result, UcnpError};

/// Plain bisection on a bracketing interval.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64, maxit: usize) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(UcnpError::Convergence(format!(
            "bisect: no sign change on [{a:e}, {b:e}] (f(a)={fa:e}, f(b)={fb:e})"
        )));
    }
    for _ in 0..maxit {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || 0.5 * (b - a).abs() < tol * (1.0 + m.abs()) {
            return Ok(m);
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

/// Illinois-damped regula falsi: superlinear on smooth functions, keeps a
/// bracket at all times.  `fa` and `fb` are the already-evaluated endpoint
/// values (they must straddle zero).
pub fn illinois<F: Fn(f64) -> f64>(
    f: &F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    tol_x: f64,
    maxit: usize,
) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(UcnpError::Convergence(format!(
            "illinois: no sign change on [{a:e}, {b:e}]"
        )));
    }
    let mut side = 0i8;
    let mut c = 0.5 * (a + b);
    for _ in 0..maxit {
        c = (fa * b - fb * a) / (fa - fb);
        if (b - a).abs() < tol_x * (1.0 + c.abs()) {
            return Ok(c);
        }
        let fc = f(c);
        if fc == 0.0 {
            return Ok(c);
        }
        if fc * fb > 0.0 {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
    }
    Ok(c)
}

/// Newton iteration safeguarded by a bisection bracket; falls back to
/// bisection whenever the Newton step leaves the bracket or stalls.
pub fn newton_bisect<F, D>(f: &F, df: &D, mut a: f64, mut b: f64, x0: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    if f(b) == 0.0 {
        return Ok(b);
    }
    if fa * f(b) > 0.0 {
        return Err(UcnpError::Convergence(format!(
            "newton_bisect: no sign change on [{a:e}, {b:e}]"
        )));
    }
    let mut x = x0.clamp(a.min(b), a.max(b));
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fa * fx < 0.0 {
            b = x;
        } else {
            a = x;
            fa = fx;
        }
        let d = df(x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        let inside = newton.is_finite() && newton > a.min(b) && newton < a.max(b);
        let next = if inside { newton } else { 0.5 * (a + b) };
        if (next - x).abs() < tol * (1.0 + x.abs()) {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(&|x: f64| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn newton_converges_fast() {
        let r = newton_bisect(&|x: f64| x.powi(3) - 8.0, &|x: f64| 3.0 * x * x, 0.0, 5.0, 1.0, 1e-14).unwrap();
        assert!((r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_rejects_bad_bracket() {
        assert!(bisect(&|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_err());
    }

    #[test]
    fn illinois_superlinear_on_smooth_roots() {
        let f = |x: f64| x.exp() - 2.0;
        let r = illinois(&f, 0.0, 2.0, f(0.0), f(2.0), 1e-14, 100).unwrap();
        assert!((r - std::f64::consts::LN_2).abs() < 1e-12);
        assert!(illinois(&f, 2.0, 3.0, f(2.0), f(3.0), 1e-14, 100).is_err());
    }
}
