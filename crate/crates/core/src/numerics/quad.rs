//! Quadrature: composite and adaptive rules, cumulative integrals, and a
//! substitution rule for integrands with a sqrt turning point.

/// Trapezoid rule on tabulated (x, y).
pub fn trapz(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let mut s = 0.0;
    for i in 1..x.len() {
        s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    s
}

/// Cumulative trapezoid rule; output[0] = 0.
pub fn cumtrapz(x: &[f64], y: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), y.len());
    let mut out = vec![0.0; x.len()];
    for i in 1..x.len() {
        out[i] = out[i - 1] + 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    out
}

/// Composite Simpson rule on a uniform grid (n odd or even handled; the
/// trailing interval falls back to a 3-point closed rule).
pub fn simpson_uniform(y: &[f64], h: f64) -> f64 {
    let n = y.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * h * (y[0] + y[1]);
    }
    let mut s = 0.0;
    let mut i = 0;
    while i + 2 < n {
        s += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
        i += 2;
    }
    if i + 1 < n {
        // last interval by the Newton-Cotes half rule on the final three nodes
        s += h / 12.0 * (-y[n - 3] + 8.0 * y[n - 2] + 5.0 * y[n - 1]);
    }
    s
}

/// Cumulative integral of samples on a uniform grid with O(h^4) local-cubic
/// panels: each [i, i+1] interval integrates the cubic through the four
/// nearest nodes.  Needed where trapezoid accuracy would dominate the error
/// budget (Chang-Cooper coefficients, potential assembly).
pub fn cumquad_uniform(y: &[f64], h: f64) -> Vec<f64> {
    let n = y.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n < 4 {
        return cumtrapz(&(0..n).map(|i| i as f64 * h).collect::<Vec<_>>(), y);
    }
    for i in 0..n - 1 {
        // stencil start so that [i, i+1] is interior to [j, j+3]
        let j = i.saturating_sub(1).min(n - 4);
        let k = i - j; // 0, 1 or 2: position of the interval in the stencil
        let (a, b, c, d) = (y[j], y[j + 1], y[j + 2], y[j + 3]);
        // exact integrals of the interpolating cubic over each unit subinterval
        let seg = match k {
            0 => h / 24.0 * (9.0 * a + 19.0 * b - 5.0 * c + d),
            1 => h / 24.0 * (-a + 13.0 * b + 13.0 * c - d),
            _ => h / 24.0 * (a - 5.0 * b + 19.0 * c + 9.0 * d),
        };
        out[i + 1] = out[i] + seg;
    }
    out
}

/// Adaptive Simpson quadrature with absolute+relative tolerance control.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol.max(1e-300) {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// Integrate g over [a, b] where g(x) ~ C (b - x)^(p/2) near the upper end
/// (turning-point integrands with p = 1 or 3).  Substituting x = b - s^2
/// removes the fractional power: integral = 2 s g(b - s^2) ds over
/// [0, sqrt(b-a)], which adaptive Simpson handles at full order.
pub fn sqrt_weighted_upper<F: Fn(f64) -> f64>(g: &F, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let smax = (b - a).sqrt();
    adaptive_simpson(&|s: f64| 2.0 * s * g(b - s * s), 0.0, smax, tol)
}
