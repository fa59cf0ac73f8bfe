//! Monotone piecewise-cubic interpolation (Fritsch-Carlson) with analytic
//! derivative and inverse lookup for monotone data.

use crate::error::{Result, UcnpError};

/// Shape-preserving cubic Hermite interpolant.  Monotone input data yields a
/// monotone interpolant, which makes the inverse well defined.
#[derive(Debug, Clone)]
pub struct Pchip {
    x: Vec<f64>,
    y: Vec<f64>,
    d: Vec<f64>,
}

impl Pchip {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() || x.len() < 2 {
            return Err(UcnpError::InvalidInput("pchip: need >= 2 matching nodes".into()));
        }
        for w in x.windows(2) {
            if w[1] <= w[0] {
                return Err(UcnpError::InvalidInput("pchip: abscissae must increase strictly".into()));
            }
        }
        let n = x.len();
        if n == 2 {
            let s = (y[1] - y[0]) / (x[1] - x[0]);
            return Ok(Pchip { x, y, d: vec![s, s] });
        }
        let h: Vec<f64> = (0..n - 1).map(|i| x[i + 1] - x[i]).collect();
        let s: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            if s[i - 1] * s[i] <= 0.0 {
                d[i] = 0.0;
            } else {
                let w1 = 2.0 * h[i] + h[i - 1];
                let w2 = h[i] + 2.0 * h[i - 1];
                d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
            }
        }
        d[0] = endpoint_slope(h[0], h[1], s[0], s[1]);
        d[n - 1] = endpoint_slope(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
        Ok(Pchip { x, y, d })
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    fn segment(&self, xq: f64) -> usize {
        match self.x.binary_search_by(|v| v.partial_cmp(&xq).unwrap()) {
            Ok(i) => i.min(self.x.len() - 2),
            Err(i) => i.clamp(1, self.x.len() - 1) - 1,
        }
    }

    /// Evaluate; clamps outside the table to the end segments.
    pub fn eval(&self, xq: f64) -> f64 {
        let i = self.segment(xq);
        let h = self.x[i + 1] - self.x[i];
        let t = (xq - self.x[i]) / h;
        let (h00, h10, h01, h11) = hermite_basis(t);
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }

    /// First derivative of the interpolant.
    pub fn deriv(&self, xq: f64) -> f64 {
        let i = self.segment(xq);
        let h = self.x[i + 1] - self.x[i];
        let t = (xq - self.x[i]) / h;
        let dh00 = (6.0 * t * t - 6.0 * t) / h;
        let dh10 = 3.0 * t * t - 4.0 * t + 1.0;
        let dh01 = (-6.0 * t * t + 6.0 * t) / h;
        let dh11 = 3.0 * t * t - 2.0 * t;
        dh00 * self.y[i] + dh10 * self.d[i] + dh01 * self.y[i + 1] + dh11 * self.d[i + 1]
    }

    /// Inverse lookup for strictly monotone y: returns x with eval(x) = yq.
    pub fn inverse(&self, yq: f64) -> Result<f64> {
        let n = self.y.len();
        let increasing = self.y[n - 1] > self.y[0];
        let (ylo, yhi) = if increasing {
            (self.y[0], self.y[n - 1])
        } else {
            (self.y[n - 1], self.y[0])
        };
        if yq < ylo - 1e-12 * (yhi - ylo).abs() || yq > yhi + 1e-12 * (yhi - ylo).abs() {
            return Err(UcnpError::InvalidInput(format!(
                "pchip inverse: {yq:e} outside [{ylo:e}, {yhi:e}]"
            )));
        }
        let yq = yq.clamp(ylo, yhi);
        let mut lo = 0usize;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let below = if increasing { self.y[mid] <= yq } else { self.y[mid] >= yq };
            if below {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (a, b) = (self.x[lo], self.x[lo + 1]);
        let g = |x: f64| self.eval(x) - yq;
        if g(a) == 0.0 {
            return Ok(a);
        }
        if g(b) == 0.0 {
            return Ok(b);
        }
        super::roots::bisect(&g, a, b, 1e-14, 200)
    }
}

fn hermite_basis(t: f64) -> (f64, f64, f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    (
        2.0 * t3 - 3.0 * t2 + 1.0,
        t3 - 2.0 * t2 + t,
        -2.0 * t3 + 3.0 * t2,
        t3 - t2,
    )
}

/// Non-centered three-point end slope with the usual monotonicity clamps.
fn endpoint_slope(h0: f64, h1: f64, s0: f64, s1: f64) -> f64 {
    let mut d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
    if d.signum() != s0.signum() {
        d = 0.0;
    } else if s0.signum() != s1.signum() && d.abs() > 3.0 * s0.abs() {
        d = 3.0 * s0;
    }
    d
}

/// Linear interpolation on tabulated data, clamped at the ends.
pub fn lerp(x: &[f64], y: &[f64], xq: f64) -> f64 {
    if xq <= x[0] {
        return y[0];
    }
    if xq >= x[x.len() - 1] {
        return y[y.len() - 1];
    }
    let i = match x.binary_search_by(|v| v.partial_cmp(&xq).unwrap()) {
        Ok(i) => return y[i],
        Err(i) => i - 1,
    };
    let t = (xq - x[i]) / (x[i + 1] - x[i]);
    y[i] * (1.0 - t) + y[i + 1] * t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_nodes_and_monotone() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let y: Vec<f64> = x.iter().map(|&v| (v * 0.7).tanh()).collect();
        let p = Pchip::new(x.clone(), y.clone()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert!((p.eval(*xi) - yi).abs() < 1e-14);
        }
        let mut prev = p.eval(0.0);
        for i in 1..200 {
            let v = p.eval(i as f64 * 5.7 / 200.0);
            assert!(v >= prev - 1e-14, "interpolant lost monotonicity");
            prev = v;
        }
    }

    #[test]
    fn inverse_round_trip() {
        let x: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|&v| v * v + 1.0).collect();
        let p = Pchip::new(x, y).unwrap();
        for q in [1.01, 2.0, 10.0, 24.0] {
            let xr = p.inverse(q).unwrap();
            assert!((p.eval(xr) - q).abs() < 1e-10);
        }
    }

    #[test]
    fn decreasing_inverse() {
        let x: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let y: Vec<f64> = x.iter().map(|&v| (-v).exp()).collect();
        let p = Pchip::new(x, y).unwrap();
        let xr = p.inverse(0.5).unwrap();
        assert!((xr - std::f64::consts::LN_2).abs() < 1e-4);
    }

    #[test]
    fn derivative_close_to_analytic() {
        let x: Vec<f64> = (0..200).map(|i| i as f64 * 0.01).collect();
        let y: Vec<f64> = x.iter().map(|&v| v.sin()).collect();
        let p = Pchip::new(x, y).unwrap();
        for q in [0.3, 0.9, 1.5] {
            assert!((p.deriv(q) - q.cos()).abs() < 1e-3);
        }
    }
}
