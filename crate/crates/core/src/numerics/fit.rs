//! Small least-squares helpers.

/// Ordinary least squares for y = a + b x; returns (a, b).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let det = n * sxx - sx * sx;
    let b = (n * sxy - sx * sy) / det;
    let a = (sy - b * sx) / n;
    (a, b)
}

/// Log-log power-law exponent of y ~ x^p over the tabulated range.
pub fn power_law_exponent(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    linear_fit(&lx, &ly).1
}

/// Least squares for y = c0 + c1 u + c2 v (three regressors); returns
/// (c0, c1, c2).  Solves the 3x3 normal equations directly.
pub fn lstsq3(u: &[f64], v: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert!(u.len() == v.len() && v.len() == y.len());
    let n = y.len() as f64;
    let (mut su, mut sv, mut sy) = (0.0, 0.0, 0.0);
    let (mut suu, mut svv, mut suv) = (0.0, 0.0, 0.0);
    let (mut suy, mut svy) = (0.0, 0.0);
    for i in 0..y.len() {
        su += u[i];
        sv += v[i];
        sy += y[i];
        suu += u[i] * u[i];
        svv += v[i] * v[i];
        suv += u[i] * v[i];
        suy += u[i] * y[i];
        svy += v[i] * y[i];
    }
    // normal matrix [[n, su, sv], [su, suu, suv], [sv, suv, svv]]
    let m = [[n, su, sv], [su, suu, suv], [sv, suv, svv]];
    let rhs = [sy, suy, svy];
    let sol = solve3(m, rhs);
    (sol[0], sol[1], sol[2])
}

fn solve3(mut m: [[f64; 3]; 3], mut b: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()).unwrap();
        m.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for k in row + 1..3 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_line() {
        let x: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.5 - 0.75 * v).collect();
        let (a, b) = linear_fit(&x, &y);
        assert!((a - 2.5).abs() < 1e-12 && (b + 0.75).abs() < 1e-12);
    }

    #[test]
    fn exponent_of_cube() {
        let x: Vec<f64> = (1..40).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 7.0 * v.powi(3)).collect();
        assert!((power_law_exponent(&x, &y) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn three_regressors() {
        let u: Vec<f64> = (0..50).map(|i| (i as f64 * 0.37).sin()).collect();
        let v: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let y: Vec<f64> = u.iter().zip(&v).map(|(a, b)| 1.0 + 2.0 * a - 0.5 * b).collect();
        let (c0, c1, c2) = lstsq3(&u, &v, &y);
        assert!((c0 - 1.0).abs() < 1e-10 && (c1 - 2.0).abs() < 1e-10 && (c2 + 0.5).abs() < 1e-10);
    }
}
