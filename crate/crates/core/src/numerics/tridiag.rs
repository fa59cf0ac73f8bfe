//! Thomas algorithm for tridiagonal systems.

/// Solve a x_{i-1} + b x_i + c x_{i+1} = d with a[0] and c[n-1] ignored.
pub fn solve_tridiagonal(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Vec<f64> {
    let n = b.len();
    assert!(a.len() == n && c.len() == n && d.len() == n);
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_laplacian_like_system() {
        let n = 64;
        let a = vec![-1.0; n];
        let b = vec![2.5; n];
        let c = vec![-1.0; n];
        let xt: Vec<f64> = (0..n).map(|i| (i as f64 * 0.1).cos()).collect();
        let mut d = vec![0.0; n];
        for i in 0..n {
            d[i] = 2.5 * xt[i];
            if i > 0 {
                d[i] -= xt[i - 1];
            }
            if i + 1 < n {
                d[i] -= xt[i + 1];
            }
        }
        let x = solve_tridiagonal(&a, &b, &c, &d);
        for i in 0..n {
            assert!((x[i] - xt[i]).abs() < 1e-12);
        }
    }
}
