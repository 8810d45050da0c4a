//! Small dense numerics used by the spheroidal eigenproblem and the
//! interbasis oracles: a symmetric tridiagonal eigensolver, Householder
//! least squares, and tanh-sinh quadrature.
//!
//! Everything here operates on matrices of dimension at most a few dozen;
//! the implementations favour determinism and accuracy over throughput.

use crate::error::Error;
use crate::Result;

/// Eigendecomposition of a symmetric tridiagonal matrix by the implicit-QL
/// method, returning eigenvalues in ascending order with orthonormal
/// eigenvectors as columns of the second value (`vecs[row][col]`).
///
/// `diag` has length n, `off` length n-1.
pub fn sym_tridiag_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n, "off-diagonal length must be n-1");
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![vec![0.0; n]; n];
    for (i, row) in z.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenSolve(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if r == 0.0 && i > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let vals = order.iter().map(|&k| d[k]).collect();
    let vecs = z
        .iter()
        .map(|row| order.iter().map(|&k| row[k]).collect())
        .collect();
    Ok((vals, vecs))
}

/// Least squares by Householder QR for several right-hand sides sharing one
/// design matrix. Returns per-RHS coefficient vectors, per-RHS residual
/// 2-norms, and the `max|R_kk| / min|R_kk|` condition estimate.
pub fn lstsq_multi(
    a: &[Vec<f64>],
    rhs: &[Vec<f64>],
) -> Result<(Vec<Vec<f64>>, Vec<f64>, f64)> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    assert!(m >= n && n > 0, "need an overdetermined system");
    let mut q = a.to_vec();
    let mut bs: Vec<Vec<f64>> = rhs.to_vec();

    let mut rdiag = vec![0.0; n];
    for k in 0..n {
        let norm = (k..m).map(|i| q[i][k] * q[i][k]).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::IllConditioned(f64::INFINITY));
        }
        let alpha = -norm.copysign(q[k][k]);
        // v = x - alpha e_k, stored in place
        q[k][k] -= alpha;
        let vnorm2 = (k..m).map(|i| q[i][k] * q[i][k]).sum::<f64>();
        for j in k + 1..n {
            let dot = (k..m).map(|i| q[i][k] * q[i][j]).sum::<f64>();
            let t = 2.0 * dot / vnorm2;
            for row in q[k..m].iter_mut() {
                let h = t * row[k];
                row[j] -= h;
            }
        }
        for b in bs.iter_mut() {
            let dot = (k..m).map(|i| q[i][k] * b[i]).sum::<f64>();
            let t = 2.0 * dot / vnorm2;
            for i in k..m {
                b[i] -= t * q[i][k];
            }
        }
        rdiag[k] = alpha;
    }

    let rmax = rdiag.iter().fold(0.0f64, |acc, r| acc.max(r.abs()));
    let rmin = rdiag.iter().fold(f64::INFINITY, |acc, r| acc.min(r.abs()));
    let cond = rmax / rmin;

    let mut xs = Vec::with_capacity(bs.len());
    let mut residuals = Vec::with_capacity(bs.len());
    for b in &bs {
        let mut x = vec![0.0; n];
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..n {
                s -= q[k][j] * x[j];
            }
            x[k] = s / rdiag[k];
        }
        let res = (n..m).map(|i| b[i] * b[i]).sum::<f64>().sqrt();
        xs.push(x);
        residuals.push(res);
    }
    Ok((xs, residuals, cond))
}

/// Tanh-sinh quadrature of `f` over the finite interval `(a, b)`.
///
/// Handles integrable endpoint singularities (e.g. `x^alpha` weights with
/// non-integer `alpha`) at near machine accuracy for smooth interiors.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let h = 1.0 / 64.0;
    let t_max = 4.0;
    let steps = (t_max / h) as i64;
    let mut sum = 0.0;
    for k in -steps..=steps {
        let t = k as f64 * h;
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let x = u.tanh();
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        let point = mid + half * x;
        // guard against evaluating exactly on a singular endpoint
        if point > a && point < b {
            let v = f(point);
            if v.is_finite() {
                sum += w * v;
            }
        }
    }
    sum * half * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn tridiag_eigen_known_2x2() {
        // symmetric [[0, s],[s, 2.2]] with s = sqrt(2.4)
        let s = 2.4f64.sqrt();
        let (vals, vecs) = sym_tridiag_eigen(&[0.0, 2.2], &[s]).unwrap();
        assert_relative_eq!(vals[0], -0.8, epsilon = 1e-12);
        assert_relative_eq!(vals[1], 3.0, epsilon = 1e-12);
        // residual check
        for j in 0..2 {
            let v = [vecs[0][j], vecs[1][j]];
            let mv = [v[1] * s, v[0] * s + 2.2 * v[1]];
            for i in 0..2 {
                assert_relative_eq!(mv[i], vals[j] * v[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn tridiag_eigen_orthonormal_columns() {
        let d: Vec<f64> = (0..9).map(|i| i as f64 * 0.7 - 1.0).collect();
        let e: Vec<f64> = (0..8).map(|i| 0.3 + 0.1 * i as f64).collect();
        let (vals, vecs) = sym_tridiag_eigen(&d, &e).unwrap();
        for j in 0..9 {
            for k in j..9 {
                let dot: f64 = (0..9).map(|i| vecs[i][j] * vecs[i][k]).sum();
                let expect = if j == k { 1.0 } else { 0.0 };
                assert_relative_eq!(dot, expect, epsilon = 1e-10);
            }
            if j > 0 {
                assert!(vals[j] >= vals[j - 1]);
            }
        }
    }

    #[test]
    fn lstsq_recovers_exact_coefficients() {
        // y = 3 - 2 x + 0.5 x^2 sampled on 20 points
        let xs: Vec<f64> = (0..20).map(|i| -1.0 + 0.1 * i as f64).collect();
        let a: Vec<Vec<f64>> = xs.iter().map(|&x| vec![1.0, x, x * x]).collect();
        let b: Vec<Vec<f64>> = vec![xs.iter().map(|&x| 3.0 - 2.0 * x + 0.5 * x * x).collect()];
        let (xsol, res, cond) = lstsq_multi(&a, &b).unwrap();
        assert_relative_eq!(xsol[0][0], 3.0, epsilon = 1e-12);
        assert_relative_eq!(xsol[0][1], -2.0, epsilon = 1e-12);
        assert_relative_eq!(xsol[0][2], 0.5, epsilon = 1e-12);
        assert!(res[0] < 1e-12);
        assert!(cond < 100.0);
    }

    #[test]
    fn integrate_handles_algebraic_endpoint() {
        // int_0^1 x^0.6 dx = 1/1.6
        let v = integrate(|x| x.powf(0.6), 0.0, 1.0);
        assert_relative_eq!(v, 1.0 / 1.6, epsilon = 1e-13);
        // Gaussian moment: int_0^8 x^2 e^{-x^2} dx ~ sqrt(pi)/4
        let g = integrate(|x| x * x * (-x * x).exp(), 0.0, 8.0);
        assert_relative_eq!(g, std::f64::consts::PI.sqrt() / 4.0, epsilon = 1e-13);
    }
}
