//! Brute-force ground truth for the bounds in this crate.

mod lp;
mod polynomial;
mod sublevel;

pub use lp::{
    chebyshev_features, interpolation_rank, lp_max_at_point, lp_max_at_point_with_level, remez_constant_exact,
    LpMaximizer,
};
pub use polynomial::{monomial_count, multi_indices, Polynomial};
pub use sublevel::{covering_number_intervals, real_roots, sublevel_intervals, IntervalUnion, ROOT_TOL};

use crate::error::{Error, Result};

/// Grid size used by [`best_approx_upper`].
pub const APPROX_GRID: usize = 10_000;

/// Largest `|f|` over a uniform grid of `resolution` points per axis on the
/// cube, keeping the points inside the unit ball. A lower bound on `M_0(f)`.
pub fn max_abs_on_grid<F>(f: F, n: usize, resolution: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    if n == 0 {
        return Err(Error::input("n", "dimension must be at least 1"));
    }
    if resolution < 2 {
        return Err(Error::input("resolution", "need at least 2 grid points"));
    }
    let h = 2.0 / (resolution - 1) as f64;
    let coord = |i: usize| if i + 1 == resolution { 1.0 } else { -1.0 + i as f64 * h };
    let mut idx = vec![0usize; n];
    let mut x = vec![0.0; n];
    let mut best = 0f64;
    loop {
        for (xi, &i) in x.iter_mut().zip(&idx) {
            *xi = coord(i);
        }
        if n == 1 || x.iter().map(|v| v * v).sum::<f64>() <= 1.0 + 1e-12 {
            best = best.max(f(&x).abs());
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(best);
            }
            idx[k] += 1;
            if idx[k] < resolution {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `max |P^{(l)}|` on [-1, 1] from the endpoints and the roots of `P^{(l+1)}`.
pub fn poly_derivative_norm(p: &Polynomial, l: usize) -> Result<f64> {
    let q = p.nth_derivative(l)?;
    let dq = q.derivative()?;
    let mut best = q.eval1(-1.0).abs().max(q.eval1(1.0).abs());
    for x in real_roots(dq.coeffs(), -1.0, 1.0) {
        best = best.max(q.eval1(x).abs());
    }
    Ok(best)
}

/// Chebyshev nodes of the first kind and their barycentric weights.
fn chebyshev_nodes(m: usize) -> (Vec<f64>, Vec<f64>) {
    let pi = std::f64::consts::PI;
    (0..m)
        .map(|j| {
            let t = pi * (j as f64 + 0.5) / m as f64;
            let w = if j % 2 == 0 { t.sin() } else { -t.sin() };
            (t.cos(), w)
        })
        .unzip()
}

fn interpolation_error<F: Fn(f64) -> f64>(f: &F, d: usize) -> f64 {
    let (nodes, w) = chebyshev_nodes(d + 1);
    let vals: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let mut err = 0f64;
    for i in 0..APPROX_GRID {
        let x = -1.0 + 2.0 * i as f64 / (APPROX_GRID - 1) as f64;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut exact = None;
        for j in 0..nodes.len() {
            let diff = x - nodes[j];
            if diff == 0.0 {
                exact = Some(vals[j]);
                break;
            }
            let t = w[j] / diff;
            num += t * vals[j];
            den += t;
        }
        let p = exact.unwrap_or(num / den);
        err = err.max((f(x) - p).abs());
    }
    err
}

/// Upper bound on the best uniform approximation error `E_d(f)` on
/// [-1, 1]: the grid error of the Chebyshev-node interpolant, minimized over
/// degrees `0..=d` so that it never increases with `d`.
pub fn best_approx_upper<F: Fn(f64) -> f64>(f: F, d: usize) -> f64 {
    (0..=d)
        .map(|k| interpolation_error(&f, k))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_max_examples() {
        assert_eq!(max_abs_on_grid(|_| 0.0, 1, 10).unwrap(), 0.0);
        assert_eq!(max_abs_on_grid(|x| x[0], 1, 2).unwrap(), 1.0);
        let v = max_abs_on_grid(|x| (5.0 * x[0]).sin(), 1, 10_000).unwrap();
        assert!((v - 1.0).abs() < 1e-6);
        let v = max_abs_on_grid(|x| x[0] + x[1], 2, 101).unwrap();
        assert!(v <= 2f64.sqrt() && v > 1.4);
    }

    #[test]
    fn derivative_norm_examples() {
        let sq = Polynomial::univariate(vec![0.0, 0.0, 1.0]).unwrap();
        assert_eq!(poly_derivative_norm(&sq, 2).unwrap(), 2.0);
        let c = -0.7;
        let p = Polynomial::from_roots(&[-1.0, 0.0, 1.0], c);
        assert!((poly_derivative_norm(&p, 3).unwrap() - 6.0 * c.abs()).abs() < 1e-12);
        let cubic = Polynomial::univariate(vec![0.0, -1.0, 0.0, 1.0]).unwrap();
        assert_eq!(poly_derivative_norm(&cubic, 1).unwrap(), 2.0);
        // interior critical point wins: x - x^3 on [-1, 1] peaks at 1/sqrt 3
        let p = Polynomial::univariate(vec![0.0, 1.0, 0.0, -1.0]).unwrap();
        let want = 2.0 / (3.0 * 3f64.sqrt());
        assert!((poly_derivative_norm(&p, 0).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn best_approx_examples() {
        let p = |x: f64| 1.0 - 2.0 * x + 0.5 * x.powi(3);
        assert!(best_approx_upper(p, 3) < 1e-10);
        assert!(best_approx_upper(p, 5) < 1e-10);
        assert!((best_approx_upper(f64::abs, 0) - 1.0).abs() < 1e-12);
        let e = best_approx_upper(|x| (5.0 * x).sin(), 9);
        assert!(e <= 1e-2, "{e}");
    }

    #[test]
    fn best_approx_monotone() {
        let f = |x: f64| (3.0 * x).exp() * x.abs();
        let mut prev = f64::INFINITY;
        for d in 0..12 {
            let e = best_approx_upper(f, d);
            assert!(e >= 0.0 && e <= prev);
            prev = e;
        }
    }
}
