//! Exact Remez constants of finite sets by linear programming.
//!
//! For a point `x`, `max |P(x)|` over polynomials with `|P| <= 1` on `Z` is
//! a linear program in the coefficients of `P`. The coefficients are written
//! in the tensor Chebyshev basis and split into positive and negative parts,
//! so the origin is a feasible vertex and no phase one is needed. The
//! constraints do not depend on `x`, which lets consecutive solves start from
//! the previous optimal basis.

use crate::error::{Error, Result};
use crate::remez_bounds::{Provenance, RemezConstant};
use crate::set_models::Point;

use super::polynomial::multi_indices;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-12;
const GOLDEN_STEPS: usize = 60;

/// Chebyshev tensor basis `prod_i T_{alpha_i}(x_i)` over all `|alpha| <= d`.
pub fn chebyshev_features(x: &[f64], d: usize, index: &[Vec<usize>]) -> Vec<f64> {
    let t: Vec<Vec<f64>> = x
        .iter()
        .map(|&u| {
            let mut v = Vec::with_capacity(d + 1);
            v.push(1.0);
            if d >= 1 {
                v.push(u);
            }
            for k in 2..=d {
                let next = 2.0 * u * v[k - 1] - v[k - 2];
                v.push(next);
            }
            v
        })
        .collect();
    index
        .iter()
        .map(|alpha| alpha.iter().enumerate().map(|(i, &a)| t[i][a]).product())
        .collect()
}

/// Warm-started simplex solver for `max |P(x)|` subject to `|P(z)| <= level`
/// for all `z` in `Z`, `deg P <= d`.
#[derive(Debug, Clone)]
pub struct LpMaximizer {
    n: usize,
    d: usize,
    index: Vec<Vec<usize>>,
    rows: usize,
    cols: usize,
    tab: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
    max_iter: usize,
}

impl LpMaximizer {
    pub fn new(z: &[Point], d: usize) -> Result<Self> {
        LpMaximizer::with_level(z, d, 1.0)
    }

    pub fn with_level(z: &[Point], d: usize, level: f64) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::EmptySet);
        }
        if !(level.is_finite() && level > 0.0) {
            return Err(Error::input("level", format!("constraint level must be positive, got {level}")));
        }
        let n = z[0].dim();
        if z.iter().any(|p| p.dim() != n) {
            return Err(Error::input("Z", "points have mixed dimensions"));
        }
        let index = multi_indices(n, d);
        let m = index.len();
        let rows = 2 * z.len();
        let cols = 2 * m + rows;
        let mut tab = vec![0.0; rows * cols];
        for (i, p) in z.iter().enumerate() {
            let phi = chebyshev_features(p.coords(), d, &index);
            for sign in 0..2 {
                let r = 2 * i + sign;
                let s = if sign == 0 { 1.0 } else { -1.0 };
                let row = &mut tab[r * cols..(r + 1) * cols];
                for (k, &f) in phi.iter().enumerate() {
                    row[k] = s * f;
                    row[m + k] = -s * f;
                }
                row[2 * m + r] = 1.0;
            }
        }
        Ok(LpMaximizer {
            n,
            d,
            index,
            rows,
            cols,
            tab,
            rhs: vec![level; rows],
            basis: (2 * m..2 * m + rows).collect(),
            max_iter: 200 * (rows + cols),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Current basis, one column index per row.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// `max |P(x)|`, or `inf` when the feasible polynomials are unbounded
    /// at `x`.
    pub fn max_at(&mut self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::input("x", format!("expected a point in dimension {}", self.n)));
        }
        let phi = chebyshev_features(x, self.d, &self.index);
        let plus = self.solve(&phi, 1.0)?;
        if plus.is_infinite() {
            return Ok(f64::INFINITY);
        }
        let minus = self.solve(&phi, -1.0)?;
        Ok(plus.max(minus))
    }

    fn solve(&mut self, phi: &[f64], sign: f64) -> Result<f64> {
        let m = self.index.len();
        let cols = self.cols;
        let mut obj = vec![0.0; cols];
        for (k, &f) in phi.iter().enumerate() {
            obj[k] = sign * f;
            obj[m + k] = -sign * f;
        }
        let mut reduced = obj.clone();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = obj[b];
            if cb != 0.0 {
                let row = &self.tab[i * cols..(i + 1) * cols];
                for (r, &a) in reduced.iter_mut().zip(row) {
                    *r -= cb * a;
                }
            }
        }
        for _ in 0..self.max_iter {
            // Bland: lowest-index improving column, lowest-index leaving basic variable
            let Some(j) = (0..cols).find(|&j| reduced[j] > COST_TOL) else {
                return Ok(self
                    .basis
                    .iter()
                    .zip(&self.rhs)
                    .map(|(&b, &v)| obj[b] * v)
                    .sum());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.tab[i * cols + j];
                if a > PIVOT_TOL {
                    let ratio = self.rhs[i] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr || (ratio == lr && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else {
                return Ok(f64::INFINITY);
            };
            self.pivot(r, j);
            let f = reduced[j];
            let row = &self.tab[r * cols..(r + 1) * cols];
            for (rc, &a) in reduced.iter_mut().zip(row) {
                *rc -= f * a;
            }
            reduced[j] = 0.0;
        }
        Err(Error::LpFailure {
            message: format!("simplex exceeded {} pivots", self.max_iter),
            basis: self.basis.clone(),
        })
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let cols = self.cols;
        let p = self.tab[r * cols + j];
        for v in &mut self.tab[r * cols..(r + 1) * cols] {
            *v /= p;
        }
        self.rhs[r] /= p;
        self.tab[r * cols + j] = 1.0;
        let (pivot_rhs, pivot_row) = (self.rhs[r], self.tab[r * cols..(r + 1) * cols].to_vec());
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.tab[i * cols + j];
            if f == 0.0 {
                continue;
            }
            let row = &mut self.tab[i * cols..(i + 1) * cols];
            for (v, &a) in row.iter_mut().zip(&pivot_row) {
                *v -= f * a;
            }
            row[j] = 0.0;
            self.rhs[i] = (self.rhs[i] - f * pivot_rhs).max(0.0);
        }
        self.basis[r] = j;
    }
}

/// `max{|P(x)| : deg P <= d, |P(z)| <= 1 for z in Z}`; `inf` when unbounded.
pub fn lp_max_at_point(z: &[Point], d: usize, x: &Point) -> Result<f64> {
    LpMaximizer::new(z, d)?.max_at(x.coords())
}

/// Same with the constraint level `|P(z)| <= level`.
pub fn lp_max_at_point_with_level(z: &[Point], d: usize, x: &Point, level: f64) -> Result<f64> {
    LpMaximizer::with_level(z, d, level)?.max_at(x.coords())
}

/// Lower bound on `R_d(Z)`: the LP value maximized over a grid of
/// `resolution` points in the ball. In 1D the best grid cell is refined by
/// golden-section search. In 2D the grid is a square lattice clipped to the
/// disk plus points on the unit circle.
pub fn remez_constant_exact(z: &[Point], d: usize, resolution: usize) -> Result<RemezConstant> {
    if resolution < 2 {
        return Err(Error::input("resolution", "need at least 2 grid points"));
    }
    let mut lp = LpMaximizer::new(z, d)?;
    let n = lp.dim();
    let best = match n {
        1 => exact_1d(&mut lp, resolution)?,
        2 => exact_2d(&mut lp, resolution)?,
        _ => return Err(Error::UnsupportedDimension(n)),
    };
    Ok(if best.is_infinite() {
        RemezConstant::infinite(Provenance::LpExactLower, d, n)
    } else {
        RemezConstant::finite(best.max(1.0), Provenance::LpExactLower, d, n)
    })
}

fn exact_1d(lp: &mut LpMaximizer, resolution: usize) -> Result<f64> {
    let h = 2.0 / (resolution - 1) as f64;
    let mut best = f64::NEG_INFINITY;
    let mut arg = 0;
    for i in 0..resolution {
        let x = if i + 1 == resolution { 1.0 } else { -1.0 + i as f64 * h };
        let v = lp.max_at(&[x])?;
        if v.is_infinite() {
            return Ok(v);
        }
        if v > best {
            best = v;
            arg = i;
        }
    }
    let x0 = -1.0 + arg as f64 * h;
    let (mut a, mut b) = ((x0 - h).max(-1.0), (x0 + h).min(1.0));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut e = a + g * (b - a);
    let mut fc = lp.max_at(&[c])?;
    let mut fe = lp.max_at(&[e])?;
    for _ in 0..GOLDEN_STEPS {
        best = best.max(fc).max(fe);
        if fc >= fe {
            b = e;
            e = c;
            fe = fc;
            c = b - g * (b - a);
            fc = lp.max_at(&[c])?;
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + g * (b - a);
            fe = lp.max_at(&[e])?;
        }
    }
    Ok(best.max(fc).max(fe))
}

fn exact_2d(lp: &mut LpMaximizer, resolution: usize) -> Result<f64> {
    let side = ((resolution as f64).sqrt().ceil() as usize).max(2);
    let mut best = f64::NEG_INFINITY;
    let h = 2.0 / (side - 1) as f64;
    for i in 0..side {
        for j in 0..side {
            let p = [-1.0 + i as f64 * h, -1.0 + j as f64 * h];
            if p[0].hypot(p[1]) > 1.0 {
                continue;
            }
            best = best.max(lp.max_at(&p)?);
        }
    }
    let ring = 4 * side;
    for k in 0..ring {
        let t = std::f64::consts::TAU * k as f64 / ring as f64;
        best = best.max(lp.max_at(&[t.cos(), t.sin()])?);
        if best.is_infinite() {
            break;
        }
    }
    Ok(best)
}

/// Rank of the matrix of basis monomials evaluated on `Z`. `R_d(Z)` is
/// infinite exactly when it is below `C(n+d, d)`.
pub fn interpolation_rank(z: &[Point], d: usize) -> Result<usize> {
    if z.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = z[0].dim();
    let index = multi_indices(n, d);
    let mut a: Vec<Vec<f64>> = z
        .iter()
        .map(|p| chebyshev_features(p.coords(), d, &index))
        .collect();
    let cols = index.len();
    let scale = a.iter().flatten().fold(0f64, |m, v| m.max(v.abs()));
    let tol = 1e-10 * scale.max(1.0) * (cols.max(a.len()) as f64);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())) else {
            break;
        };
        if a[p][c].abs() <= tol {
            continue;
        }
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            let f = a[i][c] / a[rank][c];
            for k in c..cols {
                a[i][k] -= f * a[rank][k];
            }
        }
        rank += 1;
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(xs: &[f64]) -> Vec<Point> {
        xs.iter().map(|&x| Point::scalar(x).unwrap()).collect()
    }

    #[test]
    fn lp_examples() {
        let x0 = Point::scalar(0.0).unwrap();
        assert!((lp_max_at_point(&pts(&[-1.0, 1.0]), 1, &x0).unwrap() - 1.0).abs() < 1e-12);
        let v = lp_max_at_point(&pts(&[0.0, 0.5]), 1, &Point::scalar(-1.0).unwrap()).unwrap();
        assert!((v - 5.0).abs() < 1e-12, "{v}");
        assert!(lp_max_at_point(&pts(&[-1.0, 1.0]), 2, &x0).unwrap().is_infinite());
    }

    #[test]
    fn exact_examples() {
        let r = remez_constant_exact(&pts(&[-1.0, 0.0, 1.0]), 1, 101).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.provenance, Provenance::LpExactLower);
        let r = remez_constant_exact(&pts(&[0.0, 0.5]), 1, 2001).unwrap();
        assert!((r.value - 5.0).abs() < 1e-6);
        assert!(!remez_constant_exact(&pts(&[-1.0, 1.0]), 2, 11).unwrap().is_finite());
        assert!(remez_constant_exact(&pts(&[0.0]), 1, 1).is_err());
    }

    #[test]
    fn chebyshev_nodes_have_known_constant() {
        // |T_d| <= 1 at its extrema, so R_d of the d+1 extrema is 1
        for d in 1..7 {
            let z: Vec<f64> = (0..=d).map(|j| (std::f64::consts::PI * j as f64 / d as f64).cos()).collect();
            let r = remez_constant_exact(&pts(&z), d, 401).unwrap();
            assert!(r.value >= 1.0);
        }
        // interior pair: the line through (0,1) and (0.5,-1) at x = 1 is -3, the maximum on the ball is 5
        let r = remez_constant_exact(&pts(&[0.5, 0.0]), 1, 3).unwrap();
        assert!((r.value - 5.0).abs() < 1e-9);
    }

    #[test]
    fn two_dimensional() {
        let z: Vec<Point> = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
            .iter()
            .map(|c| Point::new(c.to_vec()).unwrap())
            .collect();
        let r = remez_constant_exact(&z, 1, 400).unwrap();
        assert!((r.value - 2f64.sqrt()).abs() < 1e-2, "{}", r.value);
        assert!(!remez_constant_exact(&z, 2, 100).unwrap().is_finite());
    }

    #[test]
    fn ranks() {
        assert_eq!(interpolation_rank(&pts(&[-1.0, 1.0]), 2).unwrap(), 2);
        assert_eq!(interpolation_rank(&pts(&[-1.0, 0.0, 1.0]), 2).unwrap(), 3);
        assert_eq!(interpolation_rank(&pts(&[0.3, 0.3, 0.1]), 2).unwrap(), 2);
    }
}
