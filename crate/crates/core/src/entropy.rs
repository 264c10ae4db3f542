//! Covering numbers and the metric-entropy quantity
//! `omega_d(Z) = sup_{eps>0} eps^n [M(eps, Z) - M_d(eps)]`.
//!
//! Convention: an "eps-ball" is a closed l∞ cube of SIDE LENGTH `eps`
//! (a closed interval of length `eps` in one dimension). Under this
//! convention the regular-grid value `omega_d(G_s) = 2(s-d)/(s-1)` follows
//! directly from the definition, and `eps^n M(eps, Z) >= m_n(Z)` holds.
//!
//! In one dimension everything is exact: the left-anchored greedy sweep is
//! an optimal interval cover, the covering profile is recovered breakpoint
//! by breakpoint, and the supremum is read off the breakpoints. In two or
//! more dimensions covering numbers are sandwiched between a packing count
//! and a greedy strip cover, and `omega_d` is reported as certified bounds.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt;
use crate::set_models::{self, Point, SetDescriptor};

/// Absolute tolerance for locating profile breakpoints.
pub const BREAKPOINT_TOL: f64 = 1e-13;

/// Samples per decade in the multi-dimensional eps sweep.
pub const SWEEP_PER_DECADE: usize = 64;

/// Step function `eps -> M(eps, Z)` of a finite one-dimensional set.
///
/// `breakpoints[i] = (eps_i, count_i)` means `M(eps) = count_i` on the
/// region immediately left of `eps_i`; `M` is right-continuous, so at
/// `eps_i` itself the count already equals the next region's value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringProfile {
    pub breakpoints: Vec<(f64, usize)>,
    pub tail: usize,
}

impl CoveringProfile {
    /// `M(eps, Z)` read off the profile.
    pub fn count_at(&self, eps: f64) -> usize {
        let idx = self.breakpoints.partition_point(|&(b, _)| b <= eps);
        self.breakpoints.get(idx).map_or(self.tail, |&(_, c)| c)
    }

    pub fn to_json(&self) -> String {
        numfmt::to_json(&serde_json::json!({
            "breakpoints": self.breakpoints.iter().map(|&(e, c)| serde_json::json!([e, c])).collect::<Vec<_>>(),
            "tail": self.tail,
        }))
    }
}

/// Certified bounds on `omega_d(Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaEstimate {
    #[serde(with = "numfmt::maybe_inf")]
    pub lo: f64,
    #[serde(with = "numfmt::maybe_inf")]
    pub hi: f64,
    pub witness_eps: f64,
    pub exact: bool,
    /// Set when the supremum is not positive and has been reported as 0.
    pub degenerate: bool,
}

impl OmegaEstimate {
    fn exact(value: f64, witness_eps: f64) -> Self {
        let degenerate = value <= 0.0;
        let v = value.max(0.0);
        OmegaEstimate {
            lo: v,
            hi: v,
            witness_eps,
            exact: true,
            degenerate,
        }
    }

    pub fn to_json(&self) -> String {
        numfmt::to_json(self)
    }
}

/// Coefficients of the Vitushkin term `M_d(eps) = sum_i C_i (1/eps)^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct VitushkinParams {
    pub n: usize,
    pub d: usize,
    pub coefficients: Vec<f64>,
}

impl VitushkinParams {
    /// The explicitly known cases: `M_{1,d} = d` and
    /// `M_{2,d} = (2d-1)^2 + 8d/eps`.
    pub fn standard(n: usize, d: usize) -> Result<Self> {
        let df = d as f64;
        let coefficients = match n {
            1 => vec![df],
            2 => vec![(2.0 * df - 1.0).powi(2), 8.0 * df],
            other => return Err(Error::UnsupportedDimension(other)),
        };
        Ok(VitushkinParams { n, d, coefficients })
    }

    /// User-supplied coefficients `C_0..C_{n-1}` for dimensions without a
    /// built-in formula.
    pub fn with_coefficients(n: usize, d: usize, coefficients: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("n", "dimension must be at least 1"));
        }
        if coefficients.len() != n {
            return Err(Error::input(
                "coefficients",
                format!("expected {n} coefficients, got {}", coefficients.len()),
            ));
        }
        if coefficients.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::input("coefficients", "coefficients must be finite and non-negative"));
        }
        Ok(VitushkinParams { n, d, coefficients })
    }

    pub fn eval(&self, eps: f64) -> f64 {
        let inv = 1.0 / eps;
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * inv + c)
    }

    /// `eps^n (count - M_d(eps))`, with the polynomial part expanded so that
    /// every term stays finite for small `eps`.
    fn objective(&self, eps: f64, count: f64) -> f64 {
        let mut v = eps.powi(self.n as i32) * count;
        for (i, c) in self.coefficients.iter().enumerate() {
            v -= c * eps.powi((self.n - i) as i32);
        }
        v
    }
}

/// `M_d(eps)` for `n` in {1, 2}.
pub fn vitushkin_md(n: usize, d: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::input("eps", "eps must be positive"));
    }
    Ok(VitushkinParams::standard(n, d)?.eval(eps))
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(Error::input("eps", format!("eps must be positive and finite, got {eps}")))
    }
}

/// Greedy sweep over sorted points. Returns the interval count and the
/// largest span actually used by an interval; the count is unchanged for
/// every eps in `[max_span, eps]`.
fn greedy_sweep(points: &[f64], eps: f64) -> (usize, f64) {
    let n = points.len();
    let mut i = 0;
    let mut count = 0;
    let mut max_span = 0.0f64;
    while i < n {
        let anchor = points[i];
        let covered = |j: usize| points[j] - anchor <= eps;
        // gallop, then binary search for the last covered index
        let mut step = 1;
        while i + step < n && covered(i + step) {
            step *= 2;
        }
        let lo = i + step / 2;
        let hi = (i + step).min(n);
        let last = lo + points[lo..hi].partition_point(|&x| x - anchor <= eps) - 1;
        max_span = max_span.max(points[last] - anchor);
        count += 1;
        i = last + 1;
    }
    (count, max_span)
}

fn check_sorted(points: &[f64]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    if points.iter().any(|x| !x.is_finite()) {
        return Err(Error::input("points", "coordinates must be finite"));
    }
    if points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::input("points", "points must be sorted ascending"));
    }
    Ok(())
}

/// Exact minimal number of closed intervals of length `eps` covering the
/// sorted `points`.
pub fn covering_number_1d(points: &[f64], eps: f64) -> Result<usize> {
    check_sorted(points)?;
    check_eps(eps)?;
    Ok(greedy_sweep(points, eps).0)
}

/// Complete covering profile of a sorted one-dimensional set.
pub fn covering_profile_1d(points: &[f64]) -> Result<CoveringProfile> {
    check_sorted(points)?;
    let mut pts = points.to_vec();
    pts.dedup();
    if pts.len() == 1 {
        return Ok(CoveringProfile {
            breakpoints: Vec::new(),
            tail: 1,
        });
    }
    let diameter = pts[pts.len() - 1] - pts[0];
    let min_gap = pts
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let lo = min_gap / 2.0;
    let mut breakpoints = Vec::new();
    refine_breakpoints(&pts, lo, pts.len(), diameter, 1, &mut breakpoints);
    Ok(CoveringProfile {
        breakpoints,
        tail: 1,
    })
}

/// Finds every breakpoint in `(lo, hi]`, given the counts at both ends.
/// Bisection is geometric while the bracket spans more than a factor of 4,
/// then arithmetic down to the tolerance; the located breakpoint is snapped
/// to the exact span the greedy cover uses at `hi`.
fn refine_breakpoints(
    pts: &[f64],
    lo: f64,
    count_lo: usize,
    hi: f64,
    count_hi: usize,
    out: &mut Vec<(f64, usize)>,
) {
    if count_lo == count_hi {
        return;
    }
    if hi - lo <= BREAKPOINT_TOL * hi.min(1.0) {
        let (_, span) = greedy_sweep(pts, hi);
        out.push((span, count_lo));
        return;
    }
    let mid = if hi > 4.0 * lo {
        (lo * hi).sqrt()
    } else {
        0.5 * (lo + hi)
    };
    if !(mid > lo && mid < hi) {
        let (_, span) = greedy_sweep(pts, hi);
        out.push((span, count_lo));
        return;
    }
    let count_mid = greedy_sweep(pts, mid).0;
    refine_breakpoints(pts, lo, count_lo, mid, count_mid, out);
    refine_breakpoints(pts, mid, count_mid, hi, count_hi, out);
}

/// Exact `omega_d` of a one-dimensional set from its covering profile.
///
/// On each constancy region `eps (M - d)` is monotone, so the supremum is a
/// left limit at a breakpoint, or is unbounded on the tail when
/// `tail > d`.
pub fn omega_from_profile(profile: &CoveringProfile, d: usize) -> OmegaEstimate {
    if profile.tail > d {
        return OmegaEstimate {
            lo: f64::INFINITY,
            hi: f64::INFINITY,
            witness_eps: f64::INFINITY,
            exact: true,
            degenerate: false,
        };
    }
    let df = d as f64;
    let mut best = f64::NEG_INFINITY;
    let mut witness = profile.breakpoints.first().map_or(1.0, |&(e, _)| e);
    for &(eps, count) in &profile.breakpoints {
        let v = eps * (count as f64 - df);
        if v > best {
            best = v;
            witness = eps;
        }
    }
    OmegaEstimate::exact(best, witness)
}

/// Lower and upper bounds on the l∞ cube-covering number of `points`
/// (dimension at least 2).
///
/// The lower bound is the size of a greedy maximal packing with pairwise
/// l∞ distance above `eps`; no cube of side `eps` holds two of its points.
/// The upper bound is an actual cover built strip by strip.
pub fn covering_number_box(points: &[Point], eps: f64) -> Result<(usize, usize)> {
    let dim = check_box_points(points)?;
    if dim < 2 {
        return Err(Error::UnsupportedDimension(dim));
    }
    check_eps(eps)?;
    let rows: Vec<&[f64]> = points.iter().map(Point::coords).collect();
    Ok(box_counts(&rows, eps))
}

fn check_box_points(points: &[Point]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptySet)?;
    let dim = first.dim();
    if points.iter().any(|p| p.dim() != dim) {
        return Err(Error::input("points", "points have mixed dimensions"));
    }
    Ok(dim)
}

fn box_counts(rows: &[&[f64]], eps: f64) -> (usize, usize) {
    (packing_count(rows, eps), strip_cover(&mut rows.to_vec(), 0, eps))
}

fn packing_count(rows: &[&[f64]], eps: f64) -> usize {
    let mut order: Vec<&[f64]> = rows.to_vec();
    order.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let dim = rows[0].len();
    let cell_of = |p: &[f64]| -> Vec<i64> { p.iter().map(|x| (x / eps).floor() as i64).collect() };
    let mut cells: HashMap<Vec<i64>, Vec<&[f64]>> = HashMap::new();
    let mut accepted = 0;
    let mut offsets = vec![vec![]];
    for _ in 0..dim {
        offsets = offsets
            .into_iter()
            .flat_map(|o: Vec<i64>| {
                (-1..=1).map(move |k| {
                    let mut o = o.clone();
                    o.push(k);
                    o
                })
            })
            .collect();
    }
    for p in order {
        let cell = cell_of(p);
        let clash = offsets.iter().any(|off| {
            let key: Vec<i64> = cell.iter().zip(off).map(|(c, o)| c + o).collect();
            cells.get(&key).is_some_and(|members| {
                members.iter().any(|q| {
                    p.iter()
                        .zip(q.iter())
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                        <= eps
                })
            })
        });
        if !clash {
            cells.entry(cell).or_default().push(p);
            accepted += 1;
        }
    }
    accepted
}

fn strip_cover(rows: &mut [&[f64]], axis: usize, eps: f64) -> usize {
    rows.sort_by(|a, b| a[axis].total_cmp(&b[axis]));
    let last_axis = axis + 1 == rows[0].len();
    let mut count = 0;
    let mut i = 0;
    while i < rows.len() {
        let anchor = rows[i][axis];
        let j = i + rows[i..].partition_point(|r| r[axis] - anchor <= eps);
        count += if last_axis {
            1
        } else {
            strip_cover(&mut rows[i..j], axis + 1, eps)
        };
        i = j;
    }
    count
}

/// `omega_d` bounds for a finite set in dimension `n >= 2`.
///
/// The eps sweep is logarithmic with [`SWEEP_PER_DECADE`] samples per
/// decade over `[min gap / 4, diameter]`. `lo` is the best packing-based
/// objective (refined by golden-section search near the best sample); `hi`
/// bounds the objective on every sweep cell using the greedy cover count at
/// the cell's left end, plus the regions below and above the sweep.
pub fn omega_box(points: &[Point], params: &VitushkinParams) -> Result<OmegaEstimate> {
    let dim = check_box_points(points)?;
    if dim != params.n {
        return Err(Error::input(
            "n",
            format!("set has dimension {dim} but Vitushkin parameters are for n = {}", params.n),
        ));
    }
    let rows: Vec<&[f64]> = points.iter().map(Point::coords).collect();
    let n = params.n as i32;
    let c0 = params.coefficients.first().copied().unwrap_or(0.0);
    // beyond the diameter a single cube suffices
    let tail_hi = if 1.0 - c0 > 0.0 { f64::INFINITY } else { 0.0 };

    let diameter = linf_diameter(&rows);
    let min_gap = min_linf_gap(&rows);
    if rows.len() == 1 || diameter == 0.0 || !min_gap.is_finite() || min_gap == 0.0 {
        let v = if tail_hi.is_infinite() { f64::INFINITY } else { 0.0 };
        return Ok(OmegaEstimate {
            lo: v,
            hi: v,
            witness_eps: 1.0,
            exact: true,
            degenerate: v <= 0.0,
        });
    }

    let start = min_gap / 4.0;
    let decades = (diameter / start).log10();
    let samples = ((decades * SWEEP_PER_DECADE as f64).ceil() as usize).max(1) + 1;
    let grid: Vec<f64> = (0..samples)
        .map(|i| {
            if i + 1 == samples {
                diameter
            } else {
                start * 10f64.powf(i as f64 / SWEEP_PER_DECADE as f64)
            }
        })
        .collect();
    let counts: Vec<(usize, usize)> = grid.iter().map(|&e| box_counts(&rows, e)).collect();

    let lo_obj = |eps: f64, count: usize| params.objective(eps, count as f64);
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0;
    for (i, (&eps, &(pack, _))) in grid.iter().zip(&counts).enumerate() {
        let v = lo_obj(eps, pack);
        if v > best {
            best = v;
            best_idx = i;
        }
    }
    let mut witness = grid[best_idx];

    // golden-section refinement around the best sample
    let a0 = grid[best_idx.saturating_sub(1)];
    let b0 = grid[(best_idx + 1).min(grid.len() - 1)];
    if b0 > a0 {
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (a0, b0);
        let eval = |e: f64| lo_obj(e, packing_count(&rows, e));
        let mut x1 = b - phi * (b - a);
        let mut x2 = a + phi * (b - a);
        let mut f1 = eval(x1);
        let mut f2 = eval(x2);
        for _ in 0..40 {
            for (x, f) in [(x1, f1), (x2, f2)] {
                if f > best {
                    best = f;
                    witness = x;
                }
            }
            if f1 >= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = eval(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = eval(x2);
            }
        }
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f > best {
                best = f;
                witness = x;
            }
        }
    }

    // certified upper bound
    let below = grid[0].powi(n) * rows.len() as f64;
    let mut hi = below.max(tail_hi);
    for i in 0..grid.len() - 1 {
        let (e0, e1) = (grid[i], grid[i + 1]);
        let cover = counts[i].1 as f64;
        let mut bound = e1.powi(n) * cover;
        for (j, c) in params.coefficients.iter().enumerate() {
            bound -= c * e0.powi(n - j as i32);
        }
        hi = hi.max(bound);
    }

    let degenerate = best <= 0.0;
    let lo = best.max(0.0);
    Ok(OmegaEstimate {
        lo,
        hi: hi.max(lo),
        witness_eps: witness,
        exact: false,
        degenerate,
    })
}

fn linf_diameter(rows: &[&[f64]]) -> f64 {
    let dim = rows[0].len();
    (0..dim)
        .map(|k| {
            let (lo, hi) = rows
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                    (lo.min(r[k]), hi.max(r[k]))
                });
            hi - lo
        })
        .fold(0.0, f64::max)
}

/// Smallest positive pairwise l∞ distance (sweep on the first axis).
fn min_linf_gap(rows: &[&[f64]]) -> f64 {
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let mut best = f64::INFINITY;
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if sorted[j][0] - sorted[i][0] >= best {
                break;
            }
            let dist = sorted[i]
                .iter()
                .zip(sorted[j].iter())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if dist > 0.0 && dist < best {
                best = dist;
            }
        }
    }
    best
}

/// `omega_d(Z)` from first principles.
///
/// Finite one-dimensional sets get the exact value; finite sets in two
/// dimensions get packing/cover bounds. Curves fall back to the curve lower
/// bound and measurable bodies to `omega_d >= m_n(Z)`, both with an
/// infinite upper end.
pub fn omega_d(z: &SetDescriptor, d: usize, n: usize) -> Result<OmegaEstimate> {
    if z.dimension() != n {
        return Err(Error::input(
            "n",
            format!("descriptor has dimension {} but n = {n}", z.dimension()),
        ));
    }
    match z {
        SetDescriptor::Curve { sigma, eps0 } => curve_omega_lower(*sigma, *eps0, d),
        SetDescriptor::MeasurableBody { measure, .. } => Ok(OmegaEstimate {
            lo: *measure,
            hi: f64::INFINITY,
            witness_eps: 1.0,
            exact: false,
            degenerate: *measure <= 0.0,
        }),
        _ if n == 1 => {
            let xs = z.sorted_coords_1d()?;
            Ok(omega_from_profile(&covering_profile_1d(&xs)?, d))
        }
        _ => omega_box(&z.materialize()?, &VitushkinParams::standard(n, d)?),
    }
}

/// `omega_d` with caller-supplied Vitushkin coefficients (any dimension).
pub fn omega_d_with(z: &SetDescriptor, params: &VitushkinParams) -> Result<OmegaEstimate> {
    if params.n == 1 {
        return omega_d(z, params.d, 1);
    }
    omega_box(&z.materialize()?, params)
}

/// What a closed-form value of `omega_d` means.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosedFormKind {
    Exact,
    /// Correct up to unknown multiplicative constants.
    AsymptoticScale,
    LowerBound,
}

/// Closed-form `omega_d` for the structured descriptors.
///
/// * grid: `2(s-d)/(s-1)` (exact, 0 once `d >= s`)
/// * `Z_r`: `r^r/(r+1)^(r+1) / d^r` (scale only)
/// * `Z(q)`: `q^d / ln(1/q)` (scale only)
/// * curve: [`curve_omega_lower`]
pub fn omega_closed_form(z: &SetDescriptor, d: usize) -> Result<(f64, ClosedFormKind)> {
    z.validate()?;
    match *z {
        SetDescriptor::RegularGrid { s } => {
            let v = 2.0 * (s as f64 - d as f64) / (s as f64 - 1.0);
            Ok((v.max(0.0), ClosedFormKind::Exact))
        }
        SetDescriptor::PowerSequence { r, .. } => {
            if d == 0 {
                return Err(Error::input("d", "the power-sequence scale needs d >= 1"));
            }
            let c = r.powf(r) / (r + 1.0).powf(r + 1.0);
            Ok((c / (d as f64).powf(r), ClosedFormKind::AsymptoticScale))
        }
        SetDescriptor::GeometricSequence { q, .. } => Ok((
            q.powi(d as i32) / (1.0 / q).ln(),
            ClosedFormKind::AsymptoticScale,
        )),
        SetDescriptor::Curve { sigma, eps0 } => Ok((
            curve_omega_lower(sigma, eps0, d)?.lo,
            ClosedFormKind::LowerBound,
        )),
        _ => Err(Error::Unsupported(format!("no closed form for omega_d of {}", z.to_json()))),
    }
}

/// Lower bound on `omega_d` of a planar curve of length `sigma` with
/// injectivity radius `eps0 = 1/(l sigma)`: `(1/(2l)) (1 - 24/m)` with
/// `m = sigma/d`. Non-positive values are reported as 0 (degenerate).
pub fn curve_omega_lower(sigma: f64, eps0: f64, d: usize) -> Result<OmegaEstimate> {
    set_models::validate_curve(sigma, eps0)?;
    if d == 0 {
        return Err(Error::input("d", "degree must be at least 1"));
    }
    let l = (1.0 / (eps0 * sigma)).max(1.0);
    let m = sigma / d as f64;
    let value = (1.0 / (2.0 * l)) * (1.0 - 24.0 / m);
    let degenerate = value <= 0.0;
    Ok(OmegaEstimate {
        lo: value.max(0.0),
        hi: f64::INFINITY,
        witness_eps: eps0,
        exact: false,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_models::grid_points;

    fn xs(points: &[Point]) -> Vec<f64> {
        points.iter().map(|p| p.coords()[0]).collect()
    }

    fn pts2(coords: &[(f64, f64)]) -> Vec<Point> {
        coords.iter().map(|&(x, y)| Point::new(vec![x, y]).unwrap()).collect()
    }

    #[test]
    fn covering_number_examples() {
        let z = [-1.0, 0.0, 1.0];
        assert_eq!(covering_number_1d(&z, 0.5).unwrap(), 3);
        assert_eq!(covering_number_1d(&z, 1.0).unwrap(), 2);
        assert_eq!(covering_number_1d(&[-1.0, 1.0], 2.0).unwrap(), 1);
        assert_eq!(covering_number_1d(&[], 1.0), Err(Error::EmptySet));
        assert!(covering_number_1d(&[1.0, 0.0], 1.0).is_err());
        assert!(covering_number_1d(&z, 0.0).is_err());
    }

    #[test]
    fn profile_examples() {
        let g5 = xs(&grid_points(5).unwrap());
        let p = covering_profile_1d(&g5).unwrap();
        assert_eq!(p.breakpoints, vec![(0.5, 5), (1.0, 3), (2.0, 2)]);
        assert_eq!(p.tail, 1);
        // frozen from a direct greedy count at eps = 0.25, 0.75, 1.5, 2.5
        for (eps, expect) in [(0.25, 5), (0.75, 3), (1.5, 2), (2.5, 1)] {
            assert_eq!(p.count_at(eps), expect);
        }

        let single = covering_profile_1d(&[1.0]).unwrap();
        assert!(single.breakpoints.is_empty());
        assert_eq!(single.tail, 1);

        let pair = covering_profile_1d(&[-1.0, 1.0]).unwrap();
        assert_eq!(pair.breakpoints, vec![(2.0, 2)]);
    }

    #[test]
    fn profile_json() {
        let p = covering_profile_1d(&[-1.0, 1.0]).unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"breakpoints":[[2.0000000000000000,2]],"tail":1}"#
        );
    }

    #[test]
    fn box_examples() {
        assert_eq!(covering_number_box(&pts2(&[(0.0, 0.0)]), 0.3).unwrap(), (1, 1));
        assert_eq!(
            covering_number_box(&pts2(&[(0.0, 0.0), (0.6, 0.0)]), 0.5).unwrap(),
            (2, 2)
        );
        let mut g = vec![];
        for i in 0..3 {
            for j in 0..3 {
                g.push((-0.5 + 0.5 * i as f64, -0.5 + 0.5 * j as f64));
            }
        }
        // exhaustive search on this instance gives 4
        assert_eq!(covering_number_box(&pts2(&g), 0.5).unwrap(), (4, 4));
        assert!(covering_number_box(&[], 0.5).is_err());
        assert!(covering_number_box(&[Point::scalar(0.0).unwrap()], 0.5).is_err());
    }

    #[test]
    fn vitushkin_examples() {
        assert_eq!(vitushkin_md(1, 3, 0.1).unwrap(), 3.0);
        assert_eq!(vitushkin_md(2, 2, 0.5).unwrap(), 41.0);
        assert_eq!(vitushkin_md(2, 1, 1.0).unwrap(), 9.0);
        assert_eq!(vitushkin_md(3, 1, 1.0), Err(Error::UnsupportedDimension(3)));
        let custom = VitushkinParams::with_coefficients(3, 1, vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(custom.eval(0.5), 1.0 + 4.0 + 12.0);
    }

    #[test]
    fn omega_grid_examples() {
        let g5 = SetDescriptor::grid(5).unwrap();
        let w = omega_d(&g5, 1, 1).unwrap();
        assert!((w.lo - 2.0).abs() < 1e-12 && w.exact && w.lo == w.hi);
        let w = omega_d(&g5, 4, 1).unwrap();
        assert!((w.lo - 0.5).abs() < 1e-12);
        assert!(w.exact && !w.degenerate);
    }

    #[test]
    fn omega_degenerate_when_degree_reaches_size() {
        let z = SetDescriptor::points(
            [-0.7, -0.1, 0.4].iter().map(|&x| Point::scalar(x).unwrap()).collect(),
        )
        .unwrap();
        for d in 3..6 {
            let w = omega_d(&z, d, 1).unwrap();
            assert_eq!(w.lo, 0.0);
            assert!(w.degenerate);
        }
    }

    #[test]
    fn omega_degree_zero_is_unbounded() {
        let w = omega_d(&SetDescriptor::grid(4).unwrap(), 0, 1).unwrap();
        assert!(w.lo.is_infinite());
    }

    #[test]
    fn closed_forms() {
        let (v, k) = omega_closed_form(&SetDescriptor::grid(11).unwrap(), 3).unwrap();
        assert!((v - 1.6).abs() < 1e-15);
        assert_eq!(k, ClosedFormKind::Exact);

        let (v, k) = omega_closed_form(&SetDescriptor::geometric(0.5, 64).unwrap(), 4).unwrap();
        assert!((v - 0.0625 / 2f64.ln()).abs() < 1e-15);
        assert!((v - 0.0902).abs() < 1e-4);
        assert_eq!(k, ClosedFormKind::AsymptoticScale);

        let (v, _) = omega_closed_form(&SetDescriptor::power(1.0, 64).unwrap(), 2).unwrap();
        assert!((v - 0.125).abs() < 1e-15);

        let (v, k) = omega_closed_form(&SetDescriptor::curve(48.0, 1.0 / 48.0).unwrap(), 1).unwrap();
        assert!((v - 0.25).abs() < 1e-15);
        assert_eq!(k, ClosedFormKind::LowerBound);

        assert!(matches!(
            omega_closed_form(&SetDescriptor::body(1, 1.0).unwrap(), 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn curve_examples() {
        assert!((curve_omega_lower(48.0, 1.0 / 48.0, 1).unwrap().lo - 0.25).abs() < 1e-15);
        assert!((curve_omega_lower(48.0, 1.0 / 96.0, 1).unwrap().lo - 0.125).abs() < 1e-15);
        let w = curve_omega_lower(24.0, 1.0 / 24.0, 1).unwrap();
        assert_eq!(w.lo, 0.0);
        assert!(w.degenerate);
        assert!(curve_omega_lower(10.0, 0.2, 1).is_err());
    }

    #[test]
    fn omega_box_sandwich_on_small_grid() {
        let mut g = vec![];
        for i in 0..4 {
            for j in 0..4 {
                g.push(Point::new(vec![-0.6 + 0.4 * i as f64, -0.6 + 0.4 * j as f64]).unwrap());
            }
        }
        let params = VitushkinParams::standard(2, 1).unwrap();
        let w = omega_box(&g, &params).unwrap();
        assert!(w.lo <= w.hi);
        assert!(!w.exact);
        // just below the spacing all 16 points need their own cube
        let eps = 0.4 * (1.0 - 1e-9);
        let direct = eps * eps * (16.0 - 1.0) - 8.0 * eps;
        assert!(w.lo >= direct - 1e-12, "{} vs {direct}", w.lo);
    }

    #[test]
    fn omega_body_and_curve_routes() {
        let w = omega_d(&SetDescriptor::body(2, 0.7).unwrap(), 3, 2).unwrap();
        assert_eq!(w.lo, 0.7);
        assert!(w.hi.is_infinite());
        let w = omega_d(&SetDescriptor::curve(48.0, 1.0 / 48.0).unwrap(), 1, 2).unwrap();
        assert!((w.lo - 0.25).abs() < 1e-15);
        assert!(omega_d(&SetDescriptor::grid(5).unwrap(), 1, 2).is_err());
    }
}
