//! Real roots and sub-level sets of univariate polynomials on [-1, 1].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::polynomial::{horner, Polynomial};

pub const ROOT_TOL: f64 = 1e-12;
const MAX_SUBLEVEL_DEGREE: usize = 32;

/// Sorted, pairwise disjoint closed intervals inside [-1, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        for (i, &(a, b)) in intervals.iter().enumerate() {
            if !(a.is_finite() && b.is_finite() && a <= b) {
                return Err(Error::input("V", format!("[{a}, {b}] is not an interval")));
            }
            if a < -1.0 || b > 1.0 {
                return Err(Error::input("V", format!("[{a}, {b}] leaves [-1, 1]")));
            }
            if i > 0 && intervals[i - 1].1 >= a {
                return Err(Error::input("V", "intervals must be sorted and disjoint"));
            }
        }
        Ok(IntervalUnion { intervals })
    }

    pub fn empty() -> Self {
        IntervalUnion { intervals: Vec::new() }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= x && x <= b)
    }
}

impl TryFrom<Vec<[f64; 2]>> for IntervalUnion {
    type Error = Error;

    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        IntervalUnion::new(v.into_iter().map(|[a, b]| (a, b)).collect())
    }
}

impl From<IntervalUnion> for Vec<[f64; 2]> {
    fn from(u: IntervalUnion) -> Self {
        u.intervals.into_iter().map(|(a, b)| [a, b]).collect()
    }
}

fn trimmed(c: &[f64]) -> &[f64] {
    let k = c.iter().rposition(|&v| v != 0.0).map_or(0, |k| k + 1);
    &c[..k]
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * i as f64).collect()
}

fn bisect(c: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = horner(c, a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = horner(c, m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Real roots in `[lo, hi]`, sorted, including tangential ones. Critical
/// points split the range into monotone pieces; each sign change is
/// bisected, and a critical point where `|p|` is within tolerance counts as
/// a root.
pub fn real_roots(coeffs: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let c = trimmed(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    let scale: f64 = c.iter().map(|v| v.abs()).sum::<f64>() * lo.abs().max(hi.abs()).max(1.0).powi(c.len() as i32 - 1);
    let tol = ROOT_TOL * scale;
    let mut knots = vec![lo];
    knots.extend(real_roots(&derivative(c), lo, hi).into_iter().filter(|&x| x > lo && x < hi));
    knots.push(hi);
    let mut roots: Vec<f64> = Vec::new();
    let push = |x: f64, roots: &mut Vec<f64>| {
        if roots.last().is_none_or(|&r| x - r > ROOT_TOL) {
            roots.push(x);
        }
    };
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (horner(c, a), horner(c, b));
        if fa.abs() <= tol {
            push(a, &mut roots);
        }
        if fa.abs() > tol && fb.abs() > tol && (fa > 0.0) != (fb > 0.0) {
            push(bisect(c, a, b), &mut roots);
        }
    }
    if horner(c, hi).abs() <= tol {
        push(hi, &mut roots);
    }
    roots
}

/// `{x in [-1, 1] : |P(x)| <= rho}`.
pub fn sublevel_intervals(p: &Polynomial, rho: f64) -> Result<IntervalUnion> {
    if p.dim() != 1 {
        return Err(Error::input("P", "sub-level sets need a univariate polynomial"));
    }
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::input("rho", format!("rho must be positive, got {rho}")));
    }
    if p.effective_degree() > MAX_SUBLEVEL_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: p.effective_degree(),
            reason: format!("sub-level sets are computed up to degree {MAX_SUBLEVEL_DEGREE}"),
        });
    }
    let c = p.coeffs();
    if p.effective_degree() == 0 {
        return Ok(if c[0].abs() <= rho {
            IntervalUnion::new(vec![(-1.0, 1.0)])?
        } else {
            IntervalUnion::empty()
        });
    }
    let mut cuts = real_roots(p.shifted(-rho).coeffs(), -1.0, 1.0);
    cuts.extend(real_roots(p.shifted(rho).coeffs(), -1.0, 1.0));
    cuts.push(-1.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|b, a| *b - *a <= ROOT_TOL);

    let inside = |x: f64| horner(c, x).abs() <= rho;
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut covered_to = f64::NEG_INFINITY;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if inside(0.5 * (a + b)) {
            match out.last_mut() {
                Some(last) if last.1 >= a => last.1 = b,
                _ => out.push((a, b)),
            }
            covered_to = b;
        } else if a > covered_to {
            // an isolated touching point
            let s = c.iter().map(|v| v.abs()).sum::<f64>();
            if (horner(c, a).abs() - rho) <= ROOT_TOL * s.max(1.0) && out.last().is_none_or(|l| l.1 < a) {
                out.push((a, a));
                covered_to = a;
            }
        }
    }
    if let Some(&last) = cuts.last() {
        if last > covered_to && inside(last) && out.last().is_none_or(|l| l.1 < last) {
            out.push((last, last));
        }
    }
    IntervalUnion::new(out)
}

/// Minimal number of closed intervals of length `eps` covering `V`,
/// by the greedy left-anchored sweep.
pub fn covering_number_intervals(v: &IntervalUnion, eps: f64) -> Result<usize> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::input("eps", format!("eps must be positive, got {eps}")));
    }
    let pieces = |len: f64| {
        let r = len / eps;
        (r * (1.0 - ROOT_TOL)).ceil().max(0.0) as usize
    };
    let mut count = 0;
    let mut reach = f64::NEG_INFINITY;
    for &(a, b) in v.intervals() {
        if b <= reach {
            continue;
        }
        let k = if a <= reach {
            pieces(b - reach)
        } else {
            pieces(b - a).max(1)
        };
        let start = if a <= reach { reach } else { a };
        count += k;
        reach = start + k as f64 * eps;
    }
    Ok(count)
}
