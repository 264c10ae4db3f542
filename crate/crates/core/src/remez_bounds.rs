//! Chebyshev polynomials, the classical Remez factors and the
//! entropy-based upper bound on the Remez constant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt;
use crate::set_models::unit_ball_volume;

/// Where a Remez-constant value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Classical measure-based factor.
    ClosedForm,
    /// Upper bound through `omega_d(Z)`.
    EntropyBound,
    /// Sampled linear-programming value; a lower bound on the true constant.
    LpExactLower,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::EntropyBound => "entropy-bound",
            Provenance::LpExactLower => "lp-exact-lower",
        })
    }
}

/// Smallest `K` with `sup_B |P| <= K sup_Z |P|` for all `P` of degree `d`,
/// or a bound on it. Infinite exactly when some nonzero degree-`d`
/// polynomial vanishes on `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemezConstant {
    #[serde(with = "numfmt::maybe_inf")]
    pub value: f64,
    pub provenance: Provenance,
    pub d: usize,
    pub n: usize,
}

impl RemezConstant {
    pub fn finite(value: f64, provenance: Provenance, d: usize, n: usize) -> Self {
        debug_assert!(value.is_nan() || value >= 1.0 - 1e-9, "Remez constant {value} < 1");
        RemezConstant {
            value,
            provenance,
            d,
            n,
        }
    }

    pub fn infinite(provenance: Provenance, d: usize, n: usize) -> Self {
        RemezConstant {
            value: f64::INFINITY,
            provenance,
            d,
            n,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    pub fn to_json(&self) -> String {
        numfmt::to_json(self)
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Chebyshev polynomial `T_d(x)`, valid for every real `x`.
///
/// Evaluated by the three-term recurrence in double-double arithmetic, so
/// integer arguments give exact integers as long as they fit in an `f64`
/// (e.g. `T_2(3) = 17`, `T_3(2) = 26`). Overflows to `±inf` for very large
/// arguments.
pub fn chebyshev_t(d: usize, x: f64) -> f64 {
    if d == 0 {
        return 1.0;
    }
    let two_x = 2.0 * x;
    let (mut prev_hi, mut prev_lo) = (1.0f64, 0.0f64);
    let (mut cur_hi, mut cur_lo) = (x, 0.0f64);
    for _ in 1..d {
        let (p, mut e) = two_prod(two_x, cur_hi);
        e += two_x * cur_lo;
        let (s, se) = two_sum(p, -prev_hi);
        let lo = e - prev_lo + se;
        let (hi, lo) = two_sum(s, lo);
        prev_hi = cur_hi;
        prev_lo = cur_lo;
        cur_hi = hi;
        cur_lo = lo;
        if !cur_hi.is_finite() {
            return cur_hi;
        }
    }
    cur_hi + cur_lo
}

/// Classical one-dimensional Remez factor `T_d((4-m)/m)` for a subset of
/// [-1, 1] of measure `m`. A null set gives an infinite factor.
pub fn remez_factor_1d(d: usize, m: f64) -> Result<f64> {
    if m.is_nan() || m > 2.0 {
        return Err(Error::InvalidMeasure(m));
    }
    if m <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(chebyshev_t(d, (4.0 - m) / m))
}

/// `1 - (1 - lambda)^(1/n)`, computed without cancellation.
fn one_minus_root(n: usize, lambda: f64) -> f64 {
    -((-lambda).ln_1p() / n as f64).exp_m1()
}

/// Multivariate Remez factor `T_d((1+u)/(1-u))` with `u = (1-lambda)^(1/n)`,
/// where `lambda` is the measure of the sampling set relative to the body.
pub fn remez_factor_nd(n: usize, d: usize, lambda: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::input("n", "dimension must be at least 1"));
    }
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidRatio(lambda));
    }
    let w = one_minus_root(n, lambda);
    Ok(chebyshev_t(d, (2.0 - w) / w))
}

/// The exponential majorant `(4n/lambda)^d` of [`remez_factor_nd`].
pub fn exponential_factor(n: usize, d: usize, lambda: f64) -> f64 {
    (4.0 * n as f64 / lambda).powi(d as i32)
}

/// Relative size of `omega` against the unit ball, capped at 1.
///
/// `omega_d` is measured in absolute units (it dominates the Lebesgue
/// measure of the set), whereas the Remez factor takes the measure ratio
/// against the body, hence the division by `|B^n|`.
pub fn normalized_lambda(n: usize, omega: f64) -> f64 {
    (omega / unit_ball_volume(n)).min(1.0)
}

/// Upper bound on `R_d(Z)` from `omega = omega_d(Z)`.
///
/// Returns `min(T_d((1+u)/(1-u)), (4n/lambda)^d)` with
/// `lambda = omega/|B^n|` (capped at 1) and `u = (1-lambda)^(1/n)`; an
/// `omega <= 0` gives no finite bound. Pass the `lo` end of an
/// [`OmegaEstimate`](crate::entropy::OmegaEstimate): a smaller `omega` only
/// enlarges the bound, so it stays valid.
pub fn remez_constant_upper(n: usize, d: usize, omega: f64) -> RemezConstant {
    if !(omega > 0.0) || n == 0 {
        return RemezConstant::infinite(Provenance::EntropyBound, d, n);
    }
    let lambda = normalized_lambda(n, omega);
    let cheb = remez_factor_nd(n, d, lambda).unwrap_or(f64::INFINITY);
    let value = cheb.min(exponential_factor(n, d, lambda)).max(1.0);
    RemezConstant::finite(value, Provenance::EntropyBound, d, n)
}

/// Classical bound for a set of known Lebesgue measure `measure` in B^n.
pub fn remez_constant_from_measure(n: usize, d: usize, measure: f64) -> Result<RemezConstant> {
    if !(measure > 0.0) {
        return Ok(RemezConstant::infinite(Provenance::ClosedForm, d, n));
    }
    let lambda = measure / unit_ball_volume(n);
    if lambda > 1.0 + 1e-12 {
        return Err(Error::InvalidRatio(lambda));
    }
    let value = remez_factor_nd(n, d, lambda.min(1.0))?;
    Ok(RemezConstant::finite(value, Provenance::ClosedForm, d, n))
}

/// `q = 4n/lambda` with `lambda = omega/|B^n|` capped at 1, so that
/// `R_d(Z) <= q^d` for every degree up to the one `omega` was computed for.
/// Always at least `4n`.
pub fn q_of_set(n: usize, omega: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::InfiniteQ(omega));
    }
    Ok(4.0 * n as f64 / normalized_lambda(n, omega))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev_t(0, 123.0), 1.0);
        assert_eq!(chebyshev_t(2, 3.0), 17.0);
        assert_eq!(chebyshev_t(3, 2.0), 26.0);
        assert_eq!(chebyshev_t(1, -0.25), -0.25);
    }

    #[test]
    fn chebyshev_recurrence_and_trig() {
        for x in [-2.0, -1.0, -0.3, 0.0, 0.7, 1.0, 5.0] {
            for d in 1..=32 {
                let lhs = chebyshev_t(d + 1, x);
                let rhs = 2.0 * x * chebyshev_t(d, x) - chebyshev_t(d - 1, x);
                let scale = lhs.abs().max(1.0);
                assert!((lhs - rhs).abs() <= 1e-10 * scale, "d={d} x={x}");
            }
        }
        for i in 0..=200 {
            let x = -1.0 + i as f64 / 100.0;
            for d in 0..=64 {
                let trig = (d as f64 * x.acos()).cos();
                assert!((chebyshev_t(d, x) - trig).abs() <= 1e-10, "d={d} x={x}");
            }
        }
    }

    #[test]
    fn chebyshev_large_argument_matches_hyperbolic_form() {
        for &x in &[1.5, 10.0, 1e3, 1e6] {
            for d in [5usize, 17, 40] {
                let t = chebyshev_t(d, x);
                if !t.is_finite() {
                    continue;
                }
                let s: f64 = x + (x * x - 1.0).sqrt();
                let closed = 0.5 * (s.powi(d as i32) + s.powi(-(d as i32)));
                assert!(((t - closed) / closed).abs() < 1e-12, "d={d} x={x}");
            }
        }
    }

    #[test]
    fn factor_1d_examples() {
        for d in 0..6 {
            assert_eq!(remez_factor_1d(d, 2.0).unwrap(), 1.0);
        }
        assert_eq!(remez_factor_1d(1, 1.0).unwrap(), 3.0);
        assert_eq!(remez_factor_1d(2, 1.0).unwrap(), 17.0);
        assert!(remez_factor_1d(3, 0.0).unwrap().is_infinite());
        assert_eq!(remez_factor_1d(3, 2.5), Err(Error::InvalidMeasure(2.5)));
    }

    #[test]
    fn factor_nd_examples() {
        assert_eq!(remez_factor_nd(1, 4, 1.0).unwrap(), 1.0);
        assert!((remez_factor_nd(2, 1, 0.75).unwrap() - 3.0).abs() < 1e-14);
        assert!((remez_factor_nd(1, 2, 0.5).unwrap() - 17.0).abs() < 1e-12);
        assert!(remez_factor_nd(1, 2, 0.0).is_err());
        assert!(remez_factor_nd(1, 2, 1.5).is_err());
    }

    #[test]
    fn classical_forms_agree() {
        for d in 0..8 {
            for i in 1..=40 {
                let m = i as f64 * 0.05;
                let a = remez_factor_1d(d, m).unwrap();
                let b = remez_factor_nd(1, d, m / 2.0).unwrap();
                assert!((a - b).abs() <= 1e-9 * a.max(1.0), "d={d} m={m}");
            }
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert!(!remez_constant_upper(1, 3, 0.0).is_finite());
        assert!(!remez_constant_upper(2, 3, -1.0).is_finite());

        // lambda = 0.25: u = 0.75, (1+u)/(1-u) = 7
        let r = remez_constant_upper(1, 1, 0.5);
        assert_eq!(r.provenance, Provenance::EntropyBound);
        assert!((r.value - 7.0).abs() < 1e-12);
        // one dimension reduces to the classical factor with m = omega
        for d in 1..6 {
            for &w in &[0.1, 0.5, 1.3, 2.0] {
                let r = remez_constant_upper(1, d, w);
                let classical = remez_factor_1d(d, w).unwrap();
                assert!((r.value - classical).abs() <= 1e-9 * classical);
            }
        }
        assert_eq!(remez_constant_upper(1, 2, 2.0).value, 1.0);
        assert_eq!(remez_constant_upper(1, 0, 0.3).value, 1.0);
        assert_eq!(remez_constant_upper(1, 3, f64::INFINITY).value, 1.0);
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_of_set(1, 2.0).unwrap(), 4.0);
        assert_eq!(q_of_set(1, 0.5).unwrap(), 16.0);
        assert!((q_of_set(2, 1.0).unwrap() - 8.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!(matches!(q_of_set(1, 0.0), Err(Error::InfiniteQ(_))));
        for &w in &[0.01, 0.3, 1.0, 2.0, 5.0] {
            assert!(q_of_set(1, w).unwrap() >= 4.0);
            assert!(q_of_set(2, w).unwrap() >= 8.0);
        }
    }

    #[test]
    fn q_power_dominates_upper_bound() {
        for n in 1..=2 {
            for d in 0..10 {
                for i in 1..100 {
                    let w = i as f64 * 0.02;
                    let r = remez_constant_upper(n, d, w).value;
                    let q = q_of_set(n, w).unwrap();
                    assert!(r <= q.powi(d as i32) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn serialization() {
        let r = RemezConstant::infinite(Provenance::LpExactLower, 2, 1);
        assert_eq!(
            r.to_json(),
            r#"{"value":"inf","provenance":"lp-exact-lower","d":2,"n":1}"#
        );
        let back: RemezConstant = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
