//! Remez-type inequalities for `C^k` functions.
//!
//! Every bound has the shape `R_d (L + E_d) + E_d`, where `L` is the sampled
//! maximum, `R_d` bounds the Remez constant of the sampling set, and `E_d`
//! bounds the best degree-`d` approximation error. The Taylor remainder
//! `M_{d+1}/(d+1)!` is the standard choice of `E_d`, but
//! [`smooth_remez`] accepts any valid upper bound.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::entropy::curve_omega_lower;
use crate::error::{Error, Result};
use crate::numfmt;
use crate::remez_bounds::{remez_constant_upper, RemezConstant};

/// Derivative-norm bounds `M_0..M_k` of a `C^k` function on B^n, where
/// `M_l` bounds the sum of absolute values of all order-`l` partials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothFnSpec {
    pub k: usize,
    /// Entry `l` is `M_l`, if known. Length `k + 1`.
    pub deriv_bounds: Vec<Option<f64>>,
    /// Common bound `M` for every order.
    pub uniform_m: Option<f64>,
}

impl SmoothFnSpec {
    pub fn new(k: usize, deriv_bounds: Vec<Option<f64>>, uniform_m: Option<f64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("k", "smoothness order must be at least 1"));
        }
        if deriv_bounds.len() > k + 1 {
            return Err(Error::input(
                "M",
                format!("got bounds up to order {} but k = {k}", deriv_bounds.len() - 1),
            ));
        }
        let mut deriv_bounds = deriv_bounds;
        deriv_bounds.resize(k + 1, None);
        for (l, m) in deriv_bounds.iter().enumerate() {
            if let Some(m) = m {
                if !(m.is_finite() && *m >= 0.0) {
                    return Err(Error::input("M", format!("M_{l} = {m} must be finite and non-negative")));
                }
                if let Some(u) = uniform_m {
                    if *m > u {
                        return Err(Error::input("M", format!("M_{l} = {m} exceeds the uniform bound {u}")));
                    }
                }
            }
        }
        if let Some(u) = uniform_m {
            if !(u.is_finite() && u >= 0.0) {
                return Err(Error::input("M", format!("uniform bound {u} must be finite and non-negative")));
            }
        }
        Ok(SmoothFnSpec {
            k,
            deriv_bounds,
            uniform_m,
        })
    }

    /// All of `M_0..M_k` known.
    pub fn from_bounds(bounds: &[f64]) -> Result<Self> {
        if bounds.len() < 2 {
            return Err(Error::input("M", "need at least M_0 and M_1"));
        }
        SmoothFnSpec::new(bounds.len() - 1, bounds.iter().copied().map(Some).collect(), None)
    }

    pub fn uniform(k: usize, m: f64) -> Result<Self> {
        SmoothFnSpec::new(k, vec![None; k + 1], Some(m))
    }

    /// `M_l`, falling back to the uniform bound.
    pub fn m(&self, l: usize) -> Option<f64> {
        self.deriv_bounds.get(l).copied().flatten().or(if l <= self.k {
            self.uniform_m
        } else {
            None
        })
    }
}

/// Which inequality produced a [`BoundReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Infimum over caller-supplied `(R_d, E_d)` pairs.
    DegreeInfimum,
    /// Infimum over `d = 0..k-1` with Taylor remainders.
    TaylorInfimum,
    /// Single degree `s` with the Taylor remainder of order `s + 1`.
    FixedDegree,
    /// `R_s = inf`: no bound through `L` and higher derivatives exists.
    FixedDegreeObstruction,
    /// Single degree on a planar curve with the curve entropy bound.
    CurveFixedDegree,
    /// Automatic degree, `L > M`: `L + 2M`.
    DegreeSelectionLargeSample,
    /// Automatic degree in the factorial band.
    DegreeSelection,
    /// Automatic degree, `L <= M/k!`: top degree `k - 1`.
    DegreeSelectionTopDegree,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

/// A computed inequality with every input it used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "numfmt::maybe_inf")]
    pub bound: f64,
    /// `log10(bound)` when the bound itself overflows `f64`.
    pub log10_bound: Option<f64>,
    pub chosen_degree: Option<usize>,
    pub r_d_used: Option<RemezConstant>,
    /// Base of the Remez bound `q^d` for the automatic-degree rules.
    pub q: Option<f64>,
    pub e_d_used: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub rule: Rule,
}

/// Header of the CSV row form of a [`BoundReport`].
pub const CSV_HEADER: &str = "rule,d,R_d,E_d,L,bound";

impl BoundReport {
    pub fn is_finite(&self) -> bool {
        self.bound.is_finite() || self.log10_bound.is_some()
    }

    pub fn to_json(&self) -> String {
        numfmt::to_json(self)
    }

    pub fn csv_row(&self) -> String {
        let r = match (&self.r_d_used, self.q, self.chosen_degree) {
            (Some(r), _, _) => numfmt::format_f64(r.value),
            (None, Some(q), Some(d)) => numfmt::format_f64(q.powi(d as i32)),
            _ => String::new(),
        };
        format!(
            "{},{},{},{},{},{}",
            self.rule,
            self.chosen_degree.map_or(String::new(), |d| d.to_string()),
            r,
            numfmt::format_f64(self.e_d_used),
            numfmt::format_f64(self.l),
            numfmt::format_f64(self.bound),
        )
    }
}

/// `n!` as an `f64`; exact through `22!`, `inf` past `170!`.
pub fn factorial(n: usize) -> f64 {
    if n <= 34 {
        (1..=n as u128).product::<u128>() as f64
    } else {
        ln_factorial(n).exp()
    }
}

pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Compares `l * j!` with `m` exactly (for `j <= 22`, where `j!` is exact).
fn cmp_scaled(l: f64, j: usize, m: f64) -> Ordering {
    if j <= 22 {
        let f = factorial(j);
        let p = l * f;
        let err = l.mul_add(f, -p);
        match p.partial_cmp(&m).unwrap_or(Ordering::Equal) {
            Ordering::Equal => err.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
            o => o,
        }
    } else if l == 0.0 {
        0.0f64.partial_cmp(&m).unwrap_or(Ordering::Equal)
    } else {
        (l.ln() + ln_factorial(j))
            .partial_cmp(&m.ln())
            .unwrap_or(Ordering::Equal)
    }
}

fn check_nonneg(field: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::input(field, format!("expected a finite non-negative value, got {v}")))
    }
}

/// `log10` of `r (l + e) + e` without overflow; `-inf` for a zero bound.
fn log10_bound(r: f64, l: f64, e: f64) -> f64 {
    let a = l + e;
    if a == 0.0 {
        return f64::NEG_INFINITY;
    }
    let main = r.log10() + a.log10();
    main + (1.0 + e / (r * a)).log10()
}

fn combine(r: f64, l: f64, e: f64) -> (f64, Option<f64>) {
    let v = r * (l + e) + e;
    if v.is_finite() {
        (v, None)
    } else {
        (f64::INFINITY, Some(log10_bound(r, l, e)))
    }
}

/// Taylor remainder `M_{d+1}/(d+1)!`; needs `d <= k - 1`.
pub fn taylor_remainder(spec: &SmoothFnSpec, d: usize) -> Result<f64> {
    if d + 1 > spec.k {
        return Err(Error::MissingDerivativeBound(d + 1));
    }
    let m = spec.m(d + 1).ok_or(Error::MissingDerivativeBound(d + 1))?;
    Ok(m / factorial(d + 1))
}

/// `inf_d [R_d (L + E_d) + E_d]` over the supplied entries. Infinite `R_d`
/// are skipped; ties go to the lowest degree.
pub fn smooth_remez(l: f64, entries: &[(RemezConstant, f64)]) -> Result<BoundReport> {
    smooth_remez_with_rule(l, entries, Rule::DegreeInfimum)
}

fn smooth_remez_with_rule(l: f64, entries: &[(RemezConstant, f64)], rule: Rule) -> Result<BoundReport> {
    check_nonneg("L", l)?;
    if entries.is_empty() {
        return Err(Error::input("entries", "need at least one (R_d, E_d) pair"));
    }
    let mut best: Option<(f64, usize, usize)> = None;
    for (i, (r, e)) in entries.iter().enumerate() {
        check_nonneg("E_d", *e)?;
        if !r.is_finite() {
            continue;
        }
        let lv = log10_bound(r.value, l, *e);
        let better = match best {
            None => true,
            Some((blv, _, bd)) => lv < blv || (lv == blv && r.d < bd),
        };
        if better {
            best = Some((lv, i, r.d));
        }
    }
    Ok(match best {
        None => {
            let lowest = entries.iter().min_by_key(|(r, _)| r.d).expect("nonempty");
            BoundReport {
                bound: f64::INFINITY,
                log10_bound: None,
                chosen_degree: None,
                r_d_used: Some(lowest.0),
                q: None,
                e_d_used: lowest.1,
                l,
                rule,
            }
        }
        Some((_, i, d)) => {
            let (r, e) = entries[i];
            let (bound, log10_bound) = combine(r.value, l, e);
            BoundReport {
                bound,
                log10_bound,
                chosen_degree: Some(d),
                r_d_used: Some(r),
                q: None,
                e_d_used: e,
                l,
                rule,
            }
        }
    })
}

/// Infimum over `d = 0..k-1` with `E_d = M_{d+1}/(d+1)!` and `R_d` from
/// the provider.
pub fn taylor_remez<F>(spec: &SmoothFnSpec, l: f64, r_provider: F) -> Result<BoundReport>
where
    F: Fn(usize) -> RemezConstant,
{
    let entries = (0..spec.k)
        .map(|d| Ok((r_provider(d), taylor_remainder(spec, d)?)))
        .collect::<Result<Vec<_>>>()?;
    smooth_remez_with_rule(l, &entries, Rule::TaylorInfimum)
}

/// `R_s (L + E_s) + E_s` with `E_s = M_{s+1}/(s+1)!`. An infinite `R_s`
/// is reported as an infinite bound under the obstruction rule.
pub fn fixed_degree_bound(r_s: RemezConstant, l: f64, m_next: f64, s: usize) -> Result<BoundReport> {
    check_nonneg("L", l)?;
    check_nonneg("M", m_next)?;
    let e = m_next / factorial(s + 1);
    if !r_s.is_finite() {
        return Ok(BoundReport {
            bound: f64::INFINITY,
            log10_bound: None,
            chosen_degree: Some(s),
            r_d_used: Some(r_s),
            q: None,
            e_d_used: e,
            l,
            rule: Rule::FixedDegreeObstruction,
        });
    }
    let (bound, log10_bound) = combine(r_s.value, l, e);
    Ok(BoundReport {
        bound,
        log10_bound,
        chosen_degree: Some(s),
        r_d_used: Some(r_s),
        q: None,
        e_d_used: e,
        l,
        rule: Rule::FixedDegree,
    })
}

/// `kappa_s = (1/(2l)) (1 - 24/m)` for a curve of length `sigma`, with
/// `l = 1/(eps0 sigma)` and `m = sigma/s`.
pub fn curve_kappa(sigma: f64, eps0: f64, s: usize) -> Result<f64> {
    if s == 0 {
        let l = (1.0 / (eps0 * sigma)).max(1.0);
        return Ok(1.0 / (2.0 * l));
    }
    Ok(curve_omega_lower(sigma, eps0, s)?.lo)
}

/// Fixed-degree bound on a planar curve: `R_s` comes from the curve lower
/// bound `kappa_s` on `omega_s` through [`remez_constant_upper`]. Requires
/// `s <= sigma/24 - 1`.
pub fn curve_smooth_bound(sigma: f64, eps0: f64, s: usize, l: f64, m_next: f64) -> Result<BoundReport> {
    if (s as f64) > sigma / 24.0 - 1.0 {
        return Err(Error::DegreeTooLarge {
            degree: s,
            reason: format!("the curve bound needs s <= sigma/24 - 1 = {}", sigma / 24.0 - 1.0),
        });
    }
    let kappa = curve_kappa(sigma, eps0, s)?;
    if !(kappa > 0.0) {
        return Err(Error::DegreeTooLarge {
            degree: s,
            reason: "the curve entropy bound kappa_s is not positive".into(),
        });
    }
    let r = remez_constant_upper(2, s, kappa);
    let mut report = fixed_degree_bound(r, l, m_next, s)?;
    report.rule = Rule::CurveFixedDegree;
    Ok(report)
}

/// Degree selected from the relative size of `L` and `M`:
/// 0 when `L > M`, `k - 1` when `L <= M/k!`, and otherwise the `d0` with
/// `M/(d0+1)! <= L <= M/d0!`. On the shared endpoints `L = M/j!` the
/// smaller degree is returned. Comparisons are exact.
pub fn select_d0(l: f64, m: f64, k: usize) -> Result<usize> {
    check_nonneg("L", l)?;
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::input("M", format!("M must be positive, got {m}")));
    }
    if k == 0 {
        return Err(Error::input("k", "smoothness order must be at least 1"));
    }
    if l > m {
        return Ok(0);
    }
    if cmp_scaled(l, k, m) != Ordering::Greater {
        return Ok(k - 1);
    }
    for d in 0..k {
        let lower_ok = cmp_scaled(l, d + 1, m) != Ordering::Less;
        let upper_ok = cmp_scaled(l, d, m) != Ordering::Greater;
        if lower_ok && upper_ok {
            return Ok(d);
        }
    }
    unreachable!("the factorial bands cover (M/k!, M]")
}

/// Explicit bound with automatic degree for `M_l <= M` (all `l <= k`) and a
/// set with `R_d <= q^d`: `L + 2M` if `L > M`, else
/// `2 q^d0 L + M/(d0+1)!`.
pub fn general_bound(q: f64, l: f64, m: f64, k: usize) -> Result<BoundReport> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::input("q", format!("q must be positive and finite, got {q}")));
    }
    let d0 = select_d0(l, m, k)?;
    let e = m / factorial(d0 + 1);
    if d0 == 0 && l > m {
        return Ok(BoundReport {
            bound: l + 2.0 * m,
            log10_bound: None,
            chosen_degree: Some(0),
            r_d_used: None,
            q: Some(q),
            e_d_used: e,
            l,
            rule: Rule::DegreeSelectionLargeSample,
        });
    }
    let rule = if d0 + 1 == k && cmp_scaled(l, k, m) != Ordering::Greater {
        Rule::DegreeSelectionTopDegree
    } else {
        Rule::DegreeSelection
    };
    let value = 2.0 * q.powi(d0 as i32) * l + e;
    let (bound, log10_bound) = if value.is_finite() {
        (value, None)
    } else {
        let a = 2f64.log10() + d0 as f64 * q.log10() + l.log10();
        let b = e.log10();
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        (f64::INFINITY, Some(hi + (1.0 + 10f64.powf(lo - hi)).log10()))
    };
    Ok(BoundReport {
        bound,
        log10_bound,
        chosen_degree: Some(d0),
        r_d_used: None,
        q: Some(q),
        e_d_used: e,
        l,
        rule,
    })
}

/// Lower bound `(d+1)!/(R_d + 1)` on `M_{d+1}` of any extension of the
/// function that is 0 on `Z` and 1 at a point outside `Z`. Zero when `R_d`
/// is infinite.
pub fn whitney_lower(r_d: &RemezConstant, d: usize) -> f64 {
    if !r_d.is_finite() {
        return 0.0;
    }
    let f = factorial(d + 1);
    if f.is_finite() {
        f / (r_d.value + 1.0)
    } else {
        (ln_factorial(d + 1) - (r_d.value + 1.0).ln()).exp()
    }
}
