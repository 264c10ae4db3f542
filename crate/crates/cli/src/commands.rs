//! Command implementations. Each returns the full report text.

use rayon::prelude::*;
use serde_json::{json, Value};

use remezkit::entropy::{covering_number_box, covering_number_1d, covering_profile_1d};
use remezkit::numfmt::{format_f64, to_json};
use remezkit::oracle::remez_constant_exact;
use remezkit::remez_bounds::remez_constant_from_measure;
use remezkit::smooth_bounds::CSV_HEADER;
use remezkit::{
    curve_smooth_bound, fixed_degree_bound, general_bound, omega_d, q_of_set, remez_constant_upper,
    taylor_remez, whitney_lower, BoundReport, OmegaEstimate, RemezConstant, SetDescriptor, SmoothFnSpec,
};

use crate::args::{CommandKind, Format, Params};
use crate::error::{CliError, CliResult};
use crate::verify;

/// First line of every CSV report.
pub const CSV_SCHEMA: &str = "# remezkit-csv v1";

pub const DEFAULT_RESOLUTION: usize = 2001;

pub fn run(kind: CommandKind, p: &Params) -> CliResult<String> {
    match kind {
        CommandKind::Entropy => entropy(p),
        CommandKind::Omega => omega(p),
        CommandKind::RemezBound => remez_bound(p),
        CommandKind::RemezExact => remez_exact(p),
        CommandKind::SmoothBound => smooth_bound(p),
        CommandKind::Whitney => whitney(p),
        CommandKind::Verify => verify_cmd(p),
        CommandKind::Sweep => sweep(p),
    }
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{CSV_SCHEMA}\n{header}\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

fn json_line(v: &Value) -> String {
    let mut s = to_json(v);
    s.push('\n');
    s
}

fn object(v: impl serde::Serialize) -> serde_json::Map<String, Value> {
    match serde_json::to_value(v).expect("reports serialize") {
        Value::Object(m) => m,
        _ => unreachable!("reports are structs"),
    }
}

fn entropy(p: &Params) -> CliResult<String> {
    let z = p.descriptor()?;
    if z.dimension() == 1 {
        let xs = z.sorted_coords_1d()?;
        if let Some(eps) = p.eps {
            let count = covering_number_1d(&xs, eps)?;
            return Ok(match p.format() {
                Format::Json => json_line(&json!({"eps": eps, "count": count})),
                Format::Csv => csv("eps,count", [format!("{},{count}", format_f64(eps))]),
            });
        }
        let prof = covering_profile_1d(&xs)?;
        return Ok(match p.format() {
            Format::Json => prof.to_json() + "\n",
            Format::Csv => {
                let mut rows: Vec<String> = prof
                    .breakpoints
                    .iter()
                    .map(|&(e, c)| format!("{},{c}", format_f64(e)))
                    .collect();
                rows.push(format!("inf,{}", prof.tail));
                csv("breakpoint,count_below", rows)
            }
        });
    }
    let eps = p
        .eps
        .ok_or_else(|| CliError::input("eps", "covering counts in dimension 2 and up need --eps"))?;
    let (lo, hi) = covering_number_box(&z.materialize()?, eps)?;
    Ok(match p.format() {
        Format::Json => json_line(&json!({"eps": eps, "lo": lo, "hi": hi})),
        Format::Csv => csv("eps,lo,hi", [format!("{},{lo},{hi}", format_f64(eps))]),
    })
}

fn omega_provenance(w: &OmegaEstimate) -> &'static str {
    if w.exact {
        "exact"
    } else {
        "entropy-bound"
    }
}

fn omega_of(z: &SetDescriptor, d: usize) -> CliResult<OmegaEstimate> {
    Ok(omega_d(z, d, z.dimension())?)
}

fn omega(p: &Params) -> CliResult<String> {
    let z = p.descriptor()?;
    let ds = p.degrees()?;
    let rows = ds
        .par_iter()
        .map(|&d| omega_of(&z, d).map(|w| (d, w)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(match p.format() {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(d, w)| {
                    let mut m = object(w);
                    m.insert("d".into(), json!(d));
                    m.insert("provenance".into(), json!(omega_provenance(w)));
                    Value::Object(m)
                })
                .collect();
            if p.d_range.is_some() {
                json_line(&Value::Array(items))
            } else {
                json_line(&items[0])
            }
        }
        Format::Csv => csv(
            "d,lo,hi,witness_eps,exact,degenerate,provenance",
            rows.iter().map(|(d, w)| {
                format!(
                    "{d},{},{},{},{},{},{}",
                    format_f64(w.lo),
                    format_f64(w.hi),
                    format_f64(w.witness_eps),
                    w.exact,
                    w.degenerate,
                    omega_provenance(w)
                )
            }),
        ),
    })
}

/// Upper bound on `R_d(Z)` and the `omega_d` estimate behind it, if any.
fn upper_for(z: &SetDescriptor, d: usize) -> CliResult<(RemezConstant, Option<OmegaEstimate>)> {
    if let SetDescriptor::MeasurableBody { n, measure } = *z {
        return Ok((remez_constant_from_measure(n, d, measure)?, None));
    }
    let w = omega_of(z, d)?;
    Ok((remez_constant_upper(z.dimension(), d, w.lo), Some(w)))
}

fn remez_bound(p: &Params) -> CliResult<String> {
    let z = p.descriptor()?;
    let ds = p.degrees()?;
    let rows = ds
        .par_iter()
        .map(|&d| upper_for(&z, d))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(match p.format() {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(r, w)| {
                    let mut m = object(r);
                    m.insert("omega_lo".into(), w.map_or(Value::Null, |w| json!(w.lo)));
                    Value::Object(m)
                })
                .collect();
            if p.d_range.is_some() {
                json_line(&Value::Array(items))
            } else {
                json_line(&items[0])
            }
        }
        Format::Csv => csv(
            "d,n,value,provenance,omega_lo",
            rows.iter().map(|(r, w)| {
                format!(
                    "{},{},{},{},{}",
                    r.d,
                    r.n,
                    format_f64(r.value),
                    r.provenance,
                    w.map_or(String::new(), |w| format_f64(w.lo))
                )
            }),
        ),
    })
}

fn remez_exact(p: &Params) -> CliResult<String> {
    let z = p.descriptor()?;
    if !z.is_finite() {
        return Err(CliError::input("set", "the LP oracle needs a finite set"));
    }
    let pts = z.materialize()?;
    let resolution = p.resolution.unwrap_or(DEFAULT_RESOLUTION);
    let ds = p.degrees()?;
    let rows = ds
        .par_iter()
        .map(|&d| remez_constant_exact(&pts, d, resolution).map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(match p.format() {
        Format::Json => {
            if p.d_range.is_some() {
                json_line(&serde_json::to_value(&rows).expect("serializable"))
            } else {
                rows[0].to_json() + "\n"
            }
        }
        Format::Csv => csv(
            "d,n,value,provenance",
            rows.iter()
                .map(|r| format!("{},{},{},{}", r.d, r.n, format_f64(r.value), r.provenance)),
        ),
    })
}

fn smooth_spec(p: &Params, k: usize) -> CliResult<SmoothFnSpec> {
    let (uniform, orders) = p.derivative_bounds()?;
    let mut bounds = vec![None; k + 1];
    for (l, v) in orders {
        if l > k {
            return Err(CliError::input("M", format!("M_{l} given but k = {k}")));
        }
        bounds[l] = Some(v);
    }
    Ok(SmoothFnSpec::new(k, bounds, uniform)?)
}

fn smooth_bound(p: &Params) -> CliResult<String> {
    let l = p.sample_max()?;
    let report: BoundReport = if let Some(q) = p.q {
        let k = p.smoothness()?;
        let spec = smooth_spec(p, k)?;
        let m = (0..=k)
            .map(|i| spec.m(i).ok_or(remezkit::Error::MissingDerivativeBound(i)))
            .collect::<remezkit::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        general_bound(q, l, m, k)?
    } else if let (Some(sigma), Some(eps0)) = (p.sigma, p.eps0) {
        let s = p.degree()?;
        let spec = smooth_spec(p, p.k.unwrap_or(s + 1).max(s + 1))?;
        let m = spec.m(s + 1).ok_or(remezkit::Error::MissingDerivativeBound(s + 1))?;
        curve_smooth_bound(sigma, eps0, s, l, m)?
    } else if p.set.is_some() {
        let z = p.descriptor()?;
        if let Some(s) = p.d {
            let spec = smooth_spec(p, p.k.unwrap_or(s + 1).max(s + 1))?;
            let m = spec.m(s + 1).ok_or(remezkit::Error::MissingDerivativeBound(s + 1))?;
            fixed_degree_bound(upper_for(&z, s)?.0, l, m, s)?
        } else {
            let k = p.smoothness()?;
            let spec = smooth_spec(p, k)?;
            let rs = (0..k)
                .into_par_iter()
                .map(|d| upper_for(&z, d).map(|r| r.0))
                .collect::<CliResult<Vec<_>>>()?;
            taylor_remez(&spec, l, |d| rs[d])?
        }
    } else {
        return Err(CliError::input("q", "give --q, or --set, or --sigma with --eps0"));
    };
    Ok(match p.format() {
        Format::Json => report.to_json() + "\n",
        Format::Csv => csv(CSV_HEADER, [report.csv_row()]),
    })
}

fn whitney(p: &Params) -> CliResult<String> {
    let z = p.descriptor()?;
    let d = p.degree()?;
    let (r, _) = upper_for(&z, d)?;
    let lower = whitney_lower(&r, d);
    Ok(match p.format() {
        Format::Json => json_line(&json!({"d": d, "lower": lower, "r_d_used": r})),
        Format::Csv => csv(
            "d,R_d,provenance,lower",
            [format!("{d},{},{},{}", format_f64(r.value), r.provenance, format_f64(lower))],
        ),
    })
}

fn describe(z: &SetDescriptor) -> String {
    match z {
        SetDescriptor::FinitePoints(pts) => format!("points(n={})", pts.len()),
        SetDescriptor::RegularGrid { s } => format!("grid(s={s})"),
        SetDescriptor::PowerSequence { r, n_terms } => format!("power(r={r};N={n_terms})"),
        SetDescriptor::GeometricSequence { q, n_terms } => format!("geometric(q={q};N={n_terms})"),
        SetDescriptor::Curve { sigma, eps0 } => format!("curve(sigma={sigma};eps0={eps0})"),
        SetDescriptor::MeasurableBody { n, measure } => format!("body(n={n};measure={measure})"),
    }
}

fn sweep(p: &Params) -> CliResult<String> {
    let z = p.descriptor()?;
    let (a, b) = p
        .d_range
        .ok_or_else(|| CliError::input("d-range", "sweep needs --d-range"))?;
    let label = describe(&z);
    let exact_pts = match p.resolution {
        Some(_) if z.is_finite() => Some(z.materialize()?),
        _ => None,
    };
    let cells = (a..=b)
        .into_par_iter()
        .map(|d| -> CliResult<Vec<(usize, &'static str, f64, String)>> {
            let mut rows = Vec::new();
            let (r, w) = upper_for(&z, d)?;
            if let Some(w) = w {
                rows.push((d, "omega_lo", w.lo, omega_provenance(&w).to_string()));
                rows.push((d, "omega_hi", w.hi, omega_provenance(&w).to_string()));
                if w.lo > 0.0 {
                    rows.push((d, "q", q_of_set(z.dimension(), w.lo)?, "entropy-bound".into()));
                }
            }
            rows.push((d, "remez_upper", r.value, r.provenance.to_string()));
            if let (Some(pts), Some(res)) = (&exact_pts, p.resolution) {
                let e = remez_constant_exact(pts, d, res)?;
                rows.push((d, "remez_exact", e.value, e.provenance.to_string()));
            }
            Ok(rows)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let rows = cells.into_iter().flatten();
    Ok(match p.format() {
        Format::Csv => csv(
            "set,d,quantity,value,provenance",
            rows.map(|(d, q, v, prov)| format!("{label},{d},{q},{},{prov}", format_f64(v))),
        ),
        Format::Json => {
            let items: Vec<Value> = rows
                .map(|(d, q, v, prov)| {
                    let v = if v.is_infinite() { json!("inf") } else { json!(v) };
                    json!({"set": label, "d": d, "quantity": q, "value": v, "provenance": prov})
                })
                .collect();
            json_line(&Value::Array(items))
        }
    })
}

fn verify_cmd(p: &Params) -> CliResult<String> {
    let ids: Vec<u32> = if p.criterion.is_empty() {
        verify::ALL.to_vec()
    } else {
        p.criterion.clone()
    };
    if let Some(bad) = ids.iter().find(|i| !verify::ALL.contains(i)) {
        return Err(CliError::input("criterion", format!("no criterion {bad}")));
    }
    let outcomes = verify::run(&ids, p.seed.unwrap_or(verify::DEFAULT_SEED));
    let text = match p.format {
        None => outcomes.iter().map(|o| o.line() + "\n").collect(),
        Some(Format::Json) => json_line(&serde_json::to_value(&outcomes).expect("serializable")),
        Some(Format::Csv) => csv(
            "id,passed,seconds,limit_seconds,detail",
            outcomes.iter().map(|o| {
                format!(
                    "{},{},{},{},\"{}\"",
                    o.id,
                    o.passed,
                    format_f64(o.seconds),
                    format_f64(o.limit_seconds),
                    o.detail.replace('"', "'")
                )
            }),
        ),
    };
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        Ok(text)
    } else {
        Err(CliError::Verification { failed, report: text })
    }
}
