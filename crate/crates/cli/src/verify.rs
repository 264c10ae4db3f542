//! Numbered verification criteria with fixed seeds and runtime limits.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use remezkit::entropy::{covering_number_box, curve_omega_lower, covering_profile_1d, omega_box, omega_from_profile, VitushkinParams};
use remezkit::oracle::{
    covering_number_intervals, lp_max_at_point, max_abs_on_grid, poly_derivative_norm, remez_constant_exact,
    sublevel_intervals, Polynomial,
};
use remezkit::remez_bounds::{exponential_factor, remez_factor_nd};
use remezkit::smooth_bounds::factorial;
use remezkit::{
    fixed_degree_bound, general_bound, omega_d, q_of_set, remez_constant_upper,
    select_d0, smooth_remez, taylor_remez, whitney_lower, Point, SetDescriptor, SmoothFnSpec,
};

pub const ALL: [u32; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {} [{:.2}s, limit {}s]",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.seconds,
            self.limit_seconds
        )
    }
}

struct Check {
    passed: bool,
    detail: String,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Check {
            passed,
            detail: detail.into(),
        }
    }

    fn failed(detail: impl Into<String>) -> Self {
        Check::new(false, detail)
    }
}

fn criterion_meta(id: u32) -> (&'static str, f64) {
    match id {
        1 => ("grid closed form", 2.0),
        2 => ("omega non-increasing in d", 5.0),
        3 => ("omega dominates interval length", 5.0),
        4 => ("Chebyshev factor below exponential factor", 1.0),
        5 => ("entropy bound dominates LP oracle", 60.0),
        6 => ("LP hand-derived cases", 1.0),
        7 => ("Vitushkin count on sub-level sets", 10.0),
        8 => ("smooth bounds dominate the true maximum", 10.0),
        9 => ("degree selection", 1.0),
        10 => ("Whitney lower bound", 30.0),
        11 => ("planar curve lower bound", 30.0),
        12 => ("geometric sequence asymptotic scale", 10.0),
        _ => ("unknown", 0.0),
    }
}

/// Runs the listed criteria in order.
pub fn run(ids: &[u32], seed: u64) -> Vec<Outcome> {
    ids.iter().map(|&id| run_one(id, seed)).collect()
}

pub fn run_one(id: u32, seed: u64) -> Outcome {
    let (title, limit) = criterion_meta(id);
    let rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(id as u64));
    let start = Instant::now();
    let check = match id {
        1 => grid_closed_form(),
        2 => monotone_in_d(rng),
        3 => measure_domination(),
        4 => chebyshev_chain(),
        5 => lp_domination(rng),
        6 => lp_hand_cases(),
        7 => vitushkin(rng),
        8 => smooth_soundness(),
        9 => degree_selection(),
        10 => whitney(rng),
        11 => curve(),
        12 => geometric_scale(),
        _ => Check::failed(format!("no criterion {id}")),
    };
    let seconds = start.elapsed().as_secs_f64();
    let in_time = seconds <= limit;
    Outcome {
        id,
        title,
        passed: check.passed && in_time,
        detail: if in_time {
            check.detail
        } else {
            format!("{}; over the time limit", check.detail)
        },
        seconds,
        limit_seconds: limit,
    }
}

fn scalars(xs: &[f64]) -> Vec<Point> {
    xs.iter().map(|&x| Point::scalar(x).expect("inside [-1, 1]")).collect()
}

fn random_points(rng: &mut ChaCha8Rng, size: usize) -> Vec<f64> {
    (0..size).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

fn grid_closed_form() -> Check {
    let mut cases = 0;
    for s in 2..=50usize {
        let z = SetDescriptor::grid(s).expect("s >= 2");
        for d in 1..s {
            let w = match omega_d(&z, d, 1) {
                Ok(w) => w,
                Err(e) => return Check::failed(format!("s = {s}, d = {d}: {e}")),
            };
            let want = 2.0 * (s - d) as f64 / (s - 1) as f64;
            if !w.exact || (w.lo - want).abs() > 1e-9 {
                return Check::failed(format!("s = {s}, d = {d}: got {}, want {want}", w.lo));
            }
            cases += 1;
        }
    }
    Check::new(true, format!("{cases} (s, d) pairs match 2(s-d)/(s-1)"))
}

fn monotone_in_d(mut rng: ChaCha8Rng) -> Check {
    let mut sets: Vec<(String, SetDescriptor)> = (0..30)
        .map(|i| {
            let size = rng.random_range(5..=60);
            let z = SetDescriptor::points(scalars(&random_points(&mut rng, size))).expect("valid");
            (format!("random set {i}"), z)
        })
        .collect();
    for (name, z) in [
        ("grid(11)", SetDescriptor::grid(11)),
        ("grid(40)", SetDescriptor::grid(40)),
        ("power(1)", SetDescriptor::power(1.0, 64)),
        ("power(2)", SetDescriptor::power(2.0, 64)),
        ("geometric(0.5)", SetDescriptor::geometric(0.5, 64)),
    ] {
        sets.push((name.to_string(), z.expect("valid")));
    }
    for (name, z) in &sets {
        let mut prev = f64::INFINITY;
        for d in 1..=10 {
            let w = match omega_d(z, d, 1) {
                Ok(w) => w.lo,
                Err(e) => return Check::failed(format!("{name}: {e}")),
            };
            if w > prev + 1e-12 {
                return Check::failed(format!("{name}: omega_{d} = {w} > omega_{} = {prev}", d - 1));
            }
            prev = w;
        }
    }
    Check::new(true, format!("{} sets, d = 1..10", sets.len()))
}

fn measure_domination() -> Check {
    let mut worst = f64::INFINITY;
    for (a, b) in [(-1.0, 1.0), (-0.5, 0.25), (0.2, 0.7)] {
        for h in [1e-3, 1e-4] {
            let count = ((b - a) / h as f64).round() as usize;
            let xs: Vec<f64> = (0..=count).map(|i| (a + i as f64 * h).min(b)).collect();
            let prof = match covering_profile_1d(&xs) {
                Ok(p) => p,
                Err(e) => return Check::failed(e.to_string()),
            };
            for d in 1..=5usize {
                let w = omega_from_profile(&prof, d).lo;
                let floor = (b - a) - (d + 1) as f64 * h;
                worst = worst.min(w - floor);
                if w < floor {
                    return Check::failed(format!("[{a}, {b}], h = {h}, d = {d}: {w} < {floor}"));
                }
            }
        }
    }
    Check::new(true, format!("smallest margin {worst:.3e}"))
}

fn chebyshev_chain() -> Check {
    let mut violations = 0;
    let mut total = 0;
    for i in 1..=99 {
        let lambda = i as f64 / 100.0;
        for n in 1..=3 {
            for d in 1..=10 {
                total += 1;
                let c = remez_factor_nd(n, d, lambda).unwrap_or(f64::INFINITY);
                if c > exponential_factor(n, d, lambda) * (1.0 + 1e-12) {
                    violations += 1;
                }
            }
        }
    }
    Check::new(violations == 0, format!("{violations} violations in {total} cases"))
}

fn lp_domination(mut rng: ChaCha8Rng) -> Check {
    let mut cases = Vec::new();
    let mut skipped = 0;
    while cases.len() < 50 {
        let d = rng.random_range(1..=5usize);
        let size = rng.random_range(d + 2..=30);
        let xs = random_points(&mut rng, size);
        let z = scalars(&xs);
        let w = match omega_d(&SetDescriptor::points(z.clone()).expect("valid"), d, 1) {
            Ok(w) => w,
            Err(e) => return Check::failed(e.to_string()),
        };
        if w.degenerate || w.lo <= 0.0 {
            skipped += 1;
            continue;
        }
        cases.push((z, d, w.lo));
    }
    let results: Vec<Result<(f64, f64), String>> = cases
        .par_iter()
        .map(|(z, d, lo)| {
            let exact = remez_constant_exact(z, *d, 2001).map_err(|e| e.to_string())?.value;
            Ok((exact, remez_constant_upper(1, *d, *lo).value))
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (i, r) in results.into_iter().enumerate() {
        let (exact, upper) = match r {
            Ok(v) => v,
            Err(e) => return Check::failed(e),
        };
        if exact > upper * (1.0 + 1e-9) {
            return Check::failed(format!("set {i}, d = {}: LP {exact} > bound {upper}", cases[i].1));
        }
        worst = worst.max(exact / upper);
    }
    Check::new(
        true,
        format!("50 sets ({skipped} degenerate skipped), largest LP/bound ratio {worst:.4}"),
    )
}

fn lp_hand_cases() -> Check {
    let run = || -> remezkit::Result<Check> {
        let z = scalars(&[0.0, 0.5]);
        let r = remez_constant_exact(&z, 1, 2001)?;
        let at_end = lp_max_at_point(&z, 1, &Point::scalar(-1.0)?)?;
        if (r.value - 5.0).abs() > 1e-6 || (at_end - r.value).abs() > 1e-6 {
            return Ok(Check::failed(format!("got {} (x = -1 gives {at_end})", r.value)));
        }
        let inf = remez_constant_exact(&scalars(&[-1.0, 1.0]), 2, 2001)?;
        if inf.is_finite() {
            return Ok(Check::failed(format!("{{-1, 1}}, d = 2 gave {}", inf.value)));
        }
        Ok(Check::new(true, "R_1({0, 0.5}) = 5 at x = -1; R_2({-1, 1}) = inf"))
    };
    run().unwrap_or_else(|e| Check::failed(e.to_string()))
}

fn vitushkin(mut rng: ChaCha8Rng) -> Check {
    let mut worst = f64::INFINITY;
    for i in 0..200 {
        let d = rng.random_range(1..=8usize);
        let c: Vec<f64> = (0..=d).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let rho = rng.random_range(0.01..1.0);
        let eps = 10f64.powf(rng.random_range(-3.0..0.3));
        let p = Polynomial::univariate(c).expect("finite");
        let v = match sublevel_intervals(&p, rho) {
            Ok(v) => v,
            Err(e) => return Check::failed(e.to_string()),
        };
        let m = covering_number_intervals(&v, eps).expect("eps > 0") as f64;
        let bound = d as f64 + v.total_length() / eps;
        worst = worst.min(bound - m);
        if m > bound + 1e-9 {
            return Check::failed(format!("triple {i}: count {m} > {bound}"));
        }
    }
    Check::new(true, format!("200 triples, smallest slack {worst:.3}"))
}

fn smooth_soundness() -> Check {
    let mut emitted = 0;
    for freq in [1.0f64, 3.0, 5.0] {
        let f = move |x: f64| (freq * x).sin();
        let truth = max_abs_on_grid(|x| f(x[0]), 1, 10_000).expect("valid grid");
        for s in [6usize, 11, 21] {
            let z = SetDescriptor::grid(s).expect("s >= 2");
            let pts = z.materialize().expect("finite");
            let l = pts.iter().map(|p| f(p.coords()[0]).abs()).fold(0.0, f64::max);
            for k in [3usize, 5, 8] {
                let spec = SmoothFnSpec::from_bounds(&(0..=k).map(|i| freq.powi(i as i32)).collect::<Vec<_>>())
                    .expect("valid bounds");
                let omegas: Vec<f64> = (0..k)
                    .map(|d| if d == 0 { f64::INFINITY } else { omega_d(&z, d, 1).expect("finite").lo })
                    .collect();
                let r = |d: usize| remez_constant_upper(1, d, omegas[d]);
                let mut bounds = Vec::new();
                let tag = format!("f = sin({freq}x), s = {s}, k = {k}");
                match taylor_remez(&spec, l, r) {
                    Ok(b) => bounds.push(("Taylor infimum", b.bound)),
                    Err(e) => return Check::failed(format!("{tag}: {e}")),
                }
                for d in 0..k {
                    let b = fixed_degree_bound(r(d), l, freq.powi(d as i32 + 1), d).expect("valid");
                    bounds.push(("fixed degree", b.bound));
                }
                let entries: Vec<_> = (0..k)
                    .map(|d| (r(d), remezkit::oracle::best_approx_upper(f, d)))
                    .collect();
                bounds.push(("interpolation infimum", smooth_remez(l, &entries).expect("valid").bound));
                let top = omegas[k - 1];
                if top > 0.0 {
                    let q = q_of_set(1, top).expect("omega > 0");
                    let m = (0..=k).map(|i| freq.powi(i as i32)).fold(0.0, f64::max);
                    let g = general_bound(q, l, m, k).expect("valid");
                    if !g.is_finite() {
                        return Check::failed(format!("{tag}: automatic-degree bound infinite"));
                    }
                    bounds.push(("automatic degree", g.bound));
                }
                for (name, b) in bounds {
                    emitted += 1;
                    if b < truth - 1e-9 {
                        return Check::failed(format!("{tag}: {name} bound {b} < max {truth}"));
                    }
                }
            }
        }
    }
    Check::new(true, format!("{emitted} bounds all at least the grid maximum"))
}

fn degree_selection() -> Check {
    // L = a/64 and M are exact, so L j! <= M is decided in integers
    let a_values = [0u128, 1, 2, 4, 8, 16, 32, 64, 96, 192];
    let m_values = [1u128, 2, 3, 6, 24];
    let k_values = [1usize, 2, 4, 6];
    let fact = |j: usize| (1..=j as u128).product::<u128>();
    let mut cases = 0;
    for &a in &a_values {
        for &m in &m_values {
            for &k in &k_values {
                let le = |j: usize| a * fact(j) <= 64 * m;
                let ge = |j: usize| a * fact(j) >= 64 * m;
                let want = if a > 64 * m {
                    0
                } else if le(k) {
                    k - 1
                } else {
                    (0..k).find(|&d| ge(d + 1) && le(d)).expect("bands cover")
                };
                let l = a as f64 / 64.0;
                let got = match select_d0(l, m as f64, k) {
                    Ok(d) => d,
                    Err(e) => return Check::failed(e.to_string()),
                };
                if got != want {
                    return Check::failed(format!("L = {l}, M = {m}, k = {k}: d0 = {got}, want {want}"));
                }
                let g = general_bound(2.0, l, m as f64, k).expect("valid");
                let expect = if a > 64 * m {
                    l + 2.0 * m as f64
                } else {
                    2.0 * 2f64.powi(want as i32) * l + m as f64 / factorial(want + 1)
                };
                if g.bound != expect {
                    return Check::failed(format!("L = {l}, M = {m}, k = {k}: bound {}, want {expect}", g.bound));
                }
                cases += 1;
            }
        }
    }
    let w1 = general_bound(2.0, 3.0, 1.0, 5).map(|r| r.bound);
    let w2 = general_bound(2.0, 1.0, 12.0, 3).map(|r| r.bound);
    if w1 != Ok(5.0) || w2 != Ok(10.0) {
        return Check::failed(format!("worked values gave {w1:?} and {w2:?}"));
    }
    Check::new(true, format!("{cases} grid cases plus the worked values 5 and 10"))
}

fn whitney(mut rng: ChaCha8Rng) -> Check {
    let mut cases = Vec::new();
    for _ in 0..30 {
        let d = rng.random_range(1..=5usize);
        let zs = random_points(&mut rng, d + 1);
        let x = loop {
            let x: f64 = rng.random_range(-1.0..=1.0);
            if zs.iter().all(|z| (x - z).abs() > 1e-3) {
                break x;
            }
        };
        cases.push((zs, d, x));
    }
    let results: Vec<Result<(f64, f64), String>> = cases
        .par_iter()
        .map(|(zs, d, x)| {
            let c = 1.0 / zs.iter().map(|z| x - z).product::<f64>();
            let ext = Polynomial::from_roots(zs, c);
            let norm = poly_derivative_norm(&ext, d + 1).map_err(|e| e.to_string())?;
            let r = remez_constant_exact(&scalars(zs), *d, 2001).map_err(|e| e.to_string())?;
            Ok((norm, whitney_lower(&r, *d)))
        })
        .collect();
    for (i, r) in results.into_iter().enumerate() {
        let (norm, lower) = match r {
            Ok(v) => v,
            Err(e) => return Check::failed(e),
        };
        let d = cases[i].1;
        if norm < lower - 1e-9 {
            return Check::failed(format!("case {i}: M_{} = {norm} < {lower}", d + 1));
        }
    }
    Check::new(true, "30 random sets")
}

/// Points of the spiral `r = theta/Theta`, `0 <= theta <= Theta`, at arc
/// length spacing about `h`.
fn spiral(length: f64, h: f64) -> Vec<Point> {
    let arc = |big: f64| 0.5 * ((1.0 + big * big).sqrt() + big.asinh() / big);
    let (mut lo, mut hi) = (1.0, 1000.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if arc(mid) < length {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let big = 0.5 * (lo + hi);
    let a = 1.0 / big;
    let mut out = Vec::new();
    let mut t = 0.0;
    while t <= big {
        let r = a * t;
        out.push(Point::new(vec![r * t.cos(), r * t.sin()]).expect("inside the disk"));
        t += h / (r * r + a * a).sqrt();
    }
    out
}

fn curve() -> Check {
    let plug = curve_omega_lower(48.0, 1.0 / 48.0, 1).map(|w| w.lo);
    if plug != Ok(0.25) {
        return Check::failed(format!("plug-in gave {plug:?}, want 0.25"));
    }
    let pts = spiral(30.0, 0.005);
    let sigma: f64 = pts
        .windows(2)
        .map(|w| {
            let (p, q) = (w[0].coords(), w[1].coords());
            (p[0] - q[0]).hypot(p[1] - q[1])
        })
        .sum();
    // eps0: the largest scale below which packings look like a curve of length sigma
    let mut eps0 = 0.0;
    let mut delta = 0.01f64;
    while delta <= 1.0 / sigma {
        let (packing, _) = covering_number_box(&pts, delta).expect("planar");
        if (packing as f64) < sigma / (2.0 * delta) {
            break;
        }
        eps0 = delta;
        delta *= 10f64.powf(1.0 / 64.0);
    }
    if eps0 == 0.0 {
        return Check::failed("no scale satisfies the packing condition");
    }
    let eps0 = eps0.min(1.0 / sigma);
    let formula = match curve_omega_lower(sigma, eps0, 1) {
        Ok(w) => w.lo,
        Err(e) => return Check::failed(e.to_string()),
    };
    let w = match omega_box(&pts, &VitushkinParams::standard(2, 1).expect("n = 2")) {
        Ok(w) => w,
        Err(e) => return Check::failed(e.to_string()),
    };
    Check::new(
        w.lo >= 0.95 * formula,
        format!(
            "plug-in 0.25; spiral sigma = {sigma:.3}, eps0 = {eps0:.4}, packing omega >= {:.4} vs formula {formula:.4}",
            w.lo
        ),
    )
}

fn geometric_scale() -> Check {
    let mut lines = Vec::new();
    for q in [0.3f64, 0.5, 0.7] {
        let z = SetDescriptor::geometric(q, 128).expect("valid");
        let xs = z.sorted_coords_1d().expect("finite");
        let prof = covering_profile_1d(&xs).expect("non-empty");
        let omegas: Vec<f64> = (1..=16).map(|d| omega_from_profile(&prof, d).lo).collect();
        let (mut lo, mut hi) = (f64::INFINITY, 0f64);
        for d in 1..=15usize {
            let scale = q.powi(d as i32) / (1.0 / q).ln();
            let ratio = omegas[d - 1] / scale;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
            if !(1.0 / 8.0..=8.0).contains(&ratio) {
                return Check::failed(format!("q = {q}, d = {d}: ratio {ratio} outside [1/8, 8]"));
            }
        }
        for d in 8..=15usize {
            let step = omegas[d] / omegas[d - 1];
            if (step - q).abs() > 0.1 * q {
                return Check::failed(format!("q = {q}, d = {d}: omega_{}/omega_{d} = {step}", d + 1));
            }
        }
        lines.push(format!("q = {q}: ratios in [{lo:.3}, {hi:.3}]"));
    }
    Check::new(true, lines.join("; "))
}
