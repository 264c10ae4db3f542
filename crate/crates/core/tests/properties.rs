use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use remezkit::entropy::{covering_number_box, covering_number_1d, covering_profile_1d, omega_box, VitushkinParams};
use remezkit::oracle::{
    covering_number_intervals, interpolation_rank, lp_max_at_point, lp_max_at_point_with_level, monomial_count,
    remez_constant_exact, sublevel_intervals, LpMaximizer, Polynomial,
};
use remezkit::remez_bounds::{exponential_factor, remez_factor_nd};
use remezkit::set_models::{Point, SetDescriptor};
use remezkit::smooth_bounds::factorial;
use remezkit::{general_bound, omega_d, remez_constant_upper, select_d0, vitushkin_md, whitney_lower};

fn pts(xs: &[f64]) -> Vec<Point> {
    xs.iter().map(|&x| Point::scalar(x).unwrap()).collect()
}

fn coords_1d() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..=1.0, 1..40)
}

fn planar(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0.0f64..1.0, 0.0f64..std::f64::consts::TAU), 1..=max).prop_map(|v| {
        v.into_iter()
            .map(|(r, t)| Point::new(vec![r * t.cos(), r * t.sin()]).unwrap())
            .collect()
    })
}

/// Exact minimal number of axis-parallel squares of side `eps` covering
/// the points, by breadth-first search over covered subsets. Some optimal
/// cover uses only squares whose left edge and bottom edge pass through
/// points of the set.
fn exact_box_cover(points: &[Point], eps: f64) -> usize {
    let n = points.len();
    let full = (1u32 << n) - 1;
    let mut masks = Vec::new();
    for a in points {
        for b in points {
            let (x0, y0) = (a.coords()[0], b.coords()[1]);
            let mut m = 0u32;
            for (i, p) in points.iter().enumerate() {
                let (x, y) = (p.coords()[0], p.coords()[1]);
                if x >= x0 && x <= x0 + eps && y >= y0 && y <= y0 + eps {
                    m |= 1 << i;
                }
            }
            masks.push(m);
        }
    }
    let mut dist = vec![usize::MAX; full as usize + 1];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(s) = queue.pop_front() {
        if s == full {
            return dist[s as usize];
        }
        for &m in &masks {
            let t = s | m;
            if dist[t as usize] == usize::MAX {
                dist[t as usize] = dist[s as usize] + 1;
                queue.push_back(t);
            }
        }
    }
    unreachable!()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_matches_direct_counts(mut xs in coords_1d(), e in 1e-4f64..2.5) {
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let prof = covering_profile_1d(&xs).unwrap();
        prop_assert_eq!(prof.count_at(e), covering_number_1d(&xs, e).unwrap());
        for w in prof.breakpoints.windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1);
        }
    }

    #[test]
    fn omega_non_increasing_in_d(xs in coords_1d()) {
        let z = SetDescriptor::points(pts(&xs)).unwrap();
        let mut prev = f64::INFINITY;
        for d in 1..=10 {
            let w = omega_d(&z, d, 1).unwrap();
            prop_assert!(w.exact);
            prop_assert!(w.lo <= prev + 1e-12);
            prev = w.lo;
        }
    }

    #[test]
    fn omega_monotone_in_the_set(xs in coords_1d(), extra in -1.0f64..=1.0, d in 1usize..5) {
        let z = SetDescriptor::points(pts(&xs)).unwrap();
        let mut ys = xs.clone();
        ys.push(extra);
        let z2 = SetDescriptor::points(pts(&ys)).unwrap();
        prop_assert!(omega_d(&z2, d, 1).unwrap().lo >= omega_d(&z, d, 1).unwrap().lo - 1e-12);
    }

    #[test]
    fn box_counts_bracket_exact_cover(z in planar(10), e in 0.05f64..1.5) {
        let (lo, hi) = covering_number_box(&z, e).unwrap();
        let exact = exact_box_cover(&z, e);
        prop_assert!(lo <= exact && exact <= hi, "{} <= {} <= {}", lo, exact, hi);
    }

    #[test]
    fn omega_box_is_an_interval(z in planar(40), d in 1usize..4) {
        let w = omega_box(&z, &VitushkinParams::standard(2, d).unwrap()).unwrap();
        prop_assert!(0.0 <= w.lo && w.lo <= w.hi);
    }

    #[test]
    fn upper_bound_shape(omega in 1e-6f64..2.0, d in 0usize..12) {
        let r = remez_constant_upper(1, d, omega).value;
        prop_assert!(r >= 1.0);
        prop_assert!(remez_constant_upper(1, d + 1, omega).value >= r * (1.0 - 1e-12));
        prop_assert!(remez_constant_upper(1, d, omega * 0.5).value >= r * (1.0 - 1e-12));
    }

    #[test]
    fn chebyshev_below_exponential(lambda in 1e-3f64..=1.0, n in 1usize..4, d in 1usize..12) {
        let c = remez_factor_nd(n, d, lambda).unwrap();
        prop_assert!(c <= exponential_factor(n, d, lambda) * (1.0 + 1e-12));
    }

    #[test]
    fn vitushkin_decreasing(e in 1e-3f64..10.0, d in 0usize..10) {
        for n in 1..=2 {
            let a = vitushkin_md(n, d, e).unwrap();
            let b = vitushkin_md(n, d, e * 1.5).unwrap();
            prop_assert!(b <= a);
        }
    }

    #[test]
    fn select_d0_matches_band_definition(l in 0.0f64..5.0, m in 0.01f64..5.0, k in 1usize..8) {
        let d0 = select_d0(l, m, k).unwrap();
        prop_assert!(d0 < k);
        if l > m {
            prop_assert_eq!(d0, 0);
        } else if l <= m / factorial(k) {
            prop_assert_eq!(d0, k - 1);
        } else {
            prop_assert!(m / factorial(d0 + 1) <= l * (1.0 + 1e-15) && l <= m / factorial(d0) * (1.0 + 1e-15));
        }
    }

    #[test]
    fn general_bound_grows_with_l(q in 1.0f64..50.0, l in 0.0f64..3.0, m in 0.1f64..3.0, k in 1usize..8) {
        let a = general_bound(q, l, m, k).unwrap();
        let b = general_bound(q, l * 1.5 + 1e-3, m, k).unwrap();
        prop_assert!(a.bound >= l);
        prop_assert!(b.bound + 1e-12 >= a.bound || b.chosen_degree != a.chosen_degree);
    }
}

#[test]
fn lp_is_deterministic_and_scales() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let d = rng.random_range(1..=4);
        let z = pts(&(0..d + 3).map(|_| rng.random_range(-1.0..=1.0)).collect::<Vec<_>>());
        let x = Point::scalar(rng.random_range(-1.0..=1.0)).unwrap();
        let a = lp_max_at_point(&z, d, &x).unwrap();
        let b = lp_max_at_point(&z, d, &x).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        for c in [0.5, 2.0] {
            let s = lp_max_at_point_with_level(&z, d, &x, c).unwrap();
            assert!((s - c * a).abs() <= 1e-12 * a.max(1.0), "{s} vs {}", c * a);
        }
    }
}

#[test]
fn adding_points_never_raises_the_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..15 {
        let d = rng.random_range(1..=4);
        let mut xs: Vec<f64> = (0..d + 2).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let before = remez_constant_exact(&pts(&xs), d, 301).unwrap().value;
        xs.push(rng.random_range(-1.0..=1.0));
        let after = remez_constant_exact(&pts(&xs), d, 301).unwrap().value;
        assert!(after <= before * (1.0 + 1e-9), "{after} > {before}");
    }
}

#[test]
fn infinite_exactly_when_rank_deficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let d = rng.random_range(1..=4);
        let size = rng.random_range(1..=d + 2);
        // draw from a coarse lattice so repeated points occur
        let xs: Vec<f64> = (0..size).map(|_| rng.random_range(-4i32..=4) as f64 / 4.0).collect();
        let z = pts(&xs);
        let full = interpolation_rank(&z, d).unwrap() == monomial_count(1, d);
        let r = remez_constant_exact(&z, d, 41).unwrap();
        assert_eq!(r.is_finite(), full, "Z = {xs:?}, d = {d}");
    }
    let circle: Vec<Point> = (0..7)
        .map(|k| {
            let t = k as f64;
            Point::new(vec![t.cos(), t.sin()]).unwrap()
        })
        .collect();
    assert!(interpolation_rank(&circle, 2).unwrap() < monomial_count(2, 2));
    assert!(!remez_constant_exact(&circle, 2, 50).unwrap().is_finite());
    assert!(remez_constant_exact(&circle, 1, 50).unwrap().is_finite());
}

#[test]
fn raw_omega_chebyshev_form_is_not_an_upper_bound() {
    // P(x) = (x - 0.01)/0.01 is bounded by 1 on Z and reaches -101 at x = -1
    let z = pts(&[0.0, 0.01, 0.02]);
    let w = omega_d(&SetDescriptor::points(z.clone()).unwrap(), 1, 1).unwrap();
    let exact = remez_constant_exact(&z, 1, 2001).unwrap().value;
    assert!((exact - 101.0).abs() < 1e-6);
    let raw = remezkit::chebyshev_t(1, (2.0 - w.lo) / w.lo);
    assert!(raw < exact);
    assert!(remez_constant_upper(1, 1, w.lo).value >= exact);
}

#[test]
fn vitushkin_on_sublevel_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let d = rng.random_range(1..=8);
        let c: Vec<f64> = (0..=d).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let p = Polynomial::univariate(c).unwrap();
        let rho = rng.random_range(0.01..1.0);
        let e = 10f64.powf(rng.random_range(-3.0..0.3));
        let v = sublevel_intervals(&p, rho).unwrap();
        let m = covering_number_intervals(&v, e).unwrap() as f64;
        assert!(m <= d as f64 + v.total_length() / e + 1e-9);
    }
}

#[test]
fn whitney_against_explicit_extension() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..20 {
        let d = rng.random_range(1..=4);
        let zs: Vec<f64> = (0..=d).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let x = rng.random_range(-1.0..=1.0);
        let c = 1.0 / zs.iter().map(|z| x - z).product::<f64>();
        let r = remez_constant_exact(&pts(&zs), d, 201).unwrap();
        let lower = whitney_lower(&r, d);
        assert!(factorial(d + 1) * c.abs() >= lower - 1e-9);
    }
}

#[test]
fn warm_start_matches_cold_start() {
    let z = pts(&[-0.9, -0.3, 0.2, 0.25, 0.8]);
    let mut warm = LpMaximizer::new(&z, 3).unwrap();
    for i in 0..50 {
        let x = -1.0 + 2.0 * i as f64 / 49.0;
        let a = warm.max_at(&[x]).unwrap();
        let b = LpMaximizer::new(&z, 3).unwrap().max_at(&[x]).unwrap();
        assert!((a - b).abs() <= 1e-9 * b.max(1.0));
    }
}
