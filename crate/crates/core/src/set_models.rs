//! Sampling sets in the closed unit ball B^n.
//!
//! A [`SetDescriptor`] is symbolic: grids and the two infinite sequences are
//! only turned into coordinates when a first-principles computation needs
//! them, and curves or measurable bodies are never materialized at all.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt;

/// Slack allowed on the unit-ball constraint `|x| <= 1`.
pub const BALL_SLACK: f64 = 1e-12;

/// Default truncation length for the infinite sequences `Z_r` and `Z(q)`.
pub const DEFAULT_TRUNCATION: usize = 64;

/// A point of the closed unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::descriptor("coords", "a point needs at least one coordinate"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::descriptor("coords", "coordinates must be finite"));
        }
        let p = Point(coords);
        if p.norm() > 1.0 + BALL_SLACK {
            return Err(Error::descriptor(
                "coords",
                format!("point {:?} lies outside the unit ball", p.0),
            ));
        }
        Ok(p)
    }

    pub fn scalar(x: f64) -> Result<Self> {
        Point::new(vec![x])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Lebesgue measure of the unit ball B^n.
pub fn unit_ball_volume(n: usize) -> f64 {
    use std::f64::consts::PI;
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SetDescriptor {
    FinitePoints(Vec<Point>),
    /// `s` equally spaced points of [-1, 1], both endpoints included.
    RegularGrid { s: usize },
    /// `{1, 1/2^r, 1/3^r, ...}` truncated to `n_terms` points.
    PowerSequence { r: f64, n_terms: usize },
    /// `{1, q, q^2, ...}` truncated to `n_terms` points.
    GeometricSequence { q: f64, n_terms: usize },
    /// Connected smooth planar curve summarized by its length and
    /// injectivity radius.
    Curve { sigma: f64, eps0: f64 },
    MeasurableBody { n: usize, measure: f64 },
}

/// `s` equally spaced points of [-1, 1]: `x_i = -1 + 2(i-1)/(s-1)`.
pub fn grid_points(s: usize) -> Result<Vec<Point>> {
    if s < 2 {
        return Err(Error::descriptor("s", format!("grid needs s >= 2, got {s}")));
    }
    let step = (s - 1) as f64;
    (0..s)
        .map(|i| Point::scalar(-1.0 + 2.0 * i as f64 / step))
        .collect()
}

/// `1/k^r` for `k = 1..=n_terms`, in descending order.
pub fn power_sequence_points(r: f64, n_terms: usize) -> Result<Vec<Point>> {
    check_power(r, n_terms)?;
    (1..=n_terms)
        .map(|k| Point::scalar((k as f64).powf(-r)))
        .collect()
}

/// `q^j` for `j = 0..n_terms`.
pub fn geometric_points(q: f64, n_terms: usize) -> Result<Vec<Point>> {
    check_geometric(q, n_terms)?;
    (0..n_terms)
        .map(|j| Point::scalar(q.powi(j as i32)))
        .collect()
}

fn check_power(r: f64, n_terms: usize) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::descriptor("r", format!("exponent must be positive, got {r}")));
    }
    if n_terms == 0 {
        return Err(Error::descriptor("N", "truncation count must be at least 1"));
    }
    Ok(())
}

fn check_geometric(q: f64, n_terms: usize) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::descriptor("q", format!("ratio must lie in (0, 1), got {q}")));
    }
    if n_terms == 0 {
        return Err(Error::descriptor("N", "truncation count must be at least 1"));
    }
    Ok(())
}

impl SetDescriptor {
    pub fn points(points: Vec<Point>) -> Result<Self> {
        let d = SetDescriptor::FinitePoints(points);
        d.validate()?;
        Ok(d)
    }

    pub fn grid(s: usize) -> Result<Self> {
        let d = SetDescriptor::RegularGrid { s };
        d.validate()?;
        Ok(d)
    }

    pub fn power(r: f64, n_terms: usize) -> Result<Self> {
        let d = SetDescriptor::PowerSequence { r, n_terms };
        d.validate()?;
        Ok(d)
    }

    pub fn geometric(q: f64, n_terms: usize) -> Result<Self> {
        let d = SetDescriptor::GeometricSequence { q, n_terms };
        d.validate()?;
        Ok(d)
    }

    pub fn curve(sigma: f64, eps0: f64) -> Result<Self> {
        let d = SetDescriptor::Curve { sigma, eps0 };
        d.validate()?;
        Ok(d)
    }

    pub fn body(n: usize, measure: f64) -> Result<Self> {
        let d = SetDescriptor::MeasurableBody { n, measure };
        d.validate()?;
        Ok(d)
    }

    /// Checks every structural invariant of the variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            SetDescriptor::FinitePoints(pts) => {
                let first = pts
                    .first()
                    .ok_or_else(|| Error::descriptor("coords", "point list is empty"))?;
                if pts.iter().any(|p| p.dim() != first.dim()) {
                    return Err(Error::descriptor("coords", "points have mixed dimensions"));
                }
                Ok(())
            }
            SetDescriptor::RegularGrid { s } => {
                if *s < 2 {
                    Err(Error::descriptor("s", format!("grid needs s >= 2, got {s}")))
                } else {
                    Ok(())
                }
            }
            SetDescriptor::PowerSequence { r, n_terms } => check_power(*r, *n_terms),
            SetDescriptor::GeometricSequence { q, n_terms } => check_geometric(*q, *n_terms),
            SetDescriptor::Curve { sigma, eps0 } => check_curve(*sigma, *eps0),
            SetDescriptor::MeasurableBody { n, measure } => {
                if *n == 0 {
                    return Err(Error::descriptor("n", "dimension must be at least 1"));
                }
                let vol = unit_ball_volume(*n);
                if !(measure.is_finite() && *measure >= 0.0) {
                    return Err(Error::descriptor("measure", "measure must be non-negative"));
                }
                if *measure > vol * (1.0 + BALL_SLACK) {
                    return Err(Error::descriptor(
                        "measure",
                        format!("measure {measure} exceeds the unit-ball volume {vol}"),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Ambient dimension of the set.
    pub fn dimension(&self) -> usize {
        match self {
            SetDescriptor::FinitePoints(pts) => pts.first().map_or(1, Point::dim),
            SetDescriptor::RegularGrid { .. }
            | SetDescriptor::PowerSequence { .. }
            | SetDescriptor::GeometricSequence { .. } => 1,
            SetDescriptor::Curve { .. } => 2,
            SetDescriptor::MeasurableBody { n, .. } => *n,
        }
    }

    /// True when [`SetDescriptor::materialize`] can produce finite coordinates.
    pub fn is_finite(&self) -> bool {
        !matches!(
            self,
            SetDescriptor::Curve { .. } | SetDescriptor::MeasurableBody { .. }
        )
    }

    /// Concrete points of a finite (or truncated) set.
    pub fn materialize(&self) -> Result<Vec<Point>> {
        self.validate()?;
        match self {
            SetDescriptor::FinitePoints(pts) => Ok(pts.clone()),
            SetDescriptor::RegularGrid { s } => grid_points(*s),
            SetDescriptor::PowerSequence { r, n_terms } => power_sequence_points(*r, *n_terms),
            SetDescriptor::GeometricSequence { q, n_terms } => geometric_points(*q, *n_terms),
            SetDescriptor::Curve { .. } => Err(Error::Unsupported(
                "materializing a curve from its (sigma, eps0) summary".into(),
            )),
            SetDescriptor::MeasurableBody { .. } => Err(Error::Unsupported(
                "materializing a measurable body".into(),
            )),
        }
    }

    /// Sorted, de-duplicated coordinates of a one-dimensional finite set.
    pub fn sorted_coords_1d(&self) -> Result<Vec<f64>> {
        if self.dimension() != 1 {
            return Err(Error::UnsupportedDimension(self.dimension()));
        }
        let mut xs: Vec<f64> = self.materialize()?.iter().map(|p| p.coords()[0]).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        Ok(xs)
    }

    pub fn to_json(&self) -> String {
        numfmt::to_json(&RawDescriptor::from(self))
    }
}

fn check_curve(sigma: f64, eps0: f64) -> Result<()> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::descriptor("sigma", format!("length must be positive, got {sigma}")));
    }
    if !(eps0.is_finite() && eps0 > 0.0) {
        return Err(Error::descriptor("eps0", format!("injectivity radius must be positive, got {eps0}")));
    }
    if eps0 > (1.0 / sigma) * (1.0 + BALL_SLACK) {
        return Err(Error::descriptor(
            "eps0",
            format!("injectivity radius {eps0} exceeds 1/sigma = {}", 1.0 / sigma),
        ));
    }
    Ok(())
}

pub(crate) fn validate_curve(sigma: f64, eps0: f64) -> Result<()> {
    check_curve(sigma, eps0)
}

fn default_truncation() -> i64 {
    DEFAULT_TRUNCATION as i64
}

/// Wire form of a descriptor; integer fields are signed so that negative
/// input reaches validation instead of failing inside serde.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum RawDescriptor {
    Points {
        coords: Vec<Vec<f64>>,
    },
    Grid {
        s: i64,
    },
    Power {
        r: f64,
        #[serde(rename = "N", default = "default_truncation")]
        n: i64,
    },
    Geometric {
        q: f64,
        #[serde(rename = "N", default = "default_truncation")]
        n: i64,
    },
    Curve {
        sigma: f64,
        eps0: f64,
    },
    Body {
        n: i64,
        measure: f64,
    },
}

impl From<&SetDescriptor> for RawDescriptor {
    fn from(d: &SetDescriptor) -> Self {
        match d {
            SetDescriptor::FinitePoints(pts) => RawDescriptor::Points {
                coords: pts.iter().map(|p| p.coords().to_vec()).collect(),
            },
            SetDescriptor::RegularGrid { s } => RawDescriptor::Grid { s: *s as i64 },
            SetDescriptor::PowerSequence { r, n_terms } => RawDescriptor::Power {
                r: *r,
                n: *n_terms as i64,
            },
            SetDescriptor::GeometricSequence { q, n_terms } => RawDescriptor::Geometric {
                q: *q,
                n: *n_terms as i64,
            },
            SetDescriptor::Curve { sigma, eps0 } => RawDescriptor::Curve {
                sigma: *sigma,
                eps0: *eps0,
            },
            SetDescriptor::MeasurableBody { n, measure } => RawDescriptor::Body {
                n: *n as i64,
                measure: *measure,
            },
        }
    }
}

fn non_negative(field: &str, v: i64) -> Result<usize> {
    usize::try_from(v).map_err(|_| Error::Parse {
        field: field.to_string(),
        message: format!("expected a non-negative integer, got {v}"),
    })
}

/// Names the field a serde error refers to, when the message quotes one.
fn offending_field(message: &str) -> String {
    message
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "type".to_string())
}

fn as_parse_error(e: Error) -> Error {
    match e {
        Error::InvalidDescriptor { field, message } => Error::Parse { field, message },
        other => other,
    }
}

/// Parses and validates a JSON descriptor such as `{"type":"grid","s":5}`.
pub fn parse_descriptor(text: &str) -> Result<SetDescriptor> {
    let raw: RawDescriptor = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        Error::Parse {
            field: offending_field(&message),
            message,
        }
    })?;
    let desc = match raw {
        RawDescriptor::Points { coords } => {
            let pts = coords
                .into_iter()
                .map(Point::new)
                .collect::<Result<Vec<_>>>()
                .map_err(as_parse_error)?;
            SetDescriptor::FinitePoints(pts)
        }
        RawDescriptor::Grid { s } => SetDescriptor::RegularGrid {
            s: non_negative("s", s)?,
        },
        RawDescriptor::Power { r, n } => SetDescriptor::PowerSequence {
            r,
            n_terms: non_negative("N", n)?,
        },
        RawDescriptor::Geometric { q, n } => SetDescriptor::GeometricSequence {
            q,
            n_terms: non_negative("N", n)?,
        },
        RawDescriptor::Curve { sigma, eps0 } => SetDescriptor::Curve { sigma, eps0 },
        RawDescriptor::Body { n, measure } => SetDescriptor::MeasurableBody {
            n: non_negative("n", n)?,
            measure,
        },
    };
    desc.validate().map_err(as_parse_error)?;
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(points: &[Point]) -> Vec<f64> {
        points.iter().map(|p| p.coords()[0]).collect()
    }

    #[test]
    fn grid_examples() {
        assert_eq!(xs(&grid_points(2).unwrap()), vec![-1.0, 1.0]);
        assert_eq!(xs(&grid_points(3).unwrap()), vec![-1.0, 0.0, 1.0]);
        assert_eq!(xs(&grid_points(5).unwrap()), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(matches!(grid_points(1), Err(Error::InvalidDescriptor { .. })));
    }

    #[test]
    fn grid_gap_is_uniform() {
        for s in 2..=100 {
            let x = xs(&grid_points(s).unwrap());
            let h = 2.0 / (s - 1) as f64;
            let min_gap = x.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
            assert!((min_gap - h).abs() < 1e-14, "s={s}");
            assert_eq!(x[0], -1.0);
            assert_eq!(x[s - 1], 1.0);
        }
    }

    #[test]
    fn sequences() {
        assert_eq!(xs(&power_sequence_points(1.0, 3).unwrap()), vec![1.0, 0.5, 1.0 / 3.0]);
        assert_eq!(xs(&power_sequence_points(2.0, 2).unwrap()), vec![1.0, 0.25]);
        assert_eq!(xs(&power_sequence_points(0.5, 1).unwrap()), vec![1.0]);
        assert_eq!(xs(&geometric_points(0.5, 3).unwrap()), vec![1.0, 0.5, 0.25]);
        assert_eq!(xs(&geometric_points(0.1, 2).unwrap()), vec![1.0, 0.1]);
        assert_eq!(xs(&geometric_points(0.9, 1).unwrap()), vec![1.0]);
        assert!(geometric_points(1.0, 3).is_err());
        assert!(geometric_points(0.0, 3).is_err());
        assert!(power_sequence_points(-1.0, 3).is_err());
    }

    #[test]
    fn point_must_be_in_ball() {
        assert!(Point::new(vec![0.6, 0.8]).is_ok());
        assert!(Point::new(vec![0.8, 0.8]).is_err());
        assert!(Point::new(vec![]).is_err());
    }

    #[test]
    fn ball_volumes() {
        use std::f64::consts::PI;
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_descriptor(r#"{"type":"grid","s":5}"#).unwrap(),
            SetDescriptor::RegularGrid { s: 5 }
        );
        assert_eq!(
            parse_descriptor(r#"{"type":"geometric","q":0.5,"N":8}"#).unwrap(),
            SetDescriptor::GeometricSequence { q: 0.5, n_terms: 8 }
        );
        assert_eq!(
            parse_descriptor(r#"{"type":"power","r":2}"#).unwrap(),
            SetDescriptor::PowerSequence { r: 2.0, n_terms: DEFAULT_TRUNCATION }
        );
        let err = parse_descriptor(r#"{"type":"grid","s":1}"#).unwrap_err();
        assert_eq!(err.field(), Some("s"));
    }

    #[test]
    fn parse_errors_name_fields() {
        let cases = [
            (r#"{"type":"grid"}"#, "s"),
            (r#"{"type":"geometric","q":1.5,"N":4}"#, "q"),
            (r#"{"type":"curve","sigma":10,"eps0":0.5}"#, "eps0"),
            (r#"{"type":"grid","s":-3}"#, "s"),
            (r#"{"type":"points","coords":[[2.0]]}"#, "coords"),
            (r#"{"type":"points","coords":[]}"#, "coords"),
            (r#"{"type":"body","n":1,"measure":3}"#, "measure"),
            (r#"{"type":"grid","s":4,"extra":1}"#, "extra"),
        ];
        for (text, field) in cases {
            let err = parse_descriptor(text).unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "{text}: {err}");
            assert_eq!(err.field(), Some(field), "{text}: {err}");
        }
    }

    #[test]
    fn serialize_uses_wire_names() {
        let d = SetDescriptor::geometric(0.5, 8).unwrap();
        let json = d.to_json();
        assert!(json.contains(r#""type":"geometric""#), "{json}");
        assert!(json.contains(r#""N":8"#), "{json}");
        assert_eq!(parse_descriptor(&json).unwrap(), d);
    }

    #[test]
    fn curve_radius_limit() {
        assert!(SetDescriptor::curve(48.0, 1.0 / 48.0).is_ok());
        assert!(SetDescriptor::curve(48.0, 0.05).is_err());
    }
}
