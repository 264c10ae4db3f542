//! Dense polynomials in the monomial basis.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `C(n + d, d)`, the number of monomials of total degree `<= d`.
pub fn monomial_count(n: usize, d: usize) -> usize {
    let mut c: u128 = 1;
    for i in 1..=d as u128 {
        c = c * (n as u128 + i) / i;
    }
    c as usize
}

/// Exponent vectors of total degree `<= d`, graded, and within one degree
/// ordered with the first coordinate's exponent descending.
pub fn multi_indices(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn fill(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=rest).rev() {
            cur.push(a);
            fill(rest - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(monomial_count(n, d));
    for t in 0..=d {
        fill(t, n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    n: usize,
    d: usize,
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Coefficients in [`multi_indices`] order.
    pub fn new(n: usize, d: usize, coeffs: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("n", "dimension must be at least 1"));
        }
        let want = monomial_count(n, d);
        if coeffs.len() != want {
            return Err(Error::input(
                "coeffs",
                format!("expected {want} coefficients for n = {n}, d = {d}, got {}", coeffs.len()),
            ));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::input("coeffs", format!("coefficient {c} is not finite")));
        }
        Ok(Polynomial { n, d, coeffs })
    }

    /// `c[0] + c[1] x + ... + c[d] x^d`.
    pub fn univariate(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::input("coeffs", "need at least one coefficient"));
        }
        let d = coeffs.len() - 1;
        Polynomial::new(1, d, coeffs)
    }

    /// `c * prod (t - z)`.
    pub fn from_roots(roots: &[f64], c: f64) -> Self {
        let mut p = vec![c];
        for &z in roots {
            let mut next = vec![0.0; p.len() + 1];
            for (i, &a) in p.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= z * a;
            }
            p = next;
        }
        Polynomial {
            n: 1,
            d: roots.len(),
            coeffs: p,
        }
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Polynomial {
            n,
            d,
            coeffs: vec![0.0; monomial_count(n, d)],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    fn require_univariate(&self) -> Result<()> {
        if self.n == 1 {
            Ok(())
        } else {
            Err(Error::input("P", format!("expected a univariate polynomial, got n = {}", self.n)))
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n, "point dimension");
        if self.n == 1 {
            return horner(&self.coeffs, x[0]);
        }
        let pow: Vec<Vec<f64>> = x
            .iter()
            .map(|&t| {
                let mut v = Vec::with_capacity(self.d + 1);
                let mut a = 1.0;
                for _ in 0..=self.d {
                    v.push(a);
                    a *= t;
                }
                v
            })
            .collect();
        multi_indices(self.n, self.d)
            .iter()
            .zip(&self.coeffs)
            .map(|(alpha, c)| c * alpha.iter().enumerate().map(|(i, &a)| pow[i][a]).product::<f64>())
            .sum()
    }

    pub fn eval1(&self, x: f64) -> f64 {
        self.eval(&[x])
    }

    /// Derivative of a univariate polynomial.
    pub fn derivative(&self) -> Result<Polynomial> {
        self.require_univariate()?;
        if self.d == 0 {
            return Ok(Polynomial::zero(1, 0));
        }
        let c = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, a)| a * (i + 1) as f64)
            .collect();
        Ok(Polynomial {
            n: 1,
            d: self.d - 1,
            coeffs: c,
        })
    }

    pub fn nth_derivative(&self, l: usize) -> Result<Polynomial> {
        let mut p = self.clone();
        for _ in 0..l {
            p = p.derivative()?;
        }
        Ok(p)
    }

    /// `self + a` for a univariate polynomial.
    pub(crate) fn shifted(&self, a: f64) -> Polynomial {
        let mut p = self.clone();
        p.coeffs[0] += a;
        p
    }

    /// Degree after dropping zero leading coefficients (univariate).
    pub fn effective_degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        crate::numfmt::to_json(self)
    }
}

pub(crate) fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc.mul_add(x, a))
}

/// Written as `{"n", "d", "coeffs": [[i_1, ..., i_n, value], ...]}`.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<serde_json::Value>> = multi_indices(self.n, self.d)
            .into_iter()
            .zip(&self.coeffs)
            .map(|(alpha, &c)| {
                let mut row: Vec<serde_json::Value> = alpha.into_iter().map(Into::into).collect();
                row.push(c.into());
                row
            })
            .collect();
        let mut st = s.serialize_struct("Polynomial", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("coeffs", &entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: usize,
            d: usize,
            coeffs: Vec<Vec<f64>>,
        }
        let raw = Raw::deserialize(de)?;
        let index = multi_indices(raw.n, raw.d);
        let mut p = Polynomial::zero(raw.n, raw.d);
        for row in raw.coeffs {
            if row.len() != raw.n + 1 {
                return Err(de::Error::custom(format!(
                    "coefficient entry needs {} exponents and a value",
                    raw.n
                )));
            }
            let alpha: Vec<usize> = row[..raw.n]
                .iter()
                .map(|&a| {
                    if a >= 0.0 && a.fract() == 0.0 {
                        Ok(a as usize)
                    } else {
                        Err(de::Error::custom(format!("bad exponent {a}")))
                    }
                })
                .collect::<std::result::Result<_, _>>()?;
            let pos = index
                .iter()
                .position(|b| *b == alpha)
                .ok_or_else(|| de::Error::custom(format!("exponent {alpha:?} exceeds degree {}", raw.d)))?;
            p.coeffs[pos] = row[raw.n];
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        assert_eq!(monomial_count(1, 4), 5);
        assert_eq!(monomial_count(2, 3), 10);
        assert_eq!(monomial_count(3, 2), 10);
        let idx = multi_indices(2, 2);
        assert_eq!(idx, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        for n in 1..4 {
            for d in 0..6 {
                assert_eq!(multi_indices(n, d).len(), monomial_count(n, d));
            }
        }
    }

    #[test]
    fn evaluation() {
        let p = Polynomial::univariate(vec![-1.0, 0.0, 2.0]).unwrap();
        assert_eq!(p.eval1(0.5), -0.5);
        // 1 + x y - y^2
        let q = Polynomial::new(2, 2, vec![1.0, 0.0, 0.0, 0.0, 1.0, -1.0]).unwrap();
        assert_eq!(q.eval(&[2.0, 3.0]), 1.0 + 6.0 - 9.0);
        let r = Polynomial::from_roots(&[-1.0, 0.0, 1.0], 2.0);
        assert_eq!(r.coeffs(), &[0.0, -2.0, 0.0, 2.0]);
    }

    #[test]
    fn derivatives() {
        let p = Polynomial::univariate(vec![0.0, -1.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.derivative().unwrap().coeffs(), &[-1.0, 0.0, 3.0]);
        assert_eq!(p.nth_derivative(3).unwrap().coeffs(), &[6.0]);
        assert_eq!(p.nth_derivative(5).unwrap().coeffs(), &[0.0]);
    }

    #[test]
    fn json_round_trip() {
        let q = Polynomial::new(2, 1, vec![1.0, -2.0, 0.5]).unwrap();
        let s = q.to_json();
        assert!(s.starts_with("{\"n\":2,\"d\":1,\"coeffs\":[[0,0,1.0000000000000000]"), "{s}");
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Polynomial>(r#"{"n":1,"d":1,"coeffs":[[2,1.0]]}"#).is_err());
    }
}
