//! Vectors, weighted p-norms and the tolerance rule shared by every check.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::CounterRng;

/// A point of ℝⁿ with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self(coords))
    }

    /// Builds a vector without the finiteness check. Callers guarantee the
    /// invariant or re-check through [`Vector::check`].
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty());
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim.max(1)])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Self(v)
    }

    pub fn check(&self) -> Result<()> {
        match self.0.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            Some((index, &value)) => Err(Error::NonFinite { index, value }),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), other.dim());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Self(self.0.iter().map(|a| a * factor).collect())
    }

    pub fn neg(&self) -> Vector {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(d)?;
        Vector::new(coords).map_err(serde::de::Error::custom)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

/// Exponent of a p-norm. `Infinity` is a marker, never a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

/// A (weighted) p-norm definition, `p ∈ [1, ∞]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpec {
    exponent: Exponent,
    weights: Option<Vec<f64>>,
}

impl NormSpec {
    pub fn lp(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidNorm(format!("p must be ≥ 1, got {p}")));
        }
        let exponent = if p.is_infinite() {
            Exponent::Infinity
        } else {
            Exponent::Finite(p)
        };
        Ok(Self {
            exponent,
            weights: None,
        })
    }

    pub fn l1() -> Self {
        Self::lp(1.0).expect("p = 1 is valid")
    }

    pub fn l2() -> Self {
        Self::lp(2.0).expect("p = 2 is valid")
    }

    pub fn linf() -> Self {
        Self {
            exponent: Exponent::Infinity,
            weights: None,
        }
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidNorm("weight list is empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidNorm(format!(
                "weights must be finite and > 0, got {w}"
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// `(Σ wᵢ|vᵢ|^p)^(1/p)` for finite p, `max wᵢ|vᵢ|` for p = ∞.
    pub fn norm(&self, v: &Vector) -> Result<f64> {
        if let Some(w) = &self.weights {
            if w.len() != v.dim() {
                return Err(Error::DimensionMismatch {
                    expected: w.len(),
                    actual: v.dim(),
                });
            }
        }
        v.check()?;
        Ok(self.norm_unchecked(v.coords()))
    }

    pub(crate) fn norm_unchecked(&self, v: &[f64]) -> f64 {
        let weight = |i: usize| self.weights.as_ref().map_or(1.0, |w| w[i]);
        match self.exponent {
            Exponent::Infinity => v
                .iter()
                .enumerate()
                .fold(0.0, |m, (i, c)| m.max(weight(i) * c.abs())),
            Exponent::Finite(1.0) => v.iter().enumerate().map(|(i, c)| weight(i) * c.abs()).sum(),
            Exponent::Finite(p) => {
                // Factor out the largest magnitude so |vᵢ|^p cannot overflow.
                let m = v.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                if m == 0.0 {
                    return 0.0;
                }
                let s: f64 = if p == 2.0 {
                    v.iter()
                        .enumerate()
                        .map(|(i, c)| {
                            let r = c.abs() / m;
                            weight(i) * r * r
                        })
                        .sum()
                } else {
                    v.iter()
                        .enumerate()
                        .map(|(i, c)| weight(i) * (c.abs() / m).powf(p))
                        .sum()
                };
                if p == 2.0 {
                    m * s.sqrt()
                } else {
                    m * s.powf(1.0 / p)
                }
            }
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Exponent::Infinity => write!(f, "linf")?,
            Exponent::Finite(1.0) => write!(f, "l1")?,
            Exponent::Finite(2.0) => write!(f, "l2")?,
            Exponent::Finite(p) => write!(f, "lp:{p}")?,
        }
        if let Some(w) = &self.weights {
            let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            write!(f, ":w={}", parts.join(","))?;
        }
        Ok(())
    }
}

/// Parses `l1`, `l2`, `linf`, `lp:<float>`, each optionally followed by
/// `:w=<w1,...,wn>`.
impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, weights) = match s.find(":w=") {
            Some(pos) => (&s[..pos], Some(&s[pos + 3..])),
            None => (s, None),
        };
        let spec = match head {
            "l1" => Self::l1(),
            "l2" => Self::l2(),
            "linf" => Self::linf(),
            _ => {
                let p = head
                    .strip_prefix("lp:")
                    .ok_or_else(|| Error::InvalidNorm(format!("unrecognised norm `{s}`")))?;
                let p = match p.trim() {
                    "inf" | "infinity" => f64::INFINITY,
                    other => other
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidNorm(format!("bad exponent `{p}`")))?,
                };
                Self::lp(p)?
            }
        };
        match weights {
            None => Ok(spec),
            Some(list) => {
                let w = list
                    .split(',')
                    .map(|t| t.trim().parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::InvalidNorm(format!("bad weight list `{list}`")))?;
                spec.with_weights(w)
            }
        }
    }
}

impl Serialize for NormSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A norm bound to a dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Space {
    dim: usize,
    norm: NormSpec,
}

impl Space {
    pub fn new(dim: usize, norm: NormSpec) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be ≥ 1".into()));
        }
        if let Some(w) = norm.weights() {
            if w.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: w.len(),
                });
            }
        }
        Ok(Self { dim, norm })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_spec(&self) -> &NormSpec {
        &self.norm
    }

    pub fn norm(&self, v: &Vector) -> Result<f64> {
        self.check_dim(v)?;
        self.norm.norm(v)
    }

    /// Norm of a vector the caller knows to be well formed for this space.
    pub(crate) fn norm_of(&self, v: &Vector) -> f64 {
        self.norm.norm_unchecked(v.coords())
    }

    pub fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.dim(),
            });
        }
        Ok(())
    }

    /// Norm of the all-ones vector; bounds `‖e‖` for any `e` with `|eᵢ| ≤ 1`.
    pub fn ones_norm(&self) -> f64 {
        self.norm.norm_unchecked(&vec![1.0; self.dim])
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.norm, self.dim)
    }
}

/// `|a − b| ≤ atol + rtol·scale`, with `scale` the larger compared magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-10,
        }
    }
}

impl Tolerance {
    pub const fn new(atol: f64, rtol: f64) -> Self {
        Self { atol, rtol }
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.atol + self.rtol * a.abs().max(b.abs())
    }

    /// `measured ≤ bound` up to tolerance scaled by the bound.
    pub fn within_bound(&self, measured: f64, bound: f64) -> bool {
        measured <= bound + self.atol + self.rtol * bound.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Homogeneity,
    Triangle,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomViolation {
    pub sample: usize,
    pub axiom: Axiom,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub space: String,
    pub samples: usize,
    pub seed: u64,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples `x, y, λ` from `seed` and checks `‖λx‖ = |λ|‖x‖` and
/// `‖x+y‖ ≤ ‖x‖ + ‖y‖` under `tol`.
pub fn validate_norm_axioms(
    space: &Space,
    n_samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<AxiomReport> {
    if n_samples == 0 {
        return Err(Error::Precondition("n_samples must be ≥ 1".into()));
    }
    let mut violations = Vec::new();
    for i in 0..n_samples {
        let mut rng = CounterRng::new(&[seed, 0xa710, i as u64]);
        let sx = rng.log_uniform(1e-3, 1e3);
        let sy = rng.log_uniform(1e-3, 1e3);
        let x = Vector::from_raw(rng.cube(space.dim)).scale(sx);
        let y = Vector::from_raw(rng.cube(space.dim)).scale(sy);
        let lambda = rng.uniform(-10.0, 10.0);

        let lhs = space.norm_of(&x.scale(lambda));
        let rhs = lambda.abs() * space.norm_of(&x);
        if !tol.close(lhs, rhs) {
            violations.push(AxiomViolation {
                sample: i,
                axiom: Axiom::Homogeneity,
                lhs,
                rhs,
            });
        }

        let lhs = space.norm_of(&x.add(&y));
        let rhs = space.norm_of(&x) + space.norm_of(&y);
        if !tol.within_bound(lhs, rhs) {
            violations.push(AxiomViolation {
                sample: i,
                axiom: Axiom::Triangle,
                lhs,
                rhs,
            });
        }
    }
    Ok(AxiomReport {
        space: space.to_string(),
        samples: n_samples,
        seed,
        violations,
    })
}
