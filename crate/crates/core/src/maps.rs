//! Representable maps 𝒳 → 𝒴 and the constructions applied to them: even and
//! odd parts, the orthogonally constant approximant `c(x) = f(x0‖x‖/‖x0‖)`,
//! radial profiles, the Pexider split `u = f^e + g^e`, `v = f^e − g^e`, and
//! the residual functionals whose suprema define "approximately orthogonally
//! constant / Cauchy / quadratic".

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::funcdsl::VectorExpr;
use crate::normed_space::{NormSpec, Space, Vector};
use crate::ortho::OrthoPair;
use crate::rng::{coordinate_bits, hash_words, unit_f64, CounterRng};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Precondition("matrix must be nonempty".into()));
        }
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Precondition(
                "matrix rows have unequal lengths".into(),
            ));
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Entries uniform in `[-1, 1)`.
    pub fn random(rows: usize, cols: usize, rng: &mut CounterRng) -> Self {
        Self {
            rows,
            cols,
            data: rng.cube(rows * cols),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `xᵀ A x`
    fn quadratic(&self, x: &[f64]) -> f64 {
        (0..self.rows)
            .map(|i| x[i] * self.row(i).iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct Noise {
    pub base: MapSpec,
    pub amplitude: f64,
    pub seed: u64,
    pub zero_at_origin: bool,
}

#[derive(Debug, Clone)]
pub enum MapKind {
    Zero,
    /// `x ↦ A x`
    Linear(Matrix),
    /// `x ↦ (xᵀ Q₁ x, …, xᵀ Q_m x)`
    QuadraticForm(Vec<Matrix>),
    /// `x ↦ profile(‖x‖)`, the profile being a one-variable expression in `x[0]`.
    Radial(VectorExpr),
    Expression(VectorExpr),
    Sum(MapSpec, MapSpec),
    Difference(MapSpec, MapSpec),
    Scale(f64, MapSpec),
    /// `x ↦ m(−x)`
    Reflect(MapSpec),
    Noisy(Noise),
    /// `x ↦ m(x0·‖x‖/‖x0‖)`
    ConstantApproximant {
        base: MapSpec,
        anchor: Vector,
        anchor_norm: f64,
    },
    /// `r ↦ m(r·x0/‖x0‖)`, a map on ℝ.
    RadialProfile {
        base: MapSpec,
        direction: Vector,
    },
}

/// An immutable, cheaply cloneable map between finite-dimensional spaces.
#[derive(Debug, Clone)]
pub struct MapSpec {
    domain: Space,
    codomain_dim: usize,
    kind: Arc<MapKind>,
}

fn scalar_line() -> Space {
    Space::new(1, NormSpec::l2()).expect("dimension 1 is valid")
}

fn ensure_same_shape(a: &MapSpec, b: &MapSpec) -> Result<()> {
    if a.domain.dim() != b.domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.domain.dim(),
            actual: b.domain.dim(),
        });
    }
    if a.codomain_dim != b.codomain_dim {
        return Err(Error::DimensionMismatch {
            expected: a.codomain_dim,
            actual: b.codomain_dim,
        });
    }
    Ok(())
}

impl MapSpec {
    fn build(domain: Space, codomain_dim: usize, kind: MapKind) -> Self {
        Self {
            domain,
            codomain_dim,
            kind: Arc::new(kind),
        }
    }

    pub fn zero(domain: &Space, codomain_dim: usize) -> Result<Self> {
        if codomain_dim == 0 {
            return Err(Error::Precondition("codomain dimension must be ≥ 1".into()));
        }
        Ok(Self::build(domain.clone(), codomain_dim, MapKind::Zero))
    }

    pub fn linear(domain: &Space, a: Matrix) -> Result<Self> {
        if a.cols() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                actual: a.cols(),
            });
        }
        Ok(Self::build(domain.clone(), a.rows(), MapKind::Linear(a)))
    }

    pub fn quadratic_form(domain: &Space, forms: Vec<Matrix>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Precondition(
                "need at least one quadratic form".into(),
            ));
        }
        for q in &forms {
            if q.rows() != domain.dim() || q.cols() != domain.dim() {
                return Err(Error::DimensionMismatch {
                    expected: domain.dim(),
                    actual: if q.rows() != domain.dim() {
                        q.rows()
                    } else {
                        q.cols()
                    },
                });
            }
        }
        Ok(Self::build(
            domain.clone(),
            forms.len(),
            MapKind::QuadraticForm(forms),
        ))
    }

    /// `profile` is parsed over one variable, `x[0]` standing for `‖x‖`.
    pub fn radial(domain: &Space, profile: VectorExpr) -> Result<Self> {
        if profile.domain_dim() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: profile.domain_dim(),
            });
        }
        let m = profile.output_dim();
        Ok(Self::build(domain.clone(), m, MapKind::Radial(profile)))
    }

    pub fn expression(domain: &Space, expr: VectorExpr) -> Result<Self> {
        if expr.domain_dim() != domain.dim() {
            return Err(Error::DimensionMismatch {
                expected: domain.dim(),
                actual: expr.domain_dim(),
            });
        }
        let m = expr.output_dim();
        Ok(Self::build(domain.clone(), m, MapKind::Expression(expr)))
    }

    pub fn sum(a: &MapSpec, b: &MapSpec) -> Result<Self> {
        ensure_same_shape(a, b)?;
        Ok(Self::build(
            a.domain.clone(),
            a.codomain_dim,
            MapKind::Sum(a.clone(), b.clone()),
        ))
    }

    pub fn difference(a: &MapSpec, b: &MapSpec) -> Result<Self> {
        ensure_same_shape(a, b)?;
        Ok(Self::build(
            a.domain.clone(),
            a.codomain_dim,
            MapKind::Difference(a.clone(), b.clone()),
        ))
    }

    pub fn scale(factor: f64, m: &MapSpec) -> Result<Self> {
        if !factor.is_finite() {
            return Err(Error::Precondition(format!(
                "scale factor must be finite, got {factor}"
            )));
        }
        Ok(Self::build(
            m.domain.clone(),
            m.codomain_dim,
            MapKind::Scale(factor, m.clone()),
        ))
    }

    /// `x ↦ m(−x)`
    pub fn reflect(m: &MapSpec) -> Self {
        Self::build(
            m.domain.clone(),
            m.codomain_dim,
            MapKind::Reflect(m.clone()),
        )
    }

    /// Adds a deterministic perturbation with components in `[−δ, δ]`, keyed
    /// by `(seed, bit pattern of x, output index)`. With `zero_at_origin`
    /// the perturbation at 0 is subtracted, so `m(0)` is preserved.
    pub fn noisy(base: &MapSpec, amplitude: f64, seed: u64, zero_at_origin: bool) -> Result<Self> {
        if !(amplitude >= 0.0 && amplitude.is_finite()) {
            return Err(Error::Precondition(format!(
                "noise amplitude must be finite and ≥ 0, got {amplitude}"
            )));
        }
        Ok(Self::build(
            base.domain.clone(),
            base.codomain_dim,
            MapKind::Noisy(Noise {
                base: base.clone(),
                amplitude,
                seed,
                zero_at_origin,
            }),
        ))
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn domain_dim(&self) -> usize {
        self.domain.dim()
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        self.domain.check_dim(x)?;
        x.check()?;
        let out = self.eval(x.coords())?;
        Vector::new(out)
    }

    pub(crate) fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        let m = self.codomain_dim;
        Ok(match &*self.kind {
            MapKind::Zero => vec![0.0; m],
            MapKind::Linear(a) => a.mul_vec(x),
            MapKind::QuadraticForm(qs) => qs.iter().map(|q| q.quadratic(x)).collect(),
            MapKind::Radial(profile) => {
                let r = self.domain.norm_spec().norm_unchecked(x);
                profile.eval(&[r], &scalar_line())?
            }
            MapKind::Expression(e) => e.eval(x, &self.domain)?,
            MapKind::Sum(a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                a.iter().zip(&b).map(|(p, q)| p + q).collect()
            }
            MapKind::Difference(a, b) => {
                let (a, b) = (a.eval(x)?, b.eval(x)?);
                a.iter().zip(&b).map(|(p, q)| p - q).collect()
            }
            MapKind::Scale(s, a) => a.eval(x)?.into_iter().map(|v| s * v).collect(),
            MapKind::Reflect(a) => {
                let neg: Vec<f64> = x.iter().map(|c| -c).collect();
                a.eval(&neg)?
            }
            MapKind::Noisy(n) => {
                let mut out = n.base.eval(x)?;
                let at_x = noise_vector(n.seed, n.amplitude, x, m);
                for (o, e) in out.iter_mut().zip(&at_x) {
                    *o += e;
                }
                if n.zero_at_origin {
                    let at_zero = noise_vector(n.seed, n.amplitude, &vec![0.0; x.len()], m);
                    for (o, e) in out.iter_mut().zip(&at_zero) {
                        *o -= e;
                    }
                }
                out
            }
            MapKind::ConstantApproximant {
                base,
                anchor,
                anchor_norm,
            } => {
                let r = self.domain.norm_spec().norm_unchecked(x);
                base.eval(anchor.scale(r / anchor_norm).coords())?
            }
            MapKind::RadialProfile { base, direction } => match base.eval_at_norm(x[0]) {
                Some(out) => out?,
                None => base.eval(direction.scale(x[0]).coords())?,
            },
        })
        .and_then(|out: Vec<f64>| {
            match out.iter().enumerate().find(|(_, v)| !v.is_finite()) {
                Some((index, &value)) => Err(Error::NonFinite { index, value }),
                None => Ok(out),
            }
        })
    }

    /// Sum of raw noise amplitudes, weighted by scale factors. A difference
    /// `m(a) − m(b)` deviates from its noise-free value by at most twice this
    /// per component; origin corrections cancel in such differences.
    pub fn noise_amplitude(&self) -> f64 {
        match &*self.kind {
            MapKind::Zero
            | MapKind::Linear(_)
            | MapKind::QuadraticForm(_)
            | MapKind::Radial(_)
            | MapKind::Expression(_) => 0.0,
            MapKind::Sum(a, b) | MapKind::Difference(a, b) => {
                a.noise_amplitude() + b.noise_amplitude()
            }
            MapKind::Scale(s, a) => s.abs() * a.noise_amplitude(),
            MapKind::Reflect(a) => a.noise_amplitude(),
            MapKind::Noisy(n) => n.base.noise_amplitude() + n.amplitude,
            MapKind::ConstantApproximant { base, .. } | MapKind::RadialProfile { base, .. } => {
                base.noise_amplitude()
            }
        }
    }

    /// Evaluates maps that depend on `x` only through `‖x‖` at a given norm
    /// `r ≥ 0`, without forming a point of that norm.
    fn eval_at_norm(&self, r: f64) -> Option<Result<Vec<f64>>> {
        match &*self.kind {
            MapKind::Radial(profile) => {
                Some(profile.eval(&[r], &scalar_line()).map_err(Error::from))
            }
            MapKind::ConstantApproximant {
                base,
                anchor,
                anchor_norm,
            } => Some(base.eval(anchor.scale(r / anchor_norm).coords())),
            _ => None,
        }
    }

    /// Upper bound on `|m(x)ᵢ − m₀(x)ᵢ|` over all `x`, where `m₀` is the same
    /// map with every noise wrapper removed.
    pub fn noise_bound(&self) -> f64 {
        match &*self.kind {
            MapKind::Zero
            | MapKind::Linear(_)
            | MapKind::QuadraticForm(_)
            | MapKind::Radial(_)
            | MapKind::Expression(_) => 0.0,
            MapKind::Sum(a, b) | MapKind::Difference(a, b) => a.noise_bound() + b.noise_bound(),
            MapKind::Scale(s, a) => s.abs() * a.noise_bound(),
            MapKind::Reflect(a) => a.noise_bound(),
            MapKind::Noisy(n) => {
                let own = if n.zero_at_origin { 2.0 } else { 1.0 } * n.amplitude;
                n.base.noise_bound() + own
            }
            MapKind::ConstantApproximant { base, .. } | MapKind::RadialProfile { base, .. } => {
                base.noise_bound()
            }
        }
    }
}

/// Side of the cells on which noise is constant. Arguments that differ only
/// by rounding, such as `x` and `(h + k)` for `h, k = (x ± z)/2`, then draw
/// the same noise.
pub const NOISE_CELL: f64 = 1.0 / (1u64 << 30) as f64;

fn noise_vector(seed: u64, amplitude: f64, x: &[f64], m: usize) -> Vec<f64> {
    let mut words = Vec::with_capacity(x.len() + 1);
    words.push(seed);
    words.extend(x.iter().map(|&c| coordinate_bits((c / NOISE_CELL).round())));
    let key = hash_words(&words);
    (0..m)
        .map(|j| amplitude * (2.0 * unit_f64(hash_words(&[key, j as u64])) - 1.0))
        .collect()
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.kind {
            MapKind::Zero => f.write_str("zero"),
            MapKind::Linear(a) => write!(f, "linear({}x{})", a.rows(), a.cols()),
            MapKind::QuadraticForm(qs) => write!(f, "quadratic_form(x{})", qs.len()),
            MapKind::Radial(p) => write!(f, "radial[{p}]"),
            MapKind::Expression(e) => write!(f, "expr[{e}]"),
            MapKind::Sum(a, b) => write!(f, "({a} + {b})"),
            MapKind::Difference(a, b) => write!(f, "({a} - {b})"),
            MapKind::Scale(s, a) => write!(f, "{s:?}*{a}"),
            MapKind::Reflect(a) => write!(f, "{a}∘(-x)"),
            MapKind::Noisy(n) => write!(
                f,
                "noisy({}, δ={:?}, seed={}{})",
                n.base,
                n.amplitude,
                n.seed,
                if n.zero_at_origin {
                    ", origin-corrected"
                } else {
                    ""
                }
            ),
            MapKind::ConstantApproximant { base, anchor, .. } => {
                write!(f, "const_approx({base}, x0={:?})", anchor.coords())
            }
            MapKind::RadialProfile { base, direction } => {
                write!(f, "profile({base}, dir={:?})", direction.coords())
            }
        }
    }
}

/// `m^e(x) = (m(x) + m(−x))/2`
pub fn even_part(m: &MapSpec) -> MapSpec {
    let s = MapSpec::sum(m, &MapSpec::reflect(m)).expect("same shape");
    MapSpec::scale(0.5, &s).expect("finite factor")
}

/// `m^o(x) = (m(x) − m(−x))/2`
pub fn odd_part(m: &MapSpec) -> MapSpec {
    let d = MapSpec::difference(m, &MapSpec::reflect(m)).expect("same shape");
    MapSpec::scale(0.5, &d).expect("finite factor")
}

/// `c(x) = f(x0·‖x‖/‖x0‖)`, which depends on `x` only through `‖x‖` and is
/// therefore orthogonally constant.
pub fn constant_approximant(f: &MapSpec, x0: &Vector, space: &Space) -> Result<MapSpec> {
    space.check_dim(x0)?;
    if f.domain_dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: f.domain_dim(),
        });
    }
    let anchor_norm = space.norm(x0)?;
    if anchor_norm == 0.0 {
        return Err(Error::ZeroAnchor);
    }
    Ok(MapSpec::build(
        space.clone(),
        f.codomain_dim,
        MapKind::ConstantApproximant {
            base: f.clone(),
            anchor: x0.clone(),
            anchor_norm,
        },
    ))
}

/// `g(r) = c(r·x0/‖x0‖)` as a map on ℝ; for orthogonally constant `c`,
/// `g(‖x‖) = c(x)`.
pub fn radial_profile(c: &MapSpec, x0: &Vector, space: &Space) -> Result<MapSpec> {
    space.check_dim(x0)?;
    if c.domain_dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            actual: c.domain_dim(),
        });
    }
    let n = space.norm(x0)?;
    if n == 0.0 {
        return Err(Error::ZeroAnchor);
    }
    Ok(MapSpec::build(
        scalar_line(),
        c.codomain_dim,
        MapKind::RadialProfile {
            base: c.clone(),
            direction: x0.scale(1.0 / n),
        },
    ))
}

/// `ℓ(x) = (h(x) + k(x))/2`
pub fn ell(h: &MapSpec, k: &MapSpec) -> Result<MapSpec> {
    MapSpec::scale(0.5, &MapSpec::sum(h, k)?)
}

/// `u = f^e + g^e`, `v = f^e − g^e`.
pub fn uv_split(f: &MapSpec, g: &MapSpec) -> Result<(MapSpec, MapSpec)> {
    ensure_same_shape(f, g)?;
    let (fe, ge) = (even_part(f), even_part(g));
    Ok((MapSpec::sum(&fe, &ge)?, MapSpec::difference(&fe, &ge)?))
}

/// `f^o + u/2 + v/2`, which equals `f` when `(u, v) = uv_split(f, g)`.
pub fn reassemble(f_odd: &MapSpec, u: &MapSpec, v: &MapSpec) -> Result<MapSpec> {
    let half_u = MapSpec::scale(0.5, u)?;
    let half_v = MapSpec::scale(0.5, v)?;
    MapSpec::sum(&MapSpec::sum(f_odd, &half_u)?, &half_v)
}

/// `g^o + u/2 − v/2`, which equals `g` when `(u, v) = uv_split(f, g)`.
pub fn reassemble_second(g_odd: &MapSpec, u: &MapSpec, v: &MapSpec) -> Result<MapSpec> {
    let half_u = MapSpec::scale(0.5, u)?;
    let half_v = MapSpec::scale(0.5, v)?;
    MapSpec::difference(&MapSpec::sum(g_odd, &half_u)?, &half_v)
}

/// Four maps for `f(x+y) + g(x−y) = h(x) + k(y)` with a codomain norm.
#[derive(Debug, Clone)]
pub struct PexiderQuadruple {
    pub f: MapSpec,
    pub g: MapSpec,
    pub h: MapSpec,
    pub k: MapSpec,
    pub codomain: Space,
}

impl PexiderQuadruple {
    pub fn new(f: MapSpec, g: MapSpec, h: MapSpec, k: MapSpec, codomain: Space) -> Result<Self> {
        for m in [&g, &h, &k] {
            ensure_same_shape(&f, m)?;
        }
        if f.codomain_dim != codomain.dim() {
            return Err(Error::DimensionMismatch {
                expected: codomain.dim(),
                actual: f.codomain_dim,
            });
        }
        Ok(Self {
            f,
            g,
            h,
            k,
            codomain,
        })
    }

    pub fn domain(&self) -> &Space {
        self.f.domain()
    }

    pub fn named(&self) -> [(&'static str, &MapSpec); 4] {
        [
            ("f", &self.f),
            ("g", &self.g),
            ("h", &self.h),
            ("k", &self.k),
        ]
    }

    /// Codomain norms of `f(0), g(0), h(0), k(0)`.
    pub fn values_at_zero(&self) -> Result<[(&'static str, f64); 4]> {
        let zero = vec![0.0; self.domain().dim()];
        let mut out = [("", 0.0); 4];
        for (slot, (name, m)) in out.iter_mut().zip(self.named()) {
            let v = m.eval(&zero)?;
            *slot = (name, self.codomain.norm_spec().norm_unchecked(&v));
        }
        Ok(out)
    }

    /// Errors unless every map sends 0 within `atol` of 0.
    pub fn check_hypothesis(&self, atol: f64) -> Result<[(&'static str, f64); 4]> {
        let values = self.values_at_zero()?;
        if let Some((name, norm)) = values.iter().find(|(_, n)| *n > atol) {
            return Err(Error::Hypothesis {
                map: name.to_string(),
                norm: *norm,
            });
        }
        Ok(values)
    }

    /// Certified bound on the sup of the Pexider residual, valid when the
    /// noise-free maps solve the equation exactly: each map deviates by at
    /// most `noise_bound · ‖𝟙‖_Y`.
    pub fn certified_epsilon(&self) -> f64 {
        let c_y = self.codomain.ones_norm();
        [&self.f, &self.g, &self.h, &self.k]
            .iter()
            .map(|m| m.noise_bound() * c_y)
            .sum()
    }

    /// The exact solution `f = g = Q + L`, `h = 2Q + 2L`, `k = 2Q` with random
    /// quadratic forms `Q` and linear part `L` drawn from `seed`.
    pub fn exact_solution(domain: &Space, codomain: &Space, seed: u64) -> Result<Self> {
        let (n, m) = (domain.dim(), codomain.dim());
        let mut rng = CounterRng::new(&[seed, 0x9e11de7]);
        let forms: Vec<Matrix> = (0..m).map(|_| Matrix::random(n, n, &mut rng)).collect();
        let q = MapSpec::quadratic_form(domain, forms)?;
        let l = MapSpec::linear(domain, Matrix::random(m, n, &mut rng))?;
        let f = MapSpec::sum(&q, &l)?;
        let h = MapSpec::scale(2.0, &f)?;
        let k = MapSpec::scale(2.0, &q)?;
        Self::new(f.clone(), f, h, k, codomain.clone())
    }

    /// Wraps each map in independent origin-corrected noise of amplitude `δ`.
    pub fn perturbed(&self, amplitude: f64, seed: u64) -> Result<Self> {
        let wrap = |m: &MapSpec, i: u64| MapSpec::noisy(m, amplitude, hash_words(&[seed, i]), true);
        Self::new(
            wrap(&self.f, 0)?,
            wrap(&self.g, 1)?,
            wrap(&self.h, 2)?,
            wrap(&self.k, 3)?,
            self.codomain.clone(),
        )
    }
}

fn check_pair(m: &MapSpec, p: &OrthoPair) -> Result<()> {
    if p.x.dim() != m.domain_dim() || p.y.dim() != m.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: m.domain_dim(),
            actual: p.x.dim(),
        });
    }
    Ok(())
}

fn combine(parts: &[(f64, &[f64])]) -> Vec<f64> {
    let m = parts[0].1.len();
    (0..m)
        .map(|i| parts.iter().map(|(c, v)| c * v[i]).sum())
        .collect()
}

/// `‖f(x+y) + g(x−y) − h(x) − k(y)‖_Y`
pub fn pexider_residual(q: &PexiderQuadruple, p: &OrthoPair) -> Result<f64> {
    check_pair(&q.f, p)?;
    let s = p.x.add(&p.y);
    let d = p.x.sub(&p.y);
    let r = combine(&[
        (1.0, &q.f.eval(s.coords())?),
        (1.0, &q.g.eval(d.coords())?),
        (-1.0, &q.h.eval(p.x.coords())?),
        (-1.0, &q.k.eval(p.y.coords())?),
    ]);
    Ok(q.codomain.norm_spec().norm_unchecked(&r))
}

/// `‖m(x+y) − m(x) − m(y)‖_Y`
pub fn cauchy_residual(m: &MapSpec, p: &OrthoPair, codomain: &NormSpec) -> Result<f64> {
    check_pair(m, p)?;
    let r = combine(&[
        (1.0, &m.eval(p.x.add(&p.y).coords())?),
        (-1.0, &m.eval(p.x.coords())?),
        (-1.0, &m.eval(p.y.coords())?),
    ]);
    Ok(codomain.norm_unchecked(&r))
}

/// `‖m(x+y) + m(x−y) − 2m(x) − 2m(y)‖_Y`
pub fn quadratic_residual(m: &MapSpec, p: &OrthoPair, codomain: &NormSpec) -> Result<f64> {
    check_pair(m, p)?;
    let r = combine(&[
        (1.0, &m.eval(p.x.add(&p.y).coords())?),
        (1.0, &m.eval(p.x.sub(&p.y).coords())?),
        (-2.0, &m.eval(p.x.coords())?),
        (-2.0, &m.eval(p.y.coords())?),
    ]);
    Ok(codomain.norm_unchecked(&r))
}

/// `‖m(x+y) − m(x−y)‖_Y`
pub fn constant_residual(m: &MapSpec, p: &OrthoPair, codomain: &NormSpec) -> Result<f64> {
    check_pair(m, p)?;
    let r = combine(&[
        (1.0, &m.eval(p.x.add(&p.y).coords())?),
        (-1.0, &m.eval(p.x.sub(&p.y).coords())?),
    ]);
    Ok(codomain.norm_unchecked(&r))
}

/// `‖a(x) − b(x)‖_Y`
pub fn pointwise_distance(
    a: &MapSpec,
    b: &MapSpec,
    x: &Vector,
    codomain: &NormSpec,
) -> Result<f64> {
    ensure_same_shape(a, b)?;
    a.domain.check_dim(x)?;
    let r = combine(&[(1.0, &a.eval(x.coords())?), (-1.0, &b.eval(x.coords())?)]);
    Ok(codomain.norm_unchecked(&r))
}
