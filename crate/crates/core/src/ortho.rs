//! Isosceles orthogonality: `x ⊥ y` iff `‖x+y‖ = ‖x−y‖`.
//!
//! Exact orthogonality is a measure-zero event in floating point, so the
//! module works with the defect `|‖x+y‖ − ‖x−y‖|` and admits a pair into a
//! sample set once its defect, measured at unit max-norm scale, is below
//! [`PAIR_TOL`].

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normed_space::{Space, Vector};
use crate::rng::CounterRng;

/// Admission threshold for sampled pairs.
pub const PAIR_TOL: f64 = 1e-9;
/// Attempts per requested pair before a sampler gives up.
pub const RETRY_BUDGET: usize = 16;
pub const DEFAULT_RADIUS_RANGE: (f64, f64) = (0.1, 10.0);

const SAMPLER_BISECTION_TOL: f64 = 1e-12;
const SAMPLER_MAX_ITER: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    Midpoint,
    Bisection,
    TrivialZero,
    Manual,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Midpoint => "midpoint",
            Generator::Bisection => "bisection",
            Generator::TrivialZero => "trivial-zero",
            Generator::Manual => "manual",
        })
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "midpoint" => Ok(Generator::Midpoint),
            "bisection" => Ok(Generator::Bisection),
            "trivial-zero" => Ok(Generator::TrivialZero),
            "manual" => Ok(Generator::Manual),
            _ => Err(Error::Config(format!("unknown generator `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Midpoint,
    Bisection,
    Mixed,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "midpoint" => Ok(Strategy::Midpoint),
            "bisection" => Ok(Strategy::Bisection),
            "mixed" => Ok(Strategy::Mixed),
            _ => Err(Error::Config(format!("unknown strategy `{s}`"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Midpoint => "midpoint",
            Strategy::Bisection => "bisection",
            Strategy::Mixed => "mixed",
        })
    }
}

/// A pair `(x, y)` together with its recorded isosceles defect.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthoPair {
    pub x: Vector,
    pub y: Vector,
    pub defect: f64,
    pub generator: Generator,
}

impl OrthoPair {
    pub fn new(x: Vector, y: Vector, space: &Space, generator: Generator) -> Result<Self> {
        let defect = defect(&x, &y, space)?;
        Ok(Self {
            x,
            y,
            defect,
            generator,
        })
    }

    /// `(x, 0)`, orthogonal for every `x`.
    pub fn trivial(x: Vector) -> Self {
        let y = Vector::zeros(x.dim());
        Self {
            x,
            y,
            defect: 0.0,
            generator: Generator::TrivialZero,
        }
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    /// Defect after rescaling the pair to unit max-norm.
    pub fn scaled_defect(&self) -> f64 {
        let scale = self.x.max_abs().max(self.y.max_abs());
        if scale == 0.0 {
            0.0
        } else {
            self.defect / scale
        }
    }

    /// Whether the pair may enter a verification sample set.
    pub fn admissible(&self, pair_tol: f64) -> bool {
        self.defect <= pair_tol && self.scaled_defect() <= pair_tol
    }
}

/// `|‖x+y‖ − ‖x−y‖|`.
pub fn defect(x: &Vector, y: &Vector, space: &Space) -> Result<f64> {
    space.check_dim(x)?;
    space.check_dim(y)?;
    x.check()?;
    y.check()?;
    Ok(signed_defect(x, y, space).abs())
}

fn signed_defect(x: &Vector, y: &Vector, space: &Space) -> f64 {
    space.norm_of(&x.add(y)) - space.norm_of(&x.sub(y))
}

pub fn is_orthogonal(x: &Vector, y: &Vector, space: &Space, tol: f64) -> Result<bool> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Precondition(format!(
            "tolerance must be ≥ 0, got {tol}"
        )));
    }
    Ok(defect(x, y, space)? <= tol)
}

/// Turns an equinorm pair `(x, y)` into the orthogonal pair
/// `h = (x+y)/2`, `k = (x−y)/2`, for which `h + k = x` and `h − k = y`.
pub fn midpoint_pair(
    x: &Vector,
    y: &Vector,
    space: &Space,
    equinorm_tol: f64,
) -> Result<OrthoPair> {
    let norm_x = space.norm(x)?;
    let norm_y = space.norm(y)?;
    if (norm_x - norm_y).abs() > equinorm_tol {
        return Err(Error::NotEquinorm { norm_x, norm_y });
    }
    let h = x.add(y).scale(0.5);
    let k = x.sub(y).scale(0.5);
    OrthoPair::new(h, k, space, Generator::Midpoint)
}

/// Result of [`find_orthogonal`].
#[derive(Debug, Clone)]
pub struct Bisection {
    pub pair: OrthoPair,
    pub theta: f64,
    /// Number of interval halvings performed.
    pub iterations: usize,
}

/// Point on the path `d0 → d1 → −d0`, normalised to unit norm.
fn path_direction(d0: &Vector, d1: &Vector, theta: f64, space: &Space) -> Result<Vector> {
    let w = if theta >= 1.0 {
        d0.neg()
    } else {
        d0.scale(1.0 - 2.0 * theta)
            .add(&d1.scale((PI * theta).sin()))
    };
    let n = space.norm_of(&w);
    if n <= 0.0 || !n.is_finite() {
        return Err(Error::DegeneratePath { theta });
    }
    Ok(w.scale(1.0 / n))
}

/// Solves `‖x + y‖ = ‖x − y‖` for `y` of norm `radius` by bisection on the
/// signed defect along `u(θ) = normalize((1−2θ)·d0 + sin(πθ)·d1)`.
///
/// `u(1) = −u(0)` and the signed defect is odd in `y`, so the endpoint values
/// have opposite signs and the first bracketed root is returned.
pub fn find_orthogonal(
    x: &Vector,
    d0: &Vector,
    d1: &Vector,
    radius: f64,
    space: &Space,
    tol: f64,
    max_iter: usize,
) -> Result<Bisection> {
    for v in [x, d0, d1] {
        space.check_dim(v)?;
        v.check()?;
    }
    if x.is_zero() {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if max_iter == 0 {
        return Err(Error::Precondition("max_iter must be ≥ 1".into()));
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::Precondition(format!(
            "tolerance must be ≥ 0, got {tol}"
        )));
    }
    let (n0, n1, d01) = (d0.dot(d0), d1.dot(d1), d0.dot(d1));
    if n0 == 0.0 || n1 == 0.0 || d01 * d01 >= n0 * n1 * (1.0 - 1e-12) {
        return Err(Error::Precondition(
            "d0 and d1 must be linearly independent".into(),
        ));
    }

    let eval = |theta: f64| -> Result<(Vector, f64)> {
        let y = path_direction(d0, d1, theta, space)?.scale(radius);
        let psi = signed_defect(x, &y, space);
        Ok((y, psi))
    };
    let finish = |y: Vector, theta: f64, iterations: usize| -> Result<Bisection> {
        Ok(Bisection {
            pair: OrthoPair::new(x.clone(), y, space, Generator::Bisection)?,
            theta,
            iterations,
        })
    };

    let (y_lo, psi_lo) = eval(0.0)?;
    if psi_lo.abs() <= tol {
        return finish(y_lo, 0.0, 0);
    }
    let (y_hi, psi_hi) = eval(1.0)?;
    if psi_hi.abs() <= tol {
        return finish(y_hi, 1.0, 0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let lo_positive = psi_lo > 0.0;
    let mut best = psi_lo.abs().min(psi_hi.abs());
    for iteration in 1..=max_iter {
        let mid = 0.5 * (lo + hi);
        let (y, psi) = eval(mid)?;
        if psi.abs() <= tol {
            return finish(y, mid, iteration);
        }
        best = best.min(psi.abs());
        if (psi > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        best_defect: best,
    })
}

/// Draws a vector of the given norm in a uniformly random cube direction.
fn draw_vector(rng: &mut CounterRng, space: &Space, norm: f64) -> Option<Vector> {
    let d = Vector::from_raw(rng.cube(space.dim()));
    let n = space.norm_of(&d);
    (n > 0.0).then(|| d.scale(norm / n))
}

fn draw_midpoint(rng: &mut CounterRng, space: &Space, radii: (f64, f64)) -> Result<OrthoPair> {
    let r = rng.log_uniform(radii.0, radii.1);
    let x = draw_vector(rng, space, r).ok_or(Error::DegeneratePath { theta: 0.0 })?;
    let norm_x = space.norm_of(&x);
    let y = draw_vector(rng, space, norm_x).ok_or(Error::DegeneratePath { theta: 0.0 })?;
    midpoint_pair(&x, &y, space, 1e-12 * norm_x.max(1.0))
}

fn draw_bisection(rng: &mut CounterRng, space: &Space, radii: (f64, f64)) -> Result<OrthoPair> {
    let r = rng.log_uniform(radii.0, radii.1);
    let x = draw_vector(rng, space, r).ok_or(Error::DegeneratePath { theta: 0.0 })?;
    let d0 = Vector::from_raw(rng.cube(space.dim()));
    let d1 = Vector::from_raw(rng.cube(space.dim()));
    let radius = rng.log_uniform(radii.0, radii.1);
    find_orthogonal(
        &x,
        &d0,
        &d1,
        radius,
        space,
        SAMPLER_BISECTION_TOL,
        SAMPLER_MAX_ITER,
    )
    .map(|b| b.pair)
}

fn generator_for(strategy: Strategy, index: usize, space: &Space) -> Generator {
    match strategy {
        Strategy::Midpoint => Generator::Midpoint,
        // Bisection needs two independent path directions.
        Strategy::Bisection | Strategy::Mixed if space.dim() < 2 => Generator::Midpoint,
        Strategy::Bisection => Generator::Bisection,
        Strategy::Mixed if index.is_multiple_of(2) => Generator::Midpoint,
        Strategy::Mixed => Generator::Bisection,
    }
}

/// Draws pair number `index` of the sample set keyed by `seed`.
pub fn sample_pair(
    space: &Space,
    seed: u64,
    index: usize,
    strategy: Strategy,
    radius_range: (f64, f64),
) -> Result<OrthoPair> {
    let generator = generator_for(strategy, index, space);
    let mut last = String::new();
    for attempt in 0..RETRY_BUDGET {
        let mut rng = CounterRng::new(&[seed, 0x9a17, index as u64, attempt as u64]);
        let drawn = match generator {
            Generator::Bisection => draw_bisection(&mut rng, space, radius_range),
            _ => draw_midpoint(&mut rng, space, radius_range),
        };
        match drawn {
            Ok(pair) if pair.admissible(PAIR_TOL) => return Ok(pair),
            Ok(pair) => last = format!("defect {:e} above admission tolerance", pair.defect),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::GeneratorExhausted {
        index,
        attempts: RETRY_BUDGET,
        last,
    })
}

fn check_radius_range(radius_range: (f64, f64)) -> Result<()> {
    let (lo, hi) = radius_range;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::Precondition(format!(
            "radius range must satisfy 0 < lo ≤ hi, got ({lo}, {hi})"
        )));
    }
    Ok(())
}

/// Deterministic in `(seed, strategy, n, space)`; pair `i` depends only on
/// `(seed, i)` so the set is generated in parallel.
pub fn sample_orthogonal_pairs(
    space: &Space,
    n: usize,
    seed: u64,
    strategy: Strategy,
    radius_range: (f64, f64),
) -> Result<Vec<OrthoPair>> {
    if n == 0 {
        return Err(Error::Precondition("n must be ≥ 1".into()));
    }
    check_radius_range(radius_range)?;
    (0..n)
        .into_par_iter()
        .map(|i| sample_pair(space, seed, i, strategy, radius_range))
        .collect()
}

/// Pairs `(x, y)` with `‖y‖ = ‖x‖`: draw `x`, draw a direction, rescale.
pub fn sample_equinorm_vectors(
    space: &Space,
    n: usize,
    seed: u64,
    radius_range: (f64, f64),
) -> Result<Vec<(Vector, Vector)>> {
    if n == 0 {
        return Err(Error::Precondition("n must be ≥ 1".into()));
    }
    check_radius_range(radius_range)?;
    (0..n)
        .map(|i| {
            for attempt in 0..RETRY_BUDGET {
                let mut rng = CounterRng::new(&[seed, 0xe9e, i as u64, attempt as u64]);
                let r = rng.log_uniform(radius_range.0, radius_range.1);
                if let Some(x) = draw_vector(&mut rng, space, r) {
                    let nx = space.norm_of(&x);
                    if let Some(y) = draw_vector(&mut rng, space, nx) {
                        return Ok((x, y));
                    }
                }
            }
            Err(Error::GeneratorExhausted {
                index: i,
                attempts: RETRY_BUDGET,
                last: "zero direction".into(),
            })
        })
        .collect()
}

/// Sample points with norms log-uniform in `radius_range`.
pub fn sample_points(
    space: &Space,
    n: usize,
    seed: u64,
    radius_range: (f64, f64),
) -> Result<Vec<Vector>> {
    Ok(
        sample_equinorm_vectors(space, n, seed ^ 0x005e_ed0f_9011, radius_range)?
            .into_iter()
            .map(|(x, _)| x)
            .collect(),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneityWitness {
    pub pair: OrthoPair,
    pub lambda: f64,
    pub defect: f64,
    pub trial: usize,
}

/// Searches sampled orthogonal pairs `(x, y)` and scalars `λ` for
/// `defect(x, λy) > threshold`.
pub fn homogeneity_witness(
    space: &Space,
    n_trials: usize,
    seed: u64,
    threshold: f64,
) -> Result<Option<HomogeneityWitness>> {
    if n_trials == 0 {
        return Err(Error::Precondition("n_trials must be ≥ 1".into()));
    }
    for trial in 0..n_trials {
        let pair = sample_pair(space, seed, trial, Strategy::Mixed, DEFAULT_RADIUS_RANGE)?;
        let mut rng = CounterRng::new(&[seed, 0x1a3bda, trial as u64]);
        let lambda = rng.log_uniform(0.25, 4.0);
        let d = signed_defect(&pair.x, &pair.y.scale(lambda), space).abs();
        if d > threshold {
            return Ok(Some(HomogeneityWitness {
                pair,
                lambda,
                defect: d,
                trial,
            }));
        }
    }
    Ok(None)
}

fn format_coords(v: &Vector) -> String {
    v.coords()
        .iter()
        .map(|c| format!("{c:?}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes one pair per line: `x-coords<TAB>y-coords<TAB>defect<TAB>generator`,
/// coordinates comma separated, preceded by a `#` header line.
pub fn write_pairs<W: Write>(mut out: W, header: &str, pairs: &[OrthoPair]) -> Result<()> {
    writeln!(out, "# iso-pairs/1 {header}")?;
    for p in pairs {
        writeln!(
            out,
            "{}\t{}\t{:?}\t{}",
            format_coords(&p.x),
            format_coords(&p.y),
            p.defect,
            p.generator
        )?;
    }
    Ok(())
}

pub fn pairs_to_string(header: &str, pairs: &[OrthoPair]) -> String {
    let mut buf = Vec::new();
    write_pairs(&mut buf, header, pairs).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Parses a pair file, recomputing each defect under `space` and rejecting
/// records whose stored defect disagrees by more than `1e-12`.
pub fn read_pairs(text: &str, space: &Space) -> Result<Vec<OrthoPair>> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::PairFile {
            line: line_no,
            reason,
        };
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(bad(format!(
                "expected 4 tab-separated fields, got {}",
                fields.len()
            )));
        }
        let coords = |s: &str| -> Result<Vector> {
            let c = s
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| bad(e.to_string()))?;
            Vector::new(c)
        };
        let x = coords(fields[0])?;
        let y = coords(fields[1])?;
        let stored: f64 = fields[2]
            .parse()
            .map_err(|_| bad(format!("bad defect `{}`", fields[2])))?;
        let generator: Generator = fields[3].parse()?;
        let mut pair = OrthoPair::new(x, y, space, generator)?;
        if (pair.defect - stored).abs() > 1e-12 {
            return Err(bad(format!(
                "stored defect {stored:e} disagrees with recomputed {:e}",
                pair.defect
            )));
        }
        pair.defect = stored;
        pairs.push(pair);
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::Strategy;
    use super::*;
    use crate::normed_space::NormSpec;
    use proptest::prelude::*;
    use proptest::strategy::Strategy as Gen;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn space(dim: usize, norm: &str) -> Space {
        Space::new(dim, norm.parse().unwrap()).unwrap()
    }

    #[test]
    fn defect_examples() {
        let l2 = space(2, "l2");
        let l1 = space(2, "l1");
        assert_eq!(defect(&v(&[1.0, 0.0]), &v(&[0.0, 0.0]), &l2).unwrap(), 0.0);
        assert_eq!(defect(&v(&[2.0, 1.0]), &v(&[1.0, -2.0]), &l1).unwrap(), 0.0);
        assert_eq!(defect(&v(&[1.0, 0.0]), &v(&[1.0, 0.0]), &l2).unwrap(), 2.0);
        assert!(defect(&v(&[1.0, 0.0]), &v(&[1.0]), &l2).is_err());
    }

    #[test]
    fn is_orthogonal_examples() {
        let l2 = space(2, "l2");
        let l1 = space(2, "l1");
        assert!(is_orthogonal(&v(&[1.0, 0.0]), &v(&[0.0, 1.0]), &l2, 1e-10).unwrap());
        assert!(!is_orthogonal(&v(&[1.0, 0.0]), &v(&[1.0, 0.0]), &l2, 1e-10).unwrap());
        assert!(is_orthogonal(&v(&[2.0, 1.0]), &v(&[1.0, -2.0]), &l1, 1e-10).unwrap());
        assert!(is_orthogonal(&v(&[2.0, 1.0]), &v(&[1.0, -2.0]), &l1, -1.0).is_err());
    }

    #[test]
    fn midpoint_examples() {
        let l2 = space(2, "l2");
        let p = midpoint_pair(&v(&[3.0, 4.0]), &v(&[5.0, 0.0]), &l2, 0.0).unwrap();
        assert_eq!(p.x, v(&[4.0, 2.0]));
        assert_eq!(p.y, v(&[-1.0, 2.0]));
        assert_eq!(p.defect, 0.0);
        assert_eq!(p.generator, Generator::Midpoint);

        let x = v(&[0.3, -1.7]);
        let p = midpoint_pair(&x, &x, &l2, 0.0).unwrap();
        assert_eq!(p.x, x);
        assert!(p.y.is_zero());
        assert_eq!(p.defect, 0.0);

        let p = midpoint_pair(&x, &x.neg(), &l2, 0.0).unwrap();
        assert!(p.x.is_zero());
        assert_eq!(p.y, x);
        assert_eq!(p.defect, 0.0);
    }

    #[test]
    fn midpoint_rejects_unequal_norms() {
        let l2 = space(2, "l2");
        let err = midpoint_pair(&v(&[1.0, 0.0]), &v(&[2.0, 0.0]), &l2, 1e-9).unwrap_err();
        match err {
            Error::NotEquinorm { norm_x, norm_y } => {
                assert_eq!((norm_x, norm_y), (1.0, 2.0));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn bisection_root_at_start() {
        let l2 = space(2, "l2");
        let b = find_orthogonal(
            &v(&[1.0, 0.0]),
            &v(&[0.0, 1.0]),
            &v(&[-1.0, 0.0]),
            1.0,
            &l2,
            1e-10,
            60,
        )
        .unwrap();
        assert_eq!(b.theta, 0.0);
        assert_eq!(b.pair.y, v(&[0.0, 1.0]));
        assert_eq!(b.iterations, 0);
    }

    #[test]
    fn bisection_l1() {
        let l1 = space(2, "l1");
        let x = v(&[1.0, 0.0]);
        let b =
            find_orthogonal(&x, &v(&[1.0, 1.0]), &v(&[-1.0, 1.0]), 1.0, &l1, 1e-10, 60).unwrap();
        assert!(defect(&x, &b.pair.y, &l1).unwrap() <= 1e-10);
        assert!((l1.norm(&b.pair.y).unwrap() - 1.0).abs() < 1e-12);

        let x = v(&[2.0, 1.0]);
        let r = 5f64.sqrt();
        let b = find_orthogonal(&x, &v(&[1.0, -1.0]), &v(&[1.0, -3.0]), r, &l1, 1e-10, 60).unwrap();
        assert!(defect(&x, &b.pair.y, &l1).unwrap() <= 1e-10);
        assert!((l1.norm(&b.pair.y).unwrap() - r).abs() < 1e-12);
    }

    #[test]
    fn bisection_errors() {
        let l2 = space(2, "l2");
        let x = v(&[1.0, 0.3]);
        let e = find_orthogonal(&x, &v(&[1.0, 1.0]), &v(&[2.0, 2.0]), 1.0, &l2, 1e-10, 60);
        assert!(matches!(e, Err(Error::Precondition(_))));
        let e = find_orthogonal(
            &v(&[0.0, 0.0]),
            &v(&[1.0, 1.0]),
            &v(&[1.0, 0.0]),
            1.0,
            &l2,
            1e-10,
            60,
        );
        assert!(matches!(e, Err(Error::Precondition(_))));
        let e = find_orthogonal(&x, &v(&[1.0, 1.0]), &v(&[1.0, 0.0]), 1.0, &l2, 1e-10, 0);
        assert!(matches!(e, Err(Error::Precondition(_))));
        let e = find_orthogonal(&x, &v(&[1.0, 1.0]), &v(&[1.0, 0.0]), 1.0, &l2, 0.0, 2);
        assert!(matches!(e, Err(Error::NoConvergence { iterations: 2, .. })));
    }

    #[test]
    fn sampler_examples() {
        let pairs = sample_orthogonal_pairs(
            &space(2, "l2"),
            3,
            1,
            Strategy::Midpoint,
            DEFAULT_RADIUS_RANGE,
        )
        .unwrap();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|p| p.defect <= 1e-12));

        let linf = space(4, "linf");
        let pairs =
            sample_orthogonal_pairs(&linf, 100, 9, Strategy::Mixed, DEFAULT_RADIUS_RANGE).unwrap();
        assert_eq!(pairs.len(), 100);
        for p in &pairs {
            assert!(defect(&p.x, &p.y, &linf).unwrap() <= 1e-9);
        }
        assert!(pairs.iter().any(|p| p.generator == Generator::Bisection));
        assert!(pairs.iter().any(|p| p.generator == Generator::Midpoint));

        assert!(
            sample_orthogonal_pairs(&linf, 0, 9, Strategy::Mixed, DEFAULT_RADIUS_RANGE).is_err()
        );
        assert!(sample_orthogonal_pairs(&linf, 3, 9, Strategy::Mixed, (1.0, 0.5)).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        let s = space(3, "lp:1.5");
        let a = sample_orthogonal_pairs(&s, 50, 4, Strategy::Mixed, DEFAULT_RADIUS_RANGE).unwrap();
        let b = sample_orthogonal_pairs(&s, 50, 4, Strategy::Mixed, DEFAULT_RADIUS_RANGE).unwrap();
        assert_eq!(a, b);
        let prefix =
            sample_orthogonal_pairs(&s, 10, 4, Strategy::Mixed, DEFAULT_RADIUS_RANGE).unwrap();
        assert_eq!(&a[..10], &prefix[..]);
    }

    #[test]
    fn dimension_one_falls_back_to_midpoint() {
        let s = space(1, "l2");
        let pairs =
            sample_orthogonal_pairs(&s, 10, 2, Strategy::Bisection, DEFAULT_RADIUS_RANGE).unwrap();
        assert!(pairs.iter().all(|p| p.generator == Generator::Midpoint));
    }

    #[test]
    fn homogeneity_examples() {
        let l1 = space(2, "l1");
        assert_eq!(
            defect(&v(&[2.0, 1.0]), &v(&[1.0, -2.0]).scale(2.0), &l1).unwrap(),
            2.0
        );
        assert!(homogeneity_witness(&l1, 1000, 3, 0.1).unwrap().is_some());
        let linf = space(2, "linf");
        assert!(homogeneity_witness(&linf, 1000, 3, 0.1).unwrap().is_some());
        for dim in [2, 3, 5] {
            assert!(homogeneity_witness(&space(dim, "l2"), 1000, 3, 1e-6)
                .unwrap()
                .is_none());
        }
        assert!(homogeneity_witness(&l1, 0, 3, 0.1).is_err());
    }

    #[test]
    fn pair_file_round_trip() {
        let s = space(3, "l1");
        let pairs =
            sample_orthogonal_pairs(&s, 20, 11, Strategy::Mixed, DEFAULT_RADIUS_RANGE).unwrap();
        let text = pairs_to_string("dim=3 norm=l1", &pairs);
        assert!(text.starts_with("# iso-pairs/1"));
        let back = read_pairs(&text, &s).unwrap();
        assert_eq!(back, pairs);
        assert!(read_pairs("1,2\t3,4\t0.0\tmidpoint\n", &s).is_err());
        assert!(read_pairs("1,2,0\t3,4,0\t0.0\tsideways\n", &s).is_err());
        assert!(read_pairs("1,0,0\t1,0,0\t0.0\tmanual\n", &s).is_err());
    }

    fn norm_strategy() -> impl Gen<Value = NormSpec> {
        prop_oneof![
            Just(NormSpec::l1()),
            Just(NormSpec::l2()),
            Just(NormSpec::linf()),
            (1.0f64..6.0).prop_map(|p| NormSpec::lp(p).unwrap()),
        ]
    }

    fn vec_pair() -> impl Gen<Value = (Vec<f64>, Vec<f64>)> {
        (1usize..6).prop_flat_map(|n| {
            (
                prop::collection::vec(-100f64..100.0, n),
                prop::collection::vec(-100f64..100.0, n),
            )
        })
    }

    proptest! {
        #[test]
        fn defect_symmetries(n in norm_strategy(), (a, b) in vec_pair()) {
            let s = Space::new(a.len(), n).unwrap();
            let (x, y) = (v(&a), v(&b));
            let d = defect(&x, &y, &s).unwrap();
            prop_assert_eq!(d, defect(&y, &x, &s).unwrap());
            prop_assert_eq!(d, defect(&x, &y.neg(), &s).unwrap());
            prop_assert_eq!(d, defect(&x.neg(), &y, &s).unwrap());
            prop_assert_eq!(d, defect(&x.neg(), &y.neg(), &s).unwrap());
            prop_assert_eq!(defect(&x, &Vector::zeros(x.dim()), &s).unwrap(), 0.0);
            prop_assert_eq!(defect(&Vector::zeros(x.dim()), &y, &s).unwrap(), 0.0);
        }

        #[test]
        fn midpoint_defect_is_rounding_level(n in norm_strategy(), (a, b) in vec_pair()) {
            let s = Space::new(a.len(), n).unwrap();
            let x = v(&a);
            let d = v(&b);
            prop_assume!(!x.is_zero() && !d.is_zero());
            let y = d.scale(s.norm(&x).unwrap() / s.norm(&d).unwrap());
            let (nx, ny) = (s.norm(&x).unwrap(), s.norm(&y).unwrap());
            prop_assume!(nx == ny);
            let p = midpoint_pair(&x, &y, &s, 0.0).unwrap();
            prop_assert!(p.defect <= 4.0 * f64::EPSILON * nx.max(ny), "{}", p.defect);
        }

        #[test]
        fn l2_agrees_with_inner_product((a, b) in vec_pair()) {
            let s = Space::new(a.len(), NormSpec::l2()).unwrap();
            let (x, y) = (v(&a), v(&b));
            // ‖x+y‖² − ‖x−y‖² = 4⟨x,y⟩
            let d = defect(&x, &y, &s).unwrap();
            let sum = s.norm(&x.add(&y)).unwrap() + s.norm(&x.sub(&y)).unwrap();
            let via_dot = 4.0 * x.dot(&y).abs() / sum.max(f64::MIN_POSITIVE);
            let scale = s.norm(&x).unwrap().max(s.norm(&y).unwrap()).max(1.0);
            prop_assert!((d - via_dot).abs() <= 1e-12 * scale * scale, "{} vs {}", d, via_dot);
        }

        #[test]
        fn bisection_converges(n in norm_strategy(), seed in 0u64..1000) {
            let s = Space::new(3, n).unwrap();
            let mut rng = CounterRng::new(&[seed]);
            let x = Vector::from_raw(rng.cube(3));
            let d0 = Vector::from_raw(rng.cube(3));
            let d1 = Vector::from_raw(rng.cube(3));
            let b = find_orthogonal(&x, &d0, &d1, 2.0, &s, 1e-10, 60).unwrap();
            prop_assert!(b.pair.defect <= 1e-10);
            prop_assert!(b.iterations <= 60);
        }
    }
}
