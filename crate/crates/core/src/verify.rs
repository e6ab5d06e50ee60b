//! Sup-residual estimation over orthogonal-pair samples and the checks of
//! the stability chain for `f(x+y) + g(x−y) = h(x) + k(y)`.
//!
//! Bounds are always multiples of a *certified* ε, an analytic upper bound
//! on the true supremum of the Pexider residual. A sampled supremum only
//! bounds the true one from below, so it is reported but never used as ε.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::maps::{
    cauchy_residual, constant_approximant, constant_residual, ell, odd_part, pexider_residual,
    pointwise_distance, quadratic_residual, reassemble, reassemble_second, uv_split, MapSpec,
    PexiderQuadruple,
};
use crate::normed_space::{Space, Tolerance, Vector};
use crate::ortho::{
    find_orthogonal, midpoint_pair, pairs_to_string, sample_equinorm_vectors,
    sample_orthogonal_pairs, sample_points, Generator, OrthoPair, Strategy, DEFAULT_RADIUS_RANGE,
    PAIR_TOL,
};
use crate::rng::CounterRng;

/// Maps must send 0 within this of 0.
pub const HYPOTHESIS_ATOL: f64 = 1e-12;
/// Bound on the reassembly error, relative to `max(1, ‖f(x)‖)`.
pub const REASSEMBLY_TOL: f64 = 1e-12;
/// Number of top witnesses refined by pattern search.
pub const REFINE_WITNESSES: usize = 5;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub space: Space,
    pub codomain: Space,
    pub n_pairs: usize,
    pub seed: u64,
    pub strategy: Strategy,
    pub refine_steps: usize,
    pub tol: Tolerance,
    pub radius_range: (f64, f64),
}

impl VerifyConfig {
    pub fn new(space: Space, codomain: Space, seed: u64) -> Self {
        Self {
            space,
            codomain,
            n_pairs: 10_000,
            seed,
            strategy: Strategy::Mixed,
            refine_steps: 20,
            tol: Tolerance::default(),
            radius_range: DEFAULT_RADIUS_RANGE,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_pairs == 0 {
            return Err(Error::Precondition("n_pairs must be ≥ 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SupEstimate {
    pub value: f64,
    pub witness: OrthoPair,
    /// Index of the witness in the sample set, `None` if found by refinement.
    pub sample_index: Option<usize>,
}

fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Evaluates `residual` on every pair and takes the largest value. With
/// `refine_steps > 0` the top witnesses are then improved by a compass
/// search on `x`, re-solving orthogonality for each probe so every probed
/// pair stays admissible. Only strict improvements are kept, which makes
/// the result nondecreasing in `refine_steps`.
pub fn estimate_sup_residual<F>(
    residual: F,
    pairs: &[OrthoPair],
    refine_steps: usize,
    space: &Space,
) -> Result<SupEstimate>
where
    F: Fn(&OrthoPair) -> Result<f64> + Sync,
{
    if pairs.is_empty() {
        return Err(Error::Precondition("pair list is empty".into()));
    }
    let values = pairs
        .par_iter()
        .map(&residual)
        .collect::<Result<Vec<f64>>>()?;
    let top = argmax(&values);
    let mut best = SupEstimate {
        value: values[top],
        witness: pairs[top].clone(),
        sample_index: Some(top),
    };
    if refine_steps == 0 {
        return Ok(best);
    }

    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .partial_cmp(&values[a])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    order.truncate(REFINE_WITNESSES);
    order.sort_unstable();

    for (rank, &i) in order.iter().enumerate() {
        let (value, pair) =
            pattern_search(&residual, &pairs[i], values[i], rank, refine_steps, space)?;
        if value > best.value {
            best = SupEstimate {
                value,
                witness: pair,
                sample_index: None,
            };
        }
    }
    Ok(best)
}

fn pattern_search<F>(
    residual: &F,
    start: &OrthoPair,
    start_value: f64,
    rank: usize,
    steps: usize,
    space: &Space,
) -> Result<(f64, OrthoPair)>
where
    F: Fn(&OrthoPair) -> Result<f64>,
{
    let mut current = start.clone();
    let mut current_value = start_value;
    let scale = space.norm_of(&current.x).max(space.norm_of(&current.y));
    let mut step = 0.05 * if scale > 0.0 { scale } else { 1.0 };
    let n = space.dim();

    for s in 0..steps {
        let mut improved: Option<(f64, OrthoPair)> = None;
        for probe in 0..2 * n {
            let sign = if probe % 2 == 0 { 1.0 } else { -1.0 };
            let x = current
                .x
                .add(&Vector::basis(n, probe / 2).scale(sign * step));
            let candidate = match current.generator {
                Generator::TrivialZero => Some(OrthoPair::trivial(x)),
                _ => resolve_partner(
                    &x,
                    &current.y,
                    step,
                    space,
                    &[rank as u64, s as u64, probe as u64],
                ),
            };
            let Some(candidate) = candidate else { continue };
            let value = match residual(&candidate) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let bar = improved.as_ref().map_or(current_value, |(v, _)| *v);
            if value > bar {
                improved = Some((value, candidate));
            }
        }
        match improved {
            Some((v, p)) => {
                current_value = v;
                current = p;
            }
            None => step *= 0.5,
        }
    }
    Ok((current_value, current))
}

/// Finds `y'` with `‖y'‖ = ‖y‖` and `x ⊥ y'`, bisecting along a path that
/// leaves `y` towards a nearby direction.
fn resolve_partner(
    x: &Vector,
    y: &Vector,
    step: f64,
    space: &Space,
    key: &[u64],
) -> Option<OrthoPair> {
    let radius = space.norm_of(y);
    if x.is_zero() || x.check().is_err() {
        return None;
    }
    if radius == 0.0 {
        return Some(OrthoPair::trivial(x.clone()));
    }
    let mut rng = CounterRng::new(key);
    let w = Vector::from_raw(rng.cube(space.dim()));
    let d1 = y.add(&w.scale(step * radius.max(1.0)));
    let pair = find_orthogonal(x, y, &d1, radius, space, 1e-12, 100)
        .ok()?
        .pair;
    pair.admissible(PAIR_TOL).then_some(pair)
}

/// One row of a report: `measured ≤ bound_value`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub measured: f64,
    pub bound_formula: String,
    pub bound_value: f64,
    pub pass: bool,
    pub margin: f64,
    pub witness: Option<OrthoPair>,
}

impl BoundCheck {
    pub fn new(
        name: &str,
        measured: f64,
        bound_formula: &str,
        bound_value: f64,
        tol: &Tolerance,
        witness: Option<OrthoPair>,
    ) -> Self {
        Self {
            name: name.to_string(),
            measured,
            bound_formula: bound_formula.to_string(),
            bound_value,
            pass: tol.within_bound(measured, bound_value),
            margin: bound_value - measured,
            witness,
        }
    }

    fn from_sup(name: &str, sup: &SupEstimate, formula: &str, bound: f64, tol: &Tolerance) -> Self {
        Self::new(
            name,
            sup.value,
            formula,
            bound,
            tol,
            Some(sup.witness.clone()),
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisValue {
    pub map: String,
    pub norm_at_zero: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub epsilon_certified: f64,
    /// Sampled sup of the Pexider residual; informational.
    pub epsilon_measured: f64,
    pub pexider: SupEstimate,
    pub f_odd_cauchy: SupEstimate,
    pub g_odd_cauchy: SupEstimate,
    pub two_fo_minus_ho_ko: SupEstimate,
    pub ell_odd_cauchy: SupEstimate,
    pub u_quadratic: SupEstimate,
    pub v_constant: SupEstimate,
    /// `sup ‖v − c‖` with `c` the constant approximant of `v`.
    pub f_minus_c_sup: SupEstimate,
    pub reassembly_error: f64,
    pub bounds: Vec<BoundCheck>,
    pub hypothesis_check: Vec<HypothesisValue>,
    pub anchor: Vector,
    pub n_pairs: usize,
    pub n_points: usize,
    pub pair_set_hash: String,
    pub notes: Vec<String>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }
}

/// SHA-256 of the pair file rendering of `pairs`.
pub fn pair_set_hash(pairs: &[OrthoPair]) -> String {
    let digest = Sha256::digest(pairs_to_string("", pairs).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn sample_set(cfg: &VerifyConfig) -> Result<(Vec<OrthoPair>, Vec<OrthoPair>)> {
    cfg.validate()?;
    let pairs = sample_orthogonal_pairs(
        &cfg.space,
        cfg.n_pairs,
        cfg.seed,
        cfg.strategy,
        cfg.radius_range,
    )?;
    let points: Vec<OrthoPair> = pairs
        .iter()
        .flat_map(|p| [&p.x, &p.y])
        .map(|v| OrthoPair::trivial(v.clone()))
        .collect();
    Ok((pairs, points))
}

fn check_space(cfg: &VerifyConfig, domain: &Space) -> Result<()> {
    if cfg.space.dim() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            actual: cfg.space.dim(),
        });
    }
    Ok(())
}

/// Checks every step of the stability chain on a sampled pair set.
///
/// With `ε = epsilon_certified`:
/// (a) Pexider residual ≤ ε; (b) `‖2f^o − h^o − k^o‖ ≤ 2ε` on pairs `(x, 0)`;
/// (c), (d) Cauchy residuals of `f^o`, `g^o` ≤ 3ε; (e) Cauchy residual of
/// `ℓ^o` ≤ 6ε; (f) quadratic residual of `u` ≤ 6ε; (g) constant residual of
/// `v` ≤ 6ε; (h) `‖v − c‖ ≤ 6ε`; (i) `f = f^o + u/2 + v/2` and
/// `g = g^o + u/2 − v/2` pointwise.
pub fn verify_theorem_chain(
    q: &PexiderQuadruple,
    cfg: &VerifyConfig,
    epsilon_certified: f64,
) -> Result<StabilityReport> {
    verify_theorem_chain_with_anchor(
        q,
        cfg,
        epsilon_certified,
        &Vector::basis(q.domain().dim(), 0),
    )
}

pub fn verify_theorem_chain_with_anchor(
    q: &PexiderQuadruple,
    cfg: &VerifyConfig,
    epsilon_certified: f64,
    x0: &Vector,
) -> Result<StabilityReport> {
    check_space(cfg, q.domain())?;
    if !(epsilon_certified >= 0.0 && epsilon_certified.is_finite()) {
        return Err(Error::Precondition(format!(
            "certified epsilon must be finite and ≥ 0, got {epsilon_certified}"
        )));
    }
    let hypothesis = q.check_hypothesis(HYPOTHESIS_ATOL)?;
    let (pairs, points) = sample_set(cfg)?;
    let space = q.domain();
    let y_norm = q.codomain.norm_spec();
    let steps = cfg.refine_steps;
    let eps = epsilon_certified;

    let (fo, go, ho, ko) = (
        odd_part(&q.f),
        odd_part(&q.g),
        odd_part(&q.h),
        odd_part(&q.k),
    );
    let ell_o = odd_part(&ell(&q.h, &q.k)?);
    let (u, v) = uv_split(&q.f, &q.g)?;
    let c = constant_approximant(&v, x0, space)?;
    let two_fo = MapSpec::scale(2.0, &fo)?;
    let fhk = MapSpec::difference(&MapSpec::difference(&two_fo, &ho)?, &ko)?;
    let zero = MapSpec::zero(space, q.codomain.dim())?;
    let f_back = reassemble(&fo, &u, &v)?;
    let g_back = reassemble_second(&go, &u, &v)?;

    let pexider = estimate_sup_residual(|p| pexider_residual(q, p), &pairs, steps, space)?;
    let two_fo_minus_ho_ko = estimate_sup_residual(
        |p| pointwise_distance(&fhk, &zero, &p.x, y_norm),
        &points,
        steps,
        space,
    )?;
    let f_odd_cauchy =
        estimate_sup_residual(|p| cauchy_residual(&fo, p, y_norm), &pairs, steps, space)?;
    let g_odd_cauchy =
        estimate_sup_residual(|p| cauchy_residual(&go, p, y_norm), &pairs, steps, space)?;
    let ell_odd_cauchy =
        estimate_sup_residual(|p| cauchy_residual(&ell_o, p, y_norm), &pairs, steps, space)?;
    let u_quadratic =
        estimate_sup_residual(|p| quadratic_residual(&u, p, y_norm), &pairs, steps, space)?;
    let v_constant =
        estimate_sup_residual(|p| constant_residual(&v, p, y_norm), &pairs, steps, space)?;
    let f_minus_c_sup = estimate_sup_residual(
        |p| pointwise_distance(&v, &c, &p.x, y_norm),
        &points,
        steps,
        space,
    )?;

    let relative = |a: &MapSpec, b: &MapSpec, x: &Vector| -> Result<f64> {
        let scale = y_norm.norm(&a.apply(x)?)?.max(1.0);
        Ok(pointwise_distance(a, b, x, y_norm)? / scale)
    };
    let reassembly = estimate_sup_residual(
        |p| Ok(relative(&q.f, &f_back, &p.x)?.max(relative(&q.g, &g_back, &p.x)?)),
        &points,
        0,
        space,
    )?;

    let tol = &cfg.tol;
    let bounds = vec![
        BoundCheck::from_sup("pexider", &pexider, "eps", eps, tol),
        BoundCheck::from_sup(
            "two_fo_minus_ho_ko",
            &two_fo_minus_ho_ko,
            "2*eps",
            2.0 * eps,
            tol,
        ),
        BoundCheck::from_sup("f_odd_cauchy", &f_odd_cauchy, "3*eps", 3.0 * eps, tol),
        BoundCheck::from_sup("g_odd_cauchy", &g_odd_cauchy, "3*eps", 3.0 * eps, tol),
        BoundCheck::from_sup("ell_odd_cauchy", &ell_odd_cauchy, "6*eps", 6.0 * eps, tol),
        BoundCheck::from_sup("u_quadratic", &u_quadratic, "6*eps", 6.0 * eps, tol),
        BoundCheck::from_sup("v_constant", &v_constant, "6*eps", 6.0 * eps, tol),
        BoundCheck::from_sup("v_minus_c", &f_minus_c_sup, "6*eps", 6.0 * eps, tol),
        BoundCheck {
            name: "reassembly".into(),
            measured: reassembly.value,
            bound_formula: "1e-12".into(),
            bound_value: REASSEMBLY_TOL,
            pass: reassembly.value <= REASSEMBLY_TOL,
            margin: REASSEMBLY_TOL - reassembly.value,
            witness: Some(reassembly.witness.clone()),
        },
    ];

    Ok(StabilityReport {
        epsilon_certified: eps,
        epsilon_measured: pexider.value,
        reassembly_error: reassembly.value,
        pexider,
        f_odd_cauchy,
        g_odd_cauchy,
        two_fo_minus_ho_ko,
        ell_odd_cauchy,
        u_quadratic,
        v_constant,
        f_minus_c_sup,
        bounds,
        hypothesis_check: hypothesis
            .iter()
            .map(|(m, n)| HypothesisValue {
                map: m.to_string(),
                norm_at_zero: *n,
            })
            .collect(),
        anchor: x0.clone(),
        n_pairs: pairs.len(),
        n_points: points.len(),
        pair_set_hash: pair_set_hash(&pairs),
        notes: vec![
            "g_odd_cauchy uses the bound obtained from the y -> -y substitution with f and g exchanged".into(),
            "ell_odd_cauchy bound 6*eps follows from the f_odd bound (3*eps) and |l^o - f^o| <= eps pointwise".into(),
            "reassembly uses f = f^o + u/2 + v/2 and g = g^o + u/2 - v/2".into(),
        ],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantReport {
    pub epsilon_certified: Option<f64>,
    /// Sampled sup of `‖f(x+y) − f(x−y)‖`, including the pairs built from
    /// each sample point and its anchor image.
    pub epsilon_measured: SupEstimate,
    pub f_minus_c_sup: SupEstimate,
    /// Largest scaled defect among the pairs `(½(x+z), ½(x−z))`, `z = x0‖x‖/‖x0‖`.
    pub proof_pair_max_defect: f64,
    pub bounds: Vec<BoundCheck>,
    pub anchor: Vector,
    pub n_pairs: usize,
    pub n_points: usize,
    pub pair_set_hash: String,
}

impl ConstantReport {
    pub fn passed(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }
}

/// Certified bound on `sup ‖f(x+y) − f(x−y)‖` for a map whose noise-free
/// part is orthogonally constant.
pub fn certified_constant_epsilon(f: &MapSpec, codomain: &Space) -> f64 {
    2.0 * f.noise_amplitude() * codomain.ones_norm()
}

/// Builds `c = constant_approximant(f, x0)` and measures `sup ‖f − c‖`
/// against the sampled orthogonal-constancy defect of `f` and, when given,
/// a certified ε.
pub fn verify_constant_stability(
    f: &MapSpec,
    x0: &Vector,
    cfg: &VerifyConfig,
    epsilon_certified: Option<f64>,
) -> Result<ConstantReport> {
    let space = f.domain();
    check_space(cfg, space)?;
    let x0_norm = space.norm(x0)?;
    if x0_norm == 0.0 {
        return Err(Error::ZeroAnchor);
    }
    cfg.validate()?;
    let y_norm = cfg.codomain.norm_spec();
    let c = constant_approximant(f, x0, space)?;

    let pairs =
        sample_orthogonal_pairs(space, cfg.n_pairs, cfg.seed, cfg.strategy, cfg.radius_range)?;
    let xs = sample_points(space, cfg.n_pairs, cfg.seed, cfg.radius_range)?;
    let points: Vec<OrthoPair> = xs.iter().cloned().map(OrthoPair::trivial).collect();

    let proof_pair = |x: &Vector| -> Result<OrthoPair> {
        let z = x0.scale(space.norm_of(x) / x0_norm);
        midpoint_pair(x, &z, space, 1e-12 * space.norm_of(x).max(1.0))
    };
    let proof_pairs = xs.iter().map(proof_pair).collect::<Result<Vec<_>>>()?;
    let mut proof_pair_max_defect = proof_pairs
        .iter()
        .fold(0.0f64, |m, p| m.max(p.scaled_defect()));
    let mut all_pairs = pairs.clone();
    all_pairs.extend(proof_pairs);

    let steps = cfg.refine_steps;
    let f_minus_c = estimate_sup_residual(
        |p| pointwise_distance(f, &c, &p.x, y_norm),
        &points,
        steps,
        space,
    )?;
    // Refinement may leave the sampled points; the witness's own proof pair
    // joins the constancy sample so the two suprema stay comparable.
    let witness_pair = proof_pair(&f_minus_c.witness.x)?;
    proof_pair_max_defect = proof_pair_max_defect.max(witness_pair.scaled_defect());
    all_pairs.push(witness_pair);
    let eps_hat = estimate_sup_residual(
        |p| constant_residual(f, p, y_norm),
        &all_pairs,
        steps,
        space,
    )?;

    let tol = &cfg.tol;
    let mut bounds = vec![
        BoundCheck::new(
            "proof_pairs_orthogonal",
            proof_pair_max_defect,
            "pair_tol",
            PAIR_TOL,
            tol,
            None,
        ),
        BoundCheck::from_sup(
            "f_minus_c_vs_measured",
            &f_minus_c,
            "eps_measured",
            eps_hat.value,
            tol,
        ),
    ];
    if let Some(eps) = epsilon_certified {
        bounds.push(BoundCheck::from_sup(
            "constant_residual",
            &eps_hat,
            "eps",
            eps,
            tol,
        ));
        bounds.push(BoundCheck::from_sup(
            "f_minus_c",
            &f_minus_c,
            "eps",
            eps,
            tol,
        ));
    }

    Ok(ConstantReport {
        epsilon_certified,
        epsilon_measured: eps_hat,
        f_minus_c_sup: f_minus_c,
        proof_pair_max_defect,
        bounds,
        anchor: x0.clone(),
        n_pairs: pairs.len(),
        n_points: points.len(),
        pair_set_hash: pair_set_hash(&pairs),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EquinormReport {
    pub samples: usize,
    pub max_discrepancy: f64,
    /// Equinorm pair `(x, y)` attaining the maximum.
    pub witness: (Vector, Vector),
    pub pass: bool,
}

/// Samples equinorm pairs and measures `max ‖c(x) − c(y)‖`; passes iff the
/// maximum is within `cfg.tol.atol`.
pub fn verify_equinorm_lemma(c: &MapSpec, cfg: &VerifyConfig) -> Result<EquinormReport> {
    check_space(cfg, c.domain())?;
    cfg.validate()?;
    let y_norm = cfg.codomain.norm_spec();
    let pairs = sample_equinorm_vectors(c.domain(), cfg.n_pairs, cfg.seed, cfg.radius_range)?;
    let values = pairs
        .par_iter()
        .map(|(x, y)| {
            let (cx, cy) = (c.apply(x)?, c.apply(y)?);
            y_norm.norm(&cx.sub(&cy))
        })
        .collect::<Result<Vec<f64>>>()?;
    let i = argmax(&values);
    Ok(EquinormReport {
        samples: pairs.len(),
        max_discrepancy: values[i],
        witness: pairs[i].clone(),
        pass: values[i] <= cfg.tol.atol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcdsl::parse;
    use crate::ortho::Generator;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn space(dim: usize, norm: &str) -> Space {
        Space::new(dim, norm.parse().unwrap()).unwrap()
    }

    fn cfg(s: &Space, n: usize, seed: u64) -> VerifyConfig {
        let mut c = VerifyConfig::new(s.clone(), space(1, "l2"), seed);
        c.n_pairs = n;
        c.refine_steps = 5;
        c
    }

    #[test]
    fn zero_residual_uses_first_witness() {
        let s = space(2, "l2");
        let pairs =
            sample_orthogonal_pairs(&s, 20, 1, Strategy::Mixed, DEFAULT_RADIUS_RANGE).unwrap();
        let est = estimate_sup_residual(|_| Ok(0.0), &pairs, 3, &s).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.witness, pairs[0]);
        assert!(estimate_sup_residual(|_| Ok(0.0), &[], 3, &s).is_err());
    }

    #[test]
    fn projection_sup_sees_manual_pair() {
        let s = space(2, "l1");
        let proj = MapSpec::expression(&s, parse("x[0]", 2).unwrap()).unwrap();
        let mut pairs = sample_orthogonal_pairs(&s, 50, 2, Strategy::Mixed, (0.01, 0.1)).unwrap();
        pairs.push(OrthoPair::new(v(&[2.0, 1.0]), v(&[1.0, -2.0]), &s, Generator::Manual).unwrap());
        let l2 = crate::normed_space::NormSpec::l2();
        let est =
            estimate_sup_residual(|p| constant_residual(&proj, p, &l2), &pairs, 0, &s).unwrap();
        assert!(est.value >= 2.0);
    }

    #[test]
    fn refinement_is_monotone_and_sound() {
        let s = space(3, "l1");
        let proj = MapSpec::expression(&s, parse("x[0]*x[1] - x[2]", 3).unwrap()).unwrap();
        let pairs =
            sample_orthogonal_pairs(&s, 100, 5, Strategy::Mixed, DEFAULT_RADIUS_RANGE).unwrap();
        let l2 = crate::normed_space::NormSpec::l2();
        let res = |p: &OrthoPair| constant_residual(&proj, p, &l2);
        let mut last = 0.0;
        for steps in [0, 1, 2, 5, 10, 20] {
            let est = estimate_sup_residual(res, &pairs, steps, &s).unwrap();
            assert!(est.value >= last, "{steps}: {} < {last}", est.value);
            assert!(est.witness.admissible(PAIR_TOL));
            assert!((res(&est.witness).unwrap() - est.value).abs() <= 1e-12);
            last = est.value;
        }
    }

    #[test]
    fn exact_chain_passes() {
        let s = space(2, "lp:3");
        let y = space(2, "l2");
        let q = PexiderQuadruple::exact_solution(&s, &y, 1).unwrap();
        let mut c = VerifyConfig::new(s.clone(), y, 3);
        c.n_pairs = 300;
        c.refine_steps = 3;
        let r = verify_theorem_chain(&q, &c, 0.0).unwrap();
        assert!(r.passed(), "{:#?}", r.bounds);
        assert_eq!(r.bounds.len(), 9);
        for b in &r.bounds[..7] {
            assert!(b.measured <= 1e-9, "{} {}", b.name, b.measured);
        }
    }

    #[test]
    fn perturbed_chain_passes() {
        let s = space(2, "l1");
        let y = space(1, "l2");
        let q = PexiderQuadruple::exact_solution(&s, &y, 2)
            .unwrap()
            .perturbed(0.01, 7)
            .unwrap();
        let eps = q.certified_epsilon();
        assert!((eps - 0.08).abs() < 1e-15);
        let mut c = VerifyConfig::new(s.clone(), y, 3);
        c.n_pairs = 300;
        c.refine_steps = 3;
        let r = verify_theorem_chain(&q, &c, eps).unwrap();
        assert!(r.passed(), "{:#?}", r.bounds);
        assert!(r.bounds.iter().all(|b| b.margin > 0.0));
        assert!(r.epsilon_measured > 0.0);
    }

    #[test]
    fn chain_rejects_nonzero_at_origin() {
        let s = space(2, "l2");
        let y = space(1, "l2");
        let z = MapSpec::zero(&s, 1).unwrap();
        let k = MapSpec::expression(&s, parse("1 + x[0]", 2).unwrap()).unwrap();
        let q = PexiderQuadruple::new(z.clone(), z.clone(), z, k, y.clone()).unwrap();
        let err = verify_theorem_chain(&q, &VerifyConfig::new(s, y, 1), 0.0).unwrap_err();
        assert!(matches!(err, Error::Hypothesis { ref map, .. } if map == "k"));
    }

    #[test]
    fn undersized_certificate_fails_a_row() {
        let s = space(2, "l2");
        let y = space(1, "l2");
        let q = PexiderQuadruple::exact_solution(&s, &y, 2)
            .unwrap()
            .perturbed(0.1, 7)
            .unwrap();
        let mut c = VerifyConfig::new(s, y, 3);
        c.n_pairs = 200;
        c.refine_steps = 0;
        let r = verify_theorem_chain(&q, &c, 1e-6).unwrap();
        assert!(!r.passed());
        let failed = r.bounds.iter().find(|b| !b.pass).unwrap();
        assert!(failed.witness.is_some());
    }

    #[test]
    fn constant_stability_radial() {
        let s = space(2, "l2");
        let f = MapSpec::radial(&s, parse("x[0]^2", 1).unwrap()).unwrap();
        let r =
            verify_constant_stability(&f, &v(&[1.0, 1.0]), &cfg(&s, 200, 4), Some(0.0)).unwrap();
        assert!(r.f_minus_c_sup.value <= 1e-12);
        assert!(r.passed(), "{:#?}", r.bounds);
    }

    #[test]
    fn constant_stability_noisy_radial() {
        let s = space(3, "lp:1.5");
        let base = MapSpec::radial(&s, parse("x[0]", 1).unwrap()).unwrap();
        let f = MapSpec::noisy(&base, 0.01, 3, true).unwrap();
        let c = cfg(&s, 300, 4);
        let eps = certified_constant_epsilon(&f, &c.codomain);
        assert_eq!(eps, 0.02);
        let r = verify_constant_stability(&f, &v(&[0.0, 1.0, 0.0]), &c, Some(eps)).unwrap();
        assert!(r.f_minus_c_sup.value <= 0.02 + 1e-9);
        assert!(r.passed(), "{:#?}", r.bounds);
    }

    #[test]
    fn constant_stability_projection_is_consistent() {
        let s = space(2, "l2");
        let f = MapSpec::expression(&s, parse("x[0]", 2).unwrap()).unwrap();
        let r = verify_constant_stability(&f, &v(&[1.0, 0.0]), &cfg(&s, 200, 4), None).unwrap();
        assert!(r.epsilon_measured.value > 0.0);
        assert!(r.passed(), "{:#?}", r.bounds);
        assert!(verify_constant_stability(&f, &v(&[0.0, 0.0]), &cfg(&s, 10, 4), None).is_err());
    }

    #[test]
    fn equinorm_lemma() {
        let s = space(2, "l2");
        let f = MapSpec::expression(&s, parse("x[0]^3 + sin(x[1])", 2).unwrap()).unwrap();
        let c = constant_approximant(&f, &v(&[0.6, -0.8]), &s).unwrap();
        let r = verify_equinorm_lemma(&c, &cfg(&s, 500, 9)).unwrap();
        assert!(r.max_discrepancy <= 1e-12 && r.pass);

        let radial = MapSpec::radial(&s, parse("sin(x[0])", 1).unwrap()).unwrap();
        let r = verify_equinorm_lemma(&radial, &cfg(&s, 500, 9)).unwrap();
        assert!(r.max_discrepancy <= 1e-12);

        let proj = MapSpec::expression(&s, parse("x[0]", 2).unwrap()).unwrap();
        let r = verify_equinorm_lemma(&proj, &cfg(&s, 500, 9)).unwrap();
        assert!(!r.pass);
        let l2 = crate::normed_space::NormSpec::l2();
        let d = l2
            .norm(
                &proj
                    .apply(&v(&[1.0, 0.0]))
                    .unwrap()
                    .sub(&proj.apply(&v(&[0.0, 1.0])).unwrap()),
            )
            .unwrap();
        assert!(d >= 1.0);
    }
}
