//! The `isostab` command line: JSON experiment configs, subcommands and
//! report emission.
//!
//! Exit codes: 0 when every bound row passes, 1 when at least one fails
//! (the failing rows and their witnesses are printed), 2 on usage, config
//! or hypothesis errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::funcdsl::parse;
use crate::maps::{MapSpec, Matrix, PexiderQuadruple};
use crate::normed_space::{validate_norm_axioms, Axiom, NormSpec, Space, Tolerance, Vector};
use crate::ortho::{
    homogeneity_witness, pairs_to_string, sample_orthogonal_pairs, Strategy, PAIR_TOL,
};
use crate::report::{bound_table, bounds_csv, failure_lines, ReportDocument};
use crate::rng::hash_words;
use crate::verify::{
    certified_constant_epsilon, verify_constant_stability, verify_theorem_chain_with_anchor,
    BoundCheck, VerifyConfig,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const PRECEDENCE: &str = "\
Settings are resolved in this order: command-line flags, then the --config
file, then built-in defaults.

  --dim, --norm   override space.dim and space.norm
  --seed          overrides verification.seed (required by every sampling command)
  --samples       overrides verification.n_pairs (trials for witness-homogeneity)
  --tol           sets both verification.atol and verification.rtol
  --out, --format override output.path and output.format

Reports are written to --out. Without --out, an explicit --format prints the
report to stdout in place of the bound table.

Exit status: 0 all bounds pass, 1 a bound failed, 2 usage or config error.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "isostab",
    version,
    about = "Stability checks for orthogonally constant and Pexider-quadratic maps",
    after_help = PRECEDENCE
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    globals: GlobalArgs,
}

#[derive(Debug, Clone, Default, Args)]
struct GlobalArgs {
    /// Experiment config (JSON)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for every sampled quantity
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    /// Number of samples, pairs or trials
    #[arg(long, global = true, value_name = "INT")]
    samples: Option<usize>,
    /// Domain dimension
    #[arg(long, global = true, value_name = "INT")]
    dim: Option<usize>,
    /// Domain norm: l1, l2, linf, lp:<p>, optionally with :w=<w1,...,wn>
    #[arg(long, global = true, value_name = "STR")]
    norm: Option<String>,
    /// Absolute and relative tolerance
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,
    /// Report (or pair file) destination
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample vectors and check homogeneity and the triangle inequality
    CheckNorm,
    /// Generate isosceles orthogonal pairs and write them as a pair file
    GenPairs {
        /// midpoint, bisection or mixed
        #[arg(long, default_value = "mixed")]
        strategy: String,
    },
    /// Search for orthogonal (x, y) and λ with defect(x, λy) above a threshold
    WitnessHomogeneity {
        #[arg(long, default_value_t = 0.1)]
        threshold: f64,
    },
    /// Check that an approximately orthogonally constant map is close to its constant approximant
    VerifyConstant,
    /// Run the stability chain for the quadruple bound in the config
    VerifyPexider,
    /// Run the built-in exact solution plus noise and print the bound table
    Demo {
        /// Noise amplitude applied to each of f, g, h, k
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckNorm => "check-norm",
            Command::GenPairs { .. } => "gen-pairs",
            Command::WitnessHomogeneity { .. } => "witness-homogeneity",
            Command::VerifyConstant => "verify-constant",
            Command::VerifyPexider => "verify-pexider",
            Command::Demo { .. } => "demo",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceBlock {
    pub dim: usize,
    pub norm: String,
}

impl SpaceBlock {
    fn space(&self) -> Result<Space> {
        Space::new(self.dim, self.norm.parse::<NormSpec>()?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseBlock {
    pub amplitude: f64,
    pub seed: u64,
    #[serde(default = "default_true")]
    pub zero_at_origin: bool,
}

fn default_true() -> bool {
    true
}

/// A named map. `kind` selects which of the other fields are read:
///
/// | kind             | fields                                  |
/// |------------------|-----------------------------------------|
/// | `zero`           |                                         |
/// | `linear`         | `matrix` (codomain × domain)            |
/// | `quadratic_form` | `matrices` (one domain × domain each)   |
/// | `radial`         | `expr`, a profile in `x[0]` = ‖x‖       |
/// | `expression`     | `expr`, components separated by `;`     |
/// | `sum`            | `terms`                                 |
/// | `difference`     | `terms` (exactly two)                   |
/// | `scale`          | `factor`, `map`                         |
/// | `negate_arg`     | `map`                                   |
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseBlock>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadrupleBlock {
    pub f: String,
    pub g: String,
    pub h: String,
    pub k: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantBlock {
    pub map: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_certified: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationBlock {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub n_pairs: Option<usize>,
    #[serde(default)]
    pub strategy: Option<Strategy>,
    #[serde(default)]
    pub refine_steps: Option<usize>,
    #[serde(default)]
    pub atol: Option<f64>,
    #[serde(default)]
    pub rtol: Option<f64>,
    #[serde(default)]
    pub radius_range: Option<(f64, f64)>,
    #[serde(default)]
    pub epsilon_certified: Option<f64>,
    #[serde(default)]
    pub anchor: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    #[serde(default)]
    pub format: Option<Format>,
    /// Not embedded in reports, so a report does not depend on where it was written.
    #[serde(default, skip_serializing)]
    pub path: Option<PathBuf>,
}

/// A single JSON experiment document.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub space: Option<SpaceBlock>,
    #[serde(default)]
    pub codomain: Option<SpaceBlock>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapConfig>,
    #[serde(default)]
    pub quadruple: Option<QuadrupleBlock>,
    #[serde(default)]
    pub constant: Option<ConstantBlock>,
    #[serde(default)]
    pub verification: VerificationBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("malformed config: {e}")))
    }

    /// Builds the named maps and everything they reference.
    pub fn resolve_maps(
        &self,
        domain: &Space,
        codomain_dim: usize,
        names: &[&str],
    ) -> Result<BTreeMap<String, MapSpec>> {
        let mut done = BTreeMap::new();
        for name in names {
            self.resolve_map(name, domain, codomain_dim, &mut done, &mut Vec::new())?;
        }
        Ok(done)
    }

    fn resolve_map(
        &self,
        name: &str,
        domain: &Space,
        codim: usize,
        done: &mut BTreeMap<String, MapSpec>,
        stack: &mut Vec<String>,
    ) -> Result<MapSpec> {
        if let Some(m) = done.get(name) {
            return Ok(m.clone());
        }
        if stack.iter().any(|s| s == name) {
            stack.push(name.to_string());
            return Err(Error::Config(format!(
                "cyclic map reference: {}",
                stack.join(" -> ")
            )));
        }
        let cfg = self
            .maps
            .get(name)
            .ok_or_else(|| Error::Config(format!("unresolved map name `{name}`")))?;
        let missing =
            |field: &str| Error::Config(format!("map `{name}` ({}) needs `{field}`", cfg.kind));
        stack.push(name.to_string());

        let base = match cfg.kind.as_str() {
            "zero" => MapSpec::zero(domain, codim)?,
            "linear" => {
                let rows = cfg.matrix.clone().ok_or_else(|| missing("matrix"))?;
                MapSpec::linear(domain, Matrix::from_rows(rows)?)?
            }
            "quadratic_form" => {
                let forms = cfg
                    .matrices
                    .clone()
                    .ok_or_else(|| missing("matrices"))?
                    .into_iter()
                    .map(Matrix::from_rows)
                    .collect::<Result<Vec<_>>>()?;
                MapSpec::quadratic_form(domain, forms)?
            }
            "radial" => {
                let text = cfg.expr.as_deref().ok_or_else(|| missing("expr"))?;
                MapSpec::radial(domain, parse(text, 1)?)?
            }
            "expression" => {
                let text = cfg.expr.as_deref().ok_or_else(|| missing("expr"))?;
                MapSpec::expression(domain, parse(text, domain.dim())?)?
            }
            "sum" | "difference" => {
                let terms = cfg.terms.as_ref().ok_or_else(|| missing("terms"))?;
                if terms.is_empty() || (cfg.kind == "difference" && terms.len() != 2) {
                    return Err(Error::Config(format!(
                        "map `{name}` ({}) has {} terms",
                        cfg.kind,
                        terms.len()
                    )));
                }
                let parts = terms
                    .iter()
                    .map(|t| self.resolve_map(t, domain, codim, done, stack))
                    .collect::<Result<Vec<_>>>()?;
                if cfg.kind == "difference" {
                    MapSpec::difference(&parts[0], &parts[1])?
                } else {
                    let mut acc = parts[0].clone();
                    for p in &parts[1..] {
                        acc = MapSpec::sum(&acc, p)?;
                    }
                    acc
                }
            }
            "scale" => {
                let factor = cfg.factor.ok_or_else(|| missing("factor"))?;
                let inner = cfg.map.as_deref().ok_or_else(|| missing("map"))?;
                MapSpec::scale(
                    factor,
                    &self.resolve_map(inner, domain, codim, done, stack)?,
                )?
            }
            "negate_arg" => {
                let inner = cfg.map.as_deref().ok_or_else(|| missing("map"))?;
                MapSpec::reflect(&self.resolve_map(inner, domain, codim, done, stack)?)
            }
            other => {
                return Err(Error::Config(format!(
                    "map `{name}` has unknown kind `{other}`"
                )))
            }
        };
        stack.pop();

        if base.codomain_dim() != codim {
            return Err(Error::Config(format!(
                "map `{name}` has codomain dimension {}, the codomain block says {codim}",
                base.codomain_dim()
            )));
        }
        let map = match &cfg.noise {
            Some(n) => MapSpec::noisy(&base, n.amplitude, n.seed, n.zero_at_origin)?,
            None => base,
        };
        done.insert(name.to_string(), map.clone());
        Ok(map)
    }
}

enum Outcome {
    Pass,
    Fail,
}

struct Context<'w> {
    flags: GlobalArgs,
    config: ExperimentConfig,
    has_config: bool,
    out: &'w mut dyn Write,
}

impl Context<'_> {
    fn space(&mut self, default_dim: usize, default_norm: &str) -> Result<Space> {
        let block = self.config.space.get_or_insert_with(|| SpaceBlock {
            dim: default_dim,
            norm: default_norm.into(),
        });
        if let Some(d) = self.flags.dim {
            block.dim = d;
        }
        if let Some(n) = &self.flags.norm {
            block.norm = n.clone();
        }
        block.space()
    }

    fn codomain(&mut self, default_dim: usize, default_norm: &str) -> Result<Space> {
        self.config
            .codomain
            .get_or_insert_with(|| SpaceBlock {
                dim: default_dim,
                norm: default_norm.into(),
            })
            .space()
    }

    fn seed(&mut self) -> Result<u64> {
        let v = &mut self.config.verification;
        if self.flags.seed.is_some() {
            v.seed = self.flags.seed;
        }
        v.seed.ok_or_else(|| {
            Error::Config("--seed is required (or verification.seed in the config)".into())
        })
    }

    fn samples(&mut self, default: usize) -> Result<usize> {
        let v = &mut self.config.verification;
        let n = self.flags.samples.or(v.n_pairs).unwrap_or(default);
        if n == 0 {
            return Err(Error::Config("--samples must be ≥ 1".into()));
        }
        v.n_pairs = Some(n);
        Ok(n)
    }

    fn tolerance(&mut self, default: Tolerance) -> Result<Tolerance> {
        let v = &mut self.config.verification;
        if let Some(t) = self.flags.tol {
            v.atol = Some(t);
            v.rtol = Some(t);
        }
        let tol = Tolerance::new(
            v.atol.unwrap_or(default.atol),
            v.rtol.unwrap_or(default.rtol),
        );
        for t in [tol.atol, tol.rtol] {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::Config(format!(
                    "tolerance must be finite and ≥ 0, got {t}"
                )));
            }
        }
        v.atol = Some(tol.atol);
        v.rtol = Some(tol.rtol);
        Ok(tol)
    }

    fn radius_range(&mut self, default: (f64, f64)) -> (f64, f64) {
        *self.config.verification.radius_range.get_or_insert(default)
    }

    fn verify_config(&mut self, space: Space, codomain: Space) -> Result<VerifyConfig> {
        let mut cfg = VerifyConfig::new(space, codomain, self.seed()?);
        cfg.n_pairs = self.samples(cfg.n_pairs)?;
        cfg.tol = self.tolerance(cfg.tol)?;
        cfg.radius_range = self.radius_range(cfg.radius_range);
        let v = &mut self.config.verification;
        cfg.strategy = *v.strategy.get_or_insert(cfg.strategy);
        cfg.refine_steps = *v.refine_steps.get_or_insert(cfg.refine_steps);
        Ok(cfg)
    }

    fn anchor(&self, space: &Space, explicit: Option<&Vec<f64>>) -> Result<Vector> {
        match explicit.or(self.config.verification.anchor.as_ref()) {
            Some(c) => {
                let v = Vector::new(c.clone())?;
                space.check_dim(&v)?;
                Ok(v)
            }
            None => Ok(Vector::basis(space.dim(), 0)),
        }
    }

    fn format(&self) -> Option<Format> {
        self.flags.format.or(self.config.output.format)
    }

    fn out_path(&self) -> Option<PathBuf> {
        self.flags
            .out
            .clone()
            .or_else(|| self.config.output.path.clone())
    }

    fn resolved_config(
        &self,
        command: &str,
        extra: serde_json::Value,
    ) -> Result<serde_json::Value> {
        let mut cfg = self.config.clone();
        cfg.output.format = Some(self.format().unwrap_or(Format::Json));
        Ok(json!({
            "command": command,
            "experiment": serde_json::to_value(&cfg)?,
            "resolved": extra,
        }))
    }

    /// Prints the bound table (or the report itself when `--format` is given
    /// without a destination) and writes the report to the output path.
    fn emit<T: Serialize>(
        &mut self,
        kind: &str,
        hash: Option<&str>,
        config: &serde_json::Value,
        report: &T,
        bounds: &[BoundCheck],
        summary: &[String],
    ) -> Result<Outcome> {
        let passed = bounds.iter().all(|b| b.pass);
        let format = self.format();
        let render = |format: Format| -> Result<String> {
            match format {
                Format::Json => ReportDocument::new(kind, passed, hash, config, report).to_json(),
                Format::Csv => Ok(bounds_csv(bounds)),
            }
        };
        match (self.out_path(), self.flags.format) {
            (None, Some(f)) => self.out.write_all(render(f)?.as_bytes())?,
            (path, _) => {
                for line in summary {
                    writeln!(self.out, "{line}")?;
                }
                if !bounds.is_empty() {
                    write!(self.out, "{}", bound_table(bounds))?;
                }
                if let Some(path) = path {
                    fs::write(&path, render(format.unwrap_or(Format::Json))?)?;
                    writeln!(self.out, "report written to {}", path.display())?;
                }
            }
        }
        for line in failure_lines(bounds) {
            writeln!(self.out, "{line}")?;
        }
        Ok(if passed { Outcome::Pass } else { Outcome::Fail })
    }
}

/// Runs the command line with process stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
    };
    match execute(cli, out) {
        Ok(Outcome::Pass) => EXIT_PASS,
        Ok(Outcome::Fail) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    let (config, has_config) = match &cli.globals.config {
        Some(path) => (ExperimentConfig::load(path)?, true),
        None => (ExperimentConfig::default(), false),
    };
    let mut ctx = Context {
        flags: cli.globals,
        config,
        has_config,
        out,
    };
    let name = cli.command.name();
    match cli.command {
        Command::CheckNorm => check_norm(&mut ctx, name),
        Command::GenPairs { strategy } => gen_pairs(&mut ctx, strategy.parse()?),
        Command::WitnessHomogeneity { threshold } => witness(&mut ctx, name, threshold),
        Command::VerifyConstant => verify_constant(&mut ctx, name),
        Command::VerifyPexider => verify_pexider(&mut ctx, name),
        Command::Demo { delta } => demo(&mut ctx, name, delta),
    }
}

fn check_norm(ctx: &mut Context, name: &str) -> Result<Outcome> {
    let space = ctx.space(2, "l2")?;
    let seed = ctx.seed()?;
    let n = ctx.samples(1000)?;
    let tol = ctx.tolerance(Tolerance::new(1e-12, 1e-12))?;
    let report = validate_norm_axioms(&space, n, seed, tol)?;
    let count = |a: Axiom| report.violations.iter().filter(|v| v.axiom == a).count() as f64;
    let exact = Tolerance::new(0.0, 0.0);
    let bounds = vec![
        BoundCheck::new(
            "homogeneity_violations",
            count(Axiom::Homogeneity),
            "0",
            0.0,
            &exact,
            None,
        ),
        BoundCheck::new(
            "triangle_violations",
            count(Axiom::Triangle),
            "0",
            0.0,
            &exact,
            None,
        ),
    ];
    let config = ctx.resolved_config(name, json!({ "space": space, "tol": tol }))?;
    let summary = vec![format!("{space}: {n} samples, seed {seed}")];
    ctx.emit(name, None, &config, &report, &bounds, &summary)
}

fn gen_pairs(ctx: &mut Context, strategy: Strategy) -> Result<Outcome> {
    let space = ctx.space(2, "l2")?;
    let seed = ctx.seed()?;
    let n = ctx.samples(100)?;
    let range = ctx.radius_range(crate::ortho::DEFAULT_RADIUS_RANGE);
    let pairs = sample_orthogonal_pairs(&space, n, seed, strategy, range)?;
    let text = pairs_to_string(
        &format!("space={space} seed={seed} strategy={strategy} n={n}"),
        &pairs,
    );
    match ctx.out_path() {
        Some(path) => {
            fs::write(&path, text)?;
            writeln!(ctx.out, "wrote {n} pairs to {}", path.display())?;
        }
        None => ctx.out.write_all(text.as_bytes())?,
    }
    let worst = pairs.iter().fold(0.0f64, |m, p| m.max(p.scaled_defect()));
    Ok(if worst <= PAIR_TOL {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn witness(ctx: &mut Context, name: &str, threshold: f64) -> Result<Outcome> {
    let space = ctx.space(2, "l1")?;
    let seed = ctx.seed()?;
    let n = ctx.samples(1000)?;
    let found = homogeneity_witness(&space, n, seed, threshold)?;
    let summary = vec![match &found {
        Some(w) => format!(
            "witness at trial {}: x={:?} y={:?} lambda={:?} defect(x, lambda*y)={:e}",
            w.trial,
            w.pair.x.coords(),
            w.pair.y.coords(),
            w.lambda,
            w.defect
        ),
        None => format!("no witness above {threshold:e} in {n} trials on {space}"),
    }];
    let config = ctx.resolved_config(name, json!({ "space": space, "threshold": threshold }))?;
    ctx.emit(name, None, &config, &found, &[], &summary)
}

fn verify_constant(ctx: &mut Context, name: &str) -> Result<Outcome> {
    let space = ctx.space(2, "l2")?;
    let codomain = ctx.codomain(1, "l2")?;
    let cfg = ctx.verify_config(space.clone(), codomain.clone())?;
    let (f, block) = if ctx.has_config {
        let block = ctx
            .config
            .constant
            .clone()
            .ok_or_else(|| Error::Config("config has no `constant` block".into()))?;
        let maps = ctx
            .config
            .resolve_maps(&space, codomain.dim(), &[&block.map])?;
        (maps[&block.map].clone(), block)
    } else {
        let profile = MapSpec::radial(&space, parse("x[0]", 1)?)?;
        let f = MapSpec::noisy(&profile, 0.01, hash_words(&[cfg.seed, 0xc0]), true)?;
        let block = ConstantBlock {
            map: "built-in: radial x[0] with origin-corrected noise 0.01".into(),
            x0: None,
            epsilon_certified: None,
        };
        (f, block)
    };
    let x0 = ctx.anchor(&space, block.x0.as_ref())?;
    let eps = block
        .epsilon_certified
        .or(ctx.config.verification.epsilon_certified)
        .unwrap_or_else(|| certified_constant_epsilon(&f, &codomain));
    let report = verify_constant_stability(&f, &x0, &cfg, Some(eps))?;
    let config = ctx.resolved_config(
        name,
        json!({ "verify": cfg, "map": f.to_string(), "anchor": x0, "epsilon_certified": eps }),
    )?;
    let summary = vec![
        format!("f = {f}"),
        format!(
            "epsilon_certified = {eps:e}, measured = {:e}",
            report.epsilon_measured.value
        ),
    ];
    ctx.emit(
        name,
        Some(&report.pair_set_hash),
        &config,
        &report,
        &report.bounds,
        &summary,
    )
}

fn verify_pexider(ctx: &mut Context, name: &str) -> Result<Outcome> {
    let binding = ctx.config.quadruple.clone().ok_or_else(|| {
        Error::Config("verify-pexider needs a config with a `quadruple` block".into())
    })?;
    let space = ctx.space(2, "l2")?;
    let codomain = ctx.codomain(1, "l2")?;
    let cfg = ctx.verify_config(space.clone(), codomain.clone())?;
    let names = [&*binding.f, &*binding.g, &*binding.h, &*binding.k];
    let maps = ctx.config.resolve_maps(&space, codomain.dim(), &names)?;
    let q = PexiderQuadruple::new(
        maps[&binding.f].clone(),
        maps[&binding.g].clone(),
        maps[&binding.h].clone(),
        maps[&binding.k].clone(),
        codomain,
    )?;
    let eps = ctx
        .config
        .verification
        .epsilon_certified
        .unwrap_or_else(|| q.certified_epsilon());
    let x0 = ctx.anchor(&space, None)?;
    chain(ctx, name, &q, &cfg, eps, &x0, json!({}))
}

fn demo(ctx: &mut Context, name: &str, delta: f64) -> Result<Outcome> {
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::Config(format!(
            "--delta must be finite and ≥ 0, got {delta}"
        )));
    }
    let space = ctx.space(3, "l1")?;
    let codomain = ctx.codomain(2, "l2")?;
    let cfg = ctx.verify_config(space.clone(), codomain.clone())?;
    let exact = PexiderQuadruple::exact_solution(&space, &codomain, cfg.seed)?;
    let q = exact.perturbed(delta, hash_words(&[cfg.seed, 0xde30]))?;
    let eps = q.certified_epsilon();
    let x0 = Vector::basis(space.dim(), 0);
    chain(ctx, name, &q, &cfg, eps, &x0, json!({ "delta": delta }))
}

fn chain(
    ctx: &mut Context,
    name: &str,
    q: &PexiderQuadruple,
    cfg: &VerifyConfig,
    eps: f64,
    x0: &Vector,
    extra: serde_json::Value,
) -> Result<Outcome> {
    let report = verify_theorem_chain_with_anchor(q, cfg, eps, x0)?;
    let maps: BTreeMap<&str, String> = q.named().iter().map(|(n, m)| (*n, m.to_string())).collect();
    let config = ctx.resolved_config(
        name,
        json!({
            "verify": cfg,
            "maps": maps,
            "anchor": x0,
            "epsilon_certified": eps,
            "extra": extra,
        }),
    )?;
    let summary = vec![
        format!("domain {}, codomain {}", cfg.space, q.codomain),
        format!(
            "epsilon_certified = {eps:e}, measured pexider sup = {:e}, {} pairs",
            report.epsilon_measured, report.n_pairs
        ),
    ];
    ctx.emit(
        name,
        Some(&report.pair_set_hash),
        &config,
        &report,
        &report.bounds,
        &summary,
    )
}
