//! Config plumbing shared by every subcommand.
//!
//! Precedence, lowest to highest: built-in defaults, the `--config` file,
//! command-line flags, and the `MANIFOLD_PBC_SEED` environment variable
//! (seeds only). Resolution writes every effective value back into the
//! [`Conf`], so the echo written next to the outputs replays the run
//! exactly, regardless of where each value came from.

use std::path::{Path, PathBuf};

use clap::Args;
use pbc_core::cluster::PbcConfig;
use pbc_core::graph::{GraphConfig, GraphRule, DEFAULT_INNER_FRACTION};
use pbc_core::io::conf::Conf;
use pbc_core::io::fmt_f64;
use pbc_core::path::ConstraintSpec;
use pbc_core::synth::DatasetSpec;

use crate::errors::CliError;

pub const SEED_ENV: &str = "MANIFOLD_PBC_SEED";

pub fn load_conf(path: Option<&Path>) -> Result<Conf, CliError> {
    let Some(path) = path else {
        return Ok(Conf::new());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    Conf::parse(&text).map_err(CliError::from)
}

pub fn get<T: std::str::FromStr>(
    conf: &Conf,
    section: &str,
    key: &str,
) -> Result<Option<T>, CliError> {
    conf.get_parsed(section, key).map_err(CliError::Validation)
}

pub fn require<T: std::str::FromStr>(
    conf: &Conf,
    section: &str,
    key: &str,
) -> Result<T, CliError> {
    get(conf, section, key)?.ok_or_else(|| {
        CliError::Validation(format!("missing required config key [{section}] {key}"))
    })
}

/// Reads a bool with a default and echoes the effective value back.
pub fn resolve_bool(
    conf: &mut Conf,
    section: &str,
    key: &str,
    default: bool,
) -> Result<bool, CliError> {
    let v = get::<bool>(conf, section, key)?.unwrap_or(default);
    conf.set(section, key, if v { "true" } else { "false" });
    Ok(v)
}

/// The seed the command will use: the environment variable wins over
/// whatever config and flags produced, and the winner is echoed back.
pub fn resolve_seed(conf: &mut Conf, section: &str, default: u64) -> Result<u64, CliError> {
    let seed = match std::env::var(SEED_ENV) {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            CliError::Validation(format!(
                "{SEED_ENV} must be an unsigned integer, got {raw:?}"
            ))
        })?,
        Err(_) => get::<u64>(conf, section, "seed")?.unwrap_or(default),
    };
    conf.set(section, "seed", &seed.to_string());
    Ok(seed)
}

/// Records the input path under `[run]` so the echo can replay without
/// repeating `--input`.
pub fn resolve_input(
    conf: &mut Conf,
    flag: Option<&PathBuf>,
    key: &str,
) -> Result<PathBuf, CliError> {
    let path = match flag {
        Some(p) => p.clone(),
        None => PathBuf::from(conf.get("run", key).ok_or_else(|| {
            CliError::Validation(format!("--{key} is required (or [run] {key} in the config)"))
        })?),
    };
    let text = path
        .to_str()
        .ok_or_else(|| CliError::Validation(format!("{key} path is not valid UTF-8")))?;
    conf.set("run", key, text);
    Ok(path)
}

#[derive(Args, Debug, Clone)]
pub struct DatasetFlags {
    /// Shape to sample, e.g. two_spheres or three_planes.
    #[arg(long)]
    pub name: Option<String>,
    /// Number of points to draw.
    #[arg(long)]
    pub n_points: Option<usize>,
    /// Uniform noise amplitude added to every sample.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Mixture weights, comma separated, one per component.
    #[arg(long)]
    pub weights: Option<String>,
    /// Distance-to-intersection radius below which points are flagged
    /// ambiguous; defaults to a rule based on noise and sample spacing.
    #[arg(long)]
    pub ambiguity_radius: Option<f64>,
    /// Seed for dataset sampling.
    #[arg(long = "data-seed")]
    pub data_seed: Option<u64>,
}

impl DatasetFlags {
    pub fn apply(&self, conf: &mut Conf) {
        if let Some(v) = &self.name {
            conf.set("dataset", "name", v);
        }
        if let Some(v) = self.n_points {
            conf.set("dataset", "n_points", &v.to_string());
        }
        if let Some(v) = self.noise {
            conf.set("dataset", "noise", &fmt_f64(v));
        }
        if let Some(v) = &self.weights {
            conf.set("dataset", "weights", v);
        }
        if let Some(v) = self.ambiguity_radius {
            conf.set("dataset", "ambiguity_radius", &fmt_f64(v));
        }
        if let Some(v) = self.data_seed {
            conf.set("dataset", "seed", &v.to_string());
        }
    }
}

pub fn resolve_dataset(conf: &mut Conf) -> Result<DatasetSpec, CliError> {
    let name = conf
        .get("dataset", "name")
        .ok_or_else(|| {
            CliError::Validation("missing required config key [dataset] name (or --name)".into())
        })?
        .to_string();
    let n_points = get::<usize>(conf, "dataset", "n_points")?.unwrap_or(1000);
    let noise = get::<f64>(conf, "dataset", "noise")?.unwrap_or(0.0);
    let seed = resolve_seed(conf, "dataset", 0)?;
    let weights = conf
        .get_f64_list("dataset", "weights")
        .map_err(CliError::Validation)?;
    let ambiguity_radius = get::<f64>(conf, "dataset", "ambiguity_radius")?;
    conf.set("dataset", "name", &name);
    conf.set("dataset", "n_points", &n_points.to_string());
    conf.set("dataset", "noise", &fmt_f64(noise));
    if let Some(w) = &weights {
        let joined: Vec<String> = w.iter().map(|&x| fmt_f64(x)).collect();
        conf.set("dataset", "weights", &joined.join(", "));
    }
    if let Some(r) = ambiguity_radius {
        conf.set("dataset", "ambiguity_radius", &fmt_f64(r));
    }
    Ok(DatasetSpec {
        name,
        n_points,
        weights,
        noise,
        seed,
        ambiguity_radius,
    })
}

#[derive(Args, Debug, Clone)]
pub struct GraphFlags {
    /// Neighborhood rule: knn, eps_ball, or annulus.
    #[arg(long)]
    pub rule: Option<String>,
    /// Neighbor count for the knn rule.
    #[arg(long)]
    pub q: Option<usize>,
    /// Radius for the eps_ball and annulus rules.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Inner radius of the annulus rule, as a fraction of epsilon.
    #[arg(long)]
    pub inner_fraction: Option<f64>,
}

impl GraphFlags {
    pub fn apply(&self, conf: &mut Conf) {
        if let Some(v) = &self.rule {
            conf.set("graph", "rule", v);
        }
        if let Some(v) = self.q {
            conf.set("graph", "q", &v.to_string());
        }
        if let Some(v) = self.epsilon {
            conf.set("graph", "epsilon", &fmt_f64(v));
        }
        if let Some(v) = self.inner_fraction {
            conf.set("graph", "inner_fraction", &fmt_f64(v));
        }
    }
}

pub fn resolve_graph(conf: &mut Conf) -> Result<GraphConfig, CliError> {
    let rule_name = conf.get("graph", "rule").unwrap_or("knn").to_string();
    let rule = match rule_name.as_str() {
        "knn" => {
            let q = get::<usize>(conf, "graph", "q")?.unwrap_or(10);
            conf.set("graph", "q", &q.to_string());
            GraphRule::Knn { q }
        }
        "eps_ball" => {
            let epsilon: f64 = require(conf, "graph", "epsilon")?;
            conf.set("graph", "epsilon", &fmt_f64(epsilon));
            GraphRule::EpsBall { epsilon }
        }
        "annulus" => {
            let epsilon: f64 = require(conf, "graph", "epsilon")?;
            let inner_fraction =
                get::<f64>(conf, "graph", "inner_fraction")?.unwrap_or(DEFAULT_INNER_FRACTION);
            conf.set("graph", "epsilon", &fmt_f64(epsilon));
            conf.set("graph", "inner_fraction", &fmt_f64(inner_fraction));
            GraphRule::Annulus {
                epsilon,
                inner_fraction,
            }
        }
        other => {
            return Err(CliError::Validation(format!(
                "config key [graph] rule: unknown rule {other:?} (expected knn, eps_ball, or annulus)"
            )))
        }
    };
    conf.set("graph", "rule", &rule_name);
    Ok(GraphConfig { rule })
}

#[derive(Args, Debug, Clone)]
pub struct ConstraintFlags {
    /// Constraint kind: angle or curvature.
    #[arg(long)]
    pub kind: Option<String>,
    /// Turn-angle bound in degrees for the angle kind.
    #[arg(long)]
    pub theta_degrees: Option<f64>,
    /// Curvature bound for the curvature kind.
    #[arg(long)]
    pub kappa: Option<f64>,
}

impl ConstraintFlags {
    pub fn apply(&self, conf: &mut Conf) {
        if let Some(v) = &self.kind {
            conf.set("constraint", "kind", v);
        }
        if let Some(v) = self.theta_degrees {
            conf.set("constraint", "theta_degrees", &fmt_f64(v));
        }
        if let Some(v) = self.kappa {
            conf.set("constraint", "kappa", &fmt_f64(v));
        }
    }
}

/// Default angle bound in degrees when no constraint is configured.
pub const DEFAULT_THETA_DEGREES: f64 = 50.0;

pub fn resolve_constraint(conf: &mut Conf) -> Result<ConstraintSpec, CliError> {
    let kind = conf.get("constraint", "kind").unwrap_or("angle").to_string();
    let spec = match kind.as_str() {
        "angle" => {
            let degrees =
                get::<f64>(conf, "constraint", "theta_degrees")?.unwrap_or(DEFAULT_THETA_DEGREES);
            conf.set("constraint", "theta_degrees", &fmt_f64(degrees));
            ConstraintSpec::angle(degrees.to_radians())?
        }
        "curvature" => {
            let kappa: f64 = require(conf, "constraint", "kappa")?;
            conf.set("constraint", "kappa", &fmt_f64(kappa));
            ConstraintSpec::curvature(kappa)?
        }
        other => {
            return Err(CliError::Validation(format!(
                "config key [constraint] kind: unknown kind {other:?} (expected angle or curvature)"
            )))
        }
    };
    conf.set("constraint", "kind", &kind);
    Ok(spec)
}

#[derive(Args, Debug, Clone)]
pub struct PbcFlags {
    /// Number of clusters to produce.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of landmarks; defaults to max(2k, k + 5).
    #[arg(long)]
    pub m: Option<usize>,
    /// Path engine: greedy, exact, or brute-force.
    #[arg(long)]
    pub engine: Option<String>,
    /// Seed for landmark selection.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Collapse coincident points before the graph stage.
    #[arg(long, action = clap::ArgAction::Set)]
    pub dedup: Option<bool>,
}

impl PbcFlags {
    pub fn apply(&self, conf: &mut Conf) {
        if let Some(v) = self.k {
            conf.set("pbc", "k", &v.to_string());
        }
        if let Some(v) = self.m {
            conf.set("pbc", "m", &v.to_string());
        }
        if let Some(v) = &self.engine {
            conf.set("pbc", "engine", v);
        }
        if let Some(v) = self.seed {
            conf.set("pbc", "seed", &v.to_string());
        }
        if let Some(v) = self.dedup {
            conf.set("pbc", "dedup", if v { "true" } else { "false" });
        }
    }
}

pub fn resolve_pbc(
    conf: &mut Conf,
    graph: GraphConfig,
    constraint: ConstraintSpec,
) -> Result<PbcConfig, CliError> {
    let k = get::<usize>(conf, "pbc", "k")?.unwrap_or(2);
    let mut config = PbcConfig::new(graph, constraint, k);
    config.m = get::<usize>(conf, "pbc", "m")?;
    let m = config.landmark_count();
    config.m = Some(m);
    config.engine = conf.get("pbc", "engine").unwrap_or("exact").to_string();
    config.seed = resolve_seed(conf, "pbc", 0)?;
    config.dedup = resolve_bool(conf, "pbc", "dedup", true)?;
    conf.set("pbc", "k", &k.to_string());
    conf.set("pbc", "m", &m.to_string());
    conf.set("pbc", "engine", &config.engine.clone());
    Ok(config)
}
