//! Flat TOML experiment configuration.
//!
//! Every key is optional at parse time; each subcommand states which keys
//! it accepts and which it requires. Unknown keys, keys irrelevant to the
//! subcommand and type mismatches are config errors.

use std::path::{Path, PathBuf};

use brushlab_core::{Anisotropy, QuadRule};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// A vector or a list of vectors (one per case).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Cases<T> {
    One(Vec<T>),
    Many(Vec<Vec<T>>),
}

impl<T: Clone> Cases<T> {
    pub fn cases(&self) -> Vec<Vec<T>> {
        match self {
            Cases::One(v) => vec![v.clone()],
            Cases::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub experiment: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out_dir: Option<String>,
    pub mode: Option<String>,

    pub a: Option<Vec<f64>>,
    pub p: Option<Cases<f64>>,
    pub q: Option<f64>,
    pub s: Option<f64>,
    pub tau: Option<Cases<f64>>,
    pub q_besov: Option<f64>,
    pub control_p: Option<Vec<f64>>,

    pub j_min: Option<i32>,
    pub j_max: Option<i32>,
    pub n_max: Option<u64>,
    pub n_list: Option<Cases<i64>>,
    pub m_list: Option<Vec<i64>>,

    pub points_per_ramp: Option<usize>,
    pub points_per_period: Option<usize>,
    pub tolerance: Option<f64>,

    pub coefficients: Option<String>,
    pub instances: Option<usize>,
    pub count: Option<usize>,
    pub checks: Option<Vec<String>>,
    pub samples: Option<usize>,
    pub sub: Option<usize>,
    pub oracle: Option<bool>,

    pub j0: Option<i32>,
    pub big_n: Option<u32>,
    pub bump_center: Option<Vec<f64>>,
    pub bump_width: Option<f64>,

    pub eps: Option<f64>,
    pub axis_n: Option<usize>,
    pub axis_m: Option<usize>,
    pub relation: Option<String>,
    pub kind: Option<String>,
}

const COMMON: &[&str] = &["experiment", "seed", "threads", "out_dir", "mode"];
const QUAD: &[&str] = &["points_per_ramp", "points_per_period", "tolerance"];
const NORM: &[&str] = &["a", "p", "q", "s"];
const RANDOM_SET: &[&str] = &["count", "j_min", "j_max", "n_max", "coefficients"];

/// Keys accepted by a subcommand besides the common ones.
pub fn allowed_keys(experiment: &str) -> Option<Vec<&'static str>> {
    let own: Vec<&[&str]> = match experiment {
        "basis-check" => vec![&["a", "j_min", "j_max", "n_max", "checks", "samples"], QUAD],
        "complete-check" => {
            vec![&["a", "j0", "big_n", "instances", "samples", "bump_center", "bump_width", "j_min", "j_max", "n_max"], QUAD]
        }
        "norm" => vec![NORM, &["coefficients", "instances", "count", "sub"]],
        "approx-decay" => vec![NORM, RANDOM_SET, &["m_list", "oracle", "instances"]],
        "democracy" => vec![NORM, &["axis_n", "axis_m", "n_list", "control_p"]],
        "bernstein" => vec![NORM, &["tau", "q_besov", "n_list"]],
        "jackson" => vec![NORM, RANDOM_SET, &["tau", "q_besov", "n_list", "m_list", "eps"]],
        "embed" => vec![NORM, RANDOM_SET, &["relation", "kind", "instances"]],
        _ => return None,
    };
    Some(COMMON.iter().chain(own.into_iter().flatten()).copied().collect())
}

/// Parsed configuration plus what is needed to echo and hash it.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub config: Config,
    pub table: toml::Table,
    pub base_dir: PathBuf,
}

pub fn load(path: &Path, experiment: &str) -> CliResult<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, experiment, path.parent().unwrap_or(Path::new(".")))
}

pub fn parse(text: &str, experiment: &str, base_dir: &Path) -> CliResult<Loaded> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config(e.message().to_string()))?;
    let allowed = allowed_keys(experiment).ok_or_else(|| CliError::Config(format!("unknown experiment {experiment:?}")))?;
    for (key, value) in &table {
        if value.is_table() {
            return Err(CliError::Config(format!("key {key:?}: nested tables are not allowed")));
        }
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::Config(format!("unknown key {key:?} for {experiment}")));
        }
    }
    let config: Config = table.clone().try_into().map_err(|e: toml::de::Error| CliError::Config(e.message().to_string()))?;
    if let Some(name) = &config.experiment {
        if name != experiment {
            return Err(CliError::Config(format!("config is for {name:?}, not {experiment:?}")));
        }
    }
    Ok(Loaded { config, table, base_dir: base_dir.to_path_buf() })
}

pub fn missing(key: &str) -> CliError {
    CliError::Config(format!("missing key {key:?}"))
}

impl Config {
    pub fn mode_or<'a>(&'a self, default: &'a str, modes: &[&str]) -> CliResult<&'a str> {
        let mode = self.mode.as_deref().unwrap_or(default);
        if modes.contains(&mode) {
            Ok(mode)
        } else {
            Err(CliError::Config(format!("unknown mode {mode:?}, expected one of {modes:?}")))
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn aniso(&self) -> CliResult<Anisotropy> {
        let a = self.a.clone().ok_or_else(|| missing("a"))?;
        Ok(Anisotropy::new(a)?)
    }

    pub fn quad(&self) -> CliResult<QuadRule> {
        let d = QuadRule::default();
        let rule = QuadRule {
            points_per_ramp: self.points_per_ramp.unwrap_or(d.points_per_ramp),
            points_per_period: self.points_per_period.unwrap_or(d.points_per_period),
            tolerance: self.tolerance,
        };
        rule.validate()?;
        Ok(rule)
    }

    /// The single `p` vector (a list of cases is a config error).
    pub fn p_vec(&self) -> CliResult<Vec<f64>> {
        single(self.p.as_ref(), "p")
    }

    pub fn tau_vec(&self) -> CliResult<Vec<f64>> {
        single(self.tau.as_ref(), "tau")
    }

    pub fn m_list(&self) -> CliResult<Vec<usize>> {
        counts(self.m_list.as_ref().ok_or_else(|| missing("m_list"))?, "m_list")
    }

    pub fn n_list(&self) -> CliResult<Vec<usize>> {
        counts(&single(self.n_list.as_ref(), "n_list")?, "n_list")
    }

    pub fn n_lists(&self) -> CliResult<Vec<Vec<usize>>> {
        let lists = self.n_list.as_ref().ok_or_else(|| missing("n_list"))?;
        lists.cases().iter().map(|l| counts(l, "n_list")).collect()
    }

    pub fn coefficient_path(&self, base: &Path) -> Option<PathBuf> {
        self.coefficients.as_ref().map(|c| base.join(c))
    }
}

fn single<T: Clone>(v: Option<&Cases<T>>, key: &str) -> CliResult<Vec<T>> {
    match v {
        Some(Cases::One(v)) => Ok(v.clone()),
        Some(Cases::Many(_)) => Err(CliError::Config(format!("key {key:?} takes a single vector here"))),
        None => Err(missing(key)),
    }
}

/// Sizes are counts; negative entries violate the operation's precondition.
fn counts(v: &[i64], key: &str) -> CliResult<Vec<usize>> {
    v.iter()
        .map(|&n| {
            usize::try_from(n).map_err(|_| CliError::Precondition(format!("{key} entries must be nonnegative, got {n}")))
        })
        .collect()
}

/// Config echo as JSON; non-finite floats become strings so the echo stays
/// valid JSON.
pub fn echo(table: &toml::Table) -> serde_json::Value {
    fn conv(v: &toml::Value) -> serde_json::Value {
        match v {
            toml::Value::String(s) => s.clone().into(),
            toml::Value::Integer(i) => (*i).into(),
            toml::Value::Float(f) if f.is_finite() => (*f).into(),
            toml::Value::Float(f) => {
                if f.is_nan() {
                    "nan".into()
                } else if *f > 0.0 {
                    "inf".into()
                } else {
                    "-inf".into()
                }
            }
            toml::Value::Boolean(b) => (*b).into(),
            toml::Value::Datetime(d) => d.to_string().into(),
            toml::Value::Array(a) => a.iter().map(conv).collect(),
            toml::Value::Table(t) => t.iter().map(|(k, v)| (k.clone(), conv(v))).collect(),
        }
    }
    conv(&toml::Value::Table(table.clone()))
}
