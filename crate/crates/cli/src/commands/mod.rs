//! One module per subcommand. Each turns a validated config into a report.

mod approx_decay;
mod basis;
mod complete;
mod democracy;
mod embed;
mod inequalities;
mod norm;
mod scale;

use brushlab_core::{CoefficientSet, MixedNormParams};

use crate::config::{missing, Loaded};
use crate::error::{CliError, CliResult};
use crate::random;
use crate::report::Report;

pub fn run(experiment: &str, loaded: &Loaded) -> CliResult<Report> {
    match experiment {
        "basis-check" => basis::run(loaded),
        "complete-check" => complete::run(loaded),
        "norm" => norm::run(loaded),
        "approx-decay" => approx_decay::run(loaded),
        "democracy" => democracy::run(loaded),
        "bernstein" => scale::bernstein(loaded),
        "jackson" => scale::jackson(loaded),
        "embed" => embed::run(loaded),
        other => Err(CliError::Config(format!("unknown experiment {other:?}"))),
    }
}

/// `(p, q, s, a)` from the config.
fn norm_params(loaded: &Loaded) -> CliResult<MixedNormParams> {
    let c = &loaded.config;
    let q = c.q.ok_or_else(|| missing("q"))?;
    Ok(MixedNormParams::new(c.p_vec()?, q, c.s.unwrap_or(0.0), c.aniso()?)?)
}

/// Coefficients from the `coefficients` file, or a seeded random set of
/// `count` entries over levels `j_min..=j_max` and `n <= n_max`.
fn coefficient_source(loaded: &Loaded, d: usize, report: &mut Report) -> CliResult<CoefficientSet> {
    let c = &loaded.config;
    if let Some(path) = c.coefficient_path(&loaded.base_dir) {
        if c.count.is_some() {
            return Err(CliError::Config("give either \"coefficients\" or \"count\", not both".into()));
        }
        let bytes = std::fs::read(&path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| CliError::Config(format!("{} is not UTF-8", path.display())))?;
        let set = CoefficientSet::from_json(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if set.dim().is_some_and(|k| k != d) {
            return Err(CliError::Precondition(format!("coefficients have dimension {:?}, anisotropy {d}", set.dim())));
        }
        report.inputs.push(bytes);
        return Ok(set);
    }
    let count = c.count.ok_or_else(|| missing("coefficients"))?;
    let levels = (c.j_min.unwrap_or(-1), c.j_max.unwrap_or(1));
    if levels.0 > levels.1 {
        return Err(CliError::Precondition(format!("empty level range {}..={}", levels.0, levels.1)));
    }
    random::coefficient_set(&mut random::rng(c.seed()), d, count, levels, c.n_max.unwrap_or(3))
}
