//! Embedding ratios `||c||_target / ||c||_source` between the configured
//! mixed space and an unmixed neighbour. With `relation = "lower"` the source
//! is the `p_min`-unmixed space, with `"upper"` the target is the
//! `p_max`-unmixed space; smoothness follows the embedding relation.
//!
//! CSV columns: `instance,source,target,ratio`.

use brushlab_core::approx::{embedding_relation, sequence_norm, NormKind};
use brushlab_core::MixedNormParams;
use rayon::prelude::*;

use super::{coefficient_source, norm_params};
use crate::config::Loaded;
use crate::error::{CliError, CliResult};
use crate::random;
use crate::report::{num, Report};

pub fn run(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    let mixed = norm_params(loaded)?;
    let nu = mixed.aniso.nu();
    let shifted = |v: f64| mixed.s - mixed.weighted_inverse_sum() + nu / v;
    let (source, target) = match c.relation.as_deref().unwrap_or("lower") {
        "lower" => {
            let p = mixed.p_min();
            (MixedNormParams::unmixed(p, mixed.q, shifted(p), mixed.aniso.clone())?, mixed.clone())
        }
        "upper" => {
            let p = mixed.p_max();
            (mixed.clone(), MixedNormParams::unmixed(p, mixed.q, shifted(p), mixed.aniso.clone())?)
        }
        other => return Err(CliError::Config(format!("unknown relation {other:?}, expected \"lower\" or \"upper\""))),
    };
    let kind = match c.kind.as_deref().unwrap_or("triebel_lizorkin") {
        "besov" => NormKind::Besov,
        "triebel_lizorkin" => NormKind::TriebelLizorkin,
        other => {
            return Err(CliError::Config(format!("unknown kind {other:?}, expected \"besov\" or \"triebel_lizorkin\"")))
        }
    };
    let relation = embedding_relation(&source, &target)?;

    let mut report = Report::new(&["instance", "source", "target", "ratio"]);
    let sets = if c.coefficients.is_some() {
        if c.instances.is_some() {
            return Err(CliError::Config("give either \"coefficients\" or \"instances\", not both".into()));
        }
        vec![coefficient_source(loaded, mixed.aniso.dim(), &mut report)?]
    } else {
        let count = c.count.unwrap_or(8);
        let levels = (c.j_min.unwrap_or(-1), c.j_max.unwrap_or(1));
        if levels.0 > levels.1 {
            return Err(CliError::Precondition(format!("empty level range {}..={}", levels.0, levels.1)));
        }
        let mut r = random::rng(c.seed());
        (0..c.instances.unwrap_or(40))
            .map(|_| random::coefficient_set(&mut r, mixed.aniso.dim(), count, levels, c.n_max.unwrap_or(3)))
            .collect::<CliResult<Vec<_>>>()?
    };
    if sets.is_empty() {
        return Err(CliError::Precondition("need at least one instance".into()));
    }
    let rows = sets
        .par_iter()
        .map(|set| Ok((sequence_norm(kind, set, &source)?, sequence_norm(kind, set, &target)?)))
        .collect::<CliResult<Vec<(f64, f64)>>>()?;
    let mut ratios = Vec::with_capacity(rows.len());
    for (i, (s, t)) in rows.into_iter().enumerate() {
        if !(s > 0.0) {
            return Err(CliError::Precondition(format!("instance {i}: source norm vanishes")));
        }
        ratios.push(t / s);
        report.row(vec![i.to_string(), num(s), num(t), num(t / s)]);
    }
    report.metric("relation", serde_json::to_value(relation).unwrap_or_default());
    report.metric("source_s", source.s);
    report.metric("target_s", target.s);
    let fit = |r: &[f64]| r.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let fitted = fit(&ratios[..ratios.len().div_ceil(2)]);
    report.metric("fitted_constant", fitted);
    if ratios.len() >= 2 {
        let held = fit(&ratios[ratios.len().div_ceil(2)..]);
        report.metric("held_out_constant", held);
        report.flag("constant_stable", held <= 1.1 * fitted);
    }
    Ok(report)
}
