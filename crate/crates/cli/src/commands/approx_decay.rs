//! Greedy m-term error curves (`mode = "curve"`) and the oracle coherence
//! experiment (`mode = "coherence"`).
//!
//! CSV columns:
//! - curve: `m,greedy,oracle` (`oracle` empty unless requested)
//! - coherence: `instance,kind,m,oracle,greedy`

use brushlab_core::approx::{greedy_curve, greedy_select, sigma_m_oracle};
use brushlab_core::{Anisotropy, BrushletIndex, CoefficientSet, Complex, MixedNormParams};
use rand::Rng;
use rayon::prelude::*;

use super::{coefficient_source, norm_params};
use crate::config::Loaded;
use crate::error::{CliError, CliResult};
use crate::random;
use crate::reference::rel_diff;
use crate::report::{num, Report};

pub fn run(loaded: &Loaded) -> CliResult<Report> {
    match loaded.config.mode_or("curve", &["curve", "coherence"])? {
        "curve" => curve(loaded),
        _ => coherence(loaded),
    }
}

fn curve(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    if c.instances.is_some() {
        return Err(CliError::Config("key \"instances\" is not used in this mode".into()));
    }
    let params = norm_params(loaded)?;
    let mut report = Report::new(&["m", "greedy", "oracle"]);
    let set = coefficient_source(loaded, params.aniso.dim(), &mut report)?;
    let ms = match &c.m_list {
        Some(_) => c.m_list()?,
        None => (0..=set.len()).collect(),
    };
    let greedy = greedy_curve(&set, &params, &ms)?;
    let oracle = if c.oracle.unwrap_or(false) {
        Some(ms.par_iter().map(|&m| Ok(sigma_m_oracle(&set, &params, m)?.error)).collect::<CliResult<Vec<f64>>>()?)
    } else {
        None
    };
    let mut monotone = true;
    let mut ordered = true;
    let mut prev: Option<(usize, f64)> = None;
    for (i, g) in greedy.iter().enumerate() {
        if let Some((pm, pe)) = prev {
            if g.m >= pm && g.error > pe * (1.0 + 1e-12) || g.m <= pm && g.error < pe * (1.0 - 1e-12) {
                monotone = false;
            }
        }
        prev = Some((g.m, g.error));
        let o = oracle.as_ref().map(|o| o[i]);
        if let Some(o) = o {
            ordered &= o <= g.error * (1.0 + 1e-12);
        }
        report.row(vec![g.m.to_string(), num(g.error), o.map(num).unwrap_or_default()]);
    }
    report.metric("coefficients", set.len());
    report.flag("greedy_monotone", monotone);
    if oracle.is_some() {
        report.flag("oracle_at_most_greedy", ordered);
    }
    Ok(report)
}

enum Case {
    Random(CoefficientSet, MixedNormParams, usize),
    Disjoint(CoefficientSet, MixedNormParams),
}

/// Half the instances are random sets with random parameters; the other half
/// are unmixed `p = q` sets on disjoint congruent cells, where greedy is exact.
fn coherence(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    for k in ["a", "p", "q", "s", "coefficients", "m_list", "oracle", "j_min", "j_max", "n_max"] {
        if loaded.table.contains_key(k) {
            return Err(CliError::Config(format!("key {k:?} is not used in this mode")));
        }
    }
    let instances = c.instances.unwrap_or(100);
    let max_count = c.count.unwrap_or(12);
    if !(1..=12).contains(&max_count) {
        return Err(CliError::Precondition(format!("count must lie in 1..=12, got {max_count}")));
    }
    let mut r = random::rng(c.seed());
    let mut cases = Vec::with_capacity(instances);
    for i in 0..instances {
        if i % 2 == 0 {
            let d = r.gen_range(1..=2);
            let an = random::aniso(&mut r, d);
            let count = r.gen_range(1..=max_count);
            let set = random::coefficient_set(&mut r, d, count, (-1, 1), 3)?;
            let params = random::params(&mut r, &an)?;
            let m = r.gen_range(0..=set.len());
            cases.push(Case::Random(set, params, m));
        } else {
            let an = Anisotropy::new(vec![1.0, 2.0])?;
            let p = r.gen_range(0.7..3.0);
            let params = MixedNormParams::unmixed(p, p, 0.0, an)?;
            let count = r.gen_range(1..=max_count);
            let entries = (0..count as u64)
                .map(|l| {
                    let idx = BrushletIndex::new(0, vec![2, -1], vec![l, l % 3])?;
                    Ok((idx, Complex::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))))
                })
                .collect::<CliResult<Vec<_>>>()?;
            cases.push(Case::Disjoint(CoefficientSet::from_entries(entries)?, params));
        }
    }
    let results = cases
        .par_iter()
        .map(|case| {
            let (set, params, ms): (_, _, Vec<usize>) = match case {
                Case::Random(s, p, m) => (s, p, vec![*m]),
                Case::Disjoint(s, p) => (s, p, (0..=s.len()).collect()),
            };
            ms.into_iter()
                .map(|m| Ok((m, sigma_m_oracle(set, params, m)?.error, greedy_select(set, params, m)?.error)))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut report = Report::new(&["instance", "kind", "m", "oracle", "greedy"]);
    let mut ordered = true;
    let mut gap: f64 = 0.0;
    for (i, (case, rows)) in cases.iter().zip(results).enumerate() {
        let kind = match case {
            Case::Random(..) => "random",
            Case::Disjoint(..) => "disjoint",
        };
        for (m, o, g) in rows {
            ordered &= o <= g * (1.0 + 1e-12);
            if kind == "disjoint" {
                gap = gap.max(rel_diff(o, g));
            }
            report.row(vec![i.to_string(), kind.into(), m.to_string(), num(o), num(g)]);
        }
    }
    report.flag("oracle_at_most_greedy", ordered);
    report.at_most("disjoint_relative_gap", gap, 1e-9);
    Ok(report)
}
