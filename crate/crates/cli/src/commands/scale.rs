//! Bernstein and Jackson experiments between `f^beta_{p,q}` and
//! `b^alpha_{tau,q_besov}`.
//!
//! CSV columns:
//! - bernstein: `case,family,n,besov,triebel,ratio`
//! - jackson witness: `n,residual,besov,saturated`
//! - jackson bound: `m,error,bound,ratio`

use brushlab_core::approx::{bernstein_experiment, jackson_bound, jackson_witness, ScalePair, WitnessFamily};

use super::coefficient_source;
use crate::config::{missing, Loaded};
use crate::error::{CliError, CliResult};
use crate::report::{num, Report};

fn pair(loaded: &Loaded, p: Vec<f64>, tau: Vec<f64>, default_q: impl Fn(&[f64]) -> f64) -> CliResult<ScalePair<f64>> {
    let c = &loaded.config;
    let q = c.q.ok_or_else(|| missing("q"))?;
    let qb = c.q_besov.unwrap_or_else(|| default_q(&tau));
    Ok(ScalePair::new(p, q, c.s.unwrap_or(0.0), tau, qb, c.aniso()?)?)
}

fn min(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// One case per `(p, tau)` pair; `p`, `tau` and `n_list` may each be a
/// single vector shared by all cases or one vector per case.
pub fn bernstein(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    let ps = c.p.as_ref().ok_or_else(|| missing("p"))?.cases();
    let taus = c.tau.as_ref().ok_or_else(|| missing("tau"))?.cases();
    let lists = c.n_lists()?;
    let cases = ps.len().max(taus.len()).max(lists.len());
    let pick = |len: usize, key: &str| -> CliResult<()> {
        if len == 1 || len == cases {
            Ok(())
        } else {
            Err(CliError::Config(format!("{key} has {len} cases, expected 1 or {cases}")))
        }
    };
    pick(ps.len(), "p")?;
    pick(taus.len(), "tau")?;
    pick(lists.len(), "n_list")?;
    let mut report = Report::new(&["case", "family", "n", "besov", "triebel", "ratio"]);
    for i in 0..cases {
        let at = |len: usize| if len == 1 { 0 } else { i };
        let pair = pair(loaded, ps[at(ps.len())].clone(), taus[at(taus.len())].clone(), min)?;
        let res = bernstein_experiment(&pair, &lists[at(lists.len())])?;
        let family = match res.family {
            WitnessFamily::Axis(a) => format!("axis{a}"),
            WitnessFamily::LevelLadder(a) => format!("ladder{a}"),
        };
        for row in &res.rows {
            report.row(vec![i.to_string(), family.clone(), row.n.to_string(), num(row.besov), num(row.triebel), num(row.ratio)]);
        }
        report.metric(&format!("case{i}_family_exponent"), res.family_exponent);
        report.near(&format!("case{i}_exponent"), res.exponent, res.predicted, 0.05);
    }
    Ok(report)
}

pub fn jackson(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    let mode = c.mode_or("witness", &["witness", "bound"])?;
    let unused: &[&str] = if mode == "witness" {
        &["coefficients", "count", "j_min", "j_max", "n_max", "m_list"]
    } else {
        &["n_list", "eps"]
    };
    if let Some(k) = unused.iter().find(|k| loaded.table.contains_key(**k)) {
        return Err(CliError::Config(format!("key {k:?} is not used in this mode")));
    }
    let pair = pair(loaded, c.p_vec()?, c.tau_vec()?, max)?;
    if mode == "witness" {
        let w = jackson_witness(&pair, &c.n_list()?, c.eps.unwrap_or(0.1))?;
        let mut report = Report::new(&["n", "residual", "besov", "saturated"]);
        for row in &w.rows {
            report.row(vec![row.n.to_string(), num(row.residual), num(row.besov), row.saturated.to_string()]);
        }
        report.metric("axis", w.axis);
        report.flag("greedy_saturated", w.rows.iter().all(|r| r.saturated));
        report.near("residual_slope", w.residual_slope, w.predicted.0, 0.05);
        report.near("besov_slope", w.besov_slope, w.predicted.1, 0.05);
        return Ok(report);
    }
    let mut report = Report::new(&["m", "error", "bound", "ratio"]);
    let set = coefficient_source(loaded, pair.triebel.aniso.dim(), &mut report)?;
    let rows = jackson_bound(&pair, &set, &c.m_list()?)?;
    let worst = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    for row in rows {
        report.row(vec![row.m.to_string(), num(row.error), num(row.bound), num(row.ratio)]);
    }
    report.metric("coefficients", set.len());
    report.metric("max_ratio", worst);
    Ok(report)
}
