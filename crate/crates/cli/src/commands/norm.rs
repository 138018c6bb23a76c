//! Sequence norms of a stored coefficient set (`mode = "file"`), the engine
//! cross-check against brute-force quadrature (`mode = "engine"`) and the
//! empirical inequality suite (`mode = "inequalities"`).
//!
//! CSV columns:
//! - file: `norm,value`
//! - engine: `instance,d,count,f_engine,f_brute,b_engine,b_brute,rel_diff`
//! - inequalities: `check,fitted,held_out,refined,pass`

use brushlab_core::mixed_norms::sequence::{b_norm, f_norm};
use rand::Rng;
use rayon::prelude::*;

use super::{coefficient_source, inequalities, norm_params};
use crate::config::Loaded;
use crate::error::{CliError, CliResult};
use crate::reference;
use crate::report::{num, Report};
use crate::random;

pub fn run(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    match c.mode_or("file", &["file", "engine", "inequalities"])? {
        "file" => file(loaded),
        "engine" => engine(loaded),
        _ => {
            reject(loaded, &["a", "p", "q", "s", "coefficients", "count", "sub", "instances"])?;
            inequalities::run(c.seed())
        }
    }
}

fn reject(loaded: &Loaded, keys: &[&str]) -> CliResult<()> {
    match keys.iter().find(|k| loaded.table.contains_key(**k)) {
        Some(k) => Err(CliError::Config(format!("key {k:?} is not used in this mode"))),
        None => Ok(()),
    }
}

fn file(loaded: &Loaded) -> CliResult<Report> {
    reject(loaded, &["instances", "sub"])?;
    let params = norm_params(loaded)?;
    let mut report = Report::new(&["norm", "value"]);
    let set = coefficient_source(loaded, params.aniso.dim(), &mut report)?;
    let f = f_norm(&set, &params)?;
    let b = b_norm(&set, &params)?;
    println!("f_norm {}", num(f));
    println!("b_norm {}", num(b));
    report.row(vec!["f_norm".into(), num(f)]);
    report.row(vec!["b_norm".into(), num(b)]);
    report.metric("coefficients", set.len());
    report.metric("f_norm", f);
    report.metric("b_norm", b);
    Ok(report)
}

fn engine(loaded: &Loaded) -> CliResult<Report> {
    reject(loaded, &["a", "p", "q", "s", "coefficients"])?;
    let c = &loaded.config;
    let instances = c.instances.unwrap_or(50);
    let max_count = c.count.unwrap_or(20).max(1);
    let sub = c.sub.unwrap_or(2).max(1);
    let mut r = random::rng(c.seed());
    let cases = (0..instances)
        .map(|_| {
            let d = r.gen_range(1..=2);
            let an = random::aniso(&mut r, d);
            let count = r.gen_range(1..=max_count);
            let set = random::coefficient_set(&mut r, d, count, (-1, 1), 4)?;
            let params = random::params(&mut r, &an)?;
            Ok((d, count, set, params))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let rows = cases
        .par_iter()
        .map(|(d, count, set, params)| {
            let fe = f_norm(set, params)?;
            let be = b_norm(set, params)?;
            let fb = reference::f_norm(set, params, sub);
            let bb = reference::b_norm(set, params, sub);
            Ok((*d, *count, fe, fb, be, bb))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut report = Report::new(&["instance", "d", "count", "f_engine", "f_brute", "b_engine", "b_brute", "rel_diff"]);
    let mut worst: f64 = 0.0;
    for (i, (d, count, fe, fb, be, bb)) in rows.into_iter().enumerate() {
        let rel = reference::rel_diff(fe, fb).max(reference::rel_diff(be, bb));
        worst = worst.max(rel);
        report.row(vec![i.to_string(), d.to_string(), count.to_string(), num(fe), num(fb), num(be), num(bb), num(rel)]);
    }
    report.at_most("max_relative_difference", worst, 1e-6);
    Ok(report)
}
