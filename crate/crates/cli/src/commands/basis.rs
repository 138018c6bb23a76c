//! Structural checks of the basis: Gram matrix, bell algebra, anisotropic
//! quasi-norm and the admissible pair.
//!
//! CSV columns: `check,metric,value,target,pass`.

use brushlab_core::bells::{project_interval, ramp};
use brushlab_core::spectrum::symmetric_grid;
use brushlab_core::transform::admissible::build_admissible;
use brushlab_core::transform::{gram_matrix, identity_deviation};
use brushlab_core::{Anisotropy, Complex, CutoffInterval, SampledSpectrum, Truncation};
use rand::Rng;

use crate::config::Loaded;
use crate::error::{CliError, CliResult};
use crate::random;
use crate::report::{num, Report};

const CHECKS: &[&str] = &["gram", "bells", "anisotropy", "admissible"];

pub fn run(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    let checks: Vec<String> = c.checks.clone().unwrap_or_else(|| CHECKS.iter().map(|s| s.to_string()).collect());
    if let Some(bad) = checks.iter().find(|s| !CHECKS.contains(&s.as_str())) {
        return Err(CliError::Config(format!("unknown check {bad:?}, expected one of {CHECKS:?}")));
    }
    let an = c.aniso()?;
    let rule = c.quad()?;
    let trunc = Truncation::new(c.j_min.unwrap_or(-1), c.j_max.unwrap_or(1), c.n_max.unwrap_or(3))?;

    let mut report = Report::new(&["check", "metric", "value", "target", "pass"]);
    let mut tagged = Vec::new();
    for (i, check) in CHECKS.iter().enumerate() {
        if !checks.iter().any(|s| s == check) {
            continue;
        }
        let before = report.targets.len();
        let mut r = random::stream(c.seed(), i as u64);
        match *check {
            "gram" => {
                let idx = trunc.indices(an.dim());
                let dev = identity_deviation(&gram_matrix(&idx, &an, &rule)?);
                report.metric("gram_size", idx.len());
                report.at_most("gram_max_deviation", dev, 1e-6);
            }
            "bells" => {
                let samples = c.samples.unwrap_or(10_000);
                let ramp_err = (0..samples)
                    .map(|_| {
                        let x: f64 = r.gen_range(-3.0..3.0);
                        (ramp(x).powi(2) + ramp(-x).powi(2) - 1.0).abs()
                    })
                    .fold(0.0, f64::max);
                report.at_most("ramp_identity", ramp_err, 1e-12);
                let i = CutoffInterval::new(0.0, 1.0, 0.2, 0.25)?;
                let j = CutoffInterval::new(1.0, 2.5, 0.25, 0.3)?;
                let ij = i.merge(&j)?;
                let (a, b, ph) = (r.gen_range(1.0..4.0), r.gen_range(-1.0..1.0), r.gen_range(0.0..6.0));
                let s = SampledSpectrum::from_fn(vec![symmetric_grid(6.0, 0.01)], |x: &[f64]| {
                    Complex::new((a * x[0]).sin() + x[0] * x[0], (x[0] - b).cos() + ph)
                })?;
                let pi = project_interval(&s, &i)?;
                let idem = project_interval(&pi, &i)?.max_abs_diff(&pi)?;
                let merged = pi.add(&project_interval(&s, &j)?)?.max_abs_diff(&project_interval(&s, &ij)?)?;
                report.at_most("projection_idempotence", idem, 1e-12);
                report.at_most("projection_additivity", merged, 1e-12);
            }
            "anisotropy" => {
                let samples = c.samples.unwrap_or(10_000);
                let mut homog: f64 = 0.0;
                for _ in 0..samples {
                    let x: Vec<f64> = (0..an.dim()).map(|_| r.gen_range(-5.0..5.0)).collect();
                    let t: f64 = r.gen_range(1e-3..1e3);
                    let lhs = an.quasi_norm(&an.dilate(t, &x))?;
                    let rhs = t * an.quasi_norm(&x)?;
                    homog = homog.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE));
                }
                report.at_most("homogeneity_relative", homog, 1e-10);
                if let Some(err) = closed_form_error(&an)? {
                    report.at_most("closed_form_error", err, 1e-10);
                }
            }
            "admissible" => admissible(&an, &mut r, c.samples.unwrap_or(1000), &mut report)?,
            _ => unreachable!(),
        }
        tagged.extend(std::iter::repeat_n(*check, report.targets.len() - before));
    }
    let rows: Vec<Vec<String>> = report
        .targets
        .iter()
        .zip(tagged)
        .map(|(t, check)| vec![check.to_string(), t.name.clone(), num(t.value), t.target.clone(), t.pass.to_string()])
        .collect();
    report.rows = rows;
    Ok(report)
}

/// `|(1,1)|_a` for `a = (1,2)` solves `u + u^2 = 1`, `u = t^{-2}`.
fn closed_form_error(an: &Anisotropy) -> CliResult<Option<f64>> {
    if an.exponents() != [1.0, 2.0] {
        return Ok(None);
    }
    let closed = (2.0 / (5f64.sqrt() - 1.0)).sqrt();
    Ok(Some((an.quasi_norm(&[1.0, 1.0])? - closed).abs()))
}

fn admissible(an: &Anisotropy, r: &mut rand_chacha::ChaCha8Rng, samples: usize, report: &mut Report) -> CliResult<()> {
    let pair = build_admissible(an);
    let (inner, outer) = pair.support_annulus();
    let mut residual: f64 = 0.0;
    let mut support_ok = true;
    let mut lower = f64::INFINITY;
    for _ in 0..samples {
        let scale = 10f64.powf(r.gen_range(-3.0..3.0));
        let xi: Vec<f64> = (0..an.dim()).map(|_| r.gen_range(-1.0..1.0) * scale).collect();
        residual = residual.max(pair.phi4_residual(&xi)?);
        let rho = an.quasi_norm(&xi)?;
        let v = pair.phi_hat(&xi)?;
        if !(inner..=outer).contains(&rho) {
            support_ok &= v == 0.0;
        }
        if (2f64.powf(-0.75)..=2f64.powf(0.75)).contains(&rho) {
            lower = lower.min(v.abs());
        }
    }
    report.at_most("phi4_residual", residual, 1e-10);
    report.flag("phi_support", support_ok);
    report.metric("phi_lower_bound", pair.lower_bound());
    report.flag("phi_lower_bound_holds", lower.is_finite() && lower >= pair.lower_bound() - 1e-12 && lower > 0.0);
    Ok(())
}
