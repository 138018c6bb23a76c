//! Completeness: telescoping residual on random band-limited spectra and the
//! Parseval ratio of a Gaussian bump.
//!
//! CSV columns: `check,instance,value`.

use brushlab_core::transform::{analyze, telescoping_check};
use brushlab_core::{Anisotropy, Complex, Truncation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{missing, Loaded};
use crate::error::{CliError, CliResult};
use crate::random;
use crate::report::{num, Report};

/// Sum of three Gaussians restricted to `box(top) \ box(bottom)`.
fn band_limited(
    r: &mut ChaCha8Rng,
    an: &Anisotropy,
    top: i32,
    bottom: i32,
) -> impl Fn(&[f64]) -> Complex + Sync {
    let centers: Vec<(Vec<f64>, f64, Complex)> = (0..3)
        .map(|_| {
            let c: Vec<f64> =
                an.exponents().iter().map(|&a| r.gen_range(-1.0..1.0) * 2f64.powf((top as f64 - 0.5) * a)).collect();
            (c, r.gen_range(0.3..1.5), Complex::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))
        })
        .collect();
    let outer: Vec<f64> = an.exponents().iter().map(|&a| 2f64.powf(top as f64 * a)).collect();
    let inner: Vec<f64> = an.exponents().iter().map(|&a| 2f64.powf(bottom as f64 * a)).collect();
    move |xi: &[f64]| {
        let in_outer = xi.iter().zip(&outer).all(|(&x, &b)| x >= -b && x < b);
        let in_inner = xi.iter().zip(&inner).all(|(&x, &b)| x >= -b && x < b);
        if !in_outer || in_inner {
            return Complex::new(0.0, 0.0);
        }
        centers.iter().fold(Complex::new(0.0, 0.0), |acc, (c, w, amp)| {
            let d2: f64 = xi.iter().zip(c).map(|(x, m)| (x - m) * (x - m)).sum();
            acc + amp * (-d2 / (w * w)).exp()
        })
    }
}

pub fn run(loaded: &Loaded) -> CliResult<Report> {
    let c = &loaded.config;
    let an = c.aniso()?;
    let d = an.dim();
    let rule = c.quad()?;
    let j0 = c.j0.unwrap_or(0);
    let big_n = c.big_n.unwrap_or(2);
    let instances = c.instances.unwrap_or(5);
    let samples = c.samples.unwrap_or(4000);
    let center = match &c.bump_center {
        Some(v) => v.clone(),
        None if d == 2 => vec![0.75, 0.6],
        None => return Err(missing("bump_center")),
    };
    if center.len() != d {
        return Err(CliError::Precondition(format!("bump_center has {} entries, anisotropy {d}", center.len())));
    }
    let width = c.bump_width.unwrap_or(0.05);
    if !(width > 0.0) {
        return Err(CliError::Precondition("bump_width must be positive".into()));
    }
    let trunc = Truncation::new(c.j_min.unwrap_or(-1), c.j_max.unwrap_or(1), c.n_max.unwrap_or(40))?;

    let mut report = Report::new(&["check", "instance", "value"]);
    let top = j0 + big_n as i32;
    let bottom = j0 - big_n as i32 - 1;
    let mut r = random::rng(c.seed());
    let mut worst: f64 = 0.0;
    for i in 0..instances {
        let f = band_limited(&mut r, &an, top, bottom);
        let points: Vec<Vec<f64>> = (0..samples)
            .map(|_| an.exponents().iter().map(|&a| r.gen_range(-1.1..1.1) * 2f64.powf(top as f64 * a)).collect())
            .collect();
        let res = telescoping_check(&f, &an, j0, big_n, &points)?;
        report.row(vec!["telescoping".into(), i.to_string(), num(res)]);
        worst = worst.max(res);
    }
    report.at_most("telescoping_residual", worst, 1e-10);

    let bump = move |xi: &[f64]| {
        let d2: f64 = xi.iter().zip(&center).map(|(x, m)| (x - m) * (x - m)).sum();
        Complex::new((-d2 / (2.0 * width * width)).exp(), 0.0)
    };
    let coeffs = analyze(&bump, &an, trunc, &rule)?;
    let ratio = coeffs.energy() / (std::f64::consts::PI * width * width).powf(d as f64 / 2.0);
    report.row(vec!["parseval_ratio".into(), "0".into(), num(ratio)]);
    report.metric("coefficients", coeffs.len());
    report.near("parseval_ratio", ratio, 1.0, 1e-4);
    Ok(report)
}
