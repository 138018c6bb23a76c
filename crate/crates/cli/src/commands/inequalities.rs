//! Empirical inequality suite: the rectangle bound, Fefferman-Stein, Peetre,
//! the hump bound and the maximal bound on brushlet sums. Each constant is
//! fitted on one batch and compared with a held-out batch and a refined
//! grid; the fits must agree within 10%.

use brushlab_core::brushlet::BrushletTime;
use brushlab_core::covering::lizorkin_level;
use brushlab_core::mixed_norms::grid::vector_lq_norm;
use brushlab_core::mixed_norms::maximal::{iterated_maximal, iterated_maximal_at};
use brushlab_core::{Anisotropy, Complex, GridFunction, QuadRule, UCell};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliResult;
use crate::random;
use crate::report::{num, Report};

type Boxes = Vec<(usize, usize, usize, usize, f64)>;

struct Stability {
    fitted: f64,
    held_out: f64,
    refined: f64,
}

impl Stability {
    fn ok(&self) -> bool {
        self.fitted.is_finite()
            && self.held_out <= 1.1 * self.fitted
            && self.refined <= 1.1 * self.fitted
            && self.refined >= self.fitted / 1.1
    }
}

fn fit(ratios: &[f64]) -> f64 {
    ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

fn aniso(a: &[f64]) -> Anisotropy {
    Anisotropy::new(a.to_vec()).expect("positive exponents")
}

/// A few nonnegative boxes on `n x n` cells over `[0, 1]^2`.
fn random_boxes(r: &mut ChaCha8Rng, n: usize) -> Boxes {
    (0..r.gen_range(1..=3))
        .map(|_| {
            let x0 = r.gen_range(0..n - 1);
            let y0 = r.gen_range(0..n - 1);
            (x0, r.gen_range(x0 + 1..=n), y0, r.gen_range(y0 + 1..=n), r.gen_range(0.1..3.0))
        })
        .collect()
}

/// Boxes on a grid padded by `n/2` zero cells per side, each cell split `refine` times.
fn boxes_on_grid(boxes: &Boxes, n: usize, refine: usize) -> CliResult<GridFunction> {
    let pad = n / 2;
    let cells = (n + 2 * pad) * refine;
    let h = 1.0 / (n * refine) as f64;
    let edges: Vec<f64> = (0..=cells).map(|i| (i as f64 - (pad * refine) as f64) * h).collect();
    let mut values = vec![0.0; cells * cells];
    for &(x0, x1, y0, y1, v) in boxes {
        for cy in (y0 + pad) * refine..(y1 + pad) * refine {
            for cx in (x0 + pad) * refine..(x1 + pad) * refine {
                values[cy * cells + cx] += v;
            }
        }
    }
    Ok(GridFunction::new(vec![edges.clone(), edges], values)?)
}

fn rectangle_bound(r: &mut ChaCha8Rng) -> CliResult<f64> {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..50 {
        let n = 10;
        let f = boxes_on_grid(&random_boxes(r, n), n, 1)?;
        let cells = f.shape()[0];
        let (x0, y0) = (r.gen_range(0..cells - 1), r.gen_range(0..cells - 1));
        let (x1, y1) = (r.gen_range(x0 + 1..=cells), r.gen_range(y0 + 1..=cells));
        let e = f.all_edges();
        let area = (e[0][x1] - e[0][x0]) * (e[1][y1] - e[1][y0]);
        let avg = f.integral_over_cells(&[x0, y0], &[x1, y1]) / area;
        for _ in 0..5 {
            let x = [r.gen_range(e[0][x0]..e[0][x1]), r.gen_range(e[1][y0]..e[1][y1])];
            worst = worst.max(avg - iterated_maximal_at(&f, 1.0, &x)?);
        }
    }
    Ok(worst)
}

fn fefferman_stein_ratio(family: &[Boxes], n: usize, refine: usize) -> CliResult<f64> {
    let (p, q) = ([2.0, 3.0], 2.0);
    let fs = family.iter().map(|b| boxes_on_grid(b, n, refine)).collect::<CliResult<Vec<_>>>()?;
    let ms = fs.iter().map(|f| Ok(iterated_maximal(f, 1.0)?)).collect::<CliResult<Vec<_>>>()?;
    Ok(vector_lq_norm(&ms, &p, q)? / vector_lq_norm(&fs, &p, q)?)
}

fn fefferman_stein(r: &mut ChaCha8Rng) -> CliResult<Stability> {
    let n = 12;
    let families: Vec<Vec<Boxes>> = (0..40).map(|_| (0..3).map(|_| random_boxes(r, n)).collect()).collect();
    let coarse = families.iter().map(|f| fefferman_stein_ratio(f, n, 1)).collect::<CliResult<Vec<_>>>()?;
    let fine = families[..20].iter().map(|f| fefferman_stein_ratio(f, n, 2)).collect::<CliResult<Vec<_>>>()?;
    Ok(Stability { fitted: fit(&coarse[..20]), held_out: fit(&coarse[20..]), refined: fit(&fine) })
}

/// `sum_n s_n w_{n,R}` for one level-0 rectangle.
struct BandLimited {
    terms: Vec<(BrushletTime<f64>, f64)>,
}

impl BandLimited {
    fn new(r: &mut ChaCha8Rng, an: &Anisotropy, half: f64, rule: QuadRule) -> CliResult<Self> {
        let rects = lizorkin_level(0, an)?;
        let rect = &rects[r.gen_range(0..rects.len())];
        let terms = (0..r.gen_range(1..=3))
            .map(|_| {
                let n = [r.gen_range(0..3u64), r.gen_range(0..3u64)];
                Ok((BrushletTime::new(&n, rect, &[half, half], rule)?, r.gen_range(-1.0..1.0)))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Self { terms })
    }

    fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .fold(Complex::new(0.0, 0.0), |acc, (w, s)| acc + w.eval(x).expect("dimension matches") * *s)
            .norm()
    }
}

/// Largest `sup_y |f(y)| <x - y>^{-nu} / M_1 f(x)` over cells with `|x|_inf <= inner`.
fn peetre_ratio(an: &Anisotropy, f: &BandLimited, half: f64, h: f64, inner: f64) -> CliResult<f64> {
    let cells = (2.0 * half / h).round() as usize;
    let edges: Vec<f64> = (0..=cells).map(|i| -half + i as f64 * h).collect();
    let g = GridFunction::from_midpoints(vec![edges.clone(), edges], |x| f.eval(x))?;
    let m = iterated_maximal(&g, 1.0)?;
    let nu = an.nu();
    let span = 2 * cells - 1;
    let weight = (0..span * span)
        .map(|i| {
            let (dx, dy) = ((i % span) as f64 - (cells - 1) as f64, (i / span) as f64 - (cells - 1) as f64);
            Ok(an.bracket(&[dx * h, dy * h])?.powf(-nu))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    let mid = |i: usize| -half + (i as f64 + 0.5) * h;
    let mut best: f64 = 0.0;
    for iy in (0..cells).filter(|&i| mid(i).abs() <= inner) {
        for ix in (0..cells).filter(|&i| mid(i).abs() <= inner) {
            let mut sup: f64 = 0.0;
            for jy in 0..cells {
                let row = (jy + cells - 1 - iy) * span + cells - 1 - ix;
                for jx in 0..cells {
                    sup = sup.max(g.values()[jy * cells + jx] * weight[row + jx]);
                }
            }
            best = best.max(sup / m.values()[iy * cells + ix]);
        }
    }
    Ok(best)
}

fn peetre(r: &mut ChaCha8Rng) -> CliResult<Stability> {
    let an = aniso(&[1.0, 1.0]);
    let half = 16.0;
    let rule = QuadRule::default();
    let fs = (0..16).map(|_| BandLimited::new(r, &an, half, rule)).collect::<CliResult<Vec<_>>>()?;
    let coarse = fs.iter().map(|f| peetre_ratio(&an, f, half, 0.5, 8.0)).collect::<CliResult<Vec<_>>>()?;
    let fine = fs[..8].iter().map(|f| peetre_ratio(&an, f, half, 0.25, 8.0)).collect::<CliResult<Vec<_>>>()?;
    Ok(Stability { fitted: fit(&coarse[..8]), held_out: fit(&coarse[8..]), refined: fit(&fine) })
}

fn hump_ratios(r: &mut ChaCha8Rng, an: &Anisotropy, rule: QuadRule, count: usize) -> CliResult<Vec<f64>> {
    let d = an.dim();
    let mut out = Vec::new();
    for _ in 0..count {
        let idx = random::index(r, d, (-1, 1), 5);
        let rect = idx.rect(an)?;
        let reach: Vec<f64> = rect.intervals.iter().map(|iv| 60.0 / iv.len()).collect();
        let w = BrushletTime::new(&idx.n, &rect, &reach, rule)?;
        let vol = rect.volume();
        for _ in 0..20 {
            let x: Vec<f64> = reach.iter().map(|&m| r.gen_range(-m..m) / 2.0).collect();
            let mut humps = 0.0;
            for y in w.frame().hump_args(&x) {
                humps += w.central_product(&y)?.norm();
            }
            let bound = humps * vol.sqrt() / 2f64.powi(d as i32);
            out.push(w.eval(&x)?.norm() / bound);
        }
    }
    Ok(out)
}

fn hump_bound(seed: u64) -> CliResult<Stability> {
    let an = aniso(&[1.0, 2.0]);
    let coarse = QuadRule::default();
    let fine = QuadRule { points_per_ramp: 64, points_per_period: 32, tolerance: None };
    let a = hump_ratios(&mut random::rng(seed + 114), &an, coarse, 10)?;
    let b = hump_ratios(&mut random::rng(seed + 115), &an, coarse, 10)?;
    let c = hump_ratios(&mut random::rng(seed + 114), &an, fine, 10)?;
    Ok(Stability { fitted: fit(&a), held_out: fit(&b), refined: fit(&c) })
}

/// `sum |s_n||w_{n,R}(x)| / (|R|^{1/2} sum_m M_1(sum |s_n| 1_U)(U_m x))`.
fn maxbound_ratios(r: &mut ChaCha8Rng, an: &Anisotropy, rule: QuadRule, count: usize) -> CliResult<Vec<f64>> {
    let d = an.dim();
    let mut out = Vec::new();
    for _ in 0..count {
        let base = random::index(r, d, (-1, 1), 0);
        let rect = base.rect(an)?;
        let terms: Vec<(Vec<u64>, f64)> = (0..r.gen_range(1..=4))
            .map(|_| ((0..d).map(|_| r.gen_range(0..4u64)).collect(), r.gen_range(0.1..2.0)))
            .collect();
        let cells: Vec<UCell> = terms.iter().map(|(n, _)| UCell::new(base.j, n, an)).collect();
        let edges: Vec<Vec<f64>> = (0..d)
            .map(|i| {
                let mut e: Vec<f64> = cells.iter().flat_map(|c| [c.lower[i], c.upper[i]]).collect();
                let span = e.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                e.push(-3.0 * span);
                e.push(3.0 * span);
                e.sort_by(|a, b| a.total_cmp(b));
                e.dedup();
                e
            })
            .collect();
        let g = GridFunction::from_midpoints(edges.clone(), |x| {
            terms.iter().zip(&cells).filter(|(_, c)| c.contains(x)).map(|((_, s), _)| s).sum()
        })?;
        let reach: Vec<f64> = edges.iter().map(|e| e[e.len() - 1]).collect();
        let ws = terms
            .iter()
            .map(|(n, _)| Ok(BrushletTime::new(n, &rect, &reach, rule)?))
            .collect::<CliResult<Vec<_>>>()?;
        let signs = ws[0].frame().signs.clone();
        for _ in 0..15 {
            let x: Vec<f64> = reach.iter().map(|&m| r.gen_range(-m..m) / 3.0).collect();
            let mut lhs = 0.0;
            for (w, (_, s)) in ws.iter().zip(&terms) {
                lhs += s * w.eval(&x)?.norm();
            }
            let mut rhs = 0.0;
            for v in &signs {
                let ux: Vec<f64> = x.iter().zip(v).map(|(&xi, &s)| xi * s as f64).collect();
                rhs += iterated_maximal_at(&g, 1.0, &ux)?;
            }
            out.push(lhs / (rhs * rect.volume().sqrt()));
        }
    }
    Ok(out)
}

fn maxbound(seed: u64) -> CliResult<Stability> {
    let an = aniso(&[1.0, 2.0]);
    let coarse = QuadRule::default();
    let fine = QuadRule { points_per_ramp: 64, points_per_period: 32, tolerance: None };
    let a = maxbound_ratios(&mut random::rng(seed + 116), &an, coarse, 12)?;
    let b = maxbound_ratios(&mut random::rng(seed + 117), &an, coarse, 12)?;
    let c = maxbound_ratios(&mut random::rng(seed + 116), &an, fine, 12)?;
    Ok(Stability { fitted: fit(&a), held_out: fit(&b), refined: fit(&c) })
}

pub fn run(seed: u64) -> CliResult<Report> {
    let mut report = Report::new(&["check", "fitted", "held_out", "refined", "pass"]);
    let gap = rectangle_bound(&mut random::rng(seed + 112))?;
    report.row(vec!["rectangle".into(), num(gap), String::new(), String::new(), (gap <= 1e-12).to_string()]);
    report.at_most("rectangle_gap", gap, 1e-12);
    let checks = [
        ("fefferman_stein", fefferman_stein(&mut random::rng(seed + 111))?),
        ("peetre", peetre(&mut random::rng(seed + 113))?),
        ("hump", hump_bound(seed)?),
        ("maxbound", maxbound(seed)?),
    ];
    for (name, s) in &checks {
        report.row(vec![name.to_string(), num(s.fitted), num(s.held_out), num(s.refined), s.ok().to_string()]);
        report.metric(&format!("{name}_constant"), s.fitted);
        report.flag(&format!("{name}_stable"), s.ok());
    }
    Ok(report)
}
