#![allow(dead_code)]

use brushlab_core::anisotropy::Anisotropy;
use brushlab_core::covering::{sign_magnitude_set, UCell};
use brushlab_core::mixed_norms::sequence::MixedNormParams;
use brushlab_core::transform::CoefficientSet;
use brushlab_core::BrushletIndex;
use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn aniso(a: &[f64]) -> Anisotropy<f64> {
    Anisotropy::new(a.to_vec()).unwrap()
}

pub fn random_aniso(r: &mut ChaCha8Rng, d: usize) -> Anisotropy<f64> {
    aniso(&(0..d).map(|_| [1.0, 1.5, 2.0][r.gen_range(0..3)]).collect::<Vec<_>>())
}

pub fn random_index(r: &mut ChaCha8Rng, d: usize, levels: (i32, i32), n_max: u64) -> BrushletIndex {
    let ks = sign_magnitude_set(d);
    let k = ks[r.gen_range(0..ks.len())].clone();
    let n = (0..d).map(|_| r.gen_range(0..=n_max)).collect();
    BrushletIndex::new(r.gen_range(levels.0..=levels.1), k, n).unwrap()
}

pub fn random_set(r: &mut ChaCha8Rng, d: usize, count: usize, levels: (i32, i32), n_max: u64) -> CoefficientSet<f64> {
    let entries: Vec<_> = (0..count)
        .map(|_| {
            let idx = random_index(r, d, levels, n_max);
            (idx, Complex::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)))
        })
        .collect();
    CoefficientSet::from_entries(entries).unwrap()
}

pub fn random_params(r: &mut ChaCha8Rng, an: &Anisotropy<f64>) -> MixedNormParams<f64> {
    let d = an.dim();
    let p = (0..d).map(|_| r.gen_range(0.6..4.0)).collect();
    MixedNormParams::new(p, r.gen_range(0.6..4.0), r.gen_range(-1.0..1.0), an.clone()).unwrap()
}

/// Pointwise `F(x) = (sum (|R|^{s/nu+1/2} |c| 1_U(x))^q)^{1/q}`.
fn integrand(items: &[(f64, UCell<f64>)], x: &[f64], q: f64) -> f64 {
    let mut acc = 0.0f64;
    for (w, cell) in items {
        if cell.contains(x) {
            acc = if q.is_infinite() { acc.max(*w) } else { acc + w.powf(q) };
        }
    }
    if q.is_infinite() || acc == 0.0 {
        acc
    } else {
        acc.powf(1.0 / q)
    }
}

fn weighted_cells(coeffs: &CoefficientSet<f64>, params: &MixedNormParams<f64>) -> Vec<((i32, Vec<i8>), f64, UCell<f64>)> {
    let an = &params.aniso;
    coeffs
        .iter()
        .map(|(idx, c)| {
            let vol = idx.rect(an).unwrap().volume();
            let w = vol.powf(params.s / an.nu() + 0.5) * c.norm();
            ((idx.j, idx.k.clone()), w, UCell::new(idx.j, &idx.n, an))
        })
        .collect()
}

/// Midpoint samples: `sub` points inside each elementary interval between
/// consecutive breakpoints, with their weights.
fn sample_axis(breaks: &mut Vec<f64>, sub: usize) -> Vec<(f64, f64)> {
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breaks.dedup();
    let mut out = Vec::new();
    for w in breaks.windows(2) {
        let h = (w[1] - w[0]) / sub as f64;
        for s in 0..sub {
            out.push((w[0] + (s as f64 + 0.5) * h, h));
        }
    }
    out
}

/// Nested-loop mixed norm of a pointwise function in up to two dimensions.
fn nested_mixed(f: &dyn Fn(&[f64]) -> f64, axes: &[Vec<(f64, f64)>], p: &[f64]) -> f64 {
    let lp = |vals: &mut dyn Iterator<Item = (f64, f64)>, p: f64| -> f64 {
        if p.is_infinite() {
            vals.map(|(v, _)| v).fold(0.0, f64::max)
        } else {
            vals.map(|(v, h)| v.powf(p) * h).sum::<f64>().powf(1.0 / p)
        }
    };
    match axes.len() {
        1 => lp(&mut axes[0].iter().map(|&(x, h)| (f(&[x]), h)), p[0]),
        2 => lp(
            &mut axes[1].iter().map(|&(y, hy)| (lp(&mut axes[0].iter().map(|&(x, hx)| (f(&[x, y]), hx)), p[0]), hy)),
            p[1],
        ),
        _ => panic!("brute force supports d <= 2"),
    }
}

/// Brute-force `f` norm: pointwise evaluation and midpoint quadrature with
/// `sub` samples per elementary interval.
pub fn brute_f_norm(coeffs: &CoefficientSet<f64>, params: &MixedNormParams<f64>, sub: usize) -> f64 {
    let cells = weighted_cells(coeffs, params);
    if cells.is_empty() {
        return 0.0;
    }
    let d = params.aniso.dim();
    let axes: Vec<Vec<(f64, f64)>> = (0..d)
        .map(|i| {
            let mut b: Vec<f64> = cells.iter().flat_map(|(_, _, c)| [c.lower[i], c.upper[i]]).collect();
            sample_axis(&mut b, sub)
        })
        .collect();
    let items: Vec<(f64, UCell<f64>)> = cells.into_iter().map(|(_, w, c)| (w, c)).collect();
    nested_mixed(&|x| integrand(&items, x, params.q), &axes, &params.p)
}

/// Brute-force `b` norm.
pub fn brute_b_norm(coeffs: &CoefficientSet<f64>, params: &MixedNormParams<f64>, sub: usize) -> f64 {
    let cells = weighted_cells(coeffs, params);
    let mut keys: Vec<(i32, Vec<i8>)> = cells.iter().map(|(k, _, _)| k.clone()).collect();
    keys.sort();
    keys.dedup();
    let d = params.aniso.dim();
    let per_rect: Vec<f64> = keys
        .iter()
        .map(|key| {
            let items: Vec<(f64, UCell<f64>)> =
                cells.iter().filter(|(k, _, _)| k == key).map(|(_, w, c)| (*w, c.clone())).collect();
            let axes: Vec<Vec<(f64, f64)>> = (0..d)
                .map(|i| {
                    let mut b: Vec<f64> = items.iter().flat_map(|(_, c)| [c.lower[i], c.upper[i]]).collect();
                    sample_axis(&mut b, sub)
                })
                .collect();
            nested_mixed(&|x| integrand(&items, x, 1.0), &axes, &params.p)
        })
        .collect();
    if params.q.is_infinite() {
        per_rect.into_iter().fold(0.0, f64::max)
    } else {
        per_rect.iter().map(|v| v.powf(params.q)).sum::<f64>().powf(1.0 / params.q)
    }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Fitted constant of a batch: its largest ratio.
pub fn fit(ratios: &[f64]) -> f64 {
    ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}
