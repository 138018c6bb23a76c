//! Brute-force sequence norms by pointwise evaluation and midpoint
//! quadrature, independent of the arrangement engine (d <= 2).

use brushlab_core::{CoefficientSet, MixedNormParams, UCell};

/// `F(x) = (sum (|R|^{s/nu+1/2} |c| 1_U(x))^q)^{1/q}`.
fn integrand(items: &[(f64, UCell)], x: &[f64], q: f64) -> f64 {
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

type Weighted = ((i32, Vec<i8>), f64, UCell);

fn weighted_cells(coeffs: &CoefficientSet, params: &MixedNormParams) -> Vec<Weighted> {
    let an = &params.aniso;
    coeffs
        .iter()
        .map(|(idx, c)| {
            let vol = idx.rect(an).expect("dimension checked").volume();
            let w = vol.powf(params.s / an.nu() + 0.5) * c.norm();
            ((idx.j, idx.k.clone()), w, UCell::new(idx.j, &idx.n, an))
        })
        .collect()
}

/// `sub` midpoints inside each elementary interval, with their weights.
fn sample_axis(mut breaks: Vec<f64>, sub: usize) -> Vec<(f64, f64)> {
    breaks.sort_by(|a, b| a.total_cmp(b));
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

fn lp(vals: impl Iterator<Item = (f64, f64)>, p: f64) -> f64 {
    if p.is_infinite() {
        vals.map(|(v, _)| v).fold(0.0, f64::max)
    } else {
        vals.map(|(v, h)| v.powf(p) * h).sum::<f64>().powf(1.0 / p)
    }
}

fn nested_mixed(f: &dyn Fn(&[f64]) -> f64, axes: &[Vec<(f64, f64)>], p: &[f64]) -> f64 {
    match axes.len() {
        1 => lp(axes[0].iter().map(|&(x, h)| (f(&[x]), h)), p[0]),
        2 => lp(axes[1].iter().map(|&(y, hy)| (lp(axes[0].iter().map(|&(x, hx)| (f(&[x, y]), hx)), p[0]), hy)), p[1]),
        _ => unreachable!("brute force supports d <= 2"),
    }
}

fn axes_of<'a>(cells: impl Iterator<Item = &'a UCell> + Clone, d: usize, sub: usize) -> Vec<Vec<(f64, f64)>> {
    (0..d)
        .map(|i| sample_axis(cells.clone().flat_map(|c| [c.lower[i], c.upper[i]]).collect(), sub))
        .collect()
}

pub fn f_norm(coeffs: &CoefficientSet, params: &MixedNormParams, sub: usize) -> f64 {
    let cells = weighted_cells(coeffs, params);
    if cells.is_empty() {
        return 0.0;
    }
    let axes = axes_of(cells.iter().map(|(_, _, c)| c), params.aniso.dim(), sub);
    let items: Vec<(f64, UCell)> = cells.into_iter().map(|(_, w, c)| (w, c)).collect();
    nested_mixed(&|x| integrand(&items, x, params.q), &axes, &params.p)
}

pub fn b_norm(coeffs: &CoefficientSet, params: &MixedNormParams, sub: usize) -> f64 {
    let cells = weighted_cells(coeffs, params);
    let mut keys: Vec<(i32, Vec<i8>)> = cells.iter().map(|(k, _, _)| k.clone()).collect();
    keys.sort();
    keys.dedup();
    let per_rect: Vec<f64> = keys
        .iter()
        .map(|key| {
            let items: Vec<(f64, UCell)> =
                cells.iter().filter(|(k, _, _)| k == key).map(|(_, w, c)| (*w, c.clone())).collect();
            let axes = axes_of(items.iter().map(|(_, c)| c), params.aniso.dim(), sub);
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
