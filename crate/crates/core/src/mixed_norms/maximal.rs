//! Grid-restricted directional and iterated maximal functions.
//!
//! The supremum in `M_k f(x) = sup_{I ni x_k} |I|^{-1} int_I |f(.., y, ..)| dy`
//! runs over intervals whose endpoints are grid edges. Point evaluations also
//! admit the evaluation coordinate itself as an endpoint, so the value does
//! not depend on where inside a cell the point sits relative to the edges
//! beyond that. The function is zero outside the grid.

use crate::error::{Error, Result};
use crate::mixed_norms::grid::GridFunction;
use crate::scalar::Real;

/// Maximal averages of a nonnegative line function, one per cell: for cell
/// `c`, the sup over windows `[e_a, e_b]` with `a <= c < b`. O(n^2).
fn line_cell_maximal<T: Real>(edges: &[T], vals: &[T]) -> Vec<T> {
    let n = vals.len();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(T::zero());
    for (c, &v) in vals.iter().enumerate() {
        let last = prefix[c];
        prefix.push(last + v * (edges[c + 1] - edges[c]));
    }
    let mut best = vec![T::zero(); n];
    let mut suffix = vec![T::zero(); n + 1];
    for a in 0..n {
        // suffix[c] = max_{b > c} avg(a, b) for c >= a.
        suffix[n] = T::neg_infinity();
        for b in (a + 1..=n).rev() {
            let avg = (prefix[b] - prefix[a]) / (edges[b] - edges[a]);
            suffix[b - 1] = if b == n { avg } else { suffix[b].max(avg) };
        }
        for c in a..n {
            best[c] = best[c].max(suffix[c]);
        }
    }
    best
}

/// Integral of the line function over `(-inf, y]`.
fn line_primitive<T: Real>(edges: &[T], prefix: &[T], vals: &[T], y: T) -> T {
    if y <= edges[0] {
        return T::zero();
    }
    let last = edges.len() - 1;
    if y >= edges[last] {
        return prefix[last];
    }
    let c = edges.partition_point(|&e| e <= y) - 1;
    prefix[c] + vals[c] * (y - edges[c])
}

/// Sup of averages over windows with endpoints in `edges` and `x` that
/// contain `x`.
fn line_point_maximal<T: Real>(edges: &[T], vals: &[T], x: T) -> T {
    let mut prefix = Vec::with_capacity(edges.len());
    prefix.push(T::zero());
    for (c, &v) in vals.iter().enumerate() {
        let last = prefix[c];
        prefix.push(last + v * (edges[c + 1] - edges[c]));
    }
    let lefts: Vec<T> = edges.iter().copied().filter(|&e| e <= x).chain(std::iter::once(x)).collect();
    let rights: Vec<T> = edges.iter().copied().filter(|&e| e >= x).chain(std::iter::once(x)).collect();
    let s_left: Vec<T> = lefts.iter().map(|&a| line_primitive(edges, &prefix, vals, a)).collect();
    let s_right: Vec<T> = rights.iter().map(|&b| line_primitive(edges, &prefix, vals, b)).collect();
    let mut best = T::zero();
    for (&a, &sa) in lefts.iter().zip(&s_left) {
        for (&b, &sb) in rights.iter().zip(&s_right) {
            if b > a {
                best = best.max((sb - sa) / (b - a));
            }
        }
    }
    best
}

/// Applies the cell-wise maximal operator along `axis` to `|f|`.
pub fn directional_maximal<T: Real>(f: &GridFunction<T>, axis: usize) -> Result<GridFunction<T>> {
    if axis >= f.dim() {
        return Err(Error::Domain(format!("axis {axis} out of range")));
    }
    let shape = f.shape();
    let stride: usize = shape[..axis].iter().product();
    let len = shape[axis];
    let edges = f.edges(axis);
    let src = f.values();
    let mut out = vec![T::zero(); src.len()];
    let mut line = vec![T::zero(); len];
    for outer in (0..src.len()).step_by(stride * len) {
        for inner in 0..stride {
            let base = outer + inner;
            for c in 0..len {
                line[c] = src[base + c * stride].abs();
            }
            for (c, v) in line_cell_maximal(edges, &line).into_iter().enumerate() {
                out[base + c * stride] = v;
            }
        }
    }
    GridFunction::new(f.all_edges().to_vec(), out)
}

/// `M_k f(x)` for the line through `x` parallel to axis `k`.
pub fn maximal_1d<T: Real>(f: &GridFunction<T>, axis: usize, x: &[T]) -> Result<T> {
    if axis >= f.dim() || x.len() != f.dim() {
        return Err(Error::Domain("axis or point dimension out of range".into()));
    }
    let shape = f.shape();
    let stride: usize = shape[..axis].iter().product();
    // Locate the line; points off the grid in another axis see a zero line.
    let mut base = 0;
    let mut s = 1;
    for (i, e) in f.all_edges().iter().enumerate() {
        if i != axis {
            if x[i] < e[0] || x[i] >= e[e.len() - 1] {
                return Ok(T::zero());
            }
            base += (e.partition_point(|&v| v <= x[i]) - 1) * s;
        }
        s *= e.len() - 1;
    }
    let line: Vec<T> = (0..shape[axis]).map(|c| f.values()[base + c * stride].abs()).collect();
    Ok(line_point_maximal(f.edges(axis), &line, x[axis]))
}

fn check_theta<T: Real>(theta: T) -> Result<()> {
    if !(theta > T::zero()) || !theta.is_finite() {
        return Err(Error::Domain(format!("maximal exponent must be positive, got {theta}")));
    }
    Ok(())
}

/// `M_theta f = (M_d ... M_1 |f|^theta)^{1/theta}` on grid cells.
pub fn iterated_maximal<T: Real>(f: &GridFunction<T>, theta: T) -> Result<GridFunction<T>> {
    check_theta(theta)?;
    let mut g = f.map(|v| v.abs().powf(theta));
    for axis in 0..f.dim() {
        g = directional_maximal(&g, axis)?;
    }
    Ok(g.map(|v| v.powf(theta.recip())))
}

fn point_rec<T: Real>(values: &[T], shape: &[usize], edges: &[Vec<T>], x: &[T]) -> T {
    let m = shape.len();
    if m == 0 {
        return values[0];
    }
    let stride: usize = shape[..m - 1].iter().product();
    let line: Vec<T> = (0..shape[m - 1])
        .map(|c| point_rec(&values[c * stride..(c + 1) * stride], &shape[..m - 1], edges, x))
        .collect();
    line_point_maximal(&edges[m - 1], &line, x[m - 1])
}

/// `M_theta f(x)` at an arbitrary point (on or off the grid).
pub fn iterated_maximal_at<T: Real>(f: &GridFunction<T>, theta: T, x: &[T]) -> Result<T> {
    check_theta(theta)?;
    if x.len() != f.dim() {
        return Err(Error::Domain("point has the wrong dimension".into()));
    }
    let g: Vec<T> = f.values().iter().map(|v| v.abs().powf(theta)).collect();
    Ok(point_rec(&g, &f.shape(), f.all_edges(), x).powf(theta.recip()))
}
