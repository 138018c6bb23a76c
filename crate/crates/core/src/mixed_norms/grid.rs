//! Piecewise-constant functions on tensor grids and their mixed `L_p` norms.

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// A function that is constant on each cell of a tensor grid and zero
/// outside it. `edges[i]` holds the strictly increasing cell boundaries of
/// axis `i`; cell values are stored with axis 0 varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    edges: Vec<Vec<T>>,
    values: Vec<T>,
}

impl<T: Real> GridFunction<T> {
    pub fn new(edges: Vec<Vec<T>>, values: Vec<T>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::Domain("grid function needs at least one axis".into()));
        }
        for e in &edges {
            if e.len() < 2 || e.windows(2).any(|w| !(w[0] < w[1])) || e.iter().any(|v| !v.is_finite()) {
                return Err(Error::Domain("cell edges must be finite and strictly increasing".into()));
            }
        }
        let len: usize = edges.iter().map(|e| e.len() - 1).product();
        if values.len() != len {
            return Err(Error::Domain(format!("expected {len} cell values, got {}", values.len())));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("cell values must be finite".into()));
        }
        Ok(Self { edges, values })
    }

    /// Cell values taken from `f` at the cell midpoints.
    pub fn from_midpoints(edges: Vec<Vec<T>>, f: impl Fn(&[T]) -> T) -> Result<Self> {
        let shape: Vec<usize> = edges.iter().map(|e| e.len().saturating_sub(1)).collect();
        let len = shape.iter().product();
        let mut values = Vec::with_capacity(len);
        let mut x = vec![T::zero(); edges.len()];
        for flat in 0..len {
            let mut rest = flat;
            for (axis, e) in edges.iter().enumerate() {
                let c = rest % shape[axis];
                rest /= shape[axis];
                x[axis] = (e[c] + e[c + 1]) / lit(2.0);
            }
            values.push(f(&x));
        }
        Self::new(edges, values)
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self, axis: usize) -> &[T] {
        &self.edges[axis]
    }

    pub fn all_edges(&self) -> &[Vec<T>] {
        &self.edges
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Cells per axis.
    pub fn shape(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.len() - 1).collect()
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self { edges: self.edges.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Flat index of the half-open cell containing `x`.
    pub fn cell_of(&self, x: &[T]) -> Option<usize> {
        let mut flat = 0;
        let mut stride = 1;
        for (e, &xi) in self.edges.iter().zip(x) {
            if xi < e[0] || xi >= e[e.len() - 1] {
                return None;
            }
            let c = e.partition_point(|&v| v <= xi) - 1;
            flat += c * stride;
            stride *= e.len() - 1;
        }
        Some(flat)
    }

    /// Value at `x`, zero outside the grid.
    pub fn value_at(&self, x: &[T]) -> T {
        self.cell_of(x).map_or(T::zero(), |c| self.values[c])
    }

    /// `int_R |f|` over a box whose sides are unions of grid cells
    /// (`lo`, `hi` are cell index ranges, `hi` exclusive).
    pub fn integral_over_cells(&self, lo: &[usize], hi: &[usize]) -> T {
        let shape = self.shape();
        let mut acc = T::zero();
        let total: usize = lo.iter().zip(hi).map(|(&a, &b)| b - a).product();
        for flat in 0..total {
            let mut rest = flat;
            let mut pos = 0;
            let mut stride = 1;
            let mut vol = T::one();
            for axis in 0..self.dim() {
                let span = hi[axis] - lo[axis];
                let c = lo[axis] + rest % span;
                rest /= span;
                pos += c * stride;
                stride *= shape[axis];
                vol = vol * (self.edges[axis][c + 1] - self.edges[axis][c]);
            }
            acc = acc + self.values[pos].abs() * vol;
        }
        acc
    }
}

fn check_exponents<T: Real>(p: &[T], d: usize) -> Result<()> {
    if p.len() != d {
        return Err(Error::Domain(format!("expected {d} exponents, got {}", p.len())));
    }
    if p.iter().any(|&pi| !(pi > T::zero())) {
        return Err(Error::Domain("integrability exponents must be positive".into()));
    }
    Ok(())
}

/// Reduces one axis of a nonnegative tensor by an `L_p` norm.
fn reduce_axis<T: Real>(data: &[T], shape: &[usize], widths: &[T], p: T) -> Vec<T> {
    let len = shape[0];
    data.chunks(len)
        .map(|line| {
            if p.is_infinite() {
                line.iter().copied().fold(T::zero(), T::max)
            } else {
                let s: T = line
                    .iter()
                    .zip(widths)
                    .filter(|(&v, _)| v > T::zero())
                    .map(|(&v, &w)| v.powf(p) * w)
                    .sum();
                s.powf(p.recip())
            }
        })
        .collect()
}

/// Iterated norm `(int ... (int |f|^{p_1} dx_1)^{p_2/p_1} ... dx_d)^{1/p_d}`,
/// integrating exactly cell by cell. `p_i = inf` takes the maximum.
pub fn mixed_lp<T: Real>(f: &GridFunction<T>, p: &[T]) -> Result<T> {
    check_exponents(p, f.dim())?;
    // Move axes to the front one at a time: the data is axis-0 fastest, so
    // after reducing axis 0 the remaining tensor is again axis-0 fastest.
    let mut data: Vec<T> = f.values.iter().map(|v| v.abs()).collect();
    let mut shape = f.shape();
    for axis in 0..f.dim() {
        let widths: Vec<T> = f.edges[axis].windows(2).map(|w| w[1] - w[0]).collect();
        data = reduce_axis(&data, &shape, &widths, p[axis]);
        shape.remove(0);
    }
    Ok(data[0])
}

/// Plain `L_p` norm of a grid function.
pub fn lp_norm<T: Real>(f: &GridFunction<T>, p: T) -> Result<T> {
    mixed_lp(f, &vec![p; f.dim()])
}

/// `|| ( sum_j |f_j|^q )^{1/q} ||_{L_p}` for a family on a common grid.
pub fn vector_lq_norm<T: Real>(family: &[GridFunction<T>], p: &[T], q: T) -> Result<T> {
    let Some(first) = family.first() else {
        return Ok(T::zero());
    };
    if family.iter().any(|g| g.edges != first.edges) {
        return Err(Error::Domain("family members live on different grids".into()));
    }
    if !(q > T::zero()) {
        return Err(Error::Domain("q must be positive".into()));
    }
    let values = (0..first.values.len())
        .map(|c| {
            if q.is_infinite() {
                family.iter().map(|g| g.values[c].abs()).fold(T::zero(), T::max)
            } else {
                family.iter().map(|g| g.values[c].abs().powf(q)).sum::<T>().powf(q.recip())
            }
        })
        .collect();
    mixed_lp(&GridFunction::new(first.edges.clone(), values)?, p)
}
