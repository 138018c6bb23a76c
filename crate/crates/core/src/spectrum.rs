//! Complex functions sampled on tensor frequency grids.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Values on the tensor product of strictly increasing axis grids, stored
/// with axis 0 varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSpectrum<T> {
    grids: Vec<Vec<T>>,
    values: Vec<Complex<T>>,
}

impl<T: Real> SampledSpectrum<T> {
    pub fn new(grids: Vec<Vec<T>>, values: Vec<Complex<T>>) -> Result<Self> {
        if grids.is_empty() {
            return Err(Error::Domain("spectrum needs at least one axis".into()));
        }
        for g in &grids {
            if g.is_empty() || g.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::Domain("axis grid must be nonempty and strictly increasing".into()));
            }
        }
        let len: usize = grids.iter().map(Vec::len).product();
        if values.len() != len {
            return Err(Error::Domain(format!(
                "expected {len} samples, got {}",
                values.len()
            )));
        }
        Ok(Self { grids, values })
    }

    pub fn zeros(grids: Vec<Vec<T>>) -> Result<Self> {
        let len = grids.iter().map(Vec::len).product();
        Self::new(grids, vec![Complex::new(T::zero(), T::zero()); len])
    }

    /// Samples `f` at every grid node.
    pub fn from_fn(grids: Vec<Vec<T>>, f: impl Fn(&[T]) -> Complex<T>) -> Result<Self> {
        let mut s = Self::zeros(grids)?;
        let mut xi = vec![T::zero(); s.dim()];
        for flat in 0..s.values.len() {
            s.node_into(flat, &mut xi);
            s.values[flat] = f(&xi);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.grids.len()
    }

    pub fn grids(&self) -> &[Vec<T>] {
        &self.grids
    }

    pub fn grid(&self, axis: usize) -> &[T] {
        &self.grids[axis]
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    pub fn shape(&self) -> Vec<usize> {
        self.grids.iter().map(Vec::len).collect()
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.grids[..axis].iter().map(Vec::len).product()
    }

    /// Coordinates of the node with flat index `flat`.
    pub fn node_into(&self, mut flat: usize, out: &mut [T]) {
        for (axis, g) in self.grids.iter().enumerate() {
            out[axis] = g[flat % g.len()];
            flat /= g.len();
        }
    }

    pub fn node(&self, flat: usize) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim()];
        self.node_into(flat, &mut out);
        out
    }

    /// Largest modulus difference against another spectrum on the same grid.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.grids != other.grids {
            return Err(Error::Domain("spectra live on different grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().map(|v| v.norm()).fold(T::zero(), T::max)
    }

    /// Grid inner product `sum f conj(g)` times the cell volume, assuming
    /// uniform axis grids.
    pub fn grid_inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.grids != other.grids {
            return Err(Error::Domain("spectra live on different grids".into()));
        }
        let vol = self.grids.iter().fold(T::one(), |acc, g| {
            if g.len() > 1 {
                acc * (g[1] - g[0])
            } else {
                acc
            }
        });
        let s = self
            .values
            .iter()
            .zip(&other.values)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b.conj());
        Ok(s * vol)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grids != other.grids {
            return Err(Error::Domain("spectra live on different grids".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { grids: self.grids.clone(), values })
    }

    /// Index of the node equal to `x` up to a fraction of the local spacing.
    pub fn find_node(&self, axis: usize, x: T) -> Option<usize> {
        find_node(&self.grids[axis], x)
    }
}

pub(crate) fn find_node<T: Real>(g: &[T], x: T) -> Option<usize> {
    let pos = g.partition_point(|&v| v < x);
    let spacing = |i: usize| -> T {
        if g.len() < 2 {
            T::one()
        } else if i + 1 < g.len() {
            g[i + 1] - g[i]
        } else {
            g[i] - g[i - 1]
        }
    };
    let tol_frac = T::epsilon().sqrt();
    [pos.checked_sub(1), Some(pos)]
        .into_iter()
        .flatten()
        .filter(|&i| i < g.len())
        .find(|&i| (g[i] - x).abs() <= tol_frac * spacing(i))
}

/// Uniform grid `lo + m h`, `m = 0..=count-1`.
pub fn uniform_grid<T: Real>(lo: T, h: T, count: usize) -> Vec<T> {
    (0..count).map(|m| lo + h * lit(m as f64)).collect()
}

/// Uniform grid with step `h` covering `[-half_width, half_width]`, with
/// nodes on all integer multiples of `h`.
pub fn symmetric_grid<T: Real>(half_width: T, h: T) -> Vec<T> {
    let m = (half_width / h).ceil().to_usize().unwrap_or(0);
    let lo = -h * lit(m as f64);
    uniform_grid(lo, h, 2 * m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_axis_zero_fastest() {
        let s = SampledSpectrum::from_fn(vec![vec![0.0, 1.0, 2.0], vec![10.0, 20.0]], |x| {
            Complex::new(x[0] + x[1], 0.0)
        })
        .unwrap();
        assert_eq!(s.values()[1].re, 11.0);
        assert_eq!(s.values()[3].re, 20.0);
        assert_eq!(s.node(5), vec![2.0, 20.0]);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(SampledSpectrum::<f64>::zeros(vec![vec![0.0, 0.0]]).is_err());
        assert!(SampledSpectrum::<f64>::new(vec![vec![0.0, 1.0]], vec![]).is_err());
    }

    #[test]
    fn node_lookup_tolerates_rounding() {
        let g = symmetric_grid(1.0, 0.1);
        assert_eq!(find_node(&g, 0.3 + 1e-14), Some(13));
        assert_eq!(find_node(&g, 0.35), None);
        assert_eq!(find_node(&g, 5.0), None);
    }
}
