//! Anisotropic scaling geometry on `R^d`.
//!
//! An [`Anisotropy`] fixes per-axis dilation exponents `a_i >= 1`. The
//! dilation `t^a x` scales axis `i` by `t^{a_i}`, the quasi-norm `|x|_a` is
//! the unique `t > 0` with `|t^{-a} x| = 1`, and the homogeneous dimension is
//! `nu = a_1 + ... + a_d`.

use crate::error::{domain, Error, Result};
use crate::scalar::{lit, pow2, Real};

/// Per-axis dilation exponents together with their sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Anisotropy<T> {
    a: Vec<T>,
    nu: T,
}

impl<T: Real> Anisotropy<T> {
    pub fn new(a: Vec<T>) -> Result<Self> {
        if a.is_empty() {
            return domain("anisotropy needs at least one axis");
        }
        if let Some(bad) = a.iter().find(|ai| !ai.is_finite() || **ai < T::one()) {
            return Err(Error::Domain(format!(
                "anisotropy exponents must be finite and >= 1, got {bad}"
            )));
        }
        let nu = a.iter().copied().sum();
        Ok(Self { a, nu })
    }

    /// The isotropic case `a = (1, ..., 1)`.
    pub fn isotropic(d: usize) -> Self {
        Self::new(vec![T::one(); d]).expect("isotropic exponents are valid")
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn exponents(&self) -> &[T] {
        &self.a
    }

    pub fn exponent(&self, axis: usize) -> T {
        self.a[axis]
    }

    /// Homogeneous dimension `nu = sum a_i`.
    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn a_min(&self) -> T {
        self.a.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn a_max(&self) -> T {
        self.a.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// `t^a x`.
    pub fn dilate(&self, t: T, x: &[T]) -> Vec<T> {
        x.iter().zip(&self.a).map(|(&xi, &ai)| t.powf(ai) * xi).collect()
    }

    /// `2^{j a} x`.
    pub fn dyadic_dilate(&self, j: i32, x: &[T]) -> Vec<T> {
        let j = lit::<T>(j as f64);
        x.iter().zip(&self.a).map(|(&xi, &ai)| pow2(j * ai) * xi).collect()
    }

    fn check_point(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Domain(format!(
                "point has {} coordinates, anisotropy has {}",
                x.len(),
                self.dim()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return domain("quasi-norm of a non-finite point");
        }
        Ok(())
    }

    /// Anisotropic quasi-norm `|x|_a`.
    ///
    /// The map `t -> |t^{-a} x|` is strictly decreasing, so the root is
    /// bracketed by `[M, sqrt(d) M]` with `M = max_i |x_i|^{1/a_i}` and found by
    /// bisection down to adjacent floating point values.
    pub fn quasi_norm(&self, x: &[T]) -> Result<T> {
        self.check_point(x)?;
        Ok(quasi_norm_unchecked(&self.a, x))
    }

    /// Anisotropic bracket `<x> = |(1, x)|_{(1, a)}`.
    pub fn bracket(&self, x: &[T]) -> Result<T> {
        self.check_point(x)?;
        let mut ext_a = Vec::with_capacity(self.dim() + 1);
        ext_a.push(T::one());
        ext_a.extend_from_slice(&self.a);
        let mut ext_x = Vec::with_capacity(self.dim() + 1);
        ext_x.push(T::one());
        ext_x.extend_from_slice(x);
        Ok(quasi_norm_unchecked(&ext_a, &ext_x))
    }

    /// The dyadic rectangle `Q_{jk}` of level `j` containing `x`.
    pub fn dyadic_rect_of_point(&self, x: &[T], j: i32) -> Result<DyadicRect<T>> {
        self.check_point(x)?;
        let scaled = self.dyadic_dilate(j, x);
        let k = scaled
            .iter()
            .map(|v| {
                v.floor()
                    .to_i64()
                    .ok_or_else(|| Error::Domain("dyadic index overflows i64".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicRect::new(j, k, self))
    }
}

fn quasi_norm_unchecked<T: Real>(a: &[T], x: &[T]) -> T {
    let m = x
        .iter()
        .zip(a)
        .map(|(&xi, &ai)| xi.abs().powf(ai.recip()))
        .fold(T::zero(), T::max);
    if m == T::zero() {
        return T::zero();
    }
    // g(t) = sum (x_i t^{-a_i})^2 - 1, decreasing in t.
    let g = |t: T| -> T {
        x.iter()
            .zip(a)
            .map(|(&xi, &ai)| {
                let v = xi / t.powf(ai);
                v * v
            })
            .sum::<T>()
            - T::one()
    };
    let d = lit::<T>(a.len() as f64);
    let mut lo = m;
    let mut hi = m * d.sqrt();
    if g(hi) >= T::zero() {
        return hi;
    }
    for _ in 0..200 {
        let mid = (lo + hi) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) >= T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / lit(2.0)
}

/// Dyadic rectangle `Q_{jk} = 2^{-j a}([0,1)^d + k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicRect<T> {
    pub j: i32,
    pub k: Vec<i64>,
    pub lower: Vec<T>,
    pub sides: Vec<T>,
}

impl<T: Real> DyadicRect<T> {
    pub fn new(j: i32, k: Vec<i64>, aniso: &Anisotropy<T>) -> Self {
        let jt = lit::<T>(j as f64);
        let sides: Vec<T> = aniso.exponents().iter().map(|&a| pow2(-jt * a)).collect();
        let lower = k
            .iter()
            .zip(&sides)
            .map(|(&ki, &s)| lit::<T>(ki as f64) * s)
            .collect();
        Self { j, k, lower, sides }
    }

    pub fn volume(&self) -> T {
        self.sides.iter().copied().fold(T::one(), |acc, s| acc * s)
    }

    /// Half-open membership `lower <= x < lower + side`.
    pub fn contains(&self, x: &[T]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.sides))
            .all(|(&xi, (&l, &s))| xi >= l && xi < l + s)
    }
}
