//! Univariate and tensor-product brushlets and the rectangle projections `P_R`.
//!
//! For an interval `I = [alpha, alpha')` the brushlet
//! `w^_{n,I}(xi) = sqrt(2/|I|) b_I(xi) cos(pi (n + 1/2)(xi - alpha)/|I|)` is
//! real in frequency. In space it splits into two humps,
//! `w_{n,I}(x) = sqrt(|I|/2) e^{i alpha x} [g_I(|I|(x + e_n)) + g_I(|I|(x - e_n))]`
//! with `e_n = pi (n + 1/2)/|I|`.

use std::f64::consts::PI;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::anisotropy::Anisotropy;
use crate::bells::{bell_eval, fold_terms, project_axis, CentralBellTime};
use crate::covering::{CutoffInterval, LizorkinRect};
use crate::error::{Error, Result};
use crate::quad::QuadRule;
use crate::scalar::{lit, Real};
use crate::spectrum::SampledSpectrum;

/// Index `(j, k, n)` of the basis function `w_{n, R_{j,k}}`.
///
/// The derived order is lexicographic in `(j, k, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BrushletIndex {
    pub j: i32,
    pub k: Vec<i8>,
    pub n: Vec<u64>,
}

impl BrushletIndex {
    pub fn new(j: i32, k: Vec<i8>, n: Vec<u64>) -> Result<Self> {
        if k.is_empty() || k.len() != n.len() {
            return Err(Error::Domain("k and n must have the same nonzero length".into()));
        }
        if k.iter().any(|v| !matches!(v, -2 | -1 | 1 | 2)) || !k.iter().any(|v| v.abs() == 2) {
            return Err(Error::Domain(format!("k = {k:?} is not in E")));
        }
        Ok(Self { j, k, n })
    }

    pub fn dim(&self) -> usize {
        self.k.len()
    }

    pub fn rect<T: Real>(&self, aniso: &Anisotropy<T>) -> Result<LizorkinRect<T>> {
        LizorkinRect::new(self.j, self.k.clone(), aniso)
    }
}

/// `w^_{n,I}(xi)`.
pub fn brushlet_hat_1d<T: Real>(n: u64, interval: &CutoffInterval<T>, xi: T) -> T {
    let b = bell_eval(interval, xi);
    if b == T::zero() {
        return T::zero();
    }
    let len = interval.len();
    let phase = lit::<T>(PI) * (lit::<T>(n as f64) + lit(0.5)) * (xi - interval.alpha) / len;
    (lit::<T>(2.0) / len).sqrt() * b * phase.cos()
}

/// `w^_{n,R}(xi)` as the product of the axis factors.
pub fn brushlet_hat_rect<T: Real>(n: &[u64], rect: &LizorkinRect<T>, xi: &[T]) -> T {
    let mut acc = T::one();
    for ((&ni, iv), &x) in n.iter().zip(&rect.intervals).zip(xi) {
        acc = acc * brushlet_hat_1d(ni, iv, x);
        if acc == T::zero() {
            break;
        }
    }
    acc
}

/// `w^_{n,R_{j,k}}(xi)`.
pub fn brushlet_hat<T: Real>(idx: &BrushletIndex, aniso: &Anisotropy<T>, xi: &[T]) -> Result<T> {
    let rect = idx.rect(aniso)?;
    if xi.len() != rect.dim() {
        return Err(Error::Domain("frequency point has the wrong dimension".into()));
    }
    Ok(brushlet_hat_rect(&idx.n, &rect, xi))
}

/// Scale matrix `Delta = diag(|I_i|)` and the `2^d` hump centres
/// `U_m e_{n,R}` of a tensor brushlet.
#[derive(Debug, Clone, PartialEq)]
pub struct HumpFrame<T> {
    pub scales: Vec<T>,
    pub offsets: Vec<T>,
    /// Sign vectors `v_m`, enumerating `{-1, 1}^d` once each.
    pub signs: Vec<Vec<i8>>,
}

impl<T: Real> HumpFrame<T> {
    pub fn new(n: &[u64], rect: &LizorkinRect<T>) -> Self {
        let d = rect.dim();
        let scales: Vec<T> = rect.intervals.iter().map(CutoffInterval::len).collect();
        let offsets = n
            .iter()
            .zip(&scales)
            .map(|(&ni, &s)| lit::<T>(PI) * (lit::<T>(ni as f64) + lit(0.5)) / s)
            .collect();
        let signs = (0..1usize << d)
            .map(|m| (0..d).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect();
        Self { scales, offsets, signs }
    }

    pub fn centers(&self) -> Vec<Vec<T>> {
        self.signs
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&self.offsets)
                    .map(|(&s, &e)| lit::<T>(s as f64) * e)
                    .collect()
            })
            .collect()
    }

    /// The arguments `Delta (x + U_m e_{n,R})`, one per sign vector.
    pub fn hump_args(&self, x: &[T]) -> Vec<Vec<T>> {
        self.centers()
            .iter()
            .map(|c| {
                c.iter()
                    .zip(x)
                    .zip(&self.scales)
                    .map(|((&ci, &xi), &s)| s * (xi + ci))
                    .collect()
            })
            .collect()
    }
}

/// Space-domain evaluator for one tensor brushlet on a box `|x_i| <= x_max_i`.
#[derive(Debug, Clone)]
pub struct BrushletTime<T> {
    rect: LizorkinRect<T>,
    frame: HumpFrame<T>,
    factors: Vec<CentralBellTime<T>>,
}

impl<T: Real> BrushletTime<T> {
    pub fn new(n: &[u64], rect: &LizorkinRect<T>, x_max: &[T], rule: QuadRule) -> Result<Self> {
        if n.len() != rect.dim() || x_max.len() != rect.dim() {
            return Err(Error::Domain("dimension mismatch in brushlet evaluator".into()));
        }
        let frame = HumpFrame::new(n, rect);
        let factors = rect
            .intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| {
                let reach = frame.scales[i] * (x_max[i].abs() + frame.offsets[i]);
                CentralBellTime::new(iv, reach, rule)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rect: rect.clone(), frame, factors })
    }

    pub fn frame(&self) -> &HumpFrame<T> {
        &self.frame
    }

    /// `g_{I_i}(y)` on axis `i`.
    pub fn central(&self, axis: usize, y: T) -> Result<Complex<T>> {
        self.factors[axis].eval(y)
    }

    /// `G_R(y) = prod g_{I_i}(y_i)`.
    pub fn central_product(&self, y: &[T]) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::one(), T::zero());
        for (i, &yi) in y.iter().enumerate() {
            acc = acc * self.central(i, yi)?;
        }
        Ok(acc)
    }

    /// Univariate factor `w_{n_i, I_i}(x_i)`.
    pub fn axis_factor(&self, axis: usize, x: T) -> Result<Complex<T>> {
        let iv = &self.rect.intervals[axis];
        let s = self.frame.scales[axis];
        let e = self.frame.offsets[axis];
        let humps = self.central(axis, s * (x + e))? + self.central(axis, s * (x - e))?;
        let (sin, cos) = (iv.alpha * x).sin_cos();
        Ok(Complex::new(cos, sin) * humps * (s / lit(2.0)).sqrt())
    }

    pub fn eval(&self, x: &[T]) -> Result<Complex<T>> {
        let mut acc = Complex::new(T::one(), T::zero());
        for (i, &xi) in x.iter().enumerate() {
            acc = acc * self.axis_factor(i, xi)?;
        }
        Ok(acc)
    }
}

/// `w_{n,R}(x)` in space, by quadrature of the central bell integrals.
pub fn brushlet_time<T: Real>(
    idx: &BrushletIndex,
    aniso: &Anisotropy<T>,
    x: &[T],
    rule: QuadRule,
) -> Result<Complex<T>> {
    let rect = idx.rect(aniso)?;
    if x.len() != rect.dim() {
        return Err(Error::Domain("space point has the wrong dimension".into()));
    }
    BrushletTime::new(&idx.n, &rect, x, rule)?.eval(x)
}

/// `P_R f^` on a sampled spectrum, axis by axis.
pub fn project_rect<T: Real>(
    spectrum: &SampledSpectrum<T>,
    rect: &LizorkinRect<T>,
) -> Result<SampledSpectrum<T>> {
    if spectrum.dim() != rect.dim() {
        return Err(Error::Domain("spectrum and rectangle dimensions differ".into()));
    }
    let mut out = spectrum.clone();
    for (axis, iv) in rect.intervals.iter().enumerate() {
        out = project_axis(&out, axis, iv)?;
    }
    Ok(out)
}

/// Pointwise tensor projection `(P_{I_1} x ... x P_{I_d}) f^ (xi)` for a
/// spectrum given as a function.
pub fn project_tensor_at<T: Real>(
    intervals: &[CutoffInterval<T>],
    xi: &[T],
    f: &dyn Fn(&[T]) -> Complex<T>,
) -> Complex<T> {
    let terms: Vec<Vec<(T, T)>> = intervals
        .iter()
        .zip(xi)
        .map(|(iv, &x)| fold_terms(iv, x))
        .collect();
    let zero = Complex::new(T::zero(), T::zero());
    if terms.iter().any(Vec::is_empty) {
        return zero;
    }
    let d = xi.len();
    let mut choice = vec![0usize; d];
    let mut point = vec![T::zero(); d];
    let mut acc = zero;
    loop {
        let mut coef = T::one();
        for i in 0..d {
            let (p, c) = terms[i][choice[i]];
            point[i] = p;
            coef = coef * c;
        }
        acc = acc + f(&point) * coef;
        let mut axis = 0;
        loop {
            if axis == d {
                return acc;
            }
            choice[axis] += 1;
            if choice[axis] < terms[axis].len() {
                break;
            }
            choice[axis] = 0;
            axis += 1;
        }
    }
}

/// `P_R f^ (xi)`.
pub fn project_rect_at<T: Real>(
    rect: &LizorkinRect<T>,
    xi: &[T],
    f: &dyn Fn(&[T]) -> Complex<T>,
) -> Complex<T> {
    project_tensor_at(&rect.intervals, xi, f)
}
