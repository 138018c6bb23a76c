//! Smooth ramp, bell windows, central bells and the folding projection `P_I`.

use num_complex::Complex;

use crate::covering::CutoffInterval;
use crate::error::{Error, Result};
use crate::quad::{Nodes, QuadRule};
use crate::scalar::{lit, to_f64, Real};
use crate::spectrum::{find_node, SampledSpectrum};

/// `g(t) = h(t) / (h(t) + h(1 - t))` with `h(t) = exp(-1/t)` for `t > 0`.
fn smooth_step<T: Real>(t: T) -> T {
    if t <= T::zero() {
        T::zero()
    } else if t >= T::one() {
        T::one()
    } else {
        // h(1-t)/h(t) = exp(1/t - 1/(1-t)); overflow to inf gives 0 as wanted.
        T::one() / (T::one() + (t.recip() - (T::one() - t).recip()).exp())
    }
}

/// The ramp `rho`: zero below -1, one above 1, `rho(x)^2 + rho(-x)^2 = 1`.
pub fn ramp<T: Real>(xi: T) -> T {
    if xi <= -T::one() {
        return T::zero();
    }
    if xi >= T::one() {
        return T::one();
    }
    let eta = lit::<T>(2.0) * smooth_step((xi + T::one()) / lit(2.0)) - T::one();
    (T::FRAC_PI_4() * (T::one() + eta)).sin()
}

/// Bell window `b_I(xi) = rho((xi - alpha)/eps) rho((alpha' - xi)/eps')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bell<T> {
    pub interval: CutoffInterval<T>,
}

impl<T: Real> Bell<T> {
    pub fn new(interval: CutoffInterval<T>) -> Self {
        Self { interval }
    }

    pub fn eval(&self, xi: T) -> T {
        let iv = &self.interval;
        ramp((xi - iv.alpha) / iv.eps) * ramp((iv.alpha_prime - xi) / iv.eps_prime)
    }

    pub fn support(&self) -> (T, T) {
        self.interval.support()
    }
}

/// `b_I(xi)`.
pub fn bell_eval<T: Real>(interval: &CutoffInterval<T>, xi: T) -> T {
    Bell::new(*interval).eval(xi)
}

/// Central bell `g^_I(u) = rho(|I| u / eps) rho(|I| (1 - u) / eps')`, so that
/// `b_I(xi) = g^_I((xi - alpha) / |I|)`.
pub fn central_bell_hat<T: Real>(interval: &CutoffInterval<T>, u: T) -> T {
    let len = interval.len();
    ramp(len * u / interval.eps) * ramp(len * (T::one() - u) / interval.eps_prime)
}

/// Support `[-eps/|I|, 1 + eps'/|I|]` of the central bell.
pub fn central_bell_support<T: Real>(interval: &CutoffInterval<T>) -> (T, T) {
    let len = interval.len();
    (-interval.eps / len, T::one() + interval.eps_prime / len)
}

/// Precomputed samples of `g^_I` for evaluating its inverse Fourier transform
/// `g_I(x) = (2 pi)^{-1/2} int g^_I(u) e^{ixu} du` at `|x| <= x_max`.
#[derive(Debug, Clone)]
pub struct CentralBellTime<T> {
    nodes: Nodes<T>,
    samples: Vec<T>,
    rule: QuadRule,
}

impl<T: Real> CentralBellTime<T> {
    pub fn new(interval: &CutoffInterval<T>, x_max: T, rule: QuadRule) -> Result<Self> {
        rule.validate()?;
        let (lo, hi) = central_bell_support(interval);
        let ramp_width = lit::<T>(2.0) * interval.eps.min(interval.eps_prime) / interval.len();
        let h = rule.step(ramp_width, x_max.abs());
        let nodes = Nodes::new(lo, hi, h);
        let samples = nodes.iter().map(|u| central_bell_hat(interval, u)).collect();
        Ok(Self { nodes, samples, rule })
    }

    /// Fine and doubled-step estimates of `g_I(x)`.
    pub fn eval_pair(&self, x: T) -> (Complex<T>, Complex<T>) {
        let mut fine = Complex::new(T::zero(), T::zero());
        let mut coarse = fine;
        for (m, &s) in self.samples.iter().enumerate() {
            if s == T::zero() {
                continue;
            }
            let (sin, cos) = (x * self.nodes.at(m)).sin_cos();
            let v = Complex::new(cos * s, sin * s);
            fine = fine + v * self.nodes.weight(m);
            coarse = coarse + v * self.nodes.coarse_weight(m);
        }
        let c = lit::<T>(std::f64::consts::TAU).sqrt().recip();
        (fine * c, coarse * c)
    }

    pub fn eval(&self, x: T) -> Result<Complex<T>> {
        let (fine, coarse) = self.eval_pair(x);
        if let Some(tol) = self.rule.tolerance {
            let change = to_f64((fine - coarse).norm());
            if !(change <= tol) {
                return Err(Error::Accuracy { change, tolerance: tol });
            }
        }
        Ok(fine)
    }
}

/// `g_I(x)` by trapezoid quadrature over the compact support of `g^_I`.
pub fn central_bell_time<T: Real>(
    interval: &CutoffInterval<T>,
    x: T,
    rule: QuadRule,
) -> Result<Complex<T>> {
    CentralBellTime::new(interval, x, rule)?.eval(x)
}

/// Per-node folding stencil of `P_I` along one grid axis.
#[derive(Debug, Clone)]
pub(crate) struct FoldStencil<T> {
    /// `(node, weight, reflected node at alpha, its weight, reflected node at alpha', its weight)`
    pub rows: Vec<(usize, T, Option<(usize, T)>, Option<(usize, T)>)>,
}

pub(crate) fn fold_stencil<T: Real>(grid: &[T], interval: &CutoffInterval<T>) -> Result<FoldStencil<T>> {
    let bell = Bell::new(*interval);
    let two = lit::<T>(2.0);
    let reflect = |target: T| -> Result<Option<(usize, T)>> {
        let w = bell.eval(target);
        if w == T::zero() {
            return Ok(None);
        }
        match find_node(grid, target) {
            Some(idx) => Ok(Some((idx, w))),
            None => Err(Error::Domain(format!(
                "grid has no node at the reflected frequency {target}"
            ))),
        }
    };
    let mut rows = Vec::new();
    for (i, &xi) in grid.iter().enumerate() {
        let b = bell.eval(xi);
        if b == T::zero() {
            continue;
        }
        let left = reflect(two * interval.alpha - xi)?;
        let right = reflect(two * interval.alpha_prime - xi)?;
        rows.push((i, b, left, right));
    }
    Ok(FoldStencil { rows })
}

/// Applies `P_I` along `axis` of a sampled spectrum. The grid must contain
/// every reflected node `2 alpha - xi`, `2 alpha' - xi` where the reflected
/// bell weight is nonzero; otherwise a domain error is returned.
pub fn project_axis<T: Real>(
    spectrum: &SampledSpectrum<T>,
    axis: usize,
    interval: &CutoffInterval<T>,
) -> Result<SampledSpectrum<T>> {
    if axis >= spectrum.dim() {
        return Err(Error::Domain(format!("axis {axis} out of range")));
    }
    let stencil = fold_stencil(spectrum.grid(axis), interval)?;
    let mut out = SampledSpectrum::zeros(spectrum.grids().to_vec())?;
    let stride = spectrum.stride(axis);
    let len = spectrum.grid(axis).len();
    let src = spectrum.values();
    let total = src.len();
    let dst = out.values_mut();
    for outer in (0..total).step_by(stride * len) {
        for inner in 0..stride {
            let base = outer + inner;
            for &(i, b, left, right) in &stencil.rows {
                let mut acc = src[base + i * stride] * b;
                if let Some((l, wl)) = left {
                    acc = acc + src[base + l * stride] * wl;
                }
                if let Some((r, wr)) = right {
                    acc = acc - src[base + r * stride] * wr;
                }
                dst[base + i * stride] = acc * b;
            }
        }
    }
    Ok(out)
}

/// `P_I f^` on a one-dimensional sampled spectrum.
pub fn project_interval<T: Real>(
    spectrum: &SampledSpectrum<T>,
    interval: &CutoffInterval<T>,
) -> Result<SampledSpectrum<T>> {
    if spectrum.dim() != 1 {
        return Err(Error::Domain("project_interval expects a one-dimensional spectrum".into()));
    }
    project_axis(spectrum, 0, interval)
}

/// The three folding terms of `P_I` at `xi`: `(point, coefficient)` pairs
/// with `P_I f^(xi) = sum coefficient * f^(point)`. Zero-weight terms are
/// omitted.
pub fn fold_terms<T: Real>(interval: &CutoffInterval<T>, xi: T) -> Vec<(T, T)> {
    let bell = Bell::new(*interval);
    let b = bell.eval(xi);
    if b == T::zero() {
        return Vec::new();
    }
    let two = lit::<T>(2.0);
    let mut out = vec![(xi, b * b)];
    let l = two * interval.alpha - xi;
    let wl = bell.eval(l);
    if wl != T::zero() {
        out.push((l, b * wl));
    }
    let r = two * interval.alpha_prime - xi;
    let wr = bell.eval(r);
    if wr != T::zero() {
        out.push((r, -b * wr));
    }
    out
}
