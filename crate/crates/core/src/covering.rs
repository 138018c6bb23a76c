//! Anisotropic Lizorkin partition of frequency space and the spatial cells
//! attached to each rectangle.
//!
//! Level `j` covers the corridor `K_j = R_j \ R_{j-1}` with `4^d - 2^d`
//! rectangles `R_{j,k}`, `k` ranging over sign/magnitude vectors with entries
//! in `{-2, -1, 1, 2}` and at least one entry of magnitude 2. Along axis `i`
//! the level-`j` intervals are `+-[0, 2^{(j-1)a_i})` and
//! `+-[2^{(j-1)a_i}, 2^{j a_i})`, with cutoff radius `2^{(j-2)a_i}` at
//! `+-2^{j a_i}` and `2^{(j-3)a_i}` at `0` and `+-2^{(j-1)a_i}`.
//!
//! All intervals are half-open `[alpha, alpha')`, so tilings are exact.

use std::f64::consts::PI;

use crate::anisotropy::Anisotropy;
use crate::error::{Error, Result};
use crate::scalar::{lit, pow2, Real};

/// Interval `[alpha, alpha')` with left/right cutoff radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffInterval<T> {
    pub alpha: T,
    pub alpha_prime: T,
    pub eps: T,
    pub eps_prime: T,
}

impl<T: Real> CutoffInterval<T> {
    /// Checks `alpha < alpha'`, positive radii and `eps + eps' <= |I|`.
    pub fn new(alpha: T, alpha_prime: T, eps: T, eps_prime: T) -> Result<Self> {
        if !(alpha < alpha_prime) {
            return Err(Error::Construction(format!(
                "interval endpoints out of order: [{alpha}, {alpha_prime})"
            )));
        }
        if !(eps > T::zero() && eps_prime > T::zero()) {
            return Err(Error::Construction("cutoff radii must be positive".into()));
        }
        let iv = Self { alpha, alpha_prime, eps, eps_prime };
        if eps + eps_prime > iv.len() * (T::one() + lit(1e-12)) {
            return Err(Error::Construction(format!(
                "cutoff radii {eps} + {eps_prime} exceed interval length {}",
                iv.len()
            )));
        }
        Ok(iv)
    }

    pub fn len(&self) -> T {
        self.alpha_prime - self.alpha
    }

    /// Closed support `[alpha - eps, alpha' + eps']` of the bell.
    pub fn support(&self) -> (T, T) {
        (self.alpha - self.eps, self.alpha_prime + self.eps_prime)
    }

    /// Zone `[alpha + eps, alpha' - eps']` where the bell equals one.
    pub fn flat_zone(&self) -> (T, T) {
        (self.alpha + self.eps, self.alpha_prime - self.eps_prime)
    }

    pub fn contains(&self, xi: T) -> bool {
        xi >= self.alpha && xi < self.alpha_prime
    }

    /// Lower-bound condition `eps >= c |I|` on both radii.
    pub fn check_floor(&self, c: T) -> Result<()> {
        let floor = c * self.len() * (T::one() - lit(1e-12));
        if self.eps < floor || self.eps_prime < floor {
            return Err(Error::Construction(format!(
                "cutoff radius below {c} * |I| on [{}, {})",
                self.alpha, self.alpha_prime
            )));
        }
        Ok(())
    }

    /// `true` when `self` ends where `next` starts with matching radii.
    pub fn is_compatible_with_next(&self, next: &Self) -> bool {
        let tol = lit::<T>(1e-12) * (self.len() + next.len());
        (self.alpha_prime - next.alpha).abs() <= tol
            && (self.eps_prime - next.eps).abs() <= tol
    }

    /// Union of two adjacent compatible intervals, keeping the outer radii.
    pub fn merge(&self, next: &Self) -> Result<Self> {
        if !self.is_compatible_with_next(next) {
            return Err(Error::Construction("merging incompatible intervals".into()));
        }
        Self::new(self.alpha, next.alpha_prime, self.eps, next.eps_prime)
    }
}

/// The interval of axis exponent `a` at level `j` selected by `k`.
pub fn axis_interval<T: Real>(j: i32, a: T, k: i8) -> Result<CutoffInterval<T>> {
    let jt = lit::<T>(j as f64);
    let outer = pow2(jt * a);
    let inner = pow2((jt - T::one()) * a);
    let wide = pow2((jt - lit(2.0)) * a);
    let narrow = pow2((jt - lit(3.0)) * a);
    match k {
        -2 => CutoffInterval::new(-outer, -inner, wide, narrow),
        -1 => CutoffInterval::new(-inner, T::zero(), narrow, narrow),
        1 => CutoffInterval::new(T::zero(), inner, narrow, narrow),
        2 => CutoffInterval::new(inner, outer, narrow, wide),
        _ => Err(Error::Domain(format!("k entries must be in {{-2,-1,1,2}}, got {k}"))),
    }
}

/// Smallest ratio `eps / |I|` occurring in the axis family of exponent `a`.
pub fn cutoff_floor<T: Real>(a: T) -> T {
    let two = lit::<T>(2.0);
    let outer = two.powf(-lit::<T>(3.0) * a) / (T::one() - two.powf(-a));
    outer.min(two.powf(-two * a))
}

/// Box interval `[-2^{ja}, 2^{ja})` with cutoff radius `2^{(j-2)a}` at both
/// ends: the union of the four level-`j` axis intervals.
pub fn box_interval<T: Real>(j: i32, a: T) -> CutoffInterval<T> {
    let jt = lit::<T>(j as f64);
    let outer = pow2(jt * a);
    let r = pow2((jt - lit(2.0)) * a);
    CutoffInterval::new(-outer, outer, r, r).expect("box interval is well formed")
}

/// The sign/magnitude set `E = {-2,-1,1,2}^d \ {-1,1}^d` in lexicographic order.
pub fn sign_magnitude_set(d: usize) -> Vec<Vec<i8>> {
    const VALUES: [i8; 4] = [-2, -1, 1, 2];
    let mut out = Vec::new();
    let mut idx = vec![0usize; d];
    loop {
        let k: Vec<i8> = idx.iter().map(|&i| VALUES[i]).collect();
        if k.iter().any(|v| v.abs() == 2) {
            out.push(k);
        }
        let mut axis = d;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < VALUES.len() {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// One rectangle `R_{j,k}` of the Lizorkin partition.
#[derive(Debug, Clone, PartialEq)]
pub struct LizorkinRect<T> {
    pub j: i32,
    pub k: Vec<i8>,
    pub intervals: Vec<CutoffInterval<T>>,
}

impl<T: Real> LizorkinRect<T> {
    pub fn new(j: i32, k: Vec<i8>, aniso: &Anisotropy<T>) -> Result<Self> {
        if k.len() != aniso.dim() {
            return Err(Error::Domain("k has the wrong dimension".into()));
        }
        if !k.iter().any(|v| v.abs() == 2) {
            return Err(Error::Domain(format!("k = {k:?} is not in E")));
        }
        let intervals = k
            .iter()
            .zip(aniso.exponents())
            .map(|(&ki, &a)| {
                let iv = axis_interval(j, a, ki)?;
                iv.check_floor(cutoff_floor(a))?;
                Ok(iv)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { j, k, intervals })
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    /// Frequency volume `|R| = prod |I_i|`.
    pub fn volume(&self) -> T {
        self.intervals.iter().fold(T::one(), |acc, iv| acc * iv.len())
    }

    pub fn center(&self) -> Vec<T> {
        self.intervals
            .iter()
            .map(|iv| (iv.alpha + iv.alpha_prime) / lit(2.0))
            .collect()
    }

    /// Diagonal of `B(k)`: `2^{-(a_i+1)}` for `|k_i| = 1`, `(1 - 2^{-a_i})/2`
    /// for `|k_i| = 2`.
    pub fn scale_diag(&self, aniso: &Anisotropy<T>) -> Vec<T> {
        self.k
            .iter()
            .zip(aniso.exponents())
            .map(|(&ki, &a)| {
                if ki.abs() == 1 {
                    pow2(-(a + T::one()))
                } else {
                    (T::one() - pow2(-a)) / lit(2.0)
                }
            })
            .collect()
    }

    /// Image of `u in [-1,1)^d` under `2^{ja} B(k) u + c_{j,k}`.
    pub fn affine_map(&self, aniso: &Anisotropy<T>, u: &[T]) -> Vec<T> {
        let b = self.scale_diag(aniso);
        let c = self.center();
        let jt = lit::<T>(self.j as f64);
        u.iter()
            .enumerate()
            .map(|(i, &ui)| pow2(jt * aniso.exponent(i)) * b[i] * ui + c[i])
            .collect()
    }

    pub fn contains(&self, xi: &[T]) -> bool {
        xi.iter().zip(&self.intervals).all(|(&x, iv)| iv.contains(x))
    }

    /// Closed support box of the tensor bell.
    pub fn support(&self) -> Vec<(T, T)> {
        self.intervals.iter().map(CutoffInterval::support).collect()
    }
}

/// All `4^d - 2^d` rectangles of level `j`.
pub fn lizorkin_level<T: Real>(j: i32, aniso: &Anisotropy<T>) -> Result<Vec<LizorkinRect<T>>> {
    for &a in aniso.exponents() {
        let chain = [-2i8, -1, 1, 2]
            .iter()
            .map(|&k| axis_interval(j, a, k))
            .collect::<Result<Vec<_>>>()?;
        if !chain.windows(2).all(|w| w[0].is_compatible_with_next(&w[1])) {
            return Err(Error::Construction(format!(
                "level {j} axis family for a = {a} is not compatible"
            )));
        }
    }
    sign_magnitude_set(aniso.dim())
        .into_iter()
        .map(|k| LizorkinRect::new(j, k, aniso))
        .collect()
}

/// Membership in the corridor `K_j = R_j \ R_{j-1}` with half-open boxes.
pub fn corridor_contains<T: Real>(xi: &[T], j: i32, aniso: &Anisotropy<T>) -> bool {
    let in_box = |level: i32| {
        let lt = lit::<T>(level as f64);
        xi.iter().zip(aniso.exponents()).all(|(&x, &a)| {
            let r = pow2(lt * a);
            x >= -r && x < r
        })
    };
    in_box(j) && !in_box(j - 1)
}

/// Spatial cell `U(R, n) = {y : 2^{ja} y - pi (n + 1/2) in [-1,1]^d}`.
///
/// The cell depends on the level of `R` only, never on `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct UCell<T> {
    pub j: i32,
    pub n: Vec<u64>,
    pub lower: Vec<T>,
    pub upper: Vec<T>,
}

impl<T: Real> UCell<T> {
    pub fn new(j: i32, n: &[u64], aniso: &Anisotropy<T>) -> Self {
        let jt = lit::<T>(j as f64);
        let pi = lit::<T>(PI);
        let half = lit::<T>(0.5);
        let (lower, upper) = n
            .iter()
            .zip(aniso.exponents())
            .map(|(&ni, &a)| {
                let s = pow2(-jt * a);
                let c = pi * (lit::<T>(ni as f64) + half) * s;
                (c - s, c + s)
            })
            .unzip();
        Self { j, n: n.to_vec(), lower, upper }
    }

    pub fn volume(&self) -> T {
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(T::one(), |acc, (&l, &u)| acc * (u - l))
    }

    pub fn center(&self) -> Vec<T> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&l, &u)| (l + u) / lit(2.0))
            .collect()
    }

    /// Closed-box membership.
    pub fn contains(&self, x: &[T]) -> bool {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .all(|(&xi, (&l, &u))| xi >= l && xi <= u)
    }
}

/// `U(rect, n)`.
pub fn u_cell<T: Real>(rect: &LizorkinRect<T>, n: &[u64], aniso: &Anisotropy<T>) -> UCell<T> {
    UCell::new(rect.j, n, aniso)
}

/// Number of cells `U(rect, n)`, `n in [0, n_max]^d`, containing `x`.
pub fn overlap_count<T: Real>(
    x: &[T],
    rect: &LizorkinRect<T>,
    n_max: u64,
    aniso: &Anisotropy<T>,
) -> usize {
    // The cells form a product lattice, so the count factorises over axes.
    let jt = lit::<T>(rect.j as f64);
    let pi = lit::<T>(PI);
    let half = lit::<T>(0.5);
    x.iter()
        .zip(aniso.exponents())
        .map(|(&xi, &a)| {
            let y = pow2(jt * a) * xi;
            let lo = ((y - T::one()) / pi - half).ceil().max(T::zero());
            let hi = ((y + T::one()) / pi - half).floor().min(lit(n_max as f64));
            if hi < lo {
                0
            } else {
                (hi - lo).to_usize().unwrap_or(0) + 1
            }
        })
        .product()
}
