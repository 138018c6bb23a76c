//! A self-dual admissible pair `phi = psi` for the anisotropic dilations.
//!
//! With `u = log2 t`, `H(u) = rho(u/s)^2` and `G(u) = H(u + 1/2) - H(u - 1/2)`,
//! the profile `theta(t) = sqrt(G(log2 t))` is supported on `[1/2, 2]` and its
//! dyadic dilates satisfy `sum_j theta(2^{-j} t)^2 = 1` by telescoping. The
//! window is `phi^(xi) = theta(|xi|_a)`; since the quasi-norm is homogeneous
//! under `2^{ja}`, the anisotropic dilates telescope in the same way.

use crate::anisotropy::Anisotropy;
use crate::bells::ramp;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissiblePair<T> {
    aniso: Anisotropy<T>,
    /// Width `s` of the ramp in the `log2` variable; `s <= 1/2` keeps the
    /// support of `theta` inside `[1/2, 2]`.
    scale: T,
}

impl<T: Real> AdmissiblePair<T> {
    pub fn new(aniso: Anisotropy<T>) -> Self {
        Self { aniso, scale: lit(0.5) }
    }

    pub fn anisotropy(&self) -> &Anisotropy<T> {
        &self.aniso
    }

    fn h(&self, u: T) -> T {
        let r = ramp(u / self.scale);
        r * r
    }

    /// `theta(t)^2`.
    pub fn theta_sq(&self, t: T) -> T {
        if t <= T::zero() {
            return T::zero();
        }
        let u = t.log2();
        let half = lit::<T>(0.5);
        (self.h(u + half) - self.h(u - half)).max(T::zero())
    }

    pub fn theta(&self, t: T) -> T {
        self.theta_sq(t).sqrt()
    }

    /// Annulus `[1/2, 2]` (in the quasi-norm) holding the support of `phi^`.
    pub fn support_annulus(&self) -> (T, T) {
        (lit(0.5), lit(2.0))
    }

    /// Guaranteed lower bound of `phi^` on `2^{-3/4} <= |xi|_a <= 2^{3/4}`:
    /// `theta` is smallest at the ends, where it equals `rho(-1/2)`.
    pub fn lower_bound(&self) -> T {
        ramp(-lit::<T>(0.25) / self.scale)
    }

    pub fn phi_hat(&self, xi: &[T]) -> Result<T> {
        Ok(self.theta(self.aniso.quasi_norm(xi)?))
    }

    /// `phi^(2^{-ja} xi)`.
    pub fn phi_j(&self, j: i32, xi: &[T]) -> Result<T> {
        let t = self.aniso.quasi_norm(xi)?;
        Ok(self.theta(t * lit::<T>(2.0).powi(-j)))
    }

    /// Levels `j` with `phi^_j(xi) != 0`.
    pub fn active_levels(&self, xi: &[T]) -> Result<Vec<i32>> {
        let t = self.aniso.quasi_norm(xi)?;
        if t == T::zero() {
            return Err(Error::Domain("the origin has no active level".into()));
        }
        let u = t.log2();
        let lo = u.floor().to_i32().unwrap_or(0) - 1;
        let hi = u.ceil().to_i32().unwrap_or(0) + 1;
        Ok((lo..=hi)
            .filter(|&j| self.theta_sq(t * lit::<T>(2.0).powi(-j)) > T::zero())
            .collect())
    }

    /// `| sum_j |phi^(2^{-ja} xi)|^2 - 1 |`.
    pub fn phi4_residual(&self, xi: &[T]) -> Result<T> {
        let t = self.aniso.quasi_norm(xi)?;
        if t == T::zero() {
            return Err(Error::Domain("the partition of unity excludes the origin".into()));
        }
        let u = t.log2();
        let lo = u.floor().to_i32().unwrap_or(0) - 2;
        let hi = u.ceil().to_i32().unwrap_or(0) + 2;
        let sum: T = (lo..=hi).map(|j| self.theta_sq(t * lit::<T>(2.0).powi(-j))).sum();
        Ok((sum - T::one()).abs())
    }

    /// Overlap constant `M`: the supports `T_j = {2^{j-1} <= |xi|_a <= 2^{j+1}}`
    /// are disjoint when `|i - j| > M`.
    pub fn overlap_constant(&self) -> i32 {
        let (lo, hi) = self.support_annulus();
        (hi / lo).log2().ceil().to_i32().unwrap_or(0)
    }
}

/// Builds the self-dual admissible pair for `aniso`.
pub fn build_admissible<T: Real>(aniso: &Anisotropy<T>) -> AdmissiblePair<T> {
    AdmissiblePair::new(aniso.clone())
}
