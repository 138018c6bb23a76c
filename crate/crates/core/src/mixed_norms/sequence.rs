//! Discrete `f^s_{p,q}(a)` and `b^s_{p,q}(a)` norms of brushlet coefficients.
//!
//! Each coefficient contributes the constant `|R|^{s/nu} |c| |R|^{1/2}` on its
//! cell `U(R, n)`. The Triebel-Lizorkin norm takes the pointwise `l_q` sum of
//! these contributions and then the mixed `L_p` norm; the Besov norm takes
//! the mixed `L_p` norm per rectangle first and then the `l_q` sum. Since
//! every contribution is constant on a box, both are integrated exactly on
//! the arrangement of all cell boundaries.

use std::collections::{BTreeMap, HashMap};

use crate::anisotropy::Anisotropy;
use crate::brushlet::BrushletIndex;
use crate::covering::{LizorkinRect, UCell};
use crate::error::{Error, Result};
use crate::mixed_norms::grid::{mixed_lp, GridFunction};
use crate::scalar::{lit, Real};
use crate::transform::CoefficientSet;

/// Hard cap on the number of arrangement cells of one norm evaluation.
pub const MAX_ARRANGEMENT_CELLS: usize = 50_000_000;

/// Exponents `p` (per axis), `q` and smoothness `s` of a sequence norm.
/// `p_i` and `q` may be `inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedNormParams<T> {
    pub p: Vec<T>,
    pub q: T,
    pub s: T,
    pub aniso: Anisotropy<T>,
}

impl<T: Real> MixedNormParams<T> {
    pub fn new(p: Vec<T>, q: T, s: T, aniso: Anisotropy<T>) -> Result<Self> {
        if p.len() != aniso.dim() {
            return Err(Error::Domain(format!(
                "p has {} entries for a {}-dimensional anisotropy",
                p.len(),
                aniso.dim()
            )));
        }
        if p.iter().any(|&pi| !(pi > T::zero())) {
            return Err(Error::Domain("every p_i must lie in (0, inf]".into()));
        }
        if !(q > T::zero()) {
            return Err(Error::Domain("q must lie in (0, inf]".into()));
        }
        if !s.is_finite() {
            return Err(Error::Domain("smoothness must be finite".into()));
        }
        Ok(Self { p, q, s, aniso })
    }

    /// `p = (p, ..., p)`.
    pub fn unmixed(p: T, q: T, s: T, aniso: Anisotropy<T>) -> Result<Self> {
        let d = aniso.dim();
        Self::new(vec![p; d], q, s, aniso)
    }

    pub fn p_min(&self) -> T {
        self.p.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn p_max(&self) -> T {
        self.p.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// `sum a_i / p_i`.
    pub fn weighted_inverse_sum(&self) -> T {
        self.p
            .iter()
            .zip(self.aniso.exponents())
            .map(|(&p, &a)| a / p)
            .sum()
    }

    pub fn with_s(&self, s: T) -> Self {
        Self { s, ..self.clone() }
    }

    pub fn with_q(&self, q: T) -> Self {
        Self { q, ..self.clone() }
    }
}

/// Rectangles and cells of a coefficient set, built once per norm evaluation.
struct Contributions<T> {
    /// `(rect key, weight, cell)`
    items: Vec<((i32, Vec<i8>), T, UCell<T>)>,
}

fn contributions<T: Real>(coeffs: &CoefficientSet<T>, params: &MixedNormParams<T>) -> Result<Contributions<T>> {
    let aniso = &params.aniso;
    if let Some(d) = coeffs.dim() {
        if d != aniso.dim() {
            return Err(Error::Domain("coefficient and anisotropy dimensions differ".into()));
        }
    }
    let mut rects: HashMap<(i32, Vec<i8>), LizorkinRect<T>> = HashMap::new();
    let mut items = Vec::with_capacity(coeffs.len());
    let exp = params.s / aniso.nu() + lit(0.5);
    for (idx, c) in coeffs.iter() {
        let mag = c.norm();
        if mag == T::zero() {
            continue;
        }
        let key = (idx.j, idx.k.clone());
        if !rects.contains_key(&key) {
            rects.insert(key.clone(), idx.rect(aniso)?);
        }
        let vol = rects[&key].volume();
        let cell = UCell::new(idx.j, &idx.n, aniso);
        if cell.lower.iter().chain(&cell.upper).any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("cell of {idx:?} is not representable")));
        }
        items.push((key, vol.powf(exp) * mag, cell));
    }
    Ok(Contributions { items })
}

/// The function `F(x) = (sum (|R|^{s/nu} |c| |R|^{1/2} 1_U(x))^q)^{1/q}` on
/// the arrangement of cell boundaries. Returns `None` for an empty set.
fn arrangement<T: Real>(
    items: &[&((i32, Vec<i8>), T, UCell<T>)],
    d: usize,
    q: T,
) -> Result<Option<GridFunction<T>>> {
    if items.is_empty() {
        return Ok(None);
    }
    let mut edges: Vec<Vec<T>> = vec![Vec::with_capacity(2 * items.len()); d];
    for (_, _, cell) in items {
        for axis in 0..d {
            edges[axis].push(cell.lower[axis]);
            edges[axis].push(cell.upper[axis]);
        }
    }
    for e in &mut edges {
        e.sort_by(|a, b| a.partial_cmp(b).expect("finite edges"));
        e.dedup();
    }
    let shape: Vec<usize> = edges.iter().map(|e| e.len() - 1).collect();
    let total = shape
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .filter(|&t| t <= MAX_ARRANGEMENT_CELLS)
        .ok_or_else(|| Error::Refused("arrangement exceeds the cell cap".into()))?;
    let mut acc = vec![T::zero(); total];
    let finite_q = q.is_finite();
    for (_, w, cell) in items {
        let contribution = if finite_q { w.powf(q) } else { *w };
        let ranges: Vec<(usize, usize)> = (0..d)
            .map(|axis| {
                let e = &edges[axis];
                let lo = e.partition_point(|&v| v < cell.lower[axis]);
                let hi = e.partition_point(|&v| v < cell.upper[axis]);
                (lo, hi)
            })
            .collect();
        let count: usize = ranges.iter().map(|(lo, hi)| hi - lo).product();
        for flat in 0..count {
            let mut rest = flat;
            let mut pos = 0;
            let mut stride = 1;
            for axis in 0..d {
                let (lo, hi) = ranges[axis];
                pos += (lo + rest % (hi - lo)) * stride;
                rest /= hi - lo;
                stride *= shape[axis];
            }
            acc[pos] = if finite_q { acc[pos] + contribution } else { acc[pos].max(contribution) };
        }
    }
    if finite_q {
        let inv = q.recip();
        for v in &mut acc {
            if *v > T::zero() {
                *v = v.powf(inv);
            }
        }
    }
    Ok(Some(GridFunction::new(edges, acc)?))
}

/// The piecewise-constant integrand of the Triebel-Lizorkin norm.
pub fn f_norm_integrand<T: Real>(
    coeffs: &CoefficientSet<T>,
    params: &MixedNormParams<T>,
) -> Result<Option<GridFunction<T>>> {
    let c = contributions(coeffs, params)?;
    let refs: Vec<_> = c.items.iter().collect();
    arrangement(&refs, params.aniso.dim(), params.q)
}

/// `||c||_{f^s_{p,q}(a)}`.
pub fn f_norm<T: Real>(coeffs: &CoefficientSet<T>, params: &MixedNormParams<T>) -> Result<T> {
    match f_norm_integrand(coeffs, params)? {
        Some(g) => mixed_lp(&g, &params.p),
        None => Ok(T::zero()),
    }
}

/// `||c||_{b^s_{p,q}(a)}`.
pub fn b_norm<T: Real>(coeffs: &CoefficientSet<T>, params: &MixedNormParams<T>) -> Result<T> {
    let c = contributions(coeffs, params)?;
    let mut groups: BTreeMap<&(i32, Vec<i8>), Vec<&((i32, Vec<i8>), T, UCell<T>)>> = BTreeMap::new();
    for item in &c.items {
        groups.entry(&item.0).or_default().push(item);
    }
    let d = params.aniso.dim();
    let mut acc = T::zero();
    for items in groups.values() {
        // Cells of one rectangle never overlap, so any q gives the same integrand.
        let g = arrangement(items, d, T::one())?.expect("nonempty group");
        let v = mixed_lp(&g, &params.p)?;
        acc = if params.q.is_finite() { acc + v.powf(params.q) } else { acc.max(v) };
    }
    Ok(if params.q.is_finite() && acc > T::zero() { acc.powf(params.q.recip()) } else { acc })
}

/// Closed form of both norms for a single coefficient:
/// `|R|^{s/nu + 1/2} |c| prod_i (2 * 2^{-j a_i})^{1/p_i}`.
pub fn single_term_norm<T: Real>(idx: &BrushletIndex, c: T, params: &MixedNormParams<T>) -> Result<T> {
    let aniso = &params.aniso;
    let vol = idx.rect(aniso)?.volume();
    let jt = lit::<T>(idx.j as f64);
    let two = lit::<T>(2.0);
    let side_factor = params
        .p
        .iter()
        .zip(aniso.exponents())
        .fold(T::one(), |acc, (&p, &a)| acc * (two * two.powf(-jt * a)).powf(p.recip()));
    Ok(vol.powf(params.s / aniso.nu() + lit(0.5)) * c.abs() * side_factor)
}
