//! Analysis and synthesis in the brushlet basis, Gram matrices and the
//! telescoping completeness check.
//!
//! All pairings are done on the frequency side, where every basis function
//! is real and compactly supported: `<f, w> = int f^(xi) w^(xi) dxi`.

pub mod admissible;

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::anisotropy::Anisotropy;
use crate::brushlet::{brushlet_hat_1d, brushlet_hat_rect, project_rect_at, project_tensor_at, BrushletIndex};
use crate::covering::{box_interval, lizorkin_level, sign_magnitude_set, CutoffInterval, LizorkinRect};
use crate::error::{Error, Result};
use crate::quad::{Nodes, QuadRule};
use crate::scalar::{lit, to_f64, Real};
use crate::spectrum::SampledSpectrum;

/// Levels `j_min..=j_max` and oscillation indices `0..=n_max` on every axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub j_min: i32,
    pub j_max: i32,
    pub n_max: u64,
}

impl Truncation {
    pub fn new(j_min: i32, j_max: i32, n_max: u64) -> Result<Self> {
        if j_min > j_max {
            return Err(Error::Domain(format!("empty level range {j_min}..={j_max}")));
        }
        Ok(Self { j_min, j_max, n_max })
    }

    pub fn contains(&self, idx: &BrushletIndex) -> bool {
        idx.j >= self.j_min && idx.j <= self.j_max && idx.n.iter().all(|&n| n <= self.n_max)
    }

    pub fn rects<T: Real>(&self, aniso: &Anisotropy<T>) -> Result<Vec<LizorkinRect<T>>> {
        let mut out = Vec::new();
        for j in self.j_min..=self.j_max {
            out.extend(lizorkin_level(j, aniso)?);
        }
        Ok(out)
    }

    /// Every index of the truncation, in lexicographic order.
    pub fn indices(&self, d: usize) -> Vec<BrushletIndex> {
        let per_axis = self.n_max as usize + 1;
        let per_rect = per_axis.pow(d as u32);
        let mut out = Vec::new();
        for j in self.j_min..=self.j_max {
            for k in sign_magnitude_set(d) {
                for flat in 0..per_rect {
                    let mut rest = flat;
                    let mut n = vec![0u64; d];
                    for axis in (0..d).rev() {
                        n[axis] = (rest % per_axis) as u64;
                        rest /= per_axis;
                    }
                    out.push(BrushletIndex { j, k: k.clone(), n });
                }
            }
        }
        out
    }
}

/// Serialized form of one coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub j: i32,
    pub k: Vec<i8>,
    pub n: Vec<u64>,
    pub re: f64,
    pub im: f64,
}

/// Sparse map from basis indices to complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet<T> {
    entries: BTreeMap<BrushletIndex, Complex<T>>,
    truncation: Truncation,
}

impl<T: Real> CoefficientSet<T> {
    pub fn new(truncation: Truncation) -> Self {
        Self { entries: BTreeMap::new(), truncation }
    }

    /// Builds a set whose truncation is the smallest one holding `entries`.
    pub fn from_entries(entries: impl IntoIterator<Item = (BrushletIndex, Complex<T>)>) -> Result<Self> {
        let entries: BTreeMap<_, _> = entries.into_iter().collect();
        let dims: Vec<usize> = entries.keys().map(BrushletIndex::dim).collect();
        if dims.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Domain("coefficients of mixed dimension".into()));
        }
        let j_min = entries.keys().map(|i| i.j).min().unwrap_or(0);
        let j_max = entries.keys().map(|i| i.j).max().unwrap_or(0);
        let n_max = entries.keys().flat_map(|i| i.n.iter().copied()).max().unwrap_or(0);
        Ok(Self { entries, truncation: Truncation::new(j_min, j_max, n_max)? })
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn insert(&mut self, idx: BrushletIndex, c: Complex<T>) -> Result<()> {
        if !self.truncation.contains(&idx) {
            return Err(Error::Domain(format!("index {idx:?} lies outside the truncation")));
        }
        if let Some(first) = self.entries.keys().next() {
            if first.dim() != idx.dim() {
                return Err(Error::Domain("coefficient of the wrong dimension".into()));
            }
        }
        self.entries.insert(idx, c);
        Ok(())
    }

    pub fn get(&self, idx: &BrushletIndex) -> Option<Complex<T>> {
        self.entries.get(idx).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.entries.keys().next().map(BrushletIndex::dim)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BrushletIndex, &Complex<T>)> {
        self.entries.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &BrushletIndex> {
        self.entries.keys()
    }

    /// The subset with the given indices, keeping the truncation.
    pub fn restrict<'a>(&self, keep: impl IntoIterator<Item = &'a BrushletIndex>) -> Self {
        let entries = keep
            .into_iter()
            .filter_map(|i| self.entries.get(i).map(|&c| (i.clone(), c)))
            .collect();
        Self { entries, truncation: self.truncation }
    }

    /// Everything except the given indices.
    pub fn without<'a>(&self, drop: impl IntoIterator<Item = &'a BrushletIndex>) -> Self {
        let mut out = self.clone();
        for i in drop {
            out.entries.remove(i);
        }
        out
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let entries = self.entries.iter().map(|(i, &c)| (i.clone(), f(c))).collect();
        Self { entries, truncation: self.truncation }
    }

    pub fn scale(&self, lambda: Complex<T>) -> Self {
        self.map(|c| c * lambda)
    }

    /// `sum |c|^2`.
    pub fn energy(&self) -> T {
        self.entries.values().map(|c| c.norm_sqr()).sum()
    }

    /// Largest coefficient difference, treating missing entries as zero.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let zero = Complex::new(T::zero(), T::zero());
        let mut keys: Vec<&BrushletIndex> = self.entries.keys().chain(other.entries.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| {
                let a = self.entries.get(k).copied().unwrap_or(zero);
                let b = other.entries.get(k).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(T::zero(), T::max)
    }

    pub fn to_records(&self) -> Vec<CoefficientRecord> {
        self.entries
            .iter()
            .map(|(i, c)| CoefficientRecord {
                j: i.j,
                k: i.k.clone(),
                n: i.n.clone(),
                re: to_f64(c.re),
                im: to_f64(c.im),
            })
            .collect()
    }

    pub fn from_records(records: &[CoefficientRecord]) -> Result<Self> {
        let entries = records
            .iter()
            .map(|r| {
                if !r.re.is_finite() || !r.im.is_finite() {
                    return Err(Error::Domain("non-finite coefficient".into()));
                }
                Ok((
                    BrushletIndex::new(r.j, r.k.clone(), r.n.clone())?,
                    Complex::new(lit(r.re), lit(r.im)),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let set = Self::from_entries(entries)?;
        if set.len() != records.len() {
            return Err(Error::Domain("duplicate coefficient records".into()));
        }
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_records()).expect("records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let records: Vec<CoefficientRecord> =
            serde_json::from_str(text).map_err(|e| Error::Domain(format!("bad coefficient json: {e}")))?;
        Self::from_records(&records)
    }
}

/// Angular frequency of `cos(pi (n + 1/2)(xi - alpha)/|I|)` in `xi`.
fn cosine_rate<T: Real>(n_max: u64, iv: &CutoffInterval<T>) -> T {
    lit::<T>(PI) * (lit::<T>(n_max as f64) + lit(0.5)) / iv.len()
}

fn axis_nodes<T: Real>(iv: &CutoffInterval<T>, n_max: u64, rule: &QuadRule) -> Nodes<T> {
    let (lo, hi) = iv.support();
    let h = rule.step(lit::<T>(2.0) * iv.eps.min(iv.eps_prime), cosine_rate(n_max, iv));
    Nodes::new(lo, hi, h)
}

/// Contracts `axis` of a tensor (axis 0 fastest) with a `rows x shape[axis]`
/// matrix.
fn contract_axis<T: Real>(
    data: &[Complex<T>],
    shape: &[usize],
    axis: usize,
    matrix: &[T],
    rows: usize,
) -> Vec<Complex<T>> {
    let stride: usize = shape[..axis].iter().product();
    let len = shape[axis];
    let outer: usize = shape[axis + 1..].iter().product();
    let zero = Complex::new(T::zero(), T::zero());
    let mut out = vec![zero; stride * rows * outer];
    for o in 0..outer {
        for r in 0..rows {
            let row = &matrix[r * len..(r + 1) * len];
            let dst = &mut out[stride * (r + rows * o)..stride * (r + rows * o + 1)];
            for (m, &w) in row.iter().enumerate() {
                if w == T::zero() {
                    continue;
                }
                let src = &data[stride * (m + len * o)..stride * (m + len * o + 1)];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = *d + *s * w;
                }
            }
        }
    }
    out
}

fn analyze_rect<T: Real>(
    f: &(dyn Fn(&[T]) -> Complex<T> + Sync),
    rect: &LizorkinRect<T>,
    n_max: u64,
    rule: &QuadRule,
) -> Result<Vec<(BrushletIndex, Complex<T>)>> {
    let d = rect.dim();
    let rows = n_max as usize + 1;
    let nodes: Vec<Nodes<T>> = rect.intervals.iter().map(|iv| axis_nodes(iv, n_max, rule)).collect();
    let shape: Vec<usize> = nodes.iter().map(|n| n.count).collect();
    let mut fine_tables = Vec::with_capacity(d);
    let mut coarse_tables = Vec::with_capacity(d);
    for (iv, nd) in rect.intervals.iter().zip(&nodes) {
        let mut fine = vec![T::zero(); rows * nd.count];
        let mut coarse = vec![T::zero(); rows * nd.count];
        for n in 0..rows {
            for m in 0..nd.count {
                let v = brushlet_hat_1d(n as u64, iv, nd.at(m));
                fine[n * nd.count + m] = v * nd.weight(m);
                coarse[n * nd.count + m] = v * nd.coarse_weight(m);
            }
        }
        fine_tables.push(fine);
        coarse_tables.push(coarse);
    }
    let total: usize = shape.iter().product();
    let samples: Vec<Complex<T>> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut rest = flat;
            let xi: Vec<T> = nodes
                .iter()
                .map(|nd| {
                    let m = rest % nd.count;
                    rest /= nd.count;
                    nd.at(m)
                })
                .collect();
            f(&xi)
        })
        .collect();
    let run = |tables: &[Vec<T>]| {
        let mut data = samples.clone();
        let mut cur = shape.clone();
        for axis in 0..d {
            data = contract_axis(&data, &cur, axis, &tables[axis], rows);
            cur[axis] = rows;
        }
        data
    };
    let fine = run(&fine_tables);
    if let Some(tol) = rule.tolerance {
        let coarse = run(&coarse_tables);
        let change = fine
            .iter()
            .zip(&coarse)
            .map(|(a, b)| to_f64((a - b).norm()))
            .fold(0.0, f64::max);
        if !(change <= tol) {
            return Err(Error::Accuracy { change, tolerance: tol });
        }
    }
    Ok(fine
        .into_iter()
        .enumerate()
        .map(|(flat, c)| {
            let mut rest = flat;
            let n = (0..d)
                .map(|_| {
                    let v = (rest % rows) as u64;
                    rest /= rows;
                    v
                })
                .collect();
            (BrushletIndex { j: rect.j, k: rect.k.clone(), n }, c)
        })
        .collect())
}

/// Coefficients `<f, w_{n,R}>` for every index of the truncation.
pub fn analyze<T: Real>(
    f: &(dyn Fn(&[T]) -> Complex<T> + Sync),
    aniso: &Anisotropy<T>,
    truncation: Truncation,
    rule: &QuadRule,
) -> Result<CoefficientSet<T>> {
    rule.validate()?;
    let rects = truncation.rects(aniso)?;
    let parts = rects
        .par_iter()
        .map(|r| analyze_rect(f, r, truncation.n_max, rule))
        .collect::<Result<Vec<_>>>()?;
    let mut set = CoefficientSet::new(truncation);
    for (idx, c) in parts.into_iter().flatten() {
        set.entries.insert(idx, c);
    }
    Ok(set)
}

/// Pointwise evaluator of `sum c w^_{n,R}`.
#[derive(Debug, Clone)]
pub struct Synthesizer<T> {
    items: Vec<(LizorkinRect<T>, Vec<u64>, Complex<T>)>,
}

impl<T: Real> Synthesizer<T> {
    pub fn new(coeffs: &CoefficientSet<T>, aniso: &Anisotropy<T>) -> Result<Self> {
        let mut rects: HashMap<(i32, Vec<i8>), LizorkinRect<T>> = HashMap::new();
        let mut items = Vec::with_capacity(coeffs.len());
        for (idx, &c) in coeffs.iter() {
            let key = (idx.j, idx.k.clone());
            if !rects.contains_key(&key) {
                rects.insert(key.clone(), idx.rect(aniso)?);
            }
            items.push((rects[&key].clone(), idx.n.clone(), c));
        }
        Ok(Self { items })
    }

    pub fn eval(&self, xi: &[T]) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (rect, n, c) in &self.items {
            let inside = rect
                .intervals
                .iter()
                .zip(xi)
                .all(|(iv, &x)| {
                    let (lo, hi) = iv.support();
                    x > lo && x < hi
                });
            if inside {
                acc = acc + *c * brushlet_hat_rect(n, rect, xi);
            }
        }
        acc
    }
}

/// `sum c_{n,R} w^_{n,R}(xi)`.
pub fn synthesize_at<T: Real>(coeffs: &CoefficientSet<T>, aniso: &Anisotropy<T>, xi: &[T]) -> Result<Complex<T>> {
    Ok(Synthesizer::new(coeffs, aniso)?.eval(xi))
}

/// `sum c_{n,R} w^_{n,R}` sampled on a tensor grid.
pub fn synthesize<T: Real>(
    coeffs: &CoefficientSet<T>,
    aniso: &Anisotropy<T>,
    grids: Vec<Vec<T>>,
) -> Result<SampledSpectrum<T>> {
    let mut out = SampledSpectrum::zeros(grids)?;
    if let Some(d) = coeffs.dim() {
        if d != out.dim() {
            return Err(Error::Domain("grid and coefficient dimensions differ".into()));
        }
    }
    let shape = out.shape();
    let strides: Vec<usize> = (0..out.dim()).map(|a| out.stride(a)).collect();
    let grids = out.grids().to_vec();
    for (idx, &c) in coeffs.iter() {
        let rect = idx.rect(aniso)?;
        // Per-axis node range inside the support and the factor values there.
        let mut ranges = Vec::with_capacity(rect.dim());
        for (axis, iv) in rect.intervals.iter().enumerate() {
            let (lo, hi) = iv.support();
            let g = &grids[axis];
            let start = g.partition_point(|&x| x <= lo);
            let end = g.partition_point(|&x| x < hi);
            let vals: Vec<T> = (start..end).map(|m| brushlet_hat_1d(idx.n[axis], iv, g[m])).collect();
            ranges.push((start, vals));
        }
        if ranges.iter().any(|(_, v)| v.is_empty()) {
            continue;
        }
        let counts: Vec<usize> = ranges.iter().map(|(_, v)| v.len()).collect();
        let total: usize = counts.iter().product();
        let values = out.values_mut();
        for flat in 0..total {
            let mut rest = flat;
            let mut pos = 0;
            let mut w = T::one();
            for axis in 0..shape.len() {
                let m = rest % counts[axis];
                rest /= counts[axis];
                pos += (ranges[axis].0 + m) * strides[axis];
                w = w * ranges[axis].1[m];
            }
            values[pos] = values[pos] + c * w;
        }
    }
    Ok(out)
}

/// `int w^_{n1,I1} w^_{n2,I2}` over the intersection of the bell supports;
/// exactly zero when the supports do not overlap.
pub fn inner_product_1d<T: Real>(
    n1: u64,
    iv1: &CutoffInterval<T>,
    n2: u64,
    iv2: &CutoffInterval<T>,
    rule: &QuadRule,
) -> Result<T> {
    let (lo1, hi1) = iv1.support();
    let (lo2, hi2) = iv2.support();
    let lo = lo1.max(lo2);
    let hi = hi1.min(hi2);
    if hi <= lo {
        return Ok(T::zero());
    }
    let ramp = lit::<T>(2.0) * iv1.eps.min(iv1.eps_prime).min(iv2.eps).min(iv2.eps_prime);
    let omega = cosine_rate(n1, iv1) + cosine_rate(n2, iv2);
    let nodes = Nodes::new(lo, hi, rule.step(ramp, omega));
    crate::quad::integrate(rule, &nodes, |x| brushlet_hat_1d(n1, iv1, x) * brushlet_hat_1d(n2, iv2, x))
}

/// `<w_a, w_b>` by direct tensor trapezoid quadrature (no separation of
/// variables); used to cross-check [`gram_matrix`].
pub fn inner_product_direct<T: Real>(
    a: &BrushletIndex,
    b: &BrushletIndex,
    aniso: &Anisotropy<T>,
    rule: &QuadRule,
) -> Result<T> {
    let ra = a.rect(aniso)?;
    let rb = b.rect(aniso)?;
    let mut nodes = Vec::new();
    for axis in 0..ra.dim() {
        let (i1, i2) = (&ra.intervals[axis], &rb.intervals[axis]);
        let lo = i1.support().0.max(i2.support().0);
        let hi = i1.support().1.min(i2.support().1);
        if hi <= lo {
            return Ok(T::zero());
        }
        let ramp = lit::<T>(2.0) * i1.eps.min(i1.eps_prime).min(i2.eps).min(i2.eps_prime);
        let omega = cosine_rate(a.n[axis], i1) + cosine_rate(b.n[axis], i2);
        nodes.push(Nodes::new(lo, hi, rule.step(ramp, omega)));
    }
    let total: usize = nodes.iter().map(|n| n.count).product();
    let mut acc = T::zero();
    let mut xi = vec![T::zero(); nodes.len()];
    for flat in 0..total {
        let mut rest = flat;
        let mut w = T::one();
        for (axis, nd) in nodes.iter().enumerate() {
            let m = rest % nd.count;
            rest /= nd.count;
            xi[axis] = nd.at(m);
            w = w * nd.weight(m);
        }
        acc = acc + w * brushlet_hat_rect(&a.n, &ra, &xi) * brushlet_hat_rect(&b.n, &rb, &xi);
    }
    Ok(acc)
}

/// Dense Gram matrix `<w_i, w_j>` (row-major), computed as products of
/// one-dimensional inner products.
pub fn gram_matrix<T: Real>(
    indices: &[BrushletIndex],
    aniso: &Anisotropy<T>,
    rule: &QuadRule,
) -> Result<Vec<Vec<T>>> {
    rule.validate()?;
    let d = aniso.dim();
    if indices.iter().any(|i| i.dim() != d) {
        return Err(Error::Domain("index dimension differs from the anisotropy".into()));
    }
    // Distinct univariate factors per axis: (j, k_i, n_i).
    let mut ids: Vec<HashMap<(i32, i8, u64), usize>> = vec![HashMap::new(); d];
    let mut factors: Vec<Vec<(u64, CutoffInterval<T>)>> = vec![Vec::new(); d];
    let mut coded: Vec<Vec<usize>> = Vec::with_capacity(indices.len());
    for idx in indices {
        let mut code = Vec::with_capacity(d);
        for axis in 0..d {
            let key = (idx.j, idx.k[axis], idx.n[axis]);
            let next = factors[axis].len();
            let id = *ids[axis].entry(key).or_insert(next);
            if id == next {
                let iv = crate::covering::axis_interval(idx.j, aniso.exponent(axis), idx.k[axis])?;
                factors[axis].push((idx.n[axis], iv));
            }
            code.push(id);
        }
        coded.push(code);
    }
    let tables = factors
        .par_iter()
        .map(|fs| {
            let m = fs.len();
            let mut t = vec![T::zero(); m * m];
            for a in 0..m {
                for b in a..m {
                    let v = inner_product_1d(fs[a].0, &fs[a].1, fs[b].0, &fs[b].1, rule)?;
                    t[a * m + b] = v;
                    t[b * m + a] = v;
                }
            }
            Ok(t)
        })
        .collect::<Result<Vec<_>>>()?;
    let sizes: Vec<usize> = factors.iter().map(Vec::len).collect();
    Ok(coded
        .par_iter()
        .map(|ca| {
            coded
                .iter()
                .map(|cb| {
                    (0..d).fold(T::one(), |acc, axis| acc * tables[axis][ca[axis] * sizes[axis] + cb[axis]])
                })
                .collect()
        })
        .collect())
}

/// Largest entry of `|G - I|`.
pub fn identity_deviation<T: Real>(gram: &[Vec<T>]) -> T {
    gram.iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, &v)| if i == j { (v - T::one()).abs() } else { v.abs() })
        })
        .fold(T::zero(), T::max)
}

fn box_intervals<T: Real>(j: i32, aniso: &Anisotropy<T>) -> Vec<CutoffInterval<T>> {
    aniso.exponents().iter().map(|&a| box_interval(j, a)).collect()
}

fn in_box<T: Real>(xi: &[T], j: i32, aniso: &Anisotropy<T>) -> bool {
    box_intervals(j, aniso).iter().zip(xi).all(|(iv, &x)| iv.contains(x))
}

/// Sup over `points` of
/// `| sum_{j=j0-N}^{j0+N} sum_{k in E} P_{R_{j,k}} f^ - (P_{box(j0+N)} - P_{box(j0-N-1)}) f^ |`.
///
/// `f` must vanish at every sample point outside `box(j0+N)` or inside
/// `box(j0-N-1)`; otherwise a domain error is returned.
pub fn telescoping_check<T: Real>(
    f: &(dyn Fn(&[T]) -> Complex<T> + Sync),
    aniso: &Anisotropy<T>,
    j0: i32,
    big_n: u32,
    points: &[Vec<T>],
) -> Result<T> {
    let big_n = big_n as i32;
    let top = j0 + big_n;
    let bottom = j0 - big_n - 1;
    for p in points {
        if p.len() != aniso.dim() {
            return Err(Error::Domain("sample point of the wrong dimension".into()));
        }
        if f(p).norm() > T::zero() && (!in_box(p, top, aniso) || in_box(p, bottom, aniso)) {
            return Err(Error::Domain(format!(
                "spectrum is not band-limited to levels {}..={top}",
                j0 - big_n
            )));
        }
    }
    let mut rects = Vec::new();
    for j in (j0 - big_n)..=top {
        rects.extend(lizorkin_level(j, aniso)?);
    }
    let upper = box_intervals(top, aniso);
    let lower = box_intervals(bottom, aniso);
    let residual = points
        .par_iter()
        .map(|p| {
            let sum = rects
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, r| acc + project_rect_at(r, p, f));
            let boxes = project_tensor_at(&upper, p, f) - project_tensor_at(&lower, p, f);
            (sum - boxes).norm()
        })
        .reduce(|| T::zero(), T::max);
    Ok(residual)
}
