//! Greedy m-term approximation, the exhaustive best-subset oracle and the
//! democracy / Bernstein / Jackson / embedding experiments.
//!
//! Everything here acts on coefficient sets; the basis is unconditional in
//! every sequence norm, so the best m-term error of a coefficient set is the
//! smallest norm of a residual obtained by dropping `m` terms.

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::anisotropy::Anisotropy;
use crate::brushlet::BrushletIndex;
use crate::covering::sign_magnitude_set;
use crate::error::{Error, Result};
use crate::mixed_norms::sequence::{b_norm, f_norm, single_term_norm, MixedNormParams};
use crate::scalar::{lit, pow2, to_f64, Real};
use crate::transform::CoefficientSet;

/// Largest coefficient set the oracle searches exhaustively.
pub const ORACLE_CAP: usize = 14;

/// Most levels in the level-ladder witness; deeper levels make the cells too
/// thin to resolve next to the ladder's extent in double precision.
pub const LADDER_MAX_LEVELS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Greedy,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult<T> {
    pub m: usize,
    pub selected: Vec<BrushletIndex>,
    pub error: T,
    pub method: Method,
}

/// Weight `2^{j (sum a_i/p_i - beta - nu/2)}` making `c w_{n,R_{j,k}}` have
/// single-term norm of order one in `f^beta_{p,q}(a)` (`beta = params.s`).
pub fn normalization_weight<T: Real>(j: i32, params: &MixedNormParams<T>) -> T {
    let nu = params.aniso.nu();
    pow2(lit::<T>(j as f64) * (params.weighted_inverse_sum() - params.s - nu / lit(2.0)))
}

/// The basis rescaled by [`normalization_weight`].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSystem<T> {
    pub params: MixedNormParams<T>,
}

impl<T: Real> NormalizedSystem<T> {
    pub fn new(params: MixedNormParams<T>) -> Self {
        Self { params }
    }

    pub fn weight(&self, idx: &BrushletIndex) -> T {
        normalization_weight(idx.j, &self.params)
    }

    /// Single-term norm of the normalized element.
    pub fn element_norm(&self, idx: &BrushletIndex) -> Result<T> {
        single_term_norm(idx, self.weight(idx), &self.params)
    }

    /// Smallest `C` with every normalized element norm in `[1/C, C]` over
    /// levels `j_min..=j_max` (the norms do not depend on `n`).
    pub fn spread(&self, j_min: i32, j_max: i32) -> Result<T> {
        let d = self.params.aniso.dim();
        let mut c = T::one();
        for j in j_min..=j_max {
            for k in sign_magnitude_set(d) {
                let v = self.element_norm(&BrushletIndex::new(j, k, vec![0; d])?)?;
                c = c.max(v).max(v.recip());
            }
        }
        Ok(c)
    }

    /// `sum c_idx w_idx` with unit (or given) amplitudes on normalized elements.
    pub fn combination(&self, terms: impl IntoIterator<Item = (BrushletIndex, T)>) -> Result<CoefficientSet<T>> {
        CoefficientSet::from_entries(
            terms
                .into_iter()
                .map(|(idx, amp)| {
                    let w = self.weight(&idx) * amp;
                    (idx, Complex::new(w, T::zero()))
                }),
        )
    }
}

/// Indices sorted by decreasing single-term norm, ties broken by the
/// lexicographic `(j, k, n)` order.
pub fn greedy_order<T: Real>(coeffs: &CoefficientSet<T>, params: &MixedNormParams<T>) -> Result<Vec<BrushletIndex>> {
    let mut ranked = coeffs
        .iter()
        .map(|(idx, c)| Ok((single_term_norm(idx, c.norm(), params)?, idx.clone())))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|(a, ia), (b, ib)| {
        b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal).then_with(|| ia.cmp(ib))
    });
    Ok(ranked.into_iter().map(|(_, i)| i).collect())
}

/// Keeps the `m` terms of largest single-term norm and measures the residual
/// in `f^s_{p,q}(a)`.
pub fn greedy_select<T: Real>(
    coeffs: &CoefficientSet<T>,
    params: &MixedNormParams<T>,
    m: usize,
) -> Result<ApproxResult<T>> {
    let order = greedy_order(coeffs, params)?;
    let keep = m.min(order.len());
    let selected = order[..keep].to_vec();
    let error = if keep == order.len() { T::zero() } else { f_norm(&coeffs.without(&selected), params)? };
    Ok(ApproxResult { m, selected, error, method: Method::Greedy })
}

/// Greedy errors for several `m` (computed independently, in parallel).
pub fn greedy_curve<T: Real>(
    coeffs: &CoefficientSet<T>,
    params: &MixedNormParams<T>,
    ms: &[usize],
) -> Result<Vec<ApproxResult<T>>> {
    ms.par_iter().map(|&m| greedy_select(coeffs, params, m)).collect()
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let m = c.len();
    for i in (0..m).rev() {
        if c[i] < n - m + i {
            c[i] += 1;
            for k in i + 1..m {
                c[k] = c[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimal residual `f^s_{p,q}(a)` norm over all `m`-subsets kept.
pub fn sigma_m_oracle<T: Real>(
    coeffs: &CoefficientSet<T>,
    params: &MixedNormParams<T>,
    m: usize,
) -> Result<ApproxResult<T>> {
    let n = coeffs.len();
    if n > ORACLE_CAP {
        return Err(Error::Refused(format!(
            "exhaustive search over {n} coefficients exceeds the cap of {ORACLE_CAP}"
        )));
    }
    let all: Vec<BrushletIndex> = coeffs.indices().cloned().collect();
    if m >= n {
        return Ok(ApproxResult { m, selected: all, error: T::zero(), method: Method::Oracle });
    }
    let mut subsets = Vec::new();
    let mut c: Vec<usize> = (0..m).collect();
    loop {
        subsets.push(c.clone());
        if m == 0 || !next_combination(&mut c, n) {
            break;
        }
    }
    let scored = subsets
        .par_iter()
        .map(|s| {
            let kept: Vec<&BrushletIndex> = s.iter().map(|&i| &all[i]).collect();
            Ok((f_norm(&coeffs.without(kept), params)?, s))
        })
        .collect::<Result<Vec<_>>>()?;
    // First minimum in enumeration order, so the result is deterministic.
    let (error, best) = scored
        .into_iter()
        .fold(None, |acc: Option<(T, &Vec<usize>)>, (e, s)| match acc {
            Some((be, _)) if be <= e => acc,
            _ => Some((e, s)),
        })
        .expect("at least one subset");
    Ok(ApproxResult {
        m,
        selected: best.iter().map(|&i| all[i].clone()).collect(),
        error,
        method: Method::Oracle,
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Domain("slope fit needs paired samples".into()));
    }
    if xs.len() < 3 {
        return Err(Error::Domain(format!("slope fit needs at least 3 points, got {}", xs.len())));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain("slope fit needs positive finite samples".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("slope fit needs distinct abscissae".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Ok(sxy / sxx)
}

fn check_list(list: &[usize]) -> Result<()> {
    if list.len() < 3 {
        return Err(Error::Domain(format!("need at least 3 sizes for a slope fit, got {}", list.len())));
    }
    if list.contains(&0) {
        return Err(Error::Domain("sizes must be positive".into()));
    }
    Ok(())
}

/// The rectangle `R_{0,(2,...,2)}` used by the axis families.
fn family_k(d: usize) -> Vec<i8> {
    vec![2; d]
}

/// `sum_{l in range} amp w_{l e_axis, R_{0,k}}` on normalized elements.
fn axis_terms<T: Real>(
    d: usize,
    axis: usize,
    range: std::ops::RangeInclusive<u64>,
    amp: T,
) -> Vec<(BrushletIndex, T)> {
    range
        .map(|l| {
            let mut n = vec![0u64; d];
            n[axis] = l;
            (BrushletIndex { j: 0, k: family_k(d), n }, amp)
        })
        .collect()
}

/// `F_N = sum_{l=1}^N c w_{l e_axis, R_{0,k}}` in the system normalized for
/// `params`.
pub fn axis_family<T: Real>(params: &MixedNormParams<T>, axis: usize, big_n: usize) -> Result<CoefficientSet<T>> {
    let d = params.aniso.dim();
    if axis >= d {
        return Err(Error::Domain(format!("axis {axis} out of range")));
    }
    NormalizedSystem::new(params.clone()).combination(axis_terms(d, axis, 1..=big_n as u64, T::one()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemocracyRow {
    pub n: usize,
    pub norm_f: f64,
    pub norm_g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemocracyResult {
    pub rows: Vec<DemocracyRow>,
    pub slope_f: f64,
    pub slope_g: f64,
}

/// Norm growth of the axis families `F_N` (axis `axis_n`) and `G_N` (axis
/// `axis_m`) in `f^beta_{p,q}(a)`.
pub fn democracy_experiment<T: Real>(
    params: &MixedNormParams<T>,
    axis_n: usize,
    axis_m: usize,
    n_list: &[usize],
) -> Result<DemocracyResult> {
    check_list(n_list)?;
    if axis_n == axis_m {
        return Err(Error::Domain("democracy experiment needs two distinct axes".into()));
    }
    let rows = n_list
        .par_iter()
        .map(|&n| {
            let f = axis_family(params, axis_n, n)?;
            let g = axis_family(params, axis_m, n)?;
            Ok(DemocracyRow { n, norm_f: to_f64(f_norm(&f, params)?), norm_g: to_f64(f_norm(&g, params)?) })
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let slope_f = log_log_slope(&xs, &rows.iter().map(|r| r.norm_f).collect::<Vec<_>>())?;
    let slope_g = log_log_slope(&xs, &rows.iter().map(|r| r.norm_g).collect::<Vec<_>>())?;
    Ok(DemocracyResult { rows, slope_f, slope_g })
}

/// Extremal family used by the Bernstein experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessFamily {
    /// `F_N` along an axis realizing both `tau_min` and `p_max`.
    Axis(usize),
    /// One normalized term per level `0..N`, with cells disjoint along the
    /// given `p_max` axis.
    LevelLadder(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub besov: f64,
    pub triebel: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernsteinResult {
    pub family: WitnessFamily,
    pub rows: Vec<RatioRow>,
    pub exponent: f64,
    /// `1/tau_min - 1/p_max`.
    pub predicted: f64,
    /// Exponent the chosen family realizes exactly.
    pub family_exponent: f64,
}

/// Parameters of a Jackson / Bernstein pairing: the Triebel-Lizorkin space
/// `f^beta_{p,r}` and the Besov space `b^alpha_{tau,q}` with
/// `alpha - beta = sum a_i/tau_i - sum a_i/p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalePair<T> {
    pub triebel: MixedNormParams<T>,
    pub besov: MixedNormParams<T>,
}

impl<T: Real> ScalePair<T> {
    pub fn new(p: Vec<T>, r: T, beta: T, tau: Vec<T>, q: T, aniso: Anisotropy<T>) -> Result<Self> {
        let triebel = MixedNormParams::new(p, r, beta, aniso.clone())?;
        let besov_probe = MixedNormParams::new(tau, q, T::zero(), aniso)?;
        if besov_probe.p.iter().chain(&triebel.p).any(|v| v.is_infinite()) {
            return Err(Error::Domain("p and tau must be finite here".into()));
        }
        if besov_probe.p.iter().zip(&triebel.p).any(|(t, p)| !(t < p)) {
            return Err(Error::Domain("need tau_i < p_i on every axis".into()));
        }
        let alpha = beta + besov_probe.weighted_inverse_sum() - triebel.weighted_inverse_sum();
        Ok(Self { besov: besov_probe.with_s(alpha), triebel })
    }

    pub fn tau_min(&self) -> T {
        self.besov.p_min()
    }

    pub fn tau_max(&self) -> T {
        self.besov.p_max()
    }
}

/// Cells of levels `0..levels` placed left to right along `axis`.
fn ladder_terms<T: Real>(aniso: &Anisotropy<T>, axis: usize, levels: usize) -> Result<Vec<(BrushletIndex, T)>> {
    if levels > LADDER_MAX_LEVELS {
        return Err(Error::Domain(format!(
            "level ladder supports at most {LADDER_MAX_LEVELS} levels, got {levels}"
        )));
    }
    let d = aniso.dim();
    let a = to_f64(aniso.exponent(axis));
    let pi = std::f64::consts::PI;
    let mut cursor = 0.0f64;
    let mut out = Vec::with_capacity(levels);
    for j in 0..levels as i32 {
        let scale = 2f64.powf(j as f64 * a);
        let n = ((cursor * scale + 1.0) / pi - 0.5).ceil().max(0.0);
        if !(n < u64::MAX as f64 / 2.0) {
            return Err(Error::Domain("ladder position overflows the index range".into()));
        }
        cursor = (pi * (n + 0.5) + 1.0) / scale;
        let mut nv = vec![0u64; d];
        nv[axis] = n as u64;
        out.push((BrushletIndex { j, k: family_k(d), n: nv }, T::one()));
    }
    Ok(out)
}

fn ratio_rows<T: Real>(
    pair: &ScalePair<T>,
    n_list: &[usize],
    build: impl Fn(usize) -> Result<CoefficientSet<T>> + Sync,
) -> Result<Vec<RatioRow>> {
    n_list
        .par_iter()
        .map(|&n| {
            let set = build(n)?;
            let besov = to_f64(b_norm(&set, &pair.besov)?);
            let triebel = to_f64(f_norm(&set, &pair.triebel)?);
            Ok(RatioRow { n, besov, triebel, ratio: besov / triebel })
        })
        .collect()
}

/// Growth exponent of `||F_N||_{b^alpha_{tau,q}} / ||F_N||_{f^beta_{p,r}}` on
/// an extremal family. When no axis realizes both `tau_min` and `p_max` the
/// level ladder is used; it realizes `1/q - 1/p_max`, which is the predicted
/// exponent exactly when `q = tau_min`.
pub fn bernstein_experiment<T: Real>(pair: &ScalePair<T>, n_list: &[usize]) -> Result<BernsteinResult> {
    check_list(n_list)?;
    let tau_min = pair.tau_min();
    let p_max = pair.triebel.p_max();
    if !(tau_min < p_max) {
        return Err(Error::Domain("need tau_min < p_max".into()));
    }
    let d = pair.triebel.aniso.dim();
    let predicted = 1.0 / to_f64(tau_min) - 1.0 / to_f64(p_max);
    let sys = NormalizedSystem::new(pair.triebel.clone());
    let shared = (0..d).find(|&i| pair.besov.p[i] == tau_min && pair.triebel.p[i] == p_max);
    let (family, family_exponent, rows) = match shared {
        Some(axis) => {
            let rows = ratio_rows(pair, n_list, |n| axis_family(&pair.triebel, axis, n))?;
            (WitnessFamily::Axis(axis), predicted, rows)
        }
        None => {
            let axis = (0..d).find(|&i| pair.triebel.p[i] == p_max).expect("p_max is attained");
            let rows = ratio_rows(pair, n_list, |n| {
                sys.combination(ladder_terms(&pair.triebel.aniso, axis, n)?)
            })?;
            let q = to_f64(pair.besov.q);
            (WitnessFamily::LevelLadder(axis), 1.0 / q - 1.0 / to_f64(p_max), rows)
        }
    };
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let exponent = log_log_slope(&xs, &rows.iter().map(|r| r.ratio).collect::<Vec<_>>())?;
    Ok(BernsteinResult { family, rows, exponent, predicted, family_exponent })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacksonRow {
    pub n: usize,
    /// Greedy residual of `F_{2N} - eps F_N` after `N` steps.
    pub residual: f64,
    /// `||F_N||_{b^alpha_{tau,tau}}`.
    pub besov: f64,
    /// Whether greedy kept exactly the full-amplitude terms.
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacksonWitness {
    pub axis: usize,
    pub rows: Vec<JacksonRow>,
    pub residual_slope: f64,
    pub besov_slope: f64,
    /// `1/p_n` and `1/tau_n`.
    pub predicted: (f64, f64),
}

fn check_jackson<T: Real>(pair: &ScalePair<T>) -> Result<()> {
    if !(pair.tau_max() < pair.triebel.p_min()) {
        return Err(Error::Domain("need tau_max < p_min".into()));
    }
    Ok(())
}

/// Greedy saturation witness on `F_{2N} - eps F_N` along an axis realizing
/// both `tau_max` and `p_min`. The Besov side uses fine index `tau_max`
/// unless `pair.besov.q` is set otherwise by the caller.
pub fn jackson_witness<T: Real>(pair: &ScalePair<T>, n_list: &[usize], eps: T) -> Result<JacksonWitness> {
    check_list(n_list)?;
    check_jackson(pair)?;
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::Domain("eps must lie in (0, 1)".into()));
    }
    let d = pair.triebel.aniso.dim();
    let axis = (0..d)
        .find(|&i| pair.besov.p[i] == pair.tau_max() && pair.triebel.p[i] == pair.triebel.p_min())
        .ok_or_else(|| Error::Domain("no axis realizes both tau_max and p_min".into()))?;
    let sys = NormalizedSystem::new(pair.triebel.clone());
    let rows = n_list
        .par_iter()
        .map(|&n| {
            let mut terms = axis_terms(d, axis, 1..=n as u64, T::one() - eps);
            terms.extend(axis_terms(d, axis, n as u64 + 1..=2 * n as u64, T::one()));
            let g = sys.combination(terms)?;
            let res = greedy_select(&g, &pair.triebel, n)?;
            let saturated = res.selected.iter().all(|i| i.n[axis] > n as u64);
            let f_n = axis_family(&pair.triebel, axis, n)?;
            Ok(JacksonRow {
                n,
                residual: to_f64(res.error),
                besov: to_f64(b_norm(&f_n, &pair.besov)?),
                saturated,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let residual_slope = log_log_slope(&xs, &rows.iter().map(|r| r.residual).collect::<Vec<_>>())?;
    let besov_slope = log_log_slope(&xs, &rows.iter().map(|r| r.besov).collect::<Vec<_>>())?;
    let predicted = (1.0 / to_f64(pair.triebel.p[axis]), 1.0 / to_f64(pair.besov.p[axis]));
    Ok(JacksonWitness { axis, rows, residual_slope, besov_slope, predicted })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacksonBoundRow {
    pub m: usize,
    pub error: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Greedy errors against `m^{-(1/tau_max - 1/p_min)} ||f||_{b^alpha_{tau,q}}`.
pub fn jackson_bound<T: Real>(
    pair: &ScalePair<T>,
    coeffs: &CoefficientSet<T>,
    m_list: &[usize],
) -> Result<Vec<JacksonBoundRow>> {
    check_jackson(pair)?;
    let rate = 1.0 / to_f64(pair.tau_max()) - 1.0 / to_f64(pair.triebel.p_min());
    let smooth = to_f64(b_norm(coeffs, &pair.besov)?);
    if !(smooth > 0.0) {
        return Err(Error::Domain("Jackson bound needs a nonzero coefficient set".into()));
    }
    let curve = greedy_curve(coeffs, &pair.triebel, m_list)?;
    Ok(curve
        .into_iter()
        .map(|r| {
            let bound = (r.m.max(1) as f64).powf(-rate) * smooth;
            let error = to_f64(r.error);
            JacksonBoundRow { m: r.m, error, bound, ratio: error / bound }
        })
        .collect())
}

/// Sequence norm family for embedding checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Besov,
    TriebelLizorkin,
}

pub fn sequence_norm<T: Real>(kind: NormKind, coeffs: &CoefficientSet<T>, params: &MixedNormParams<T>) -> Result<T> {
    match kind {
        NormKind::Besov => b_norm(coeffs, params),
        NormKind::TriebelLizorkin => f_norm(coeffs, params),
    }
}

/// Which side of the embedding chain a parameter pair sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingRelation {
    Identical,
    /// `p_min`-unmixed space with smoothness `t` into the mixed space.
    Lower,
    /// Mixed space into the `p_max`-unmixed space with smoothness `tau`.
    Upper,
}

fn close<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= lit::<T>(1e-9) * (T::one() + a.abs().max(b.abs()))
}

/// Classifies `(source, target)` or fails with a domain error.
pub fn embedding_relation<T: Real>(
    source: &MixedNormParams<T>,
    target: &MixedNormParams<T>,
) -> Result<EmbeddingRelation> {
    if source.aniso != target.aniso || !close(source.q, target.q) && !(source.q.is_infinite() && target.q.is_infinite()) {
        return Err(Error::Domain("embedding needs a common anisotropy and fine index".into()));
    }
    let same_p = source.p.iter().zip(&target.p).all(|(&a, &b)| close(a, b));
    if same_p && close(source.s, target.s) {
        return Ok(EmbeddingRelation::Identical);
    }
    let nu = source.aniso.nu();
    let unmixed_at = |params: &MixedNormParams<T>, v: T| params.p.iter().all(|&p| close(p, v));
    let p_min = target.p_min();
    let t = target.s - target.weighted_inverse_sum() + nu / p_min;
    if unmixed_at(source, p_min) && close(source.s, t) {
        return Ok(EmbeddingRelation::Lower);
    }
    let p_max = source.p_max();
    let tau = source.s - source.weighted_inverse_sum() + nu / p_max;
    if unmixed_at(target, p_max) && close(target.s, tau) {
        return Ok(EmbeddingRelation::Upper);
    }
    Err(Error::Domain(
        "parameters satisfy neither the lower nor the upper embedding relation".into(),
    ))
}

/// `||c||_target / ||c||_source` for an admissible embedding pair.
pub fn embedding_check<T: Real>(
    kind: NormKind,
    source: &MixedNormParams<T>,
    target: &MixedNormParams<T>,
    coeffs: &CoefficientSet<T>,
) -> Result<T> {
    embedding_relation(source, target)?;
    let src = sequence_norm(kind, coeffs, source)?;
    if !(src > T::zero()) {
        return Err(Error::Domain("source norm vanishes".into()));
    }
    Ok(sequence_norm(kind, coeffs, target)? / src)
}
