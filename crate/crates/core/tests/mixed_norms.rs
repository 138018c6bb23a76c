mod common;

use brushlab_core::mixed_norms::grid::lp_norm;
use brushlab_core::mixed_norms::{
    b_norm, f_norm, iterated_maximal, iterated_maximal_at, maximal_1d, mixed_lp, single_term_norm, vector_lq_norm,
    GridFunction, MixedNormParams,
};
use brushlab_core::transform::CoefficientSet;
use brushlab_core::BrushletIndex;
use common::*;
use num_complex::Complex;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

#[test]
fn mixed_norm_of_a_rectangle_indicator() {
    let f = GridFunction::<f64>::new(vec![vec![0.0, 1.0], vec![0.0, 2.0]], vec![1.0]).unwrap();
    let v = mixed_lp(&f, &[1.0, 2.0]).unwrap();
    assert!((v - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(mixed_lp(&f, &[f64::INFINITY, f64::INFINITY]).unwrap(), 1.0);
    assert!(mixed_lp(&f, &[1.0]).is_err());
    assert!(mixed_lp(&f, &[0.0, 1.0]).is_err());
}

#[test]
fn axis_order_matters() {
    // f = 1 on [0,1]x[0,1] and [1,3]x[1,2]. Inner L_1 in x_1 gives 1 and 2
    // on the two rows, outer L_2 gives sqrt(5).
    let f = GridFunction::<f64>::new(vec![vec![0.0, 1.0, 3.0], vec![0.0, 1.0, 2.0]], vec![1.0, 0.0, 0.0, 1.0]).unwrap();
    let a = mixed_lp(&f, &[1.0, 2.0]).unwrap();
    assert!((a - 5f64.sqrt()).abs() < 1e-14);
    // Inner L_2 in x_1: rows give 1 and sqrt(2); outer L_1 adds them.
    let b = mixed_lp(&f, &[2.0, 1.0]).unwrap();
    assert!((b - (1.0 + 2f64.sqrt())).abs() < 1e-14);
}

#[test]
fn unmixed_is_plain_lp() {
    let mut r = rng(61);
    for _ in 0..20 {
        let e = vec![edges(-1.0, 2.0, 7), edges(0.0, 0.5, 5), edges(3.0, 4.0, 3)];
        let vals: Vec<f64> = (0..7 * 5 * 3).map(|_| r.gen_range(-3.0..3.0)).collect();
        let f = GridFunction::<f64>::new(e.clone(), vals.clone()).unwrap();
        let p = r.gen_range(0.5..5.0);
        let vol = (3.0 / 7.0) * (0.5 / 5.0) * (1.0 / 3.0);
        let direct = vals.iter().map(|v: &f64| v.abs().powf(p) * vol).sum::<f64>().powf(1.0 / p);
        assert!(rel_diff(lp_norm(&f, p).unwrap(), direct) < 1e-13);
        assert!(rel_diff(mixed_lp(&f, &[p, p, p]).unwrap(), direct) < 1e-13);
    }
}

proptest! {
    #[test]
    fn box_indicator_norm(a in prop::collection::vec(-3.0f64..0.0, 2), w in prop::collection::vec(0.1f64..4.0, 2),
                          p in prop::collection::vec(0.3f64..6.0, 2)) {
        let e: Vec<Vec<f64>> = (0..2).map(|i| vec![a[i], a[i] + w[i]]).collect();
        let f = GridFunction::<f64>::new(e, vec![1.0]).unwrap();
        let want = w[0].powf(1.0 / p[0]) * w[1].powf(1.0 / p[1]);
        prop_assert!(rel_diff(mixed_lp(&f, &p).unwrap(), want) < 1e-13);
    }

    #[test]
    fn maximal_dominates_and_is_bounded(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = edges(0.0, 5.0, 12);
        let vals: Vec<f64> = (0..12).map(|_| if r.gen_bool(0.4) { r.gen_range(0.0..4.0) } else { 0.0 }).collect();
        let f = GridFunction::<f64>::new(vec![e.clone()], vals.clone()).unwrap();
        let sup = vals.iter().copied().fold(0.0, f64::max);
        let m = iterated_maximal(&f, 1.0).unwrap();
        for (mv, v) in m.values().iter().zip(&vals) {
            prop_assert!(*mv >= *v - 1e-14 && *mv <= sup + 1e-14);
        }
        // Any average over an interval containing x is below M f(x).
        let x = r.gen_range(-1.0..6.0);
        let mx = maximal_1d(&f, 0, &[x]).unwrap();
        let integral = |a: f64, b: f64| -> f64 {
            (0..12).map(|c| {
                let lo = e[c].max(a);
                let hi = e[c + 1].min(b);
                if hi > lo { vals[c] * (hi - lo) } else { 0.0 }
            }).sum()
        };
        for _ in 0..200 {
            let a = x - r.gen_range(0.0..4.0);
            let b = x + r.gen_range(1e-3..4.0);
            prop_assert!(integral(a, b) / (b - a) <= mx + 1e-12);
        }
    }
}

#[test]
fn maximal_of_an_indicator() {
    let f = GridFunction::<f64>::new(vec![vec![0.0, 1.0]], vec![1.0]).unwrap();
    for (x, want) in [(0.5, 1.0), (2.0, 0.5), (3.0, 1.0 / 3.0), (-1.0, 0.5)] {
        assert!((maximal_1d(&f, 0, &[x]).unwrap() - want).abs() < 1e-15, "{x}");
        assert!((iterated_maximal_at(&f, 1.0, &[x]).unwrap() - want).abs() < 1e-15);
    }
    // theta = 1/2 raises before averaging: (1/2)^2 at distance 1.
    assert!((iterated_maximal_at(&f, 0.5, &[2.0]).unwrap() - 0.25).abs() < 1e-15);
    assert!(iterated_maximal_at(&f, 0.0, &[2.0]).is_err());
    assert!(maximal_1d(&f, 1, &[0.0]).is_err());
}

#[test]
fn iterated_maximal_of_a_product_factorizes() {
    let f = GridFunction::<f64>::new(vec![vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 3.0]], vec![1.0, 0.0, 0.0, 0.0]).unwrap();
    let gx = GridFunction::<f64>::new(vec![vec![0.0, 1.0, 2.0]], vec![1.0, 0.0]).unwrap();
    let gy = GridFunction::<f64>::new(vec![vec![0.0, 1.0, 3.0]], vec![1.0, 0.0]).unwrap();
    for x in [[0.5, 0.5], [1.5, 2.0], [4.0, -2.0]] {
        let want = iterated_maximal_at(&gx, 1.0, &[x[0]]).unwrap() * iterated_maximal_at(&gy, 1.0, &[x[1]]).unwrap();
        assert!((iterated_maximal_at(&f, 1.0, &x).unwrap() - want).abs() < 1e-14);
    }
}

#[test]
fn vector_lq_cases() {
    let e = vec![vec![0.0, 1.0, 2.0]];
    let a = GridFunction::<f64>::new(e.clone(), vec![3.0, 0.0]).unwrap();
    let b = GridFunction::<f64>::new(e.clone(), vec![4.0, 1.0]).unwrap();
    let v = vector_lq_norm(&[a.clone(), b.clone()], &[1.0], 2.0).unwrap();
    assert!((v - 6.0).abs() < 1e-14);
    let m = vector_lq_norm(&[a.clone(), b.clone()], &[1.0], f64::INFINITY).unwrap();
    assert!((m - 5.0).abs() < 1e-14);
    assert_eq!(vector_lq_norm(&[a.clone()], &[3.0], 0.7).unwrap(), mixed_lp(&a, &[3.0]).unwrap());
    assert_eq!(vector_lq_norm::<f64>(&[], &[1.0], 1.0).unwrap(), 0.0);
    let other = GridFunction::<f64>::new(vec![vec![0.0, 2.0]], vec![1.0]).unwrap();
    assert!(vector_lq_norm(&[a.clone(), other], &[1.0], 1.0).is_err());
    assert!(vector_lq_norm(&[a, b], &[1.0], 0.0).is_err());
}

#[test]
fn params_validation() {
    let an = aniso(&[1.0, 2.0]);
    assert!(MixedNormParams::new(vec![1.0], 1.0, 0.0, an.clone()).is_err());
    assert!(MixedNormParams::new(vec![1.0, 0.0], 1.0, 0.0, an.clone()).is_err());
    assert!(MixedNormParams::new(vec![1.0, 1.0], -1.0, 0.0, an.clone()).is_err());
    assert!(MixedNormParams::new(vec![1.0, 1.0], 1.0, f64::NAN, an.clone()).is_err());
    assert!(MixedNormParams::new(vec![f64::INFINITY, 1.0], f64::INFINITY, 0.5, an).is_ok());
}

#[test]
fn single_term_closed_form() {
    let mut r = rng(62);
    for _ in 0..200 {
        let d = r.gen_range(1..=3);
        let an = random_aniso(&mut r, d);
        let params = random_params(&mut r, &an);
        let idx = random_index(&mut r, d, (-3, 3), 40);
        let c = Complex::new(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let set = CoefficientSet::from_entries([(idx.clone(), c)]).unwrap();
        // Independent evaluation: weight times the cell side lengths.
        let vol = idx.rect(&an).unwrap().volume();
        let sides: f64 = (0..d).map(|i| (2.0 * 2f64.powf(-(idx.j as f64) * an.exponent(i))).powf(1.0 / params.p[i])).product();
        let want = vol.powf(params.s / an.nu() + 0.5) * c.norm() * sides;
        let closed = single_term_norm(&idx, c.norm(), &params).unwrap();
        assert!(rel_diff(closed, want) < 1e-12);
        assert!(rel_diff(f_norm(&set, &params).unwrap(), want) < 1e-12);
        assert!(rel_diff(b_norm(&set, &params).unwrap(), want) < 1e-12);
    }
}

#[test]
fn empty_set_has_zero_norm() {
    let an = aniso(&[1.0, 2.0]);
    let params = MixedNormParams::unmixed(2.0, 1.0, 0.3, an).unwrap();
    let empty = CoefficientSet::from_entries(Vec::<(BrushletIndex, Complex<f64>)>::new()).unwrap();
    assert_eq!(f_norm(&empty, &params).unwrap(), 0.0);
    assert_eq!(b_norm(&empty, &params).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homogeneity_and_phase_invariance(seed in any::<u64>(), lambda in 0.01f64..100.0, theta in 0.0f64..6.3) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=2);
        let an = random_aniso(&mut r, d);
        let params = random_params(&mut r, &an);
        let set = random_set(&mut r, d, 12, (-1, 2), 10);
        let scaled = set.scale(Complex::from_polar(lambda, theta));
        let (f0, b0) = (f_norm(&set, &params).unwrap(), b_norm(&set, &params).unwrap());
        prop_assert!(rel_diff(f_norm(&scaled, &params).unwrap(), lambda * f0) < 1e-11);
        prop_assert!(rel_diff(b_norm(&scaled, &params).unwrap(), lambda * b0) < 1e-11);
        let flipped = set.map(|c| c.conj());
        prop_assert!(rel_diff(f_norm(&flipped, &params).unwrap(), f0) < 1e-12);
    }

    #[test]
    fn insertion_order_is_irrelevant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let an = random_aniso(&mut r, 2);
        let params = random_params(&mut r, &an);
        let set = random_set(&mut r, 2, 15, (-1, 1), 6);
        let mut entries: Vec<(BrushletIndex, Complex<f64>)> = set.iter().map(|(i, c)| (i.clone(), *c)).collect();
        entries.shuffle(&mut r);
        let again = CoefficientSet::from_entries(entries).unwrap();
        prop_assert_eq!(f_norm(&again, &params).unwrap(), f_norm(&set, &params).unwrap());
        prop_assert_eq!(b_norm(&again, &params).unwrap(), b_norm(&set, &params).unwrap());
    }

    #[test]
    fn q_equal_p_collapses_both_scales(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=3);
        let an = random_aniso(&mut r, d);
        let p = r.gen_range(0.5..4.0);
        let params = MixedNormParams::unmixed(p, p, r.gen_range(-1.0..1.0), an.clone()).unwrap();
        let set = random_set(&mut r, d, 10, (-1, 1), 3);
        let lp: f64 = set
            .iter()
            .map(|(i, c)| single_term_norm(i, c.norm(), &params).unwrap().powf(p))
            .sum::<f64>()
            .powf(1.0 / p);
        prop_assert!(rel_diff(f_norm(&set, &params).unwrap(), lp) < 1e-11);
        prop_assert!(rel_diff(b_norm(&set, &params).unwrap(), lp) < 1e-11);
    }

    #[test]
    fn engine_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = r.gen_range(1..=2);
        let an = random_aniso(&mut r, d);
        let params = random_params(&mut r, &an);
        let set = random_set(&mut r, d, 8, (-1, 1), 3);
        prop_assert!(rel_diff(f_norm(&set, &params).unwrap(), brute_f_norm(&set, &params, 1)) < 1e-10);
        prop_assert!(rel_diff(b_norm(&set, &params).unwrap(), brute_b_norm(&set, &params, 1)) < 1e-10);
    }

    #[test]
    fn quasi_triangle_inequality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let an = random_aniso(&mut r, 2);
        let params = random_params(&mut r, &an);
        let a = random_set(&mut r, 2, 8, (-1, 1), 4);
        let b = random_set(&mut r, 2, 8, (-1, 1), 4);
        let sum = CoefficientSet::from_entries(
            a.iter().map(|(i, c)| (i.clone(), *c + b.get(i).unwrap_or_default()))
                .chain(b.iter().filter(|(i, _)| a.get(i).is_none()).map(|(i, c)| (i.clone(), *c))),
        ).unwrap();
        let r_min = params.p_min().min(params.q).min(1.0);
        let k = 2f64.powf(1.0 / r_min - 1.0);
        for norm in [f_norm::<f64>, b_norm::<f64>] {
            let lhs = norm(&sum, &params).unwrap();
            let rhs = k * (norm(&a, &params).unwrap() + norm(&b, &params).unwrap());
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

#[test]
fn besov_with_q_one_sums_rectangles() {
    let mut r = rng(63);
    let an = aniso(&[1.0, 1.5]);
    let params = MixedNormParams::new(vec![1.5, 3.0], 1.0, 0.4, an).unwrap();
    let set = random_set(&mut r, 2, 30, (-1, 1), 5);
    let mut groups: std::collections::BTreeMap<(i32, Vec<i8>), Vec<(BrushletIndex, Complex<f64>)>> = Default::default();
    for (i, c) in set.iter() {
        groups.entry((i.j, i.k.clone())).or_default().push((i.clone(), *c));
    }
    let total: f64 = groups
        .into_values()
        .map(|g| b_norm(&CoefficientSet::from_entries(g).unwrap(), &params).unwrap())
        .sum();
    assert!(rel_diff(b_norm(&set, &params).unwrap(), total) < 1e-12);
}

#[test]
fn infinite_exponents() {
    let mut r = rng(64);
    let an = aniso(&[1.0, 2.0]);
    let params = MixedNormParams::unmixed(f64::INFINITY, f64::INFINITY, 0.2, an.clone()).unwrap();
    let set = random_set(&mut r, 2, 20, (-1, 1), 5);
    let sup = set
        .iter()
        .map(|(i, c)| single_term_norm(i, c.norm(), &params).unwrap())
        .fold(0.0, f64::max);
    assert!(rel_diff(f_norm(&set, &params).unwrap(), sup) < 1e-14);
    assert!(rel_diff(b_norm(&set, &params).unwrap(), sup) < 1e-14);
    let mixed = MixedNormParams::new(vec![2.0, f64::INFINITY], 1.5, 0.0, an).unwrap();
    assert!(rel_diff(f_norm(&set, &mixed).unwrap(), brute_f_norm(&set, &mixed, 1)) < 1e-10);
}

#[test]
fn single_precision_norm() {
    let an = brushlab_core::anisotropy::Anisotropy::<f32>::new(vec![1.0, 2.0]).unwrap();
    let params = MixedNormParams::unmixed(2.0f32, 1.0, 0.0, an).unwrap();
    let idx = BrushletIndex::new(0, vec![2, 1], vec![1, 1]).unwrap();
    let set = CoefficientSet::from_entries([(idx.clone(), Complex::new(1.0f32, 0.0))]).unwrap();
    let want = single_term_norm(&idx, 1.0f32, &params).unwrap();
    assert!((f_norm(&set, &params).unwrap() - want).abs() <= 1e-5 * want);
}
