//! Seeded random inputs. Every experiment derives its generators from the
//! config seed, so runs are reproducible.

use brushlab_core::covering::sign_magnitude_set;
use brushlab_core::{Anisotropy, BrushletIndex, CoefficientSet, Complex, MixedNormParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliResult;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of a base seed.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = rng(seed);
    r.set_stream(stream);
    r
}

pub fn aniso(r: &mut ChaCha8Rng, d: usize) -> Anisotropy {
    Anisotropy::new((0..d).map(|_| [1.0, 1.5, 2.0][r.gen_range(0..3)]).collect()).expect("positive exponents")
}

pub fn index(r: &mut ChaCha8Rng, d: usize, levels: (i32, i32), n_max: u64) -> BrushletIndex {
    let ks = sign_magnitude_set(d);
    let k = ks[r.gen_range(0..ks.len())].clone();
    let n = (0..d).map(|_| r.gen_range(0..=n_max)).collect();
    BrushletIndex::new(r.gen_range(levels.0..=levels.1), k, n).expect("valid index")
}

pub fn coefficient_set(
    r: &mut ChaCha8Rng,
    d: usize,
    count: usize,
    levels: (i32, i32),
    n_max: u64,
) -> CliResult<CoefficientSet> {
    let entries: Vec<_> = (0..count)
        .map(|_| {
            let idx = index(r, d, levels, n_max);
            (idx, Complex::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)))
        })
        .collect();
    Ok(CoefficientSet::from_entries(entries)?)
}

pub fn params(r: &mut ChaCha8Rng, an: &Anisotropy) -> CliResult<MixedNormParams> {
    let d = an.dim();
    let p = (0..d).map(|_| r.gen_range(0.6..4.0)).collect();
    Ok(MixedNormParams::new(p, r.gen_range(0.6..4.0), r.gen_range(-1.0..1.0), an.clone())?)
}
