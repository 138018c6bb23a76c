//! Anisotropic tensor-product brushlet bases on `R^d`.
//!
//! The crate builds the Lizorkin frequency partition for an anisotropy
//! vector `a`, the orthonormal brushlet system attached to it, discrete
//! mixed-norm Besov and Triebel-Lizorkin sequence norms over brushlet
//! coefficients, and greedy m-term approximation experiments.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! aliases at the crate root fix the scalar to `f64`, or `f32` with the
//! `F32` suffix.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod anisotropy;
pub mod approx;
pub mod bells;
pub mod brushlet;
pub mod covering;
pub mod error;
pub mod mixed_norms;
pub mod quad;
pub mod scalar;
pub mod spectrum;
pub mod transform;

pub use error::{Error, Result};
pub use scalar::{lit, Real};

pub use brushlet::BrushletIndex;
pub use quad::QuadRule;
pub use transform::Truncation;

pub type Anisotropy = anisotropy::Anisotropy<f64>;
pub type AnisotropyF32 = anisotropy::Anisotropy<f32>;
pub type DyadicRect = anisotropy::DyadicRect<f64>;
pub type CutoffInterval = covering::CutoffInterval<f64>;
pub type CutoffIntervalF32 = covering::CutoffInterval<f32>;
pub type LizorkinRect = covering::LizorkinRect<f64>;
pub type LizorkinRectF32 = covering::LizorkinRect<f32>;
pub type UCell = covering::UCell<f64>;
pub type Bell = bells::Bell<f64>;
pub type SampledSpectrum = spectrum::SampledSpectrum<f64>;
pub type SampledSpectrumF32 = spectrum::SampledSpectrum<f32>;
pub type CoefficientSet = transform::CoefficientSet<f64>;
pub type CoefficientSetF32 = transform::CoefficientSet<f32>;
pub type AdmissiblePair = transform::admissible::AdmissiblePair<f64>;
pub type GridFunction = mixed_norms::grid::GridFunction<f64>;
pub type GridFunctionF32 = mixed_norms::grid::GridFunction<f32>;
pub type MixedNormParams = mixed_norms::sequence::MixedNormParams<f64>;
pub type MixedNormParamsF32 = mixed_norms::sequence::MixedNormParams<f32>;
pub type Complex = num_complex::Complex<f64>;
