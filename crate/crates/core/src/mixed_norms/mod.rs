//! Mixed-norm Lebesgue integrals, grid-restricted maximal operators and the
//! discrete Besov / Triebel-Lizorkin sequence norms over brushlet
//! coefficients.

pub mod grid;
pub mod maximal;
pub mod sequence;

pub use grid::{mixed_lp, vector_lq_norm, GridFunction};
pub use maximal::{iterated_maximal, iterated_maximal_at, maximal_1d};
pub use sequence::{b_norm, f_norm, single_term_norm, MixedNormParams};
