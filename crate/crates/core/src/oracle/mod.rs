//! Independent cross-checks through the S-matrix and integer fusion data.

mod complex;
mod fusion;
mod smatrix;

pub use complex::ComplexBall;
pub use fusion::{fusion_coeffs, handle_trace_dimension, FusionCache, FusionTensor, FUSION_GUARD};
pub use smatrix::{alternant_qdim_squared, s_entry, s_entry_exact, RootSum, SMatrix};
