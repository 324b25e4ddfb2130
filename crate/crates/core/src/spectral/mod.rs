//! Sparse complex matrices and their norms.

mod matrix;
mod norm;
pub mod rng;

pub use matrix::ComplexMatrix;
pub use norm::{
    exact_norm, hs_norm, operator_norm, operator_norm_with, power_iteration_norm, NormMethod,
    NormOptions, NormResult,
};
