//! Invariant measures of T_A and T_B, region measures, closed forms for
//! the predicted digit frequencies, the sphere transfer operator, the
//! invertible extension and the two frequency experiments.

pub mod closed_form;
pub mod density;
pub mod quadrature;
pub mod regions;
pub mod transfer;
pub mod experiments;
pub mod extension;

pub use closed_form::{closed_form_i, closed_form_j, first_digit_distribution, predicted_frequencies};
pub use density::{density_grid, f_a, f_b, DensityEvaluator};
pub use regions::{farey_measure, region_measure, TOTAL_MEASURE};
