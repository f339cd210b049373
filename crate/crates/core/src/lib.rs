//! Super-Apollonian continued fractions.
//!
//! Exact planar expansions of Gaussian rationals, reduction of Lorentz and
//! Descartes quadruples, the word calculus of the Super-Apollonian group,
//! invariant densities with their closed-form frequency predictions, and the
//! real-line restriction.

pub mod error;
pub mod gaussian;
pub mod geometry;
pub mod group;
pub mod measure;
pub mod planar;
pub mod quadruple;
pub mod real_line;

pub use error::{Error, Result};
