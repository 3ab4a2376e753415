//! Differential graded Lie algebra actions and Killing-symmetry enforcement
//! for tetrad gravity on a 4D grid.

pub mod algebra;
pub mod error;
pub mod forms;
pub mod mass;
pub mod palatini;
pub mod scalar;
pub mod spacetime;
pub mod symmetry;

pub use error::{Error, Result};
pub use scalar::{CompensatedSum, Field, Real};

/// Exact coefficients for the algebraic layer.
pub type Rational = num_rational::BigRational;
/// A dgla over exact rationals.
pub type QDgla = algebra::Dgla<Rational>;
/// Double-precision grid form.
pub type Form = forms::FormField<f64>;

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
