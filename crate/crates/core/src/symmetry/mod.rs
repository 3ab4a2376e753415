//! Poincaré generators acting on spacetime, the cutoff, residuals of a tetrad
//! or metric along a generator, and the named scenarios.

pub mod convergence;
pub mod cutoff;
pub mod element;
pub mod residuals;
pub mod scenario;

pub use convergence::{assess, loglog_slope, Assessment, Series, Study, Thresholds, Verdict};
pub use cutoff::CutoffFunction;
pub use element::{generated_vector_field, vector_field_bracket, PoincareElement, VectorField};
pub use residuals::{induced_metric_variation, killing_residual, symmetry_residual};
pub use scenario::{run_scenario, KillingSubalgebra, ScenarioConfig, ScenarioKind, ScenarioReport};
