//! Finite-difference exterior calculus for vector-valued forms on a 4D grid.

pub mod field;
pub mod grid;
pub mod internal;
pub mod ops;
pub mod snapshot;
pub mod tetrad;

pub use field::FormField;
pub use grid::{Grid4, RadiusMode, Region};
pub use internal::{Internal, InternalRule};
pub use ops::{cov_d, curvature, ext_d, form_bracket, integrate, trace4, wedge, Integral};
pub use tetrad::{levi_civita_connection, metric_from_tetrad, Connection, Metric, Tetrad};
