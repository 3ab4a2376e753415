//! Exact graded Lie algebras, dglas, morphisms and actions.

pub mod action;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod morphism;
pub mod poincare;
pub mod samples;

pub use action::{
    adjoint_action, adjoint_map, build_action_dgla, build_action_dgla_with, check_action_structure, check_exactness,
    extract_action_map, ActionMap, ActionStructure, BracketSign,
};
pub use lie::{check_dgla, Axiom, AxiomReport, BasisElement, Dgla, Differential, GradedBasis, GradedLieAlgebra, Violation};
pub use morphism::{check_morphism, DglaMorphism};
pub use poincare::{closure_check, poincare_algebra, so3_subalgebra};
