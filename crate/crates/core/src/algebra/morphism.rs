use super::lie::{Axiom, AxiomReport, Dgla, ViolationLog};
use super::linalg::{self, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Strict dgla map, stored in row convention: `φ(b_i) = Σ_k m[i][k] b'_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DglaMorphism<S> {
    pub source: Dgla<S>,
    pub target: Dgla<S>,
    pub matrix: Matrix<S>,
}

impl<S: Field> DglaMorphism<S> {
    pub fn new(source: Dgla<S>, target: Dgla<S>, matrix: Matrix<S>) -> Result<Self> {
        if matrix.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), got: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != target.dim()) {
            return Err(Error::DimensionMismatch { expected: target.dim(), got: row.len() });
        }
        Ok(Self { source, target, matrix })
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        linalg::apply(&self.matrix, v, self.target.dim())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }
}

/// Degree zero, commutes with differentials, preserves brackets.
pub fn check_morphism<S: Field>(m: &DglaMorphism<S>) -> AxiomReport {
    let mut log = ViolationLog::default();
    let (src, tgt) = (&m.source, &m.target);
    let n = src.dim();
    let label_pair = |i: usize, k: usize| vec![src.basis().label(i).to_string(), tgt.basis().label(k).to_string()];
    for i in 0..n {
        if let Some(k) = (0..tgt.dim()).find(|&k| !m.matrix[i][k].is_zero() && tgt.degree(k) != src.degree(i)) {
            log.record(Axiom::MorphismDegree, label_pair(i, k));
        }
        let lhs = m.apply(&src.differential.matrix()[i]);
        let rhs = tgt.differential.apply(&m.matrix[i]);
        if lhs != rhs {
            log.record(Axiom::MorphismDifferential, vec![src.basis().label(i).to_string()]);
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = m.apply(src.algebra.bracket_basis(i, j));
            let rhs = tgt.algebra.bracket_eval(&m.matrix[i], &m.matrix[j]).expect("dimensions checked");
            if lhs != rhs {
                log.record(
                    Axiom::MorphismBracket,
                    vec![src.basis().label(i).to_string(), src.basis().label(j).to_string()],
                );
            }
        }
    }
    log.finish()
}
