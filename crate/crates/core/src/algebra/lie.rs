//! Graded Lie algebras, differentials and dglas in a fixed basis.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::linalg::{self, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    #[serde(default)]
    pub degree: i64,
}

/// Ordered basis of a graded vector space. Labels are unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    elements: Vec<BasisElement>,
}

impl GradedBasis {
    pub fn new(elements: Vec<BasisElement>) -> Result<Self> {
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::InvalidBasis(format!("duplicate label `{}`", e.label)));
            }
        }
        Ok(Self { elements })
    }

    /// Basis concentrated in degree zero.
    pub fn degree_zero<L: AsRef<str>>(labels: &[L]) -> Result<Self> {
        Self::new(
            labels
                .iter()
                .map(|l| BasisElement { label: l.as_ref().to_string(), degree: 0 })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.elements[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Basis of `self ⊕ other`; labels of `other` that collide get a prime appended.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut elements = self.elements.clone();
        let mut taken: HashSet<String> = elements.iter().map(|e| e.label.clone()).collect();
        for e in &other.elements {
            let mut label = e.label.clone();
            while taken.contains(&label) {
                label.push('\'');
            }
            taken.insert(label.clone());
            elements.push(BasisElement { label, degree: e.degree });
        }
        Self { elements }
    }

    fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.label(i).to_string()).collect()
    }
}

/// `(-1)^(a·b)` as a field element.
pub(crate) fn koszul<S: Field>(a: i64, b: i64) -> S {
    if (a * b).rem_euclid(2) == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// Graded Lie algebra by structure constants: `[b_i, b_j] = Σ_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedLieAlgebra<S> {
    basis: GradedBasis,
    brackets: Vec<Matrix<S>>,
}

impl<S: Field> GradedLieAlgebra<S> {
    pub fn new(basis: GradedBasis, brackets: Vec<Matrix<S>>) -> Result<Self> {
        let n = basis.len();
        if brackets.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: brackets.len() });
        }
        for row in brackets.iter().flatten() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for m in &brackets {
            if m.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.len() });
            }
        }
        Ok(Self { basis, brackets })
    }

    /// The abelian algebra on `basis`.
    pub fn abelian(basis: GradedBasis) -> Self {
        let n = basis.len();
        Self { basis, brackets: vec![linalg::zero_matrix(n, n); n] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.brackets[i][j][k]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[S] {
        &self.brackets[i][j]
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, out: Vec<S>) {
        assert_eq!(out.len(), self.dim());
        self.brackets[i][j] = out;
    }

    /// Sets `[b_i, b_j]` and fills `[b_j, b_i]` by graded antisymmetry.
    pub fn set_antisymmetric(&mut self, i: usize, j: usize, out: &[(usize, S)]) {
        let n = self.dim();
        let mut v: Vec<S> = linalg::zeros(n);
        for (k, c) in out {
            v[*k] = v[*k].clone() + c.clone();
        }
        let sign: S = -koszul::<S>(self.basis.degree(i), self.basis.degree(j));
        self.brackets[j][i] = linalg::scale(&sign, &v);
        self.brackets[i][j] = v;
    }

    pub fn bracket_eval(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        let mut out = linalg::zeros(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                linalg::axpy(&mut out, &(xi.clone() * yj.clone()), &self.brackets[i][j]);
            }
        }
        Ok(out)
    }

    /// `[b_i, v]`
    pub(crate) fn left_bracket(&self, i: usize, v: &[S]) -> Vec<S> {
        let mut out = linalg::zeros(self.dim());
        for (m, c) in v.iter().enumerate() {
            linalg::axpy(&mut out, c, &self.brackets[i][m]);
        }
        out
    }

    /// `[v, b_j]`
    pub(crate) fn right_bracket(&self, v: &[S], j: usize) -> Vec<S> {
        let mut out = linalg::zeros(self.dim());
        for (m, c) in v.iter().enumerate() {
            linalg::axpy(&mut out, c, &self.brackets[m][j]);
        }
        out
    }

    /// Degree, graded antisymmetry and graded Jacobi.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut log = ViolationLog::default();
        let n = self.dim();
        let deg = |i: usize| self.basis.degree(i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.brackets[i][j][k].is_zero() && deg(k) != deg(i) + deg(j) {
                        log.record(Axiom::BracketDegree, self.basis.labels(&[i, j, k]));
                    }
                }
                let sign: S = -koszul::<S>(deg(i), deg(j));
                if self.brackets[j][i] != linalg::scale(&sign, &self.brackets[i][j]) {
                    log.record(Axiom::Antisymmetry, self.basis.labels(&[i, j]));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t1 = self.left_bracket(i, &self.brackets[j][k]);
                    let t2 = self.left_bracket(j, &self.brackets[k][i]);
                    let t3 = self.left_bracket(k, &self.brackets[i][j]);
                    let mut sum = linalg::scale(&koszul::<S>(deg(i), deg(k)), &t1);
                    linalg::axpy(&mut sum, &koszul::<S>(deg(j), deg(i)), &t2);
                    linalg::axpy(&mut sum, &koszul::<S>(deg(k), deg(j)), &t3);
                    if !linalg::is_zero(&sum) {
                        log.record(Axiom::Jacobi, self.basis.labels(&[i, j, k]));
                    }
                }
            }
        }
        log.finish()
    }
}

/// Degree +1 map in row convention: `d(b_i) = Σ_k d[i][k] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Differential<S> {
    matrix: Matrix<S>,
}

impl<S: Field> Differential<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
        Ok(Self { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        Self { matrix: linalg::zero_matrix(dim, dim) }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        linalg::apply(&self.matrix, v, self.dim())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| linalg::is_zero(r))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dgla<S> {
    pub algebra: GradedLieAlgebra<S>,
    pub differential: Differential<S>,
}

impl<S: Field> Dgla<S> {
    pub fn new(algebra: GradedLieAlgebra<S>, differential: Differential<S>) -> Result<Self> {
        if algebra.dim() != differential.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), got: differential.dim() });
        }
        Ok(Self { algebra, differential })
    }

    /// A graded Lie algebra with zero differential.
    pub fn from_algebra(algebra: GradedLieAlgebra<S>) -> Self {
        let n = algebra.dim();
        Self { algebra, differential: Differential::zero(n) }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn basis(&self) -> &GradedBasis {
        self.algebra.basis()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.algebra.basis().degree(i)
    }
}

/// Exhaustive exact check of every dgla axiom over basis tuples.
pub fn check_dgla<S: Field>(d: &Dgla<S>) -> AxiomReport {
    let mut report = d.algebra.check_axioms();
    let basis = d.basis();
    let n = d.dim();
    let mut log = ViolationLog::default();
    let dm = d.differential.matrix();
    for i in 0..n {
        for k in 0..n {
            if !dm[i][k].is_zero() && basis.degree(k) != basis.degree(i) + 1 {
                log.record(Axiom::DifferentialDegree, basis.labels(&[i, k]));
            }
        }
        if !linalg::is_zero(&d.differential.apply(&dm[i])) {
            log.record(Axiom::DSquared, basis.labels(&[i]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = d.differential.apply(d.algebra.bracket_basis(i, j));
            let mut rhs = d.algebra.right_bracket(&dm[i], j);
            let sign = koszul::<S>(basis.degree(i), 1);
            linalg::axpy(&mut rhs, &sign, &d.algebra.left_bracket(i, &dm[j]));
            if lhs != rhs {
                log.record(Axiom::Leibniz, basis.labels(&[i, j]));
            }
        }
    }
    report.violations.extend(log.finish().violations);
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    BracketDegree,
    Antisymmetry,
    Jacobi,
    DifferentialDegree,
    DSquared,
    Leibniz,
    MorphismDegree,
    MorphismDifferential,
    MorphismBracket,
    ActionDegree,
    ActionHomomorphism,
    ActionDifferential,
    ActionDerivation,
    Injectivity,
    Surjectivity,
    ImageKernel,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::BracketDegree => "bracket degree",
            Axiom::Antisymmetry => "graded antisymmetry",
            Axiom::Jacobi => "graded Jacobi",
            Axiom::DifferentialDegree => "differential degree",
            Axiom::DSquared => "d^2 = 0",
            Axiom::Leibniz => "Leibniz rule",
            Axiom::MorphismDegree => "morphism degree",
            Axiom::MorphismDifferential => "morphism commutes with d",
            Axiom::MorphismBracket => "morphism preserves bracket",
            Axiom::ActionDegree => "action degree",
            Axiom::ActionHomomorphism => "action homomorphism",
            Axiom::ActionDifferential => "action compatible with d",
            Axiom::ActionDerivation => "action by derivations",
            Axiom::Injectivity => "injectivity",
            Axiom::Surjectivity => "surjectivity",
            Axiom::ImageKernel => "image = kernel",
        };
        f.write_str(s)
    }
}

/// First witness of a violated axiom plus the number of offending tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn merge(&mut self, other: AxiomReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        for v in &self.violations {
            writeln!(f, "FAIL {}: {} tuple(s), first at ({})", v.axiom, v.count, v.witness.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Default)]
pub(crate) struct ViolationLog {
    violations: Vec<Violation>,
}

impl ViolationLog {
    pub(crate) fn record(&mut self, axiom: Axiom, witness: Vec<String>) {
        match self.violations.iter_mut().find(|v| v.axiom == axiom) {
            Some(v) => v.count += 1,
            None => self.violations.push(Violation { axiom, witness, count: 1 }),
        }
    }

    pub(crate) fn finish(self) -> AxiomReport {
        AxiomReport { violations: self.violations }
    }
}
