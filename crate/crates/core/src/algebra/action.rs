//! Actions of one dgla on another, in both presentations: an action map
//! `α: g → End(h)` and a dgla structure on `g ⊕ h` sitting in the short exact
//! sequence `0 → h → g ⊕ h → g → 0`.

use super::lie::{check_dgla, koszul, Axiom, AxiomReport, Dgla, Differential, GradedLieAlgebra, ViolationLog};
use super::linalg::{self, Matrix};
use super::morphism::{check_morphism, DglaMorphism};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// `α(g_i)(h_j) = Σ_k matrices[i][j][k] h_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionMap<S> {
    pub actor: Dgla<S>,
    pub module: Dgla<S>,
    pub matrices: Vec<Matrix<S>>,
}

impl<S: Field> ActionMap<S> {
    pub fn new(actor: Dgla<S>, module: Dgla<S>, matrices: Vec<Matrix<S>>) -> Result<Self> {
        if matrices.len() != actor.dim() {
            return Err(Error::DimensionMismatch { expected: actor.dim(), got: matrices.len() });
        }
        for m in &matrices {
            if m.len() != module.dim() {
                return Err(Error::DimensionMismatch { expected: module.dim(), got: m.len() });
            }
            if let Some(row) = m.iter().find(|r| r.len() != module.dim()) {
                return Err(Error::DimensionMismatch { expected: module.dim(), got: row.len() });
            }
        }
        Ok(Self { actor, module, matrices })
    }

    pub fn zero(actor: Dgla<S>, module: Dgla<S>) -> Self {
        let (n, m) = (actor.dim(), module.dim());
        Self { actor, module, matrices: vec![linalg::zero_matrix(m, m); n] }
    }

    /// `α(x)` for a coefficient vector `x` of the actor.
    pub fn operator(&self, x: &[S]) -> Matrix<S> {
        let m = self.module.dim();
        let mut out = linalg::zero_matrix(m, m);
        for (c, mat) in x.iter().zip(&self.matrices) {
            if c.is_zero() {
                continue;
            }
            for (row, src) in out.iter_mut().zip(mat) {
                linalg::axpy(row, c, src);
            }
        }
        out
    }

    /// Checks that `α` is a dgla map into the endomorphism dgla of `h`
    /// acting by graded derivations.
    pub fn validate(&self) -> AxiomReport {
        let mut log = ViolationLog::default();
        let (g, h) = (&self.actor, &self.module);
        let (n, m) = (g.dim(), h.dim());
        let gl = |i: usize| g.basis().label(i).to_string();
        let hl = |j: usize| h.basis().label(j).to_string();
        let sub_mat = |a: &Matrix<S>, b: &Matrix<S>| -> Matrix<S> { a.iter().zip(b).map(|(x, y)| linalg::sub(x, y)).collect() };
        let scale_mat = |c: &S, a: &Matrix<S>| -> Matrix<S> { a.iter().map(|r| linalg::scale(c, r)).collect() };
        let dh = h.differential.matrix();

        for i in 0..n {
            for j in 0..m {
                if let Some(k) = (0..m).find(|&k| !self.matrices[i][j][k].is_zero() && h.degree(k) != g.degree(i) + h.degree(j)) {
                    log.record(Axiom::ActionDegree, vec![gl(i), hl(j), hl(k)]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.operator(g.algebra.bracket_basis(i, j));
                // α(X)α(Y): apply α(Y) first.
                let xy = linalg::compose(&self.matrices[j], &self.matrices[i], m);
                let yx = linalg::compose(&self.matrices[i], &self.matrices[j], m);
                let rhs = sub_mat(&xy, &scale_mat(&koszul(g.degree(i), g.degree(j)), &yx));
                if lhs != rhs {
                    log.record(Axiom::ActionHomomorphism, vec![gl(i), gl(j)]);
                }
            }
        }
        for i in 0..n {
            let lhs = self.operator(&g.differential.matrix()[i]);
            let d_after = linalg::compose(&self.matrices[i], dh, m);
            let d_before = linalg::compose(dh, &self.matrices[i], m);
            let rhs = sub_mat(&d_after, &scale_mat(&koszul(1, g.degree(i)), &d_before));
            if lhs != rhs {
                log.record(Axiom::ActionDifferential, vec![gl(i)]);
            }
        }
        for i in 0..n {
            for j in 0..m {
                for k in 0..m {
                    let lhs = linalg::apply(&self.matrices[i], h.algebra.bracket_basis(j, k), m);
                    let mut rhs = h.algebra.right_bracket(&self.matrices[i][j], k);
                    linalg::axpy(&mut rhs, &koszul(g.degree(i), h.degree(j)), &h.algebra.left_bracket(j, &self.matrices[i][k]));
                    if lhs != rhs {
                        log.record(Axiom::ActionDerivation, vec![gl(i), hl(j), hl(k)]);
                    }
                }
            }
        }
        log.finish()
    }
}

/// Which sign the reconstruction bracket puts on the `α(Y)(v)` term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketSign {
    /// `− (−1)^{|X||Y|} α(Y)(v)`, forced by graded antisymmetry.
    Graded,
    /// `+ α(Y)(v)`; kept so the antisymmetry failure can be demonstrated.
    Literal,
}

/// A dgla on `g ⊕ h` (basis: `g` first, then `h`) with its exact sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionStructure<S> {
    pub total: Dgla<S>,
    pub inject: DglaMorphism<S>,
    pub project: DglaMorphism<S>,
}

impl<S: Field> ActionStructure<S> {
    pub fn new(total: Dgla<S>, inject: DglaMorphism<S>, project: DglaMorphism<S>) -> Result<Self> {
        let expected = project.target.dim() + inject.source.dim();
        if total.dim() != expected {
            return Err(Error::DimensionMismatch { expected, got: total.dim() });
        }
        if inject.target.dim() != total.dim() || project.source.dim() != total.dim() {
            return Err(Error::DimensionMismatch { expected: total.dim(), got: inject.target.dim() });
        }
        Ok(Self { total, inject, project })
    }

    pub fn actor(&self) -> &Dgla<S> {
        &self.project.target
    }

    pub fn module(&self) -> &Dgla<S> {
        &self.inject.source
    }

    /// The canonical section `X ↦ (X, 0)`.
    pub fn section(&self, x: &[S]) -> Vec<S> {
        let mut v = x.to_vec();
        v.extend(linalg::zeros::<S>(self.module().dim()));
        v
    }
}

fn direct_sum_shell<S: Field>(g: &Dgla<S>, h: &Dgla<S>) -> (GradedLieAlgebra<S>, Differential<S>) {
    let (n, m) = (g.dim(), h.dim());
    let basis = g.basis().direct_sum(h.basis());
    let mut d = linalg::zero_matrix(n + m, n + m);
    for i in 0..n {
        d[i][..n].clone_from_slice(&g.differential.matrix()[i]);
    }
    for j in 0..m {
        d[n + j][n..].clone_from_slice(&h.differential.matrix()[j]);
    }
    (GradedLieAlgebra::abelian(basis), Differential::new(d).expect("square"))
}

fn embed<S: Field>(v: &[S], offset: usize, total: usize) -> Vec<S> {
    let mut out = linalg::zeros(total);
    out[offset..offset + v.len()].clone_from_slice(v);
    out
}

fn exact_sequence<S: Field>(g: &Dgla<S>, h: &Dgla<S>, total: Dgla<S>) -> ActionStructure<S> {
    let (n, m) = (g.dim(), h.dim());
    let inject: Matrix<S> = (0..m).map(|j| embed(&linalg::identity::<S>(m)[j], n, n + m)).collect();
    let mut project = linalg::zero_matrix(n + m, n);
    for (i, row) in project.iter_mut().enumerate().take(n) {
        row[i] = S::one();
    }
    ActionStructure {
        inject: DglaMorphism { source: h.clone(), target: total.clone(), matrix: inject },
        project: DglaMorphism { source: total.clone(), target: g.clone(), matrix: project },
        total,
    }
}

/// Builds `g ⊕ h` with the requested sign convention, without validating `α`.
pub fn build_action_dgla_with<S: Field>(alpha: &ActionMap<S>, sign: BracketSign) -> ActionStructure<S> {
    let (g, h) = (&alpha.actor, &alpha.module);
    let (n, m) = (g.dim(), h.dim());
    let (mut alg, d) = direct_sum_shell(g, h);
    for i in 0..n {
        for j in 0..n {
            alg.set_bracket(i, j, embed(g.algebra.bracket_basis(i, j), 0, n + m));
        }
        for j in 0..m {
            let act = &alpha.matrices[i][j];
            alg.set_bracket(i, n + j, embed(act, n, n + m));
            let c = match sign {
                BracketSign::Graded => -koszul::<S>(h.degree(j), g.degree(i)),
                BracketSign::Literal => S::one(),
            };
            alg.set_bracket(n + j, i, embed(&linalg::scale(&c, act), n, n + m));
        }
    }
    for j in 0..m {
        for k in 0..m {
            alg.set_bracket(n + j, n + k, embed(h.algebra.bracket_basis(j, k), n, n + m));
        }
    }
    exact_sequence(g, h, Dgla { algebra: alg, differential: d })
}

/// `[[(X,v),(Y,w)]] = ([X,Y], [v,w] + α(X)w − (−1)^{|X||Y|} α(Y)v)`,
/// `d(X,v) = (dX, dv)`. Rejects `α` that is not a dgla action.
pub fn build_action_dgla<S: Field>(alpha: &ActionMap<S>) -> Result<ActionStructure<S>> {
    let report = alpha.validate();
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidAction { axiom: v.axiom.to_string(), witness: v.witness.clone() });
    }
    Ok(build_action_dgla_with(alpha, BracketSign::Graded))
}

/// Recovers `α(X)(w)` as the unique preimage under `inject` of `[[(X,0),(0,w)]]`.
pub fn extract_action_map<S: Field>(s: &ActionStructure<S>) -> Result<ActionMap<S>> {
    let (g, h) = (s.actor(), s.module());
    let (n, m) = (g.dim(), h.dim());
    let unit = |len: usize, i: usize| linalg::identity::<S>(len).swap_remove(i);
    let mut matrices = vec![linalg::zero_matrix(m, m); n];
    for i in 0..n {
        let section = s.section(&unit(n, i));
        if s.project.apply(&section) != unit(n, i) {
            return Err(Error::Exactness(format!("(X,0) does not project to {}", g.basis().label(i))));
        }
        for j in 0..m {
            let z = s.total.algebra.bracket_eval(&section, &s.inject.matrix[j])?;
            if !linalg::is_zero(&s.project.apply(&z)) {
                return Err(Error::Exactness(format!(
                    "[[{}, {}]] has nonzero image in the quotient",
                    g.basis().label(i),
                    h.basis().label(j)
                )));
            }
            matrices[i][j] = linalg::solve_combination(&s.inject.matrix, &z).ok_or_else(|| {
                Error::Exactness(format!("[[{}, {}]] is not in the image of inject", g.basis().label(i), h.basis().label(j)))
            })?;
        }
    }
    ActionMap::new(g.clone(), h.clone(), matrices)
}

/// `g` acting on itself: `[[(X,X'),(Y,Y')]] = ([X,Y], [X',Y'] + [X,Y'] + [X',Y])`.
pub fn adjoint_action<S: Field>(g: &Dgla<S>) -> ActionStructure<S> {
    let n = g.dim();
    let (mut alg, d) = direct_sum_shell(g, g);
    for i in 0..n {
        for j in 0..n {
            let b = g.algebra.bracket_basis(i, j);
            alg.set_bracket(i, j, embed(b, 0, 2 * n));
            alg.set_bracket(i, n + j, embed(b, n, 2 * n));
            alg.set_bracket(n + i, j, embed(b, n, 2 * n));
            alg.set_bracket(n + i, n + j, embed(b, n, 2 * n));
        }
    }
    exact_sequence(g, g, Dgla { algebra: alg, differential: d })
}

/// The action map `X ↦ ad_X` of `g` on itself.
pub fn adjoint_map<S: Field>(g: &Dgla<S>) -> ActionMap<S> {
    let n = g.dim();
    let matrices = (0..n).map(|i| (0..n).map(|j| g.algebra.bracket_basis(i, j).to_vec()).collect()).collect();
    ActionMap { actor: g.clone(), module: g.clone(), matrices }
}

/// Injectivity, surjectivity, `image = kernel`, and that both maps are dgla maps.
pub fn check_exactness<S: Field>(s: &ActionStructure<S>) -> AxiomReport {
    let mut log = ViolationLog::default();
    let (n, m, t) = (s.actor().dim(), s.module().dim(), s.total.dim());
    let inject_rank = s.inject.rank();
    let project_rank = s.project.rank();
    if inject_rank != m {
        log.record(Axiom::Injectivity, vec![format!("rank {inject_rank} < {m}")]);
    }
    if project_rank != n {
        log.record(Axiom::Surjectivity, vec![format!("rank {project_rank} < {n}")]);
    }
    for j in 0..m {
        if !linalg::is_zero(&s.project.apply(&s.inject.matrix[j])) {
            log.record(Axiom::ImageKernel, vec![s.module().basis().label(j).to_string()]);
        }
    }
    if t - project_rank != inject_rank {
        log.record(Axiom::ImageKernel, vec![format!("dim ker = {}, dim im = {inject_rank}", t - project_rank)]);
    }
    let mut report = log.finish();
    report.merge(check_morphism(&s.inject));
    report.merge(check_morphism(&s.project));
    report
}

/// `check_dgla` on the total space plus `check_exactness`.
pub fn check_action_structure<S: Field>(s: &ActionStructure<S>) -> AxiomReport {
    let mut report = check_dgla(&s.total);
    report.merge(check_exactness(s));
    report
}
