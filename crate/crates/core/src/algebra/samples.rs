//! Concrete and randomized algebras and actions used by tests, the CLI and the
//! acceptance suite.

use rand::Rng;

use super::action::ActionMap;
use super::lie::{BasisElement, Dgla, Differential, GradedBasis, GradedLieAlgebra};
use super::linalg::{self, Matrix};
use super::poincare::so3_subalgebra;
use crate::scalar::Field;

fn unit<S: Field>(n: usize, i: usize) -> Vec<S> {
    let mut v = linalg::zeros(n);
    v[i] = S::one();
    v
}

/// `ℝ³` with the zero bracket, basis `e1, e2, e3`.
pub fn abelian_r3<S: Field>() -> Dgla<S> {
    Dgla::from_algebra(GradedLieAlgebra::abelian(GradedBasis::degree_zero(&["e1", "e2", "e3"]).expect("distinct")))
}

/// `so(3)` acting on `ℝ³` by infinitesimal rotations: `L_i(e_j) = ε_ijk e_k`.
pub fn so3_vector_action<S: Field>() -> ActionMap<S> {
    let eps = |i: usize, j: usize, k: usize| -> i64 {
        ((i as i64 - j as i64) * (j as i64 - k as i64) * (k as i64 - i as i64)).signum()
    };
    let matrices = (0..3)
        .map(|i| (0..3).map(|j| (0..3).map(|k| S::from_int(eps(i, j, k))).collect()).collect())
        .collect();
    ActionMap::new(Dgla::from_algebra(so3_subalgebra()), abelian_r3(), matrices).expect("3×3 blocks")
}

/// `ℝ ⋊_A ℝ^k`: basis `x0, x1..xk` with `[x0, x_i] = Σ_j a[i][j] x_j` and all
/// other brackets zero apart from antisymmetry. Jacobi holds for every `a`.
pub fn semidirect<S: Field>(a: &[Vec<i64>]) -> GradedLieAlgebra<S> {
    let k = a.len();
    let labels: Vec<String> = (0..=k).map(|i| format!("x{i}")).collect();
    let mut alg = GradedLieAlgebra::abelian(GradedBasis::degree_zero(&labels).expect("distinct"));
    for (i, row) in a.iter().enumerate() {
        let out: Vec<(usize, S)> = row.iter().enumerate().map(|(j, &c)| (j + 1, S::from_int(c))).collect();
        alg.set_antisymmetric(0, i + 1, &out);
    }
    alg
}

/// Inverse of a square matrix (row convention), `None` if singular.
pub fn invert<S: Field>(p: &[Vec<S>]) -> Option<Matrix<S>> {
    let n = p.len();
    (0..n).map(|i| linalg::solve_combination(p, &unit(n, i))).collect()
}

/// Same algebra in the basis `b'_i = Σ_j p[i][j] b_j`; `p` must be invertible.
pub fn change_basis<S: Field>(alg: &GradedLieAlgebra<S>, p: &[Vec<S>]) -> Option<GradedLieAlgebra<S>> {
    let pinv = invert(p)?;
    let n = alg.dim();
    let mut out = GradedLieAlgebra::abelian(alg.basis().clone());
    for i in 0..n {
        for j in 0..n {
            let b = alg.bracket_eval(&p[i], &p[j]).ok()?;
            out.set_bracket(i, j, linalg::apply(&pinv, &b, n));
        }
    }
    Some(out)
}

/// Conjugates every `α(x)` by `p` (rows: new basis of the module in old coordinates).
pub fn conjugate_action<S: Field>(alpha: &ActionMap<S>, p: &[Vec<S>]) -> Option<ActionMap<S>> {
    let pinv = invert(p)?;
    let m = alpha.module.dim();
    let matrices = alpha.matrices.iter().map(|a| linalg::compose(&linalg::compose(p, a, m), &pinv, m)).collect();
    Some(ActionMap { actor: alpha.actor.clone(), module: alpha.module.clone(), matrices })
}

fn random_int_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, range: i64) -> Vec<Vec<i64>> {
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(-range..=range)).collect()).collect()
}

/// Unit upper-triangular times unit lower-triangular integer matrix (det 1).
fn random_unimodular<S: Field, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<S> {
    let mut upper = linalg::identity::<S>(n);
    let mut lower = linalg::identity::<S>(n);
    for i in 0..n {
        for j in 0..n {
            if j > i {
                upper[i][j] = S::from_int(rng.gen_range(-2..=2));
            } else if j < i {
                lower[i][j] = S::from_int(rng.gen_range(-2..=2));
            }
        }
    }
    linalg::compose(&upper, &lower, n)
}

/// A degree-zero Lie algebra of dimension `2..=max_dim` with small integer
/// structure constants, presented in a scrambled basis.
pub fn random_lie_algebra<S: Field, R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> GradedLieAlgebra<S> {
    let dim = rng.gen_range(2..=max_dim.max(2));
    let base = if dim == 3 && rng.gen_bool(0.3) {
        so3_subalgebra::<S>()
    } else {
        semidirect(&random_int_matrix(rng, dim - 1, 2))
    };
    let p = random_unimodular(rng, dim);
    change_basis(&base, &p).expect("unimodular")
}

/// A small valid action map drawn from one of three families: `ℝ ⋊ ℝ^k`
/// acting on `ℝ^m` through its quotient, a conjugated `so(3)` vector
/// representation, or an adjoint action of a random algebra.
pub fn random_action_map<S: Field, R: Rng + ?Sized>(rng: &mut R) -> ActionMap<S> {
    match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(1..=2);
            let g = Dgla::from_algebra(semidirect::<S>(&random_int_matrix(rng, k, 2)));
            let m = rng.gen_range(1..=3);
            let labels: Vec<String> = (0..m).map(|i| format!("v{i}")).collect();
            let h = Dgla::from_algebra(GradedLieAlgebra::abelian(GradedBasis::degree_zero(&labels).expect("distinct")));
            let b: Matrix<S> =
                random_int_matrix(rng, m, 3).into_iter().map(|r| r.into_iter().map(S::from_int).collect()).collect();
            let mut alpha = ActionMap::zero(g, h);
            alpha.matrices[0] = b;
            alpha
        }
        1 => {
            let p = random_unimodular(rng, 3);
            conjugate_action(&so3_vector_action(), &p).expect("unimodular")
        }
        _ => super::action::adjoint_map(&Dgla::from_algebra(random_lie_algebra(rng, 3))),
    }
}

/// `g ⊗ A` with `A = span{1, t, dt}`, `t² = t·dt = 0`, `d t = dt`, `|dt| = 1`.
/// A dgla with nonzero differential and elements in degrees 0 and 1.
pub fn truncated_current_algebra<S: Field>(g: &GradedLieAlgebra<S>) -> Dgla<S> {
    let n = g.dim();
    let suffixes = [("", 0), ("·t", 0), ("·dt", 1)];
    let elements = suffixes
        .iter()
        .flat_map(|(s, deg)| {
            (0..n).map(move |i| BasisElement { label: format!("{}{s}", g.basis().label(i)), degree: g.basis().degree(i) + deg })
        })
        .collect();
    let basis = GradedBasis::new(elements).expect("suffixes keep labels distinct");
    let mut alg = GradedLieAlgebra::abelian(basis);
    // product table of A on slots (1, t, dt): 1·a = a·1 = a, everything else 0
    let product = |a: usize, b: usize| -> Option<usize> {
        match (a, b) {
            (0, x) | (x, 0) => Some(x),
            _ => None,
        }
    };
    for a in 0..3 {
        for b in 0..3 {
            for i in 0..n {
                for j in 0..n {
                    let mut out = linalg::zeros(3 * n);
                    if let Some(c) = product(a, b) {
                        for (k, v) in g.bracket_basis(i, j).iter().enumerate() {
                            out[c * n + k] = v.clone();
                        }
                    }
                    alg.set_bracket(a * n + i, b * n + j, out);
                }
            }
        }
    }
    let mut d = linalg::zero_matrix(3 * n, 3 * n);
    for (i, row) in d.iter_mut().skip(n).take(n).enumerate() {
        row[2 * n + i] = S::one();
    }
    Dgla::new(alg, Differential::new(d).expect("square")).expect("dimensions agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lie::check_dgla;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vector_action_is_valid() {
        assert!(so3_vector_action::<Rational>().validate().passed());
    }

    #[test]
    fn random_algebras_satisfy_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let alg = random_lie_algebra::<Rational, _>(&mut rng, 4);
            assert!(check_dgla(&Dgla::from_algebra(alg)).passed());
        }
    }

    #[test]
    fn random_actions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let alpha = random_action_map::<Rational, _>(&mut rng);
            assert!(alpha.validate().passed(), "{}", alpha.validate());
        }
    }

    #[test]
    fn current_algebra_is_a_dgla() {
        let d = truncated_current_algebra(&so3_subalgebra::<Rational>());
        assert_eq!(d.dim(), 9);
        assert!(!d.differential.is_zero());
        assert!(check_dgla(&d).passed(), "{}", check_dgla(&d));
    }
}
