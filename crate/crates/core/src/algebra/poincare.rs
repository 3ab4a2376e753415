//! The Poincaré algebra `iso(3,1)` and its rotation subalgebra.
//!
//! Conventions: `η = diag(-1, 1, 1, 1)`, and `J_ab` acts on `V` by
//! `(J_ab)^c_d = δ^c_a η_bd − δ^c_b η_ad`. Translations `P_a` act on
//! spacetime points by `x ↦ x + e_a`. Brackets are the commutators of the
//! 5×5 affine representation, which gives
//!
//! ```text
//! [J_ab, J_cd] = η_bc J_ad − η_bd J_ac − η_ac J_bd + η_ad J_bc
//! [J_ab, P_c]  = η_bc P_a − η_ac P_b
//! [P_a, P_b]   = 0
//! ```
//!
//! Rotations are `L_i = −½ ε_ijk J_jk` (so `L_3 = −J_12`), which satisfy
//! `[L_i, L_j] = ε_ijk L_k` and generate `L_3 ↦ (0, −x², x¹, 0)`.
//! Boosts are `K_i = J_0i`.

use super::lie::{GradedBasis, GradedLieAlgebra};
use super::linalg;
use crate::scalar::Field;

pub const POINCARE_LABELS: [&str; 10] = ["P0", "P1", "P2", "P3", "J01", "J02", "J03", "J12", "J13", "J23"];

/// Named generators in the order used by scenario tables.
pub const NAMED_GENERATORS: [&str; 10] = ["P0", "P1", "P2", "P3", "L1", "L2", "L3", "K1", "K2", "K3"];

/// Generators of the stationary, spherically symmetric subalgebra.
pub const SPHERICAL_GENERATORS: [&str; 4] = ["P0", "L1", "L2", "L3"];

pub fn eta(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 0) => -1,
        (a, b) if a == b => 1,
        _ => 0,
    }
}

/// Basis position of `J_ab` and the sign relating it to the stored `J_{min,max}`.
pub fn rotation_index(a: usize, b: usize) -> Option<(usize, i64)> {
    if a == b {
        return None;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let pos = match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => unreachable!(),
    };
    Some((4 + pos, sign))
}

/// Stored `(a, b)` pair with `a < b` for rotation basis slot `k` (0..6).
pub fn rotation_pair(k: usize) -> (usize, usize) {
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)][k]
}

pub fn poincare_algebra<S: Field>() -> GradedLieAlgebra<S> {
    let basis = GradedBasis::degree_zero(&POINCARE_LABELS).expect("labels are distinct");
    let mut alg = GradedLieAlgebra::abelian(basis);
    let n = 10;
    let add_j = |v: &mut Vec<S>, coeff: i64, a: usize, b: usize| {
        if coeff == 0 {
            return;
        }
        if let Some((idx, sign)) = rotation_index(a, b) {
            v[idx] = v[idx].clone() + S::from_int(coeff * sign);
        }
    };
    for x in 0..6 {
        let (a, b) = rotation_pair(x);
        for y in 0..6 {
            let (c, d) = rotation_pair(y);
            let mut v = linalg::zeros(n);
            add_j(&mut v, eta(b, c), a, d);
            add_j(&mut v, -eta(b, d), a, c);
            add_j(&mut v, -eta(a, c), b, d);
            add_j(&mut v, eta(a, d), b, c);
            alg.set_bracket(4 + x, 4 + y, v);
        }
        for c in 0..4 {
            let mut v: Vec<S> = linalg::zeros(n);
            v[a] = v[a].clone() + S::from_int(eta(b, c));
            v[b] = v[b].clone() - S::from_int(eta(a, c));
            alg.set_bracket(c, 4 + x, linalg::scale(&(-S::one()), &v));
            alg.set_bracket(4 + x, c, v);
        }
    }
    alg
}

/// `so(3)` on `L1, L2, L3` with `[L_i, L_j] = ε_ijk L_k`.
pub fn so3_subalgebra<S: Field>() -> GradedLieAlgebra<S> {
    let basis = GradedBasis::degree_zero(&["L1", "L2", "L3"]).expect("labels are distinct");
    let mut alg = GradedLieAlgebra::abelian(basis);
    alg.set_antisymmetric(0, 1, &[(2, S::one())]);
    alg.set_antisymmetric(1, 2, &[(0, S::one())]);
    alg.set_antisymmetric(2, 0, &[(1, S::one())]);
    alg
}

/// Poincaré coefficient vector of a named generator (`P0..P3`, `J01..J23`,
/// `L1..L3`, `K1..K3`).
pub fn generator<S: Field>(name: &str) -> Option<Vec<S>> {
    let mut v: Vec<S> = linalg::zeros(10);
    let mut put = |idx: usize, c: i64| v[idx] = S::from_int(c);
    match name {
        "P0" => put(0, 1),
        "P1" => put(1, 1),
        "P2" => put(2, 1),
        "P3" => put(3, 1),
        "L1" => put(9, -1),
        "L2" => put(8, 1),
        "L3" => put(7, -1),
        "K1" => put(4, 1),
        "K2" => put(5, 1),
        "K3" => put(6, 1),
        other => {
            let idx = POINCARE_LABELS.iter().position(|l| *l == other)?;
            put(idx, 1)
        }
    }
    Some(v)
}

/// Whether the span of `gens` is closed under the bracket of `alg`.
pub fn closure_check<S: Field>(alg: &GradedLieAlgebra<S>, gens: &[Vec<S>]) -> bool {
    let base_rank = linalg::rank(gens);
    for (i, x) in gens.iter().enumerate() {
        for y in &gens[i + 1..] {
            let Ok(b) = alg.bracket_eval(x, y) else {
                return false;
            };
            let mut extended = gens.to_vec();
            extended.push(b);
            if linalg::rank(&extended) != base_rank {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lie::{check_dgla, Dgla};
    use crate::Rational;

    fn g(name: &str) -> Vec<Rational> {
        generator(name).unwrap()
    }

    /// 5×5 affine matrix of a Poincaré coefficient vector.
    fn affine(v: &[Rational]) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::from_integer(0.into()); 5]; 5];
        for a in 0..4 {
            m[a][4] = v[a].clone();
        }
        for k in 0..6 {
            let (a, b) = rotation_pair(k);
            for c in 0..4 {
                for d in 0..4 {
                    let delta = |x: usize, y: usize| i64::from(x == y);
                    let entry = delta(c, a) * eta(b, d) - delta(c, b) * eta(a, d);
                    if entry != 0 {
                        m[c][d] = m[c][d].clone() + v[4 + k].clone() * Rational::from_integer(entry.into());
                    }
                }
            }
        }
        m
    }

    fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| (0..5).fold(Rational::from_integer(0.into()), |s, k| s + a[i][k].clone() * b[k][j].clone()))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn structure_constants_match_affine_representation() {
        let alg = poincare_algebra::<Rational>();
        for i in 0..10 {
            for j in 0..10 {
                let mut x = linalg::zeros(10);
                x[i] = Rational::from_integer(1.into());
                let mut y = linalg::zeros(10);
                y[j] = Rational::from_integer(1.into());
                let (ax, ay) = (affine(&x), affine(&y));
                let xy = matmul(&ax, &ay);
                let yx = matmul(&ay, &ax);
                let comm: Vec<Vec<Rational>> =
                    (0..5).map(|r| (0..5).map(|c| xy[r][c].clone() - yx[r][c].clone()).collect()).collect();
                let bracket = alg.bracket_eval(&x, &y).unwrap();
                assert_eq!(affine(&bracket), comm, "[{}, {}]", POINCARE_LABELS[i], POINCARE_LABELS[j]);
            }
        }
    }

    #[test]
    fn j12_rotates_p1_into_p2() {
        let alg = poincare_algebra::<Rational>();
        let b = alg.bracket_eval(&g("J12"), &g("P1")).unwrap();
        assert_eq!(b, linalg::scale(&Rational::from_integer((-1).into()), &g("P2")));
    }

    #[test]
    fn poincare_has_dimension_ten_and_passes() {
        let alg = poincare_algebra::<Rational>();
        assert_eq!(alg.dim(), 10);
        assert!(check_dgla(&Dgla::from_algebra(alg)).passed());
    }

    #[test]
    fn rotations_close_like_so3() {
        let alg = poincare_algebra::<Rational>();
        assert_eq!(alg.bracket_eval(&g("L1"), &g("L2")).unwrap(), g("L3"));
        assert_eq!(alg.bracket_eval(&g("L2"), &g("L3")).unwrap(), g("L1"));
        assert_eq!(alg.bracket_eval(&g("L3"), &g("L1")).unwrap(), g("L2"));
    }

    #[test]
    fn closure_of_named_subalgebras() {
        let alg = poincare_algebra::<Rational>();
        let spherical: Vec<_> = SPHERICAL_GENERATORS.iter().map(|n| g(n)).collect();
        assert!(closure_check(&alg, &spherical));
        assert!(!closure_check(&alg, &[g("P1"), g("J12")]));
        let mut with_boost = spherical.clone();
        with_boost.push(g("K1"));
        assert!(!closure_check(&alg, &with_boost));
        let all: Vec<_> = NAMED_GENERATORS.iter().map(|n| g(n)).collect();
        assert!(closure_check(&alg, &all));
        assert!(closure_check(&alg, &[]));
    }
}
