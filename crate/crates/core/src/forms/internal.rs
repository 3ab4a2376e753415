//! Multi-index bookkeeping and the internal spaces `Λ^k V`.
//!
//! Multi-indices are strictly increasing subsets of `{0,1,2,3}` in
//! lexicographic order, e.g. two-forms are ordered `01, 02, 03, 12, 13, 23`.
//! The same ordering is used for spacetime indices and for `Λ^k V`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::poincare::eta;

pub type MultiIndex = Vec<usize>;

/// Increasing `k`-subsets of `{0,1,2,3}` in lexicographic order.
pub fn multi_indices(k: usize) -> &'static [MultiIndex] {
    static TABLES: OnceLock<Vec<Vec<MultiIndex>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=4)
            .map(|k| {
                (0u32..16)
                    .filter(|m| m.count_ones() as usize == k)
                    .map(|m| (0..4).filter(|b| m & (1 << b) != 0).collect::<Vec<usize>>())
                    .collect::<Vec<_>>()
            })
            .map(|mut v| {
                v.sort();
                v
            })
            .collect()
    });
    &tables[k]
}

pub fn binomial4(k: usize) -> usize {
    [1, 4, 6, 4, 1][k]
}

pub fn position(idx: &[usize]) -> Option<usize> {
    multi_indices(idx.len()).iter().position(|m| m == idx)
}

/// Sorts `idx` and returns the permutation sign, or `None` on a repeated index.
pub fn sort_with_sign(idx: &[usize]) -> Option<(MultiIndex, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// `(I, J, K, sign)` with `dx^I ∧ dx^J = sign · dx^K`, for `|I| = p`, `|J| = q`.
pub fn wedge_table(p: usize, q: usize) -> &'static [(usize, usize, usize, i32)] {
    static TABLES: OnceLock<Vec<Vec<(usize, usize, usize, i32)>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let mut all = Vec::new();
        for p in 0..=4 {
            for q in 0..=4 {
                let mut t = Vec::new();
                if p + q <= 4 {
                    for (i, a) in multi_indices(p).iter().enumerate() {
                        for (j, b) in multi_indices(q).iter().enumerate() {
                            let joined: Vec<usize> = a.iter().chain(b).copied().collect();
                            if let Some((k, s)) = sort_with_sign(&joined) {
                                t.push((i, j, position(&k).expect("sorted subset"), s));
                            }
                        }
                    }
                }
                all.push(t);
            }
        }
        all
    });
    &tables[p * 5 + q]
}

/// Internal value space of a form field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Internal {
    Scalar,
    V,
    L2,
    L3,
    L4,
}

impl Internal {
    pub fn rank(self) -> usize {
        match self {
            Internal::Scalar => 0,
            Internal::V => 1,
            Internal::L2 => 2,
            Internal::L3 => 3,
            Internal::L4 => 4,
        }
    }

    pub fn from_rank(k: usize) -> Option<Self> {
        [Internal::Scalar, Internal::V, Internal::L2, Internal::L3, Internal::L4].get(k).copied()
    }

    pub fn dim(self) -> usize {
        binomial4(self.rank())
    }

    pub fn tag(self) -> &'static str {
        match self {
            Internal::Scalar => "scalar",
            Internal::V => "V",
            Internal::L2 => "L2V",
            Internal::L3 => "L3V",
            Internal::L4 => "L4V",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [Internal::Scalar, Internal::V, Internal::L2, Internal::L3, Internal::L4].into_iter().find(|i| i.tag() == tag)
    }
}

impl fmt::Display for Internal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Bilinear pairing of internal values, used alongside the spacetime wedge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InternalRule {
    /// One side is scalar; the other tag passes through.
    Scalar,
    /// `Λ^k V × Λ^l V → Λ^{k+l} V`.
    Exterior,
    /// `so(3,1)` commutator on `Λ²V`.
    Bracket,
    /// `so(3,1)` acting on `V` (left factor `Λ²V`, right factor `V`).
    Action,
}

/// Sparse table of `(a, b, c, coeff)` meaning `u_a ⋆ v_b = Σ coeff · w_c`.
pub type PairingTable = Vec<(usize, usize, usize, f64)>;

/// Output tag and pairing table of `rule` applied to `(left, right)`.
pub fn pairing(rule: InternalRule, left: Internal, right: Internal) -> Option<(Internal, PairingTable)> {
    match rule {
        InternalRule::Scalar => match (left, right) {
            (Internal::Scalar, other) => Some((other, (0..other.dim()).map(|b| (0, b, b, 1.0)).collect())),
            (other, Internal::Scalar) => Some((other, (0..other.dim()).map(|a| (a, 0, a, 1.0)).collect())),
            _ => None,
        },
        InternalRule::Exterior => {
            let out = Internal::from_rank(left.rank() + right.rank())?;
            let t = wedge_table(left.rank(), right.rank()).iter().map(|&(a, b, c, s)| (a, b, c, s as f64)).collect();
            Some((out, t))
        }
        InternalRule::Bracket => {
            (left == Internal::L2 && right == Internal::L2).then(|| (Internal::L2, so31().bracket.clone()))
        }
        InternalRule::Action => (left == Internal::L2 && right == Internal::V).then(|| (Internal::V, so31().action.clone())),
    }
}

/// Tables realising `Λ²V ≅ so(3,1)`: `e_a ∧ e_b ↦ J_ab`, acting on `V` by
/// `(J_ab)^c_d = δ^c_a η_bd − δ^c_b η_ad`.
pub struct So31Tables {
    /// `[e_A, e_B] = Σ c · e_C` on `Λ²V` basis.
    pub bracket: PairingTable,
    /// `ρ(e_A) e_b = Σ c · e_d`.
    pub action: PairingTable,
    /// `ρ(e_A)` as a 4×4 matrix `m[c][d]`.
    pub matrices: [[[f64; 4]; 4]; 6],
}

pub fn so31() -> &'static So31Tables {
    static T: OnceLock<So31Tables> = OnceLock::new();
    T.get_or_init(|| {
        let pairs = multi_indices(2);
        let delta = |x: usize, y: usize| i64::from(x == y);
        let mut matrices = [[[0.0; 4]; 4]; 6];
        let mut int_mats = [[[0i64; 4]; 4]; 6];
        for (k, ab) in pairs.iter().enumerate() {
            let (a, b) = (ab[0], ab[1]);
            for c in 0..4 {
                for d in 0..4 {
                    let v = delta(c, a) * eta(b, d) - delta(c, b) * eta(a, d);
                    int_mats[k][c][d] = v;
                    matrices[k][c][d] = v as f64;
                }
            }
        }
        let mut action = Vec::new();
        for (k, m) in int_mats.iter().enumerate() {
            for b in 0..4 {
                for (c, row) in m.iter().enumerate() {
                    if row[b] != 0 {
                        action.push((k, b, c, row[b] as f64));
                    }
                }
            }
        }
        // Λ² components of a matrix M^c_d: w^{cb} = M^c_d η^{db}, read on c < b.
        let to_l2 = |m: &[[i64; 4]; 4]| -> Vec<i64> {
            pairs.iter().map(|cb| m[cb[0]][cb[1]] * eta(cb[1], cb[1])).collect()
        };
        let mut bracket = Vec::new();
        for (i, x) in int_mats.iter().enumerate() {
            for (j, y) in int_mats.iter().enumerate() {
                let mut comm = [[0i64; 4]; 4];
                for r in 0..4 {
                    for c in 0..4 {
                        comm[r][c] = (0..4).map(|s| x[r][s] * y[s][c] - y[r][s] * x[s][c]).sum();
                    }
                }
                for (k, v) in to_l2(&comm).into_iter().enumerate() {
                    if v != 0 {
                        bracket.push((i, j, k, v as f64));
                    }
                }
            }
        }
        So31Tables { bracket, action, matrices }
    })
}
