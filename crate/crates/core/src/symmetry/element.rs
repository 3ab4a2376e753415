//! Poincaré elements and the vector fields they generate on spacetime.

use rayon::prelude::*;

use crate::algebra::poincare::{self, rotation_pair, POINCARE_LABELS};
use crate::error::{Error, Result};
use crate::forms::grid::Grid4;
use crate::forms::internal::multi_indices;
use crate::forms::internal::so31;
use crate::forms::tetrad::{eta_f, Mat4};
use crate::scalar::Real;

/// `X = X_T + X_R` with `X_T ∈ ℝ^{3,1}` and `X_R ∈ so(3,1)` as a matrix `(X_R)^μ_ν`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoincareElement<T> {
    translation: [T; 4],
    rotation: Mat4<T>,
}

impl<T: Real> PoincareElement<T> {
    /// Rejects `X_R` unless `X_Rᵀη + ηX_R = 0` holds exactly.
    pub fn new(translation: [T; 4], rotation: Mat4<T>) -> Result<Self> {
        for m in 0..4 {
            for n in 0..4 {
                let s = rotation[n][m] * eta_f::<T>(n, n) + eta_f::<T>(m, m) * rotation[m][n];
                if s != T::zero() {
                    return Err(Error::Config(format!("X_R is not η-antisymmetric at ({m}, {n})")));
                }
            }
        }
        Ok(Self { translation, rotation })
    }

    /// From coefficients on `P0..P3, J01, J02, J03, J12, J13, J23`.
    pub fn from_coefficients(c: &[T; 10]) -> Self {
        let mut rotation = [[T::zero(); 4]; 4];
        for k in 0..6 {
            let m = &so31().matrices[k];
            for (row, mrow) in rotation.iter_mut().zip(m) {
                for (r, v) in row.iter_mut().zip(mrow) {
                    *r = *r + c[4 + k] * T::lit(*v);
                }
            }
        }
        Self { translation: [c[0], c[1], c[2], c[3]], rotation }
    }

    /// Inverse of [`Self::from_coefficients`]: `c^{ab} = (X_R)^a_d η^{db}`.
    pub fn coefficients(&self) -> [T; 10] {
        let mut c = [T::zero(); 10];
        c[..4].copy_from_slice(&self.translation);
        for (k, ab) in multi_indices(2).iter().enumerate() {
            c[4 + k] = self.rotation[ab[0]][ab[1]] * eta_f::<T>(ab[1], ab[1]);
        }
        c
    }

    /// Named generator: `P0..P3`, `L1..L3`, `K1..K3`, or `J01..J23`.
    pub fn named(name: &str) -> Result<Self> {
        let v = poincare::generator::<i64>(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        let mut c = [T::zero(); 10];
        for (ci, vi) in c.iter_mut().zip(&v) {
            *ci = T::lit(*vi as f64);
        }
        Ok(Self::from_coefficients(&c))
    }

    pub fn translation(&self) -> [T; 4] {
        self.translation
    }

    pub fn rotation(&self) -> Mat4<T> {
        self.rotation
    }

    /// `Λ²V` components of `X_R` (pairs `a < b`).
    pub fn rotation_l2(&self) -> [T; 6] {
        let c = self.coefficients();
        [c[4], c[5], c[6], c[7], c[8], c[9]]
    }

    /// Frobenius norm of `X_R`.
    pub fn rotation_norm(&self) -> T {
        self.rotation.iter().flatten().fold(T::zero(), |s, v| s + *v * *v).sqrt()
    }

    /// `ξ^μ(x) = X_T^μ + (X_R)^μ_ν x^ν`.
    pub fn vector_at(&self, x: &[T; 4]) -> [T; 4] {
        let mut v = self.translation;
        for (mu, vm) in v.iter_mut().enumerate() {
            for nu in 0..4 {
                *vm = *vm + self.rotation[mu][nu] * x[nu];
            }
        }
        v
    }

    pub fn add(&self, other: &Self, scale: T) -> Self {
        let mut out = *self;
        for mu in 0..4 {
            out.translation[mu] = out.translation[mu] + scale * other.translation[mu];
            for nu in 0..4 {
                out.rotation[mu][nu] = out.rotation[mu][nu] + scale * other.rotation[mu][nu];
            }
        }
        out
    }
}

/// Labels of the ten basis coefficients of [`PoincareElement::coefficients`].
pub fn coefficient_labels() -> [&'static str; 10] {
    POINCARE_LABELS
}

/// Stored `(a, b)` of the `k`-th rotation coefficient.
pub fn rotation_slot(k: usize) -> (usize, usize) {
    rotation_pair(k)
}

/// Vector field sampled on the grid, four components per node.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField<T> {
    grid: Grid4<T>,
    data: Vec<T>,
}

impl<T: Real> VectorField<T> {
    pub fn from_fn(grid: Grid4<T>, f: impl Fn([T; 4]) -> [T; 4] + Sync) -> Self {
        let mut data = vec![T::zero(); grid.node_count() * 4];
        data.par_chunks_mut(4).enumerate().for_each(|(node, o)| o.copy_from_slice(&f(grid.position(node))));
        Self { grid, data }
    }

    pub fn grid(&self) -> &Grid4<T> {
        &self.grid
    }

    pub fn at(&self, node: usize) -> [T; 4] {
        let c = &self.data[node * 4..node * 4 + 4];
        [c[0], c[1], c[2], c[3]]
    }

    pub fn partial(&self, node: usize, mu: usize, comp: usize) -> T {
        self.grid.partial(&self.data, 4, node, mu, comp)
    }

    /// Largest absolute component over nodes at least `layers` from the boundary.
    pub fn max_norm_interior(&self, layers: usize) -> T {
        (0..self.grid.node_count())
            .filter(|&n| self.grid.is_interior(n, layers))
            .flat_map(|n| self.at(n))
            .fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { grid: self.grid, data: self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect() }
    }

    pub fn scale(&self, c: T) -> Self {
        Self { grid: self.grid, data: self.data.iter().map(|a| c * *a).collect() }
    }
}

/// `ξ_X` sampled on the grid.
pub fn generated_vector_field<T: Real>(grid: Grid4<T>, x: &PoincareElement<T>) -> VectorField<T> {
    VectorField::from_fn(grid, |p| x.vector_at(&p))
}

/// `[u, v]^μ = u^ν ∂_ν v^μ − v^ν ∂_ν u^μ` by finite differences.
pub fn vector_field_bracket<T: Real>(u: &VectorField<T>, v: &VectorField<T>) -> VectorField<T> {
    let grid = u.grid;
    let mut data = vec![T::zero(); grid.node_count() * 4];
    data.par_chunks_mut(4).enumerate().for_each(|(node, o)| {
        let (un, vn) = (u.at(node), v.at(node));
        for (mu, om) in o.iter_mut().enumerate() {
            let mut s = T::zero();
            for nu in 0..4 {
                s = s + un[nu] * v.partial(node, nu, mu) - vn[nu] * u.partial(node, nu, mu);
            }
            *om = s;
        }
    });
    VectorField { grid, data }
}
