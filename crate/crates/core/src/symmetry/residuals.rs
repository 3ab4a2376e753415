//! Symmetry and Killing residuals of a tetrad or metric along a Poincaré generator.

use rayon::prelude::*;

use super::element::PoincareElement;
use crate::forms::field::FormField;
use crate::forms::grid::Region;
use crate::forms::internal::Internal;
use crate::forms::tetrad::{Metric, SymmetricTensorField, Tetrad};
use crate::scalar::Real;

/// `X·e = L_{ξ_X} e − ρ_V(X_R) e` as a `V`-valued 1-form.
///
/// `(L_ξ e)^a_μ = ξ^ν ∂_ν e^a_μ + e^a_ν ∂_μ ξ^ν` with `∂_μ ξ^ν = (X_R)^ν_μ`,
/// and `(ρ_V(X_R) e)^a_μ = (X_R)^a_b e^b_μ`.
pub fn symmetry_residual<T: Real>(e: &Tetrad<T>, x: &PoincareElement<T>) -> FormField<T> {
    let grid = *e.grid();
    let xr = x.rotation();
    let f = e.form();
    f.map_nodes(1, Internal::V, |node, en, out| {
        let xi = x.vector_at(&grid.position(node));
        for mu in 0..4 {
            for a in 0..4 {
                let mut s = T::zero();
                for nu in 0..4 {
                    if xi[nu] != T::zero() {
                        s = s + xi[nu] * grid.partial(f.data(), 16, node, nu, mu * 4 + a);
                    }
                    s = s + en[nu * 4 + a] * xr[nu][mu];
                    s = s - xr[a][nu] * en[mu * 4 + nu];
                }
                out[mu * 4 + a] = s;
            }
        }
    })
}

/// `L_ξ g` for a symmetric 2-tensor field, with its max-norm over U.
///
/// `(L_ξ g)_{μν} = ξ^λ ∂_λ g_{μν} + g_{λν} ∂_μ ξ^λ + g_{μλ} ∂_ν ξ^λ`.
pub fn killing_residual<T: Real>(g: &Metric<T>, x: &PoincareElement<T>) -> (SymmetricTensorField<T>, T) {
    let grid = *g.grid();
    let xr = x.rotation();
    let mut data = vec![T::zero(); grid.node_count() * 16];
    data.par_chunks_mut(16).enumerate().for_each(|(node, out)| {
        let xi = x.vector_at(&grid.position(node));
        let gn = g.at(node);
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = T::zero();
                for l in 0..4 {
                    if xi[l] != T::zero() {
                        s = s + xi[l] * g.partial(node, l, mu, nu);
                    }
                    s = s + gn[l][nu] * xr[l][mu] + gn[mu][l] * xr[l][nu];
                }
                out[mu * 4 + nu] = s;
            }
        }
    });
    let field = Metric::from_data(grid, data).expect("sized to the grid");
    let norm = field.max_norm(Region::U);
    (field, norm)
}

/// `η_ab ((X·e)^a_μ e^b_ν + e^a_μ (X·e)^b_ν)`: the metric variation induced by a residual.
///
/// Equals `L_ξ g_e` in the continuum because `ρ_V(X_R)` preserves `η`.
pub fn induced_metric_variation<T: Real>(e: &Tetrad<T>, residual: &FormField<T>) -> SymmetricTensorField<T> {
    let grid = *e.grid();
    let mut data = vec![T::zero(); grid.node_count() * 16];
    data.par_chunks_mut(16).enumerate().for_each(|(node, out)| {
        let m = e.matrix(node);
        let r = residual.at(node);
        for mu in 0..4 {
            for nu in 0..4 {
                out[mu * 4 + nu] = (0..4).fold(T::zero(), |s, a| {
                    let eta = if a == 0 { -T::one() } else { T::one() };
                    s + eta * (r[mu * 4 + a] * m[a][nu] + m[a][mu] * r[nu * 4 + a])
                });
            }
        }
    });
    Metric::from_data(grid, data).expect("sized to the grid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poincare::NAMED_GENERATORS;
    use crate::forms::grid::{Grid4, RadiusMode};
    use crate::forms::tetrad::metric_from_tetrad;

    #[test]
    fn minkowski_is_invariant_under_all_generators() {
        let g = Grid4::new(3.0f64, 9, 1.0, RadiusMode::FourD).unwrap();
        let e = Tetrad::identity(g);
        let metric = metric_from_tetrad(&e);
        for name in NAMED_GENERATORS {
            let x = PoincareElement::named(name).unwrap();
            assert!(symmetry_residual(&e, &x).max_norm(Region::U) < 1e-12, "{name}");
            assert!(killing_residual(&metric, &x).1 < 1e-12, "{name}");
        }
    }
}
