//! Wedge products, the exterior derivative, the forms-dgla bracket and the
//! operations built from them.

use rayon::prelude::*;
use serde::Serialize;

use super::field::FormField;
use super::grid::Region;
use super::internal::{multi_indices, pairing, position, wedge_table, Internal, InternalRule};
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

/// `(index into a, index into b, index into out, coefficient)` for one node.
type NodeTable = Vec<(usize, usize, usize, f64)>;

fn wedge_node_table(p: usize, q: usize, da: usize, db: usize, dout: usize, internal: &[(usize, usize, usize, f64)]) -> NodeTable {
    let mut t = Vec::new();
    for &(i, j, k, s) in wedge_table(p, q) {
        for &(x, y, z, c) in internal {
            t.push((i * da + x, j * db + y, k * dout + z, s as f64 * c));
        }
    }
    t
}

/// Spacetime wedge combined with an internal pairing.
///
/// For `a = Σ a_{I,A} e_A ⊗ dx^I` and `b = Σ b_{J,B} e_B ⊗ dx^J` the result is
/// `Σ a_{I,A} b_{J,B} (e_A ⋆ e_B) ⊗ (dx^I ∧ dx^J)`; no extra sign is attached
/// to moving internal factors past spacetime ones.
pub fn wedge<T: Real>(a: &FormField<T>, b: &FormField<T>, rule: InternalRule) -> Result<FormField<T>> {
    a.same_grid(b)?;
    let (p, q) = (a.degree(), b.degree());
    if p + q > 4 {
        return Err(Error::FieldType(format!("wedge of a {p}-form and a {q}-form exceeds degree 4")));
    }
    let (out_tag, internal) = pairing(rule, a.internal(), b.internal()).ok_or_else(|| {
        Error::FieldType(format!("rule {rule:?} does not pair {} with {}", a.internal(), b.internal()))
    })?;
    let table = wedge_node_table(p, q, a.internal().dim(), b.internal().dim(), out_tag.dim(), &internal);
    let table: Vec<(usize, usize, usize, T)> = table.into_iter().map(|(i, j, k, c)| (i, j, k, T::lit(c))).collect();
    Ok(a.map_nodes(p + q, out_tag, |node, an, out| {
        let bn = b.at(node);
        for &(i, j, k, c) in &table {
            out[k] = out[k] + c * an[i] * bn[j];
        }
    }))
}

/// Partial derivative of component `comp` along axis `mu` at `node`.
#[inline]
pub fn partial<T: Real>(f: &FormField<T>, node: usize, mu: usize, comp: usize) -> T {
    f.grid().partial(f.data(), f.stride(), node, mu, comp)
}

/// `(da)_{μ₀..μ_p} = Σ_k (−1)^k ∂_{μ_k} a_{μ₀..μ̂_k..μ_p}`.
pub fn ext_d<T: Real>(a: &FormField<T>) -> Result<FormField<T>> {
    let p = a.degree();
    if p >= 4 {
        return Err(Error::FieldType("exterior derivative of a 4-form".into()));
    }
    let dim = a.internal().dim();
    // (output multi-index, axis, input multi-index, sign)
    let mut terms = Vec::new();
    for (k_out, idx) in multi_indices(p + 1).iter().enumerate() {
        for (k, &mu) in idx.iter().enumerate() {
            let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != mu).collect();
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            terms.push((k_out, mu, position(&rest).expect("subset"), sign));
        }
    }
    let mut out = FormField::zeros(*a.grid(), p + 1, a.internal());
    let s_out = out.stride();
    out.data_mut().par_chunks_mut(s_out).enumerate().for_each(|(node, o)| {
        for &(k_out, mu, k_in, sign) in &terms {
            for c in 0..dim {
                let v = partial(a, node, mu, k_in * dim + c);
                o[k_out * dim + c] = o[k_out * dim + c] + sign * v;
            }
        }
    });
    Ok(out)
}

/// `[a, b]`: wedge on spacetime, `so(3,1)` commutator on `Λ²V`.
pub fn form_bracket<T: Real>(a: &FormField<T>, b: &FormField<T>) -> Result<FormField<T>> {
    a.expect_type(a.degree(), Internal::L2, "bracket operand")?;
    b.expect_type(b.degree(), Internal::L2, "bracket operand")?;
    wedge(a, b, InternalRule::Bracket)
}

/// `d_ω a = da + ρ(ω) ∧ a` for `a` valued in `V` or `Λ²V`.
pub fn cov_d<T: Real>(omega: &FormField<T>, a: &FormField<T>) -> Result<FormField<T>> {
    omega.expect_type(1, Internal::L2, "connection")?;
    let rule = match a.internal() {
        Internal::V => InternalRule::Action,
        Internal::L2 => InternalRule::Bracket,
        other => return Err(Error::FieldType(format!("covariant derivative of a {other}-valued form"))),
    };
    ext_d(a)?.add(&wedge(omega, a, rule)?)
}

/// `F = dω + ½[ω, ω]`.
pub fn curvature<T: Real>(omega: &FormField<T>) -> Result<FormField<T>> {
    omega.expect_type(1, Internal::L2, "connection")?;
    ext_d(omega)?.add(&form_bracket(omega, omega)?.scale(T::lit(0.5)))
}

/// Contraction of a `Λ⁴V`-valued 4-form with `ε_abcd`, `ε_0123 = +1`.
pub fn trace4<T: Real>(a: &FormField<T>) -> Result<FormField<T>> {
    a.expect_type(4, Internal::L4, "trace argument")?;
    FormField::from_data(*a.grid(), 4, Internal::Scalar, a.data().to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    pub nodes: usize,
    /// Set when the region contains no nodes; `value` is then 0.
    pub empty_region: bool,
}

/// Trapezoid-rule integral of a scalar 4-form over `region`.
///
/// Each `x⁰`-slab is summed in node order with compensated summation, then
/// the slab sums are combined in slab order, so the result does not depend
/// on how the work is scheduled.
pub fn integrate<T: Real>(a: &FormField<T>, region: Region) -> Result<Integral> {
    a.expect_type(4, Internal::Scalar, "integrand")?;
    let g = a.grid();
    let slab = g.stride(0);
    let partials: Vec<(f64, usize)> = (0..g.n())
        .into_par_iter()
        .map(|t| {
            let mut acc = CompensatedSum::<f64>::default();
            let mut count = 0;
            for node in t * slab..(t + 1) * slab {
                if g.in_region(node, region) {
                    acc.add((g.quadrature_weight(node) * a.data()[node]).as_f64());
                    count += 1;
                }
            }
            (acc.value(), count)
        })
        .collect();
    let value: CompensatedSum<f64> = partials.iter().map(|p| p.0).collect();
    let nodes = partials.iter().map(|p| p.1).sum();
    Ok(Integral { value: value.value(), nodes, empty_region: nodes == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::grid::{Grid4, RadiusMode};

    fn grid(n: usize) -> Grid4<f64> {
        Grid4::new(1.0, n, 0.0, RadiusMode::FourD).unwrap()
    }

    fn dx(g: Grid4<f64>, mu: usize) -> FormField<f64> {
        FormField::from_fn(g, 1, Internal::Scalar, |_, o| o[mu] = 1.0)
    }

    #[test]
    fn wedge_of_coordinate_differentials() {
        let g = grid(5);
        let w = wedge(&dx(g, 0), &dx(g, 1), InternalRule::Scalar).unwrap();
        assert!(w.data().chunks(6).all(|c| c == [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        let w = wedge(&dx(g, 1), &dx(g, 0), InternalRule::Scalar).unwrap();
        assert!(w.data().chunks(6).all(|c| c[0] == -1.0));
    }

    #[test]
    fn incompatible_tags_rejected() {
        let g = grid(5);
        let v = FormField::<f64>::zeros(g, 1, Internal::V);
        assert!(matches!(wedge(&v, &v, InternalRule::Bracket), Err(Error::FieldType(_))));
        let three = FormField::<f64>::zeros(g, 3, Internal::Scalar);
        assert!(wedge(&three, &three, InternalRule::Scalar).is_err());
    }

    #[test]
    fn d_of_linear_coefficient() {
        let g = grid(7);
        let a = FormField::from_fn(g, 1, Internal::Scalar, |x, o| o[1] = x[0]);
        let da = ext_d(&a).unwrap();
        for node in 0..g.node_count() {
            let c = da.at(node);
            assert!((c[0] - 1.0).abs() < 1e-13);
            assert!(c[1..].iter().all(|v| v.abs() < 1e-13));
        }
    }

    #[test]
    fn trace_and_integral_of_constant() {
        let g = Grid4::new(2.0, 9, 0.0, RadiusMode::FourD).unwrap();
        let one = FormField::from_fn(g, 4, Internal::L4, |_, o| o[0] = 1.0);
        let s = integrate(&trace4(&one).unwrap(), Region::Box).unwrap();
        assert!((s.value - 256.0).abs() < 1e-10);
        assert_eq!(s.nodes, g.node_count());
    }

    #[test]
    fn empty_region_is_flagged() {
        let g = Grid4::new(1.0, 5, 10.0, RadiusMode::FourD).unwrap();
        let one = FormField::from_fn(g, 4, Internal::Scalar, |_, o| o[0] = 1.0);
        let s = integrate(&one, Region::U).unwrap();
        assert!(s.empty_region);
        assert_eq!(s.value, 0.0);
    }
}
