//! Palatini–Cartan action, its field equations, and the cutoff-localised
//! equivariant extension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::field::FormField;
use crate::forms::grid::{Grid4, Region};
use crate::forms::internal::{Internal, InternalRule};
use crate::forms::ops::{cov_d, curvature, integrate, trace4, wedge, Integral};
use crate::forms::tetrad::{Connection, Tetrad};
use crate::scalar::Real;
use crate::symmetry::{symmetry_residual, CutoffFunction, PoincareElement};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PcConfig<T> {
    pub lambda: T,
    pub grid: Grid4<T>,
}

/// A field together with its max-norm over U.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<T> {
    pub field: FormField<T>,
    pub norm: T,
}

impl<T: Real> Residual<T> {
    fn over_u(field: FormField<T>) -> Self {
        let norm = field.max_norm(Region::U);
        Self { field, norm }
    }
}

fn check_grids<T: Real>(e: &Tetrad<T>, omega: &Connection<T>, cfg: &PcConfig<T>) -> Result<()> {
    if e.grid() != &cfg.grid || omega.form().grid() != &cfg.grid {
        return Err(Error::InvalidGrid("tetrad, connection and configuration disagree on the grid".into()));
    }
    Ok(())
}

/// `trace4(½ e∧e∧F_ω + (Λ/24) e∧e∧e∧e)` as a scalar 4-form.
pub fn lagrangian_density<T: Real>(e: &Tetrad<T>, omega: &Connection<T>, cfg: &PcConfig<T>) -> Result<FormField<T>> {
    check_grids(e, omega, cfg)?;
    let ef = e.form();
    let f = curvature(omega.form())?;
    let ee = wedge(ef, ef, InternalRule::Exterior)?;
    let eef = wedge(&ee, &f, InternalRule::Exterior)?.scale(T::lit(0.5));
    let e4 = wedge(&ee, &ee, InternalRule::Exterior)?.scale(cfg.lambda / T::lit(24.0));
    trace4(&eef.add(&e4)?)
}

/// `S_PC = ∫ trace4(½ e∧e∧F_ω + (Λ/24) e⁴)` over the full box.
pub fn action_pc<T: Real>(e: &Tetrad<T>, omega: &Connection<T>, cfg: &PcConfig<T>) -> Result<Integral> {
    action_pc_over(e, omega, cfg, Region::Box)
}

pub fn action_pc_over<T: Real>(e: &Tetrad<T>, omega: &Connection<T>, cfg: &PcConfig<T>, region: Region) -> Result<Integral> {
    integrate(&lagrangian_density(e, omega, cfg)?, region)
}

/// `d_ω e`, equivalent to `e ∧ d_ω e = 0` because `e` is invertible.
pub fn torsion_residual<T: Real>(e: &Tetrad<T>, omega: &Connection<T>) -> Result<Residual<T>> {
    Ok(Residual::over_u(cov_d(omega.form(), e.form())?))
}

/// `e ∧ F_ω + (Λ/6) e∧e∧e`.
pub fn einstein_residual<T: Real>(e: &Tetrad<T>, omega: &Connection<T>, cfg: &PcConfig<T>) -> Result<Residual<T>> {
    check_grids(e, omega, cfg)?;
    let ef = e.form();
    let ef_f = wedge(ef, &curvature(omega.form())?, InternalRule::Exterior)?;
    let ee = wedge(ef, ef, InternalRule::Exterior)?;
    let eee = wedge(&ee, ef, InternalRule::Exterior)?.scale(cfg.lambda / T::lit(6.0));
    Ok(Residual::over_u(ef_f.add(&eee)?))
}

/// Coefficients of the Gaussian test form on `dx^{01}, dx^{02}, dx^{03}, dx^{12}, dx^{13}, dx^{23}`.
pub const DEFAULT_TEST_COEFFICIENTS: [f64; 6] = [1.0, 0.5, -0.25, 0.75, -0.5, 0.3];

/// Shape of a Gaussian test 2-form, as read from a scenario file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TestFormSpec {
    /// Width relative to the box half-width.
    pub sigma_fraction: f64,
    pub coefficients: [f64; 6],
}

impl Default for TestFormSpec {
    fn default() -> Self {
        Self { sigma_fraction: 1.0 / 3.0, coefficients: DEFAULT_TEST_COEFFICIENTS }
    }
}

/// A scalar test 2-form `α`, extended by zero off U, paired with a generator `X`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantTestForm<T> {
    alpha: FormField<T>,
    x: PoincareElement<T>,
}

impl<T: Real> EquivariantTestForm<T> {
    /// Rejects `α` unless it is a scalar 2-form vanishing at every node outside U.
    pub fn new(alpha: FormField<T>, x: PoincareElement<T>) -> Result<Self> {
        alpha.expect_type(2, Internal::Scalar, "test form α")?;
        let g = alpha.grid();
        if let Some(node) = (0..g.node_count()).find(|&n| !g.in_u(n) && alpha.at(n).iter().any(|v| *v != T::zero())) {
            return Err(Error::Domain(format!("test form is nonzero at node {node}, outside U")));
        }
        Ok(Self { alpha, x })
    }

    /// `α = G(x) Σ c_I dx^I` with `G = exp(−|x|₄²/(2σ²))`, zero outside U.
    pub fn gaussian(grid: Grid4<T>, x: PoincareElement<T>, spec: &TestFormSpec) -> Result<Self> {
        let sigma = T::lit(spec.sigma_fraction) * grid.half_width();
        if !(sigma > T::zero()) {
            return Err(Error::Config(format!("test form width {sigma} must be positive")));
        }
        let two_s2 = T::lit(2.0) * sigma * sigma;
        let alpha = FormField::from_fn(grid, 2, Internal::Scalar, |p, out| {
            if grid.radius(&p) <= grid.inner_radius() {
                return;
            }
            let g = (-(p.iter().fold(T::zero(), |s, v| s + *v * *v)) / two_s2).exp();
            for (o, c) in out.iter_mut().zip(&spec.coefficients) {
                *o = g * T::lit(*c);
            }
        });
        Self::new(alpha, x)
    }

    pub fn alpha(&self) -> &FormField<T> {
        &self.alpha
    }

    pub fn generator(&self) -> &PoincareElement<T> {
        &self.x
    }

    /// `Υα ⊗ X_R` as a `Λ²V`-valued 2-form.
    pub fn localized(&self, cutoff: &CutoffFunction<T>) -> FormField<T> {
        let g = *self.alpha.grid();
        let w = self.x.rotation_l2();
        self.alpha.map_nodes(2, Internal::L2, |node, a, out| {
            let u = cutoff.eval(&g.position(node), g.radius_mode());
            for (k, ak) in a.iter().enumerate() {
                for (c, wc) in w.iter().enumerate() {
                    out[k * 6 + c] = u * *ak * *wc;
                }
            }
        })
    }
}

/// `(X·e) ∧ (Υα ⊗ X_R)`, a `Λ³V`-valued 3-form, with its max-norm over U.
pub fn extra_eom_term<T: Real>(e: &Tetrad<T>, t: &EquivariantTestForm<T>, cutoff: &CutoffFunction<T>) -> Result<Residual<T>> {
    let xe = symmetry_residual(e, t.generator());
    Ok(Residual::over_u(wedge(&xe, &t.localized(cutoff), InternalRule::Exterior)?))
}

/// `S^g = S_PC + ½ ∫ trace4((X·e) ∧ (X·e) ∧ (Υα ⊗ X_R))`.
pub fn equivariant_action<T: Real>(
    e: &Tetrad<T>,
    omega: &Connection<T>,
    t: &EquivariantTestForm<T>,
    cutoff: &CutoffFunction<T>,
    cfg: &PcConfig<T>,
) -> Result<Integral> {
    let base = lagrangian_density(e, omega, cfg)?;
    let xe = symmetry_residual(e, t.generator());
    let xexe = wedge(&xe, &xe, InternalRule::Exterior)?;
    let extra = trace4(&wedge(&xexe, &t.localized(cutoff), InternalRule::Exterior)?)?.scale(T::lit(0.5));
    integrate(&base.add(&extra)?, Region::Box)
}
