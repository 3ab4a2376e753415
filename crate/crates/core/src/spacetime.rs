//! Closed-form test geometries: Minkowski and Schwarzschild in isotropic coordinates.
//!
//! Isotropic Schwarzschild has `e⁰ = A dt`, `eⁱ = B dxⁱ` with
//! `A = (1 − M/2ρ)/(1 + M/2ρ)` and `B = (1 + M/2ρ)²`. The tetrad degenerates
//! at `ρ = M/2`, so inside a core radius `r_c` the radius is replaced by the
//! quartic blend `ρ_c(ρ) = 3r_c/8 + 3ρ²/(4r_c) − ρ⁴/(8r_c³)`, which meets `ρ`
//! with matching first and second derivatives at `r_c` and is bounded below
//! by `3r_c/8`. Outside the core the geometry is exact vacuum.

use crate::error::{Error, Result};
use crate::forms::grid::Grid4;
use crate::forms::tetrad::{Connection, Mat4, Metric, Tetrad};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropicSchwarzschild<T> {
    mass: T,
    core_radius: T,
}

impl<T: Real> IsotropicSchwarzschild<T> {
    /// Geometry with an explicit core radius; requires `3r_c/8 > M/2`.
    pub fn with_core(mass: T, core_radius: T) -> Result<Self> {
        if mass < T::zero() || !mass.is_finite() {
            return Err(Error::Domain(format!("mass {mass} must be finite and non-negative")));
        }
        if !(T::lit(0.375) * core_radius > T::lit(0.5) * mass) {
            return Err(Error::Domain(format!(
                "core radius {core_radius} too small for M = {mass} (need 3r_c/8 > M/2)"
            )));
        }
        Ok(Self { mass, core_radius })
    }

    /// Core radius `min(r, max(r/2, 2M))` for an excluded ball of radius `r`,
    /// so the core stays inside the ball and the geometry on U is exact.
    pub fn for_inner_radius(mass: T, r: T) -> Result<Self> {
        let rc = r.min((T::lit(0.5) * r).max(T::lit(2.0) * mass));
        if mass == T::zero() {
            return Self::with_core(mass, T::one());
        }
        Self::with_core(mass, rc).map_err(|_| {
            Error::Domain(format!("inner radius {r} leaves no regular core for M = {mass} (need r > 4M/3)"))
        })
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn core_radius(&self) -> T {
        self.core_radius
    }

    /// Blended radius and `ρ_c'(ρ)/ρ` (finite at the origin).
    fn blended(&self, rho: T) -> (T, T) {
        let rc = self.core_radius;
        if rho >= rc {
            return (rho, T::one() / rho);
        }
        let r2 = rho * rho;
        let value = T::lit(0.375) * rc + T::lit(0.75) * r2 / rc - r2 * r2 / (T::lit(8.0) * rc.powi(3));
        let over_rho = T::lit(1.5) / rc - r2 / (T::lit(2.0) * rc.powi(3));
        (value, over_rho)
    }

    fn spatial_radius(x: &[T; 4]) -> T {
        (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt()
    }

    /// `(A, B)` at a point.
    pub fn lapse_and_conformal(&self, x: &[T; 4]) -> (T, T) {
        let (rho, _) = self.blended(Self::spatial_radius(x));
        let m = self.mass / (T::lit(2.0) * rho);
        ((T::one() - m) / (T::one() + m), (T::one() + m) * (T::one() + m))
    }

    /// `(∂_i A, ∂_i B)` for `i = 1..3` (index 0 unused, zero).
    pub fn gradients(&self, x: &[T; 4]) -> ([T; 4], [T; 4]) {
        let (rho, over_rho) = self.blended(Self::spatial_radius(x));
        let m = self.mass / (T::lit(2.0) * rho);
        // dm/dρ_c = −m/ρ_c
        let da = T::lit(2.0) * m / ((T::one() + m) * (T::one() + m) * rho);
        let db = -T::lit(2.0) * (T::one() + m) * m / rho;
        let mut ga = [T::zero(); 4];
        let mut gb = [T::zero(); 4];
        for i in 1..4 {
            ga[i] = da * over_rho * x[i];
            gb[i] = db * over_rho * x[i];
        }
        (ga, gb)
    }

    pub fn tetrad_matrix(&self, x: &[T; 4]) -> Mat4<T> {
        let (a, b) = self.lapse_and_conformal(x);
        let mut m = [[T::zero(); 4]; 4];
        m[0][0] = a;
        for (i, row) in m.iter_mut().enumerate().skip(1) {
            row[i] = b;
        }
        m
    }

    pub fn tetrad(&self, grid: Grid4<T>) -> Result<Tetrad<T>> {
        Tetrad::from_fn(grid, |x| self.tetrad_matrix(&x))
    }

    /// `g = −A² dt² + B² δ_ij dxⁱ dxʲ`.
    pub fn metric_matrix(&self, x: &[T; 4]) -> Mat4<T> {
        let (a, b) = self.lapse_and_conformal(x);
        let mut m = [[T::zero(); 4]; 4];
        m[0][0] = -a * a;
        for (i, row) in m.iter_mut().enumerate().skip(1) {
            row[i] = b * b;
        }
        m
    }

    pub fn metric(&self, grid: Grid4<T>) -> Metric<T> {
        Metric::from_fn(grid, |x| self.metric_matrix(&x))
    }

    /// Closed-form Levi–Civita connection:
    /// `ω^{0i} = (∂_i A / B) dt`, `ω^{ij} = (∂_j B dxⁱ − ∂_i B dxʲ) / B`.
    pub fn connection(&self, grid: Grid4<T>) -> Connection<T> {
        Connection::from_fn(grid, |x| {
            let (_, b) = self.lapse_and_conformal(&x);
            let (ga, gb) = self.gradients(&x);
            let mut w = [[T::zero(); 6]; 4];
            // pair slots: 01 02 03 12 13 23
            for i in 1..4 {
                w[0][i - 1] = ga[i] / b;
            }
            for (slot, (i, j)) in [(3, (1, 2)), (4, (1, 3)), (5, (2, 3))] {
                w[i][slot] = gb[j] / b;
                w[j][slot] = -gb[i] / b;
            }
            w
        })
    }

    /// `R_{abcd}R^{abcd} = 48M²/ρ̄⁶` with `ρ̄ = ρB` the areal radius (exact outside the core).
    pub fn kretschmann(&self, x: &[T; 4]) -> T {
        let (rho, _) = self.blended(Self::spatial_radius(x));
        let (_, b) = self.lapse_and_conformal(x);
        let areal = rho * b;
        T::lit(48.0) * self.mass * self.mass / areal.powi(6)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blend_is_c2_at_core_radius() {
        let s = IsotropicSchwarzschild::with_core(1.0f64, 2.0).unwrap();
        let eps = 1e-6;
        let (inside, d_in) = s.blended(2.0 - eps);
        let (outside, d_out) = s.blended(2.0 + eps);
        assert!((inside - outside).abs() < 3e-6);
        assert!((d_in * (2.0 - eps) - d_out * (2.0 + eps)).abs() < 1e-5);
        // second derivative of the blend vanishes at r_c: 3/(2r_c) − 3r_c²/(2r_c³) = 0
        let second = |r: f64| 1.5 / 2.0 - 1.5 * r * r / 8.0;
        assert!(second(2.0).abs() < 1e-15);
    }

    #[test]
    fn gradients_match_central_differences() {
        let s = IsotropicSchwarzschild::with_core(1.0f64, 2.0).unwrap();
        for x in [[0.0, 3.0, -1.0, 2.0], [0.0, 0.5, 0.2, -0.4]] {
            let (ga, gb) = s.gradients(&x);
            for i in 1..4 {
                let h = 1e-6;
                let mut xp = x;
                let mut xm = x;
                xp[i] += h;
                xm[i] -= h;
                let (ap, bp) = s.lapse_and_conformal(&xp);
                let (am, bm) = s.lapse_and_conformal(&xm);
                assert!((ga[i] - (ap - am) / (2.0 * h)).abs() < 1e-7);
                assert!((gb[i] - (bp - bm) / (2.0 * h)).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn core_requirements() {
        assert!(IsotropicSchwarzschild::with_core(1.0f64, 1.0).is_err());
        let s = IsotropicSchwarzschild::for_inner_radius(1.0f64, 4.0).unwrap();
        assert_eq!(s.core_radius(), 2.0);
        let s = IsotropicSchwarzschild::for_inner_radius(2.0f64, 4.0).unwrap();
        assert_eq!(s.core_radius(), 4.0);
        assert!(IsotropicSchwarzschild::for_inner_radius(2.0f64, 2.0).is_err());
        let flat = IsotropicSchwarzschild::for_inner_radius(0.0f64, 4.0).unwrap();
        assert_eq!(flat.lapse_and_conformal(&[0.0, 1.0, 0.0, 0.0]), (1.0, 1.0));
    }
}
