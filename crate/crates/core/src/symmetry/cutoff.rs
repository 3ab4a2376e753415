use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::grid::{Grid4, RadiusMode};
use crate::scalar::Real;

/// `Υ(ρ)`: 0 for `ρ ≤ r`, 1 for `ρ ≥ R`, quintic smoothstep `s³(10 − 15s + 6s²)` between.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutoffFunction<T> {
    r: T,
    big_r: T,
}

impl<T: Real> CutoffFunction<T> {
    pub fn new(r: T, big_r: T) -> Result<Self> {
        if !(r > T::zero()) || !(big_r > r) || !big_r.is_finite() {
            return Err(Error::Config(format!("cutoff radii need 0 < r < R, got r = {r}, R = {big_r}")));
        }
        Ok(Self { r, big_r })
    }

    pub fn inner(&self) -> T {
        self.r
    }

    pub fn outer(&self) -> T {
        self.big_r
    }

    pub fn profile(&self, rho: T) -> T {
        if rho <= self.r {
            return T::zero();
        }
        if rho >= self.big_r {
            return T::one();
        }
        let s = (rho - self.r) / (self.big_r - self.r);
        s * s * s * (T::lit(10.0) - T::lit(15.0) * s + T::lit(6.0) * s * s)
    }

    /// `Υ(x)` with `ρ` measured according to `mode`.
    pub fn eval(&self, x: &[T; 4], mode: RadiusMode) -> T {
        let spatial = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        let rho = match mode {
            RadiusMode::FourD => (x[0] * x[0] + spatial).sqrt(),
            RadiusMode::Spatial => spatial.sqrt(),
        };
        self.profile(rho)
    }

    /// `Υ` at every node of `grid`, using the grid's radius mode.
    pub fn sample(&self, grid: &Grid4<T>) -> Vec<T> {
        (0..grid.node_count()).map(|n| self.eval(&grid.position(n), grid.radius_mode())).collect()
    }
}
