//! Uniform Cartesian grid on the box `[-L, L]^4` and its finite-difference stencils.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Number of outer box layers excluded from residual norms.
pub const BOUNDARY_LAYERS: usize = 2;

/// Which radius defines the excluded ball around the origin.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusMode {
    /// `|x|₄ = sqrt(t² + x² + y² + z²)`
    #[default]
    #[serde(rename = "4d")]
    FourD,
    /// `|x|₃ = sqrt(x² + y² + z²)`, for static configurations.
    Spatial,
}

impl std::str::FromStr for RadiusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "4d" | "4D" => Ok(Self::FourD),
            "spatial" => Ok(Self::Spatial),
            other => Err(Error::Config(format!("unknown radius mode `{other}` (expected 4d or spatial)"))),
        }
    }
}

impl std::fmt::Display for RadiusMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::FourD => "4d",
            Self::Spatial => "spatial",
        })
    }
}

/// Integration or norm region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Box,
    /// Nodes outside the closed ball of radius `r`.
    U,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid4<T> {
    half_width: T,
    n: usize,
    h: T,
    inner_radius: T,
    radius_mode: RadiusMode,
}

impl<T: Real> Grid4<T> {
    pub fn new(half_width: T, n: usize, inner_radius: T, radius_mode: RadiusMode) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidGrid(format!("N = {n} is below the stencil width 5")));
        }
        if n % 2 == 0 {
            return Err(Error::InvalidGrid(format!("N = {n} must be odd")));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::InvalidGrid(format!("half width {half_width} must be positive")));
        }
        if inner_radius < T::zero() {
            return Err(Error::InvalidGrid(format!("inner radius {inner_radius} must be non-negative")));
        }
        let h = T::lit(2.0) * half_width / T::from_usize(n - 1).expect("small");
        Ok(Self { half_width, n, h, inner_radius, radius_mode })
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> T {
        self.h
    }

    pub fn inner_radius(&self) -> T {
        self.inner_radius
    }

    pub fn radius_mode(&self) -> RadiusMode {
        self.radius_mode
    }

    pub fn with_radius_mode(mut self, mode: RadiusMode) -> Self {
        self.radius_mode = mode;
        self
    }

    pub fn node_count(&self) -> usize {
        self.n.pow(4)
    }

    /// Stride of axis `mu` in the node numbering (axis 0 slowest).
    pub fn stride(&self, mu: usize) -> usize {
        self.n.pow(3 - mu as u32)
    }

    pub fn node(&self, idx: [usize; 4]) -> usize {
        ((idx[0] * self.n + idx[1]) * self.n + idx[2]) * self.n + idx[3]
    }

    pub fn index(&self, node: usize) -> [usize; 4] {
        let n = self.n;
        [node / (n * n * n), (node / (n * n)) % n, (node / n) % n, node % n]
    }

    pub fn coord(&self, i: usize) -> T {
        -self.half_width + T::from_usize(i).expect("small") * self.h
    }

    pub fn position(&self, node: usize) -> [T; 4] {
        self.index(node).map(|i| self.coord(i))
    }

    /// Radius used by the U-mask under the current radius mode.
    pub fn radius(&self, x: &[T; 4]) -> T {
        let spatial = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        match self.radius_mode {
            RadiusMode::FourD => (x[0] * x[0] + spatial).sqrt(),
            RadiusMode::Spatial => spatial.sqrt(),
        }
    }

    pub fn in_u(&self, node: usize) -> bool {
        self.radius(&self.position(node)) > self.inner_radius
    }

    /// At least `layers` nodes away from every face of the box.
    pub fn is_interior(&self, node: usize, layers: usize) -> bool {
        self.index(node).iter().all(|&i| i >= layers && i + layers < self.n)
    }

    /// Membership used by residual norms: the region, minus the outer boundary layers.
    pub fn in_norm_region(&self, node: usize, region: Region) -> bool {
        self.is_interior(node, BOUNDARY_LAYERS) && (region == Region::Box || self.in_u(node))
    }

    pub fn in_region(&self, node: usize, region: Region) -> bool {
        region == Region::Box || self.in_u(node)
    }

    /// Trapezoid weight of a node: `h⁴` scaled by ½ per axis on which it lies on a face.
    pub fn quadrature_weight(&self, node: usize) -> T {
        let h4 = self.h.powi(4);
        let faces = self.index(node).iter().filter(|&&i| i == 0 || i + 1 == self.n).count();
        h4 / T::from_usize(1 << faces).expect("small")
    }

    /// `∂_mu` of component `comp` of node-major data with `stride` values per node.
    #[inline]
    pub fn partial(&self, data: &[T], stride: usize, node: usize, mu: usize, comp: usize) -> T {
        let i = self.index(node)[mu];
        let step = self.stride(mu);
        let base = node - i * step;
        derivative(i, self.n, self.h, |k| data[(base + k * step) * stride + comp])
    }

    /// Index of the `t = 0` slice along axis 0.
    pub fn t_zero_index(&self) -> usize {
        (self.n - 1) / 2
    }
}

/// First derivative along an axis at position `i` of a line sampled by `f(k)`.
///
/// Fourth-order central differences in the interior, second-order one-sided
/// stencils on the two outermost nodes at each end. Every stencil is written
/// in differences so that a constant line gives exactly zero.
#[inline]
pub fn derivative<T: Real>(i: usize, n: usize, h: T, f: impl Fn(usize) -> T) -> T {
    let two = T::lit(2.0);
    if i >= 2 && i + 2 < n {
        ((f(i - 2) - f(i + 2)) + T::lit(8.0) * (f(i + 1) - f(i - 1))) / (T::lit(12.0) * h)
    } else if i + 2 < n {
        let f0 = f(i);
        (T::lit(4.0) * (f(i + 1) - f0) - (f(i + 2) - f0)) / (two * h)
    } else {
        let f0 = f(i);
        -(T::lit(4.0) * (f(i - 1) - f0) - (f(i - 2) - f0)) / (two * h)
    }
}
