//! ADM energy and Komar mass as surface integrals on coordinate spheres of a
//! `t = 0` slice, with extrapolation in the radius and the positivity check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::grid::Grid4;
use crate::forms::tetrad::{invert4, Metric};
use crate::scalar::{CompensatedSum, Real};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Product rule on a sphere: Gauss–Legendre in `cos θ` times uniform `φ`.
///
/// With `n_theta` Legendre nodes and `n_phi > 2·n_theta` azimuthal nodes the
/// rule integrates spherical harmonics of degree `< 2·n_theta` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereQuadrature {
    radius: f64,
    /// Unit normals; node positions are `radius · normal`.
    normals: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

impl SphereQuadrature {
    pub const DEFAULT_THETA: usize = 8;
    pub const DEFAULT_PHI: usize = 16;

    pub fn new(radius: f64, n_theta: usize, n_phi: usize) -> Result<Self> {
        if !(radius > 0.0) || n_theta == 0 || n_phi == 0 {
            return Err(Error::Config(format!("sphere needs a positive radius and nodes, got ρ = {radius}")));
        }
        let mut normals = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        let dphi = 2.0 * std::f64::consts::PI / n_phi as f64;
        for (ct, w) in gauss_legendre(n_theta) {
            let st = (1.0 - ct * ct).sqrt();
            for j in 0..n_phi {
                let phi = (j as f64 + 0.5) * dphi;
                normals.push([st * phi.cos(), st * phi.sin(), ct]);
                weights.push(w * dphi * radius * radius);
            }
        }
        Ok(Self { radius, normals, weights })
    }

    pub fn with_default_order(radius: f64) -> Result<Self> {
        Self::new(radius, Self::DEFAULT_THETA, Self::DEFAULT_PHI)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn normals(&self) -> &[[f64; 3]] {
        &self.normals
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ w_k f(x_k, n_k)`, evaluated in parallel and summed in node order.
    pub fn integrate(&self, f: impl Fn([f64; 3], [f64; 3]) -> f64 + Sync) -> f64 {
        let values: Vec<f64> = self
            .normals
            .par_iter()
            .zip(&self.weights)
            .map(|(n, w)| w * f(n.map(|c| c * self.radius), *n))
            .collect();
        values.into_iter().collect::<CompensatedSum<f64>>().value()
    }
}

/// `g_{μν}` and `∂_λ g_{μν}` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricJet {
    pub g: [[f64; 4]; 4],
    /// `dg[λ][μ][ν] = ∂_λ g_{μν}`.
    pub dg: [[[f64; 4]; 4]; 4],
}

/// Tricubic (4-point Lagrange per axis) interpolation of the metric and its
/// finite-difference derivatives on one `x⁰ = const` slice.
pub struct SliceInterpolator<'a, T> {
    metric: &'a Metric<T>,
    t_index: usize,
}

fn lagrange4(s: f64) -> [f64; 4] {
    // nodes at −1, 0, 1, 2
    [
        -s * (s - 1.0) * (s - 2.0) / 6.0,
        (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
        -(s + 1.0) * s * (s - 2.0) / 2.0,
        (s + 1.0) * s * (s - 1.0) / 6.0,
    ]
}

impl<'a, T: Real> SliceInterpolator<'a, T> {
    pub fn new(metric: &'a Metric<T>, t_index: usize) -> Result<Self> {
        if t_index >= metric.grid().n() {
            return Err(Error::InvalidGrid(format!("slice index {t_index} outside the grid")));
        }
        Ok(Self { metric, t_index })
    }

    fn grid(&self) -> &Grid4<T> {
        self.metric.grid()
    }

    fn jet_at_node(&self, idx: [usize; 4]) -> MetricJet {
        let node = self.grid().node(idx);
        let m = self.metric.at(node);
        let mut jet = MetricJet { g: [[0.0; 4]; 4], dg: [[[0.0; 4]; 4]; 4] };
        for mu in 0..4 {
            for nu in 0..4 {
                jet.g[mu][nu] = m[mu][nu].as_f64();
                for l in 0..4 {
                    jet.dg[l][mu][nu] = self.metric.partial(node, l, mu, nu).as_f64();
                }
            }
        }
        jet
    }

    /// Jet at spatial point `x`; the stencil is clamped to stay inside the grid.
    pub fn jet(&self, x: [f64; 3]) -> MetricJet {
        let g = self.grid();
        let (lo, h, n) = (-g.half_width().as_f64(), g.h().as_f64(), g.n());
        let mut base = [0usize; 3];
        let mut w = [[0.0; 4]; 3];
        for axis in 0..3 {
            let u = (x[axis] - lo) / h;
            let i = (u.floor().max(0.0) as usize).clamp(1, n - 3);
            base[axis] = i - 1;
            w[axis] = lagrange4(u - i as f64);
        }
        let mut out = MetricJet { g: [[0.0; 4]; 4], dg: [[[0.0; 4]; 4]; 4] };
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let wt = w[0][a] * w[1][b] * w[2][c];
                    let j = self.jet_at_node([self.t_index, base[0] + a, base[1] + b, base[2] + c]);
                    for mu in 0..4 {
                        for nu in 0..4 {
                            out.g[mu][nu] += wt * j.g[mu][nu];
                            for l in 0..4 {
                                out.dg[l][mu][nu] += wt * j.dg[l][mu][nu];
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Largest `|∂_t g_{μν}|` over the slice.
    pub fn max_time_derivative(&self) -> f64 {
        let n = self.grid().n();
        (0..n * n * n)
            .into_par_iter()
            .map(|k| {
                let idx = [self.t_index, k / (n * n), (k / n) % n, k % n];
                let node = self.grid().node(idx);
                let mut m = 0.0f64;
                for mu in 0..4 {
                    for nu in 0..4 {
                        m = m.max(self.metric.partial(node, 0, mu, nu).as_f64().abs());
                    }
                }
                m
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Settings shared by the ADM and Komar evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MassSettings {
    pub n_theta: usize,
    pub n_phi: usize,
    /// Largest admissible `|∂_t g|` on the slice for the Komar mass.
    pub stationarity_tolerance: f64,
    /// Allowed relative gap between the extrapolated ADM energy and the mass parameter.
    pub rel_tolerance: f64,
    /// Allowed relative gap between the Komar and ADM values.
    pub agreement_tolerance: f64,
    /// Absolute slack added to both comparisons (covers `M = 0`).
    pub abs_floor: f64,
}

impl Default for MassSettings {
    fn default() -> Self {
        Self {
            n_theta: SphereQuadrature::DEFAULT_THETA,
            n_phi: SphereQuadrature::DEFAULT_PHI,
            stationarity_tolerance: 1e-8,
            rel_tolerance: 0.01,
            agreement_tolerance: 0.02,
            abs_floor: 1e-9,
        }
    }
}

/// Per-radius values with their extrapolation to infinite radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MassResult {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    /// Value at `1/ρ = 0` of the polynomial in `1/ρ` through all samples.
    pub extrapolated: f64,
    /// Log-log slope of `|E(ρ) − E_∞|` against `ρ`; `None` when the values coincide.
    pub slope: Option<f64>,
}

/// Polynomial extrapolation in `u = 1/ρ` to `u = 0`.
pub fn richardson(radii: &[f64], values: &[f64]) -> f64 {
    let us: Vec<f64> = radii.iter().map(|r| 1.0 / r).collect();
    let mut total = 0.0;
    for (i, (ui, vi)) in us.iter().zip(values).enumerate() {
        let mut l = 1.0;
        for (j, uj) in us.iter().enumerate() {
            if j != i {
                l *= (0.0 - uj) / (ui - uj);
            }
        }
        total += l * vi;
    }
    total
}

fn mass_result(radii: &[f64], values: Vec<f64>) -> MassResult {
    let extrapolated = richardson(radii, &values);
    let errors: Vec<f64> = values.iter().map(|v| (v - extrapolated).abs()).collect();
    let slope = crate::symmetry::loglog_slope(radii, &errors);
    MassResult { radii: radii.to_vec(), values, extrapolated, slope }
}

fn check_radii<T: Real>(grid: &Grid4<T>, radii: &[f64]) -> Result<()> {
    if radii.is_empty() {
        return Err(Error::Config("at least one sphere radius is required".into()));
    }
    let limit = grid.half_width().as_f64() - grid.h().as_f64();
    if let Some(r) = radii.iter().find(|r| !(**r > 0.0 && **r <= limit)) {
        return Err(Error::Config(format!("sphere radius {r} must lie in (0, {limit}] to stay inside the grid")));
    }
    if radii.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Config("sphere radii must be distinct".into()));
    }
    Ok(())
}

fn check_asymptotic_flatness(jet: &MetricJet, radius: f64) -> Result<()> {
    for i in 1..4 {
        for j in 1..4 {
            let dev = jet.g[i][j] - f64::from(u8::from(i == j));
            if !(dev.abs() < 1.0) {
                return Err(Error::Domain(format!(
                    "slice is not asymptotically flat: |g_{i}{j} − δ| = {} at radius {radius}",
                    dev.abs()
                )));
            }
        }
    }
    Ok(())
}

/// `E(ρ) = (1/16π) ∮ (∂_j g_ij − ∂_i g_jj) nⁱ dA` with the flat normal and area.
pub fn adm_energy<T: Real>(metric: &Metric<T>, t_index: usize, radii: &[f64], settings: &MassSettings) -> Result<MassResult> {
    check_radii(metric.grid(), radii)?;
    let interp = SliceInterpolator::new(metric, t_index)?;
    let largest = radii.iter().copied().fold(0.0, f64::max);
    check_asymptotic_flatness(&interp.jet([largest, 0.0, 0.0]), largest)?;
    let mut values = Vec::with_capacity(radii.len());
    for &r in radii {
        let q = SphereQuadrature::new(r, settings.n_theta, settings.n_phi)?;
        let flux = q.integrate(|x, n| {
            let jet = interp.jet(x);
            let mut s = 0.0;
            for i in 1..4 {
                for j in 1..4 {
                    s += (jet.dg[j][i][j] - jet.dg[i][j][j]) * n[i - 1];
                }
            }
            s
        });
        values.push(flux / (16.0 * std::f64::consts::PI));
    }
    Ok(mass_result(radii, values))
}

/// Komar mass of `K = ∂_t`: `M = (1/4π) ∮ ∇_μ K_ν n^μ s^ν dA`.
///
/// `∇_μ K_ν = ½(∂_μ g_{ν0} − ∂_ν g_{μ0})`, `n` is the future unit normal of the
/// slice, `s` the outward unit normal of the sphere within the slice, and `dA`
/// the induced area element. This normalisation gives `M` for Schwarzschild.
pub fn komar_mass<T: Real>(metric: &Metric<T>, t_index: usize, radii: &[f64], settings: &MassSettings) -> Result<MassResult> {
    check_radii(metric.grid(), radii)?;
    let interp = SliceInterpolator::new(metric, t_index)?;
    let drift = interp.max_time_derivative();
    if !(drift <= settings.stationarity_tolerance) {
        return Err(Error::Domain(format!(
            "∂_t is not a Killing field of the slice data: max |∂_t g| = {drift:e} exceeds {:e}",
            settings.stationarity_tolerance
        )));
    }
    let largest = radii.iter().copied().fold(0.0, f64::max);
    check_asymptotic_flatness(&interp.jet([largest, 0.0, 0.0]), largest)?;
    let mut values = Vec::with_capacity(radii.len());
    for &r in radii {
        let q = SphereQuadrature::new(r, settings.n_theta, settings.n_phi)?;
        let flux = q.integrate(|x, n| komar_integrand(&interp.jet(x), n));
        values.push(flux / (4.0 * std::f64::consts::PI));
    }
    Ok(mass_result(radii, values))
}

/// Integrand per unit flat area at a sphere node with flat unit normal `nflat`.
fn komar_integrand(jet: &MetricJet, nflat: [f64; 3]) -> f64 {
    let Some((ginv, _)) = invert4(&jet.g) else {
        return f64::NAN;
    };
    let mut gamma = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            gamma[i][j] = jet.g[i + 1][j + 1];
        }
    }
    let det_gamma = gamma[0][0] * (gamma[1][1] * gamma[2][2] - gamma[1][2] * gamma[2][1])
        - gamma[0][1] * (gamma[1][0] * gamma[2][2] - gamma[1][2] * gamma[2][0])
        + gamma[0][2] * (gamma[1][0] * gamma[2][1] - gamma[1][1] * gamma[2][0]);
    let gamma_inv = invert3(&gamma, det_gamma);
    // outward covector ∂_i ρ, normalised with γ
    let norm2: f64 = (0..3).map(|i| (0..3).map(|j| gamma_inv[i][j] * nflat[i] * nflat[j]).sum::<f64>()).sum();
    let norm = norm2.sqrt();
    let mut s_up = [0.0; 4];
    for i in 0..3 {
        s_up[i + 1] = (0..3).map(|j| gamma_inv[i][j] * nflat[j]).sum::<f64>() / norm;
    }
    let lapse = 1.0 / (-ginv[0][0]).sqrt();
    let n_up: Vec<f64> = (0..4).map(|mu| -lapse * ginv[mu][0]).collect();
    let mut s = 0.0;
    for mu in 0..4 {
        for nu in 1..4 {
            let grad = 0.5 * (jet.dg[mu][nu][0] - jet.dg[nu][mu][0]);
            s += grad * n_up[mu] * s_up[nu];
        }
    }
    s * det_gamma.sqrt() * norm
}

fn invert3(m: &[[f64; 3]; 3], det: f64) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            out[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
        }
    }
    out
}

/// Outcome of the `E ≥ |P|` check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Positivity {
    pub energy: f64,
    pub momentum: [f64; 3],
    pub passed: bool,
    /// `sqrt(E² − |P|²)` when `E ≥ |P|`.
    pub mass: Option<f64>,
    /// Set when `m = 0`, the case in which only flat space is allowed.
    pub rigidity: bool,
    pub message: String,
}

/// Checks `E ≥ |P|` and reports `m = sqrt(E² − |P|²)`.
pub fn positivity_check(energy: f64, momentum: [f64; 3]) -> Positivity {
    let p = momentum.iter().map(|c| c * c).sum::<f64>().sqrt();
    if energy >= p {
        let m = (energy * energy - p * p).sqrt();
        let rigidity = m == 0.0;
        let message = if rigidity {
            "E ≥ |P| holds with m = 0; positive-mass rigidity would require the data to be flat (flagged, not checked)".into()
        } else {
            format!("E ≥ |P| holds, m = {m}")
        };
        Positivity { energy, momentum, passed: true, mass: Some(m), rigidity, message }
    } else {
        Positivity {
            energy,
            momentum,
            passed: false,
            mass: None,
            rigidity: false,
            message: format!(
                "E = {energy} < |P| = {p}: violates the positive energy bound, so the dominant energy condition hypothesis cannot hold for these data"
            ),
        }
    }
}
