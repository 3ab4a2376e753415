//! Tetrads, connections and metrics on the grid.

use rayon::prelude::*;

use super::field::FormField;
use super::grid::Grid4;
use super::internal::{multi_indices, Internal};
use super::ops::ext_d;
use crate::algebra::poincare::eta;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tetrads with `|det e| ≤ DEGENERACY_THRESHOLD` at some node are rejected.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

pub type Mat4<T> = [[T; 4]; 4];

#[inline]
pub fn eta_f<T: Real>(a: usize, b: usize) -> T {
    T::lit(eta(a, b) as f64)
}

/// Inverse and determinant by Gauss–Jordan elimination with partial pivoting.
pub fn invert4<T: Real>(m: &Mat4<T>) -> Option<(Mat4<T>, T)> {
    let mut a = *m;
    let mut inv = [[T::zero(); 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = T::one();
    }
    let mut det = T::one();
    for c in 0..4 {
        let p = (c..4).max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap_or(std::cmp::Ordering::Equal))?;
        if a[p][c] == T::zero() || !a[p][c].is_finite() {
            return None;
        }
        if p != c {
            a.swap(p, c);
            inv.swap(p, c);
            det = -det;
        }
        let piv = a[c][c];
        det = det * piv;
        for k in 0..4 {
            a[c][k] = a[c][k] / piv;
            inv[c][k] = inv[c][k] / piv;
        }
        for r in 0..4 {
            if r != c {
                let f = a[r][c];
                if f != T::zero() {
                    for k in 0..4 {
                        a[r][k] = a[r][k] - f * a[c][k];
                        inv[r][k] = inv[r][k] - f * inv[c][k];
                    }
                }
            }
        }
    }
    Some((inv, det))
}

/// Nondegenerate `V`-valued 1-form; component `(μ, a)` is `e^a_μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tetrad<T> {
    form: FormField<T>,
}

impl<T: Real> Tetrad<T> {
    pub fn new(form: FormField<T>) -> Result<Self> {
        form.expect_type(1, Internal::V, "tetrad")?;
        let g = *form.grid();
        let bad = (0..g.node_count()).into_par_iter().find_first(|&node| {
            let det = determinant(&matrix_at(&form, node));
            !(det.abs().as_f64() > DEGENERACY_THRESHOLD)
        });
        if let Some(node) = bad {
            let det = determinant(&matrix_at(&form, node)).as_f64();
            return Err(Error::DegenerateTetrad { node, position: g.position(node).map(|x| x.as_f64()), det });
        }
        Ok(Self { form })
    }

    /// Samples `e^a_μ = f(x)[a][μ]`.
    pub fn from_fn(grid: Grid4<T>, f: impl Fn([T; 4]) -> Mat4<T> + Sync) -> Result<Self> {
        Self::new(FormField::from_fn(grid, 1, Internal::V, |x, out| {
            let m = f(x);
            for mu in 0..4 {
                for a in 0..4 {
                    out[mu * 4 + a] = m[a][mu];
                }
            }
        }))
    }

    pub fn identity(grid: Grid4<T>) -> Self {
        Self::from_fn(grid, |_| {
            let mut m = [[T::zero(); 4]; 4];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = T::one();
            }
            m
        })
        .expect("identity is nondegenerate")
    }

    pub fn form(&self) -> &FormField<T> {
        &self.form
    }

    pub fn grid(&self) -> &Grid4<T> {
        self.form.grid()
    }

    /// `m[a][μ] = e^a_μ` at `node`.
    pub fn matrix(&self, node: usize) -> Mat4<T> {
        matrix_at(&self.form, node)
    }

    /// `E^μ_a` with `e^a_μ E^μ_b = δ^a_b`, as `m[μ][a]`.
    pub fn inverse(&self, node: usize) -> Mat4<T> {
        invert4(&self.matrix(node)).expect("validated nondegenerate").0
    }

    /// Applies a pointwise internal transformation `e ↦ Λ(x) e`.
    pub fn transform(&self, lambda: impl Fn([T; 4]) -> Mat4<T> + Sync) -> Result<Self> {
        let g = *self.grid();
        let form = self.form.map_nodes(1, Internal::V, |node, e, out| {
            let l = lambda(g.position(node));
            for mu in 0..4 {
                for a in 0..4 {
                    out[mu * 4 + a] = (0..4).fold(T::zero(), |s, b| s + l[a][b] * e[mu * 4 + b]);
                }
            }
        });
        Self::new(form)
    }
}

fn matrix_at<T: Real>(form: &FormField<T>, node: usize) -> Mat4<T> {
    let c = form.at(node);
    let mut m = [[T::zero(); 4]; 4];
    for mu in 0..4 {
        for a in 0..4 {
            m[a][mu] = c[mu * 4 + a];
        }
    }
    m
}

pub fn determinant<T: Real>(m: &Mat4<T>) -> T {
    invert4(m).map_or(T::zero(), |(_, d)| d)
}

/// `so(3,1)`-valued 1-form; component `(μ, A)` is `ω^{ab}_μ` for the `A`-th pair `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<T> {
    form: FormField<T>,
}

impl<T: Real> Connection<T> {
    pub fn new(form: FormField<T>) -> Result<Self> {
        form.expect_type(1, Internal::L2, "connection")?;
        Ok(Self { form })
    }

    pub fn zero(grid: Grid4<T>) -> Self {
        Self { form: FormField::zeros(grid, 1, Internal::L2) }
    }

    /// Samples `ω^{ab}_μ = f(x)[μ][A]` on pairs `a < b` in lexicographic order.
    pub fn from_fn(grid: Grid4<T>, f: impl Fn([T; 4]) -> [[T; 6]; 4] + Sync) -> Self {
        Self {
            form: FormField::from_fn(grid, 1, Internal::L2, |x, out| {
                let w = f(x);
                for mu in 0..4 {
                    out[mu * 6..mu * 6 + 6].copy_from_slice(&w[mu]);
                }
            }),
        }
    }

    pub fn form(&self) -> &FormField<T> {
        &self.form
    }

    /// `ω^{ab}_μ` for any ordered pair, using antisymmetry.
    pub fn component(&self, node: usize, a: usize, b: usize, mu: usize) -> T {
        match pair_slot::<T>(a, b) {
            Some((slot, sign)) => sign * self.form.get(node, mu, slot),
            None => T::zero(),
        }
    }
}

/// Position of `e_a ∧ e_b` in the `Λ²V` basis and the sign relative to `a < b`.
pub fn pair_slot<T: Real>(a: usize, b: usize) -> Option<(usize, T)> {
    if a == b {
        return None;
    }
    let (lo, hi, s) = if a < b { (a, b, T::one()) } else { (b, a, -T::one()) };
    let slot = multi_indices(2).iter().position(|p| p[0] == lo && p[1] == hi)?;
    Some((slot, s))
}

/// Symmetric `g_{μν}` per node, stored as full 4×4 blocks.
///
/// The same storage holds any symmetric 2-tensor field (see [`SymmetricTensorField`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Metric<T> {
    grid: Grid4<T>,
    data: Vec<T>,
}

impl<T: Real> Metric<T> {
    pub fn from_fn(grid: Grid4<T>, f: impl Fn([T; 4]) -> Mat4<T> + Sync) -> Self {
        let mut data = vec![T::zero(); grid.node_count() * 16];
        data.par_chunks_mut(16).enumerate().for_each(|(node, out)| {
            let m = f(grid.position(node));
            for mu in 0..4 {
                out[mu * 4..mu * 4 + 4].copy_from_slice(&m[mu]);
            }
        });
        Self { grid, data }
    }

    pub fn from_data(grid: Grid4<T>, data: Vec<T>) -> Result<Self> {
        let expected = grid.node_count() * 16;
        if data.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: data.len() });
        }
        Ok(Self { grid, data })
    }

    pub fn grid(&self) -> &Grid4<T> {
        &self.grid
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    /// Largest absolute entry over the norm region (boundary layers excluded).
    pub fn max_norm(&self, region: super::grid::Region) -> T {
        self.data
            .par_chunks(16)
            .enumerate()
            .filter(|(node, _)| self.grid.in_norm_region(*node, region))
            .map(|(_, c)| c.iter().fold(T::zero(), |m, x| super::field::nan_max(m, x.abs())))
            .reduce(T::zero, super::field::nan_max)
    }

    pub fn at(&self, node: usize) -> Mat4<T> {
        let c = &self.data[node * 16..node * 16 + 16];
        let mut m = [[T::zero(); 4]; 4];
        for mu in 0..4 {
            m[mu].copy_from_slice(&c[mu * 4..mu * 4 + 4]);
        }
        m
    }

    /// `∂_λ g_{μν}` at `node`.
    pub fn partial(&self, node: usize, lambda: usize, mu: usize, nu: usize) -> T {
        self.grid.partial(&self.data, 16, node, lambda, mu * 4 + nu)
    }

    pub fn is_symmetric(&self) -> bool {
        self.data.chunks(16).all(|c| (0..4).all(|m| (0..4).all(|n| c[m * 4 + n] == c[n * 4 + m])))
    }

    /// First node whose metric is not Lorentzian (exactly one negative eigenvalue, none zero).
    pub fn first_non_lorentzian(&self) -> Option<usize> {
        (0..self.grid.node_count()).into_par_iter().find_first(|&node| !is_lorentzian(&self.at(node)))
    }
}

pub type SymmetricTensorField<T> = Metric<T>;

pub fn is_lorentzian<T: Real>(m: &Mat4<T>) -> bool {
    let mat = nalgebra::Matrix4::from_fn(|i, j| 0.5 * (m[i][j].as_f64() + m[j][i].as_f64()));
    let eig = nalgebra::SymmetricEigen::new(mat).eigenvalues;
    let scale = eig.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let negative = eig.iter().filter(|&&v| v < 0.0).count();
    negative == 1 && eig.iter().all(|v| v.abs() > 1e-12 * scale)
}

/// `g_{μν} = η_{ab} e^a_μ e^b_ν`.
pub fn metric_from_tetrad<T: Real>(e: &Tetrad<T>) -> Metric<T> {
    let grid = *e.grid();
    let mut data = vec![T::zero(); grid.node_count() * 16];
    data.par_chunks_mut(16).enumerate().for_each(|(node, out)| {
        let m = e.matrix(node);
        for mu in 0..4 {
            for nu in 0..4 {
                out[mu * 4 + nu] = (0..4).fold(T::zero(), |s, a| s + eta_f::<T>(a, a) * m[a][mu] * m[a][nu]);
            }
        }
    });
    Metric { grid, data }
}

/// The torsion-free metric connection of `e`.
///
/// With `de^a = ½ C^a_{bc} e^b ∧ e^c`, i.e. `C^a_{bc} = E^μ_b E^ν_c (de^a)_{μν}`,
/// the connection is `ω_{abc} = ½(C_{abc} + C_{bca} − C_{cab})` and
/// `ω^{ab}_μ = ω^{ab}_c e^c_μ`.
pub fn levi_civita_connection<T: Real>(e: &Tetrad<T>) -> Result<Connection<T>> {
    let de = ext_d(e.form())?;
    let pairs = multi_indices(2);
    let form = de.map_nodes(1, Internal::L2, |node, d, out| {
        let em = e.matrix(node);
        let inv = e.inverse(node);
        // (de^a)_{μν} for all μ, ν
        let mut dm = [[[T::zero(); 4]; 4]; 4];
        for (k, mn) in pairs.iter().enumerate() {
            for a in 0..4 {
                let v = d[k * 4 + a];
                dm[a][mn[0]][mn[1]] = v;
                dm[a][mn[1]][mn[0]] = -v;
            }
        }
        // C_{abc} with the first index lowered
        let mut c = [[[T::zero(); 4]; 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                for cc in 0..4 {
                    let mut s = T::zero();
                    for mu in 0..4 {
                        for nu in 0..4 {
                            s = s + inv[mu][b] * inv[nu][cc] * dm[a][mu][nu];
                        }
                    }
                    c[a][b][cc] = eta_f::<T>(a, a) * s;
                }
            }
        }
        let half = T::lit(0.5);
        for (k, ab) in pairs.iter().enumerate() {
            let (a, b) = (ab[0], ab[1]);
            let raise = eta_f::<T>(a, a) * eta_f::<T>(b, b);
            for mu in 0..4 {
                let mut s = T::zero();
                for cc in 0..4 {
                    let w = half * (c[a][b][cc] + c[b][cc][a] - c[cc][a][b]);
                    s = s + w * em[cc][mu];
                }
                out[mu * 6 + k] = raise * s;
            }
        }
    });
    Connection::new(form)
}

/// Frame components `F^{ab}_{cd} = E^μ_c E^ν_d F^{ab}_{μν}`, indexed `[A][C]` over pairs.
pub fn frame_curvature<T: Real>(e: &Tetrad<T>, f: &FormField<T>, node: usize) -> [[T; 6]; 6] {
    let pairs = multi_indices(2);
    let inv = e.inverse(node);
    let comps = f.at(node);
    let mut out = [[T::zero(); 6]; 6];
    for (ab, row) in out.iter_mut().enumerate() {
        for (cd, pcd) in pairs.iter().enumerate() {
            let mut s = T::zero();
            for (k, mn) in pairs.iter().enumerate() {
                let (m, n) = (mn[0], mn[1]);
                let w = inv[m][pcd[0]] * inv[n][pcd[1]] - inv[n][pcd[0]] * inv[m][pcd[1]];
                s = s + w * comps[k * 6 + ab];
            }
            row[cd] = s;
        }
    }
    out
}

/// `R_{abcd} R^{abcd}` from frame components of the curvature 2-form.
pub fn kretschmann<T: Real>(frame: &[[T; 6]; 6]) -> T {
    let pairs = multi_indices(2);
    let sign = |p: &Vec<usize>| eta_f::<T>(p[0], p[0]) * eta_f::<T>(p[1], p[1]);
    let mut s = T::zero();
    for (a, pa) in pairs.iter().enumerate() {
        for (c, pc) in pairs.iter().enumerate() {
            s = s + sign(pa) * sign(pc) * frame[a][c] * frame[a][c];
        }
    }
    T::lit(4.0) * s
}
