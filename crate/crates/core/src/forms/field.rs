use rayon::prelude::*;

use super::grid::{Grid4, Region};
use super::internal::{binomial4, Internal};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A `p`-form on a [`Grid4`] with values in an internal space.
///
/// Storage is node-major: component `(I, A)` of node `n` lives at
/// `data[n · stride + I · dim(internal) + A]`, with `I` the position of the
/// spacetime multi-index and `A` the position of the internal one.
#[derive(Clone, Debug, PartialEq)]
pub struct FormField<T> {
    grid: Grid4<T>,
    degree: usize,
    internal: Internal,
    data: Vec<T>,
}

impl<T: Real> FormField<T> {
    pub fn zeros(grid: Grid4<T>, degree: usize, internal: Internal) -> Self {
        assert!(degree <= 4, "form degree {degree} exceeds 4");
        let len = grid.node_count() * binomial4(degree) * internal.dim();
        Self { grid, degree, internal, data: vec![T::zero(); len] }
    }

    pub fn from_data(grid: Grid4<T>, degree: usize, internal: Internal, data: Vec<T>) -> Result<Self> {
        if degree > 4 {
            return Err(Error::FieldType(format!("form degree {degree} exceeds 4")));
        }
        let expected = grid.node_count() * binomial4(degree) * internal.dim();
        if data.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: data.len() });
        }
        Ok(Self { grid, degree, internal, data })
    }

    /// Samples `f(x, out)` at every node; `out` holds one node's components.
    pub fn from_fn<F>(grid: Grid4<T>, degree: usize, internal: Internal, f: F) -> Self
    where
        F: Fn([T; 4], &mut [T]) + Sync,
    {
        let mut field = Self::zeros(grid, degree, internal);
        let stride = field.stride();
        field.data.par_chunks_mut(stride).enumerate().for_each(|(node, out)| f(grid.position(node), out));
        field
    }

    /// Node-local map producing a new field from this one.
    pub fn map_nodes<F>(&self, degree: usize, internal: Internal, f: F) -> Self
    where
        F: Fn(usize, &[T], &mut [T]) + Sync,
    {
        let mut out = Self::zeros(self.grid, degree, internal);
        let (si, so) = (self.stride(), out.stride());
        if so == 0 {
            return out;
        }
        out.data.par_chunks_mut(so).enumerate().for_each(|(node, o)| f(node, &self.data[node * si..(node + 1) * si], o));
        out
    }

    pub fn grid(&self) -> &Grid4<T> {
        &self.grid
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn internal(&self) -> Internal {
        self.internal
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    /// Components per node.
    pub fn stride(&self) -> usize {
        binomial4(self.degree) * self.internal.dim()
    }

    pub fn at(&self, node: usize) -> &[T] {
        let s = self.stride();
        &self.data[node * s..(node + 1) * s]
    }

    pub fn get(&self, node: usize, multi: usize, a: usize) -> T {
        self.data[node * self.stride() + multi * self.internal.dim() + a]
    }

    pub fn expect_type(&self, degree: usize, internal: Internal, what: &str) -> Result<()> {
        if self.degree != degree || self.internal != internal {
            return Err(Error::FieldType(format!(
                "{what} must be a {degree}-form valued in {internal}, got a {}-form valued in {}",
                self.degree, self.internal
            )));
        }
        Ok(())
    }

    pub fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("fields live on different grids".into()));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, f: impl Fn(T, T) -> T + Sync + Send) -> Result<Self> {
        self.same_grid(other)?;
        other.expect_type(self.degree, self.internal, "operand")?;
        let data = self.data.par_iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<T>) -> Self {
        Self { grid: self.grid, degree: self.degree, internal: self.internal, data }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: T) -> Self {
        self.with_data(self.data.par_iter().map(|&a| c * a).collect())
    }

    /// Multiplies each node's components by a node-dependent scalar.
    pub fn scale_by(&self, f: impl Fn(usize) -> T + Sync) -> Self {
        self.map_nodes(self.degree, self.internal, |node, a, o| {
            let c = f(node);
            for (x, y) in o.iter_mut().zip(a) {
                *x = c * *y;
            }
        })
    }

    /// Largest absolute component over the norm region of `region`
    /// (boundary layers excluded). Zero if the region is empty.
    pub fn max_norm(&self, region: Region) -> T {
        let s = self.stride();
        if s == 0 {
            return T::zero();
        }
        self.data
            .par_chunks(s)
            .enumerate()
            .filter(|(node, _)| self.grid.in_norm_region(*node, region))
            .map(|(_, c)| c.iter().fold(T::zero(), |m, x| nan_max(m, x.abs())))
            .reduce(T::zero, nan_max)
    }

    /// Largest absolute component over nodes selected by `keep`.
    pub fn max_norm_where(&self, keep: impl Fn(usize) -> bool + Sync) -> T {
        let s = self.stride();
        self.data
            .par_chunks(s.max(1))
            .enumerate()
            .filter(|(node, _)| keep(*node))
            .map(|(_, c)| c.iter().fold(T::zero(), |m, x| nan_max(m, x.abs())))
            .reduce(T::zero, nan_max)
    }

    /// Converts the scalar type (e.g. `f32` to `f64`).
    pub fn cast<U: Real>(&self) -> FormField<U> {
        let g = &self.grid;
        let grid = Grid4::new(
            U::lit(g.half_width().as_f64()),
            g.n(),
            U::lit(g.inner_radius().as_f64()),
            g.radius_mode(),
        )
        .expect("same parameters");
        FormField { grid, degree: self.degree, internal: self.internal, data: self.data.iter().map(|x| U::lit(x.as_f64())).collect() }
    }
}

/// `max` that propagates NaN, so a broken residual cannot hide behind finite ones.
pub fn nan_max<T: Real>(a: T, b: T) -> T {
    if a.is_nan() || b.is_nan() {
        T::nan()
    } else {
        a.max(b)
    }
}
