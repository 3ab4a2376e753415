//! Scalar abstractions shared by the exact and floating-point halves of the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_traits::{Float, FromPrimitive, Num};

/// Coefficient field for the algebraic layer.
///
/// Exact rationals are the intended instance (axiom checks compare with `==`),
/// but `f64` satisfies the bound too, which is how grid-sampled Lie brackets
/// are compared against structure constants.
pub trait Field:
    Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer is representable")
    }
}

impl<S> Field for S where
    S: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
}

/// Floating-point scalar for grid fields (`f32` or `f64`).
pub trait Real: Float + FromPrimitive + Debug + Display + Sum + Send + Sync + 'static {
    /// Converts a literal; every `f64` literal used in this crate fits in `f32`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite value")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Neumaier-compensated accumulator; summation order is the caller's iteration order.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self { sum: T::zero(), compensation: T::zero() }
    }
}

impl<T: Real> CompensatedSum<T> {
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation = self.compensation + ((self.sum - t) + x);
        } else {
            self.compensation = self.compensation + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Real> FromIterator<T> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = Self::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
