//! Numeric abstractions shared by every module.
//!
//! Counting measures (modularity, conductance, ...) only need field
//! arithmetic, so they are generic over [`Scalar`] and work with exact
//! rationals as well as floats. Anything touching square roots or angles
//! needs [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Field-like value type: `f32`, `f64` or an exact rational.
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static {
    /// Converts a count into the scalar type.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }
}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static {}

/// Floating point scalar (`f32` or `f64`).
pub trait Real: Scalar + Float {
    /// Converts an `f64` literal; panics only if the type cannot hold it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where T: Scalar + Float {}

/// Ratio `num / den` in the scalar type, `None` when `den == 0`.
pub(crate) fn ratio<T: Scalar>(num: usize, den: usize) -> Option<T> {
    (den != 0).then(|| T::from_count(num) / T::from_count(den))
}

pub(crate) fn max_of<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}
