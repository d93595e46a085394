//! Scalar abstraction: the whole core works over any IEEE-like float.

use std::fmt;
use std::iter::Sum;
use std::sync::OnceLock;

use num_traits::{Float, FromPrimitive};

/// Scalar type for all numeric work: `f32` or `f64` in practice.
pub trait Scalar:
    Float + FromPrimitive + Sum + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Absolute comparison tolerance used where an operation does not take
    /// an explicit one.
    fn float_tol() -> Self {
        Self::from_f64(default_float_tol()).unwrap()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

static FLOAT_TOL: OnceLock<f64> = OnceLock::new();

/// Default absolute comparison tolerance (1e-9), overridable through the
/// `UNIFORMIS_FLOAT_TOL` environment variable. Read once per process.
pub fn default_float_tol() -> f64 {
    *FLOAT_TOL.get_or_init(|| {
        std::env::var("UNIFORMIS_FLOAT_TOL")
            .ok()
            .and_then(|v| v.parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t >= 0.0)
            .unwrap_or(1e-9)
    })
}

/// Convenience: `T` from an `f64` literal. Panics only for scalars that
/// cannot represent finite `f64` values, which the supported ones can.
pub fn lit<T: Scalar>(v: f64) -> T {
    T::from_f64(v).expect("scalar conversion from f64")
}
