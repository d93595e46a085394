//! Analysis on uniform spaces presented by finite saturated families of
//! pseudometrics.
//!
//! The core is generic over the scalar type through [`Scalar`]; concrete
//! `f64` aliases are exported at the crate root for the common case.
//!
//! Modules map onto the main subsystems:
//!
//! * [`space`]: pseudometric families over coordinate points, saturation,
//!   the sup metric ρ.
//! * [`hausdorff`]: Hausdorff pseudometrics on finite point clouds with an
//!   independent inflation-based cross-check.
//! * [`multifun`]: multi-functions with finite images, semi-continuity
//!   checkers, inwardness tests, invariant-set iteration.
//! * [`alpha`]: certified two-sided bounds on the non-compactness measure
//!   over set expressions, plus an empirical covering proxy.
//! * [`solvers`]: Picard, Nadler, Caristi-descent and weakly-inward
//!   fixed-point iteration.
//! * [`variational`]: the potential-family partial order, Bishop-Phelps and
//!   Ekeland searches over finite candidate sets.
//! * [`io`]: JSON input documents for the CLI.

pub mod alpha;
pub mod error;
pub mod hausdorff;
pub mod hull;
pub mod io;
pub mod multifun;
pub mod scalar;
pub mod solvers;
pub mod space;
pub mod variational;

pub use error::UniformError;
pub use scalar::{default_float_tol, Scalar};

/// `f64` point, the default scalar choice.
pub type Point = space::PointN<f64>;
/// `f64` pseudometric family.
pub type Family = space::PseudometricFamily<f64>;
/// `f64` point cloud.
pub type Cloud = hausdorff::PointCloud<f64>;
/// `f64` multi-function.
pub type MultiFun = multifun::MultiFunction<f64>;
/// `f64` single-valued map.
pub type Map = multifun::PointMap<f64>;
/// `f64` non-compactness interval.
pub type Interval = alpha::AlphaInterval<f64>;
