//! Hausdorff pseudometrics `H^λ` on finite point clouds, with the
//! inflation formulation as an independent cross-check oracle.

use crate::error::{Result, UniformError};
use crate::scalar::Scalar;
use crate::space::{PointN, PseudometricFamily};

/// Nonempty finite point set; the desk-scale stand-in for a closed bounded
/// subset of the space.
#[derive(Clone, Debug)]
pub struct PointCloud<T> {
    points: Vec<PointN<T>>,
    dedup_tolerance: T,
}

impl<T: Scalar> PointCloud<T> {
    /// Builds a cloud, dropping later points within `dedup_tolerance` of an
    /// earlier one under the family's max distance.
    pub fn new(
        points: Vec<PointN<T>>,
        family: &PseudometricFamily<T>,
        dedup_tolerance: T,
    ) -> Result<Self> {
        if dedup_tolerance < T::zero() {
            return Err(UniformError::InvalidArgument(
                "dedup tolerance must be >= 0".into(),
            ));
        }
        let mut kept: Vec<PointN<T>> = Vec::with_capacity(points.len());
        for p in points {
            let dup = kept
                .iter()
                .map(|q| family.max_dist(&p, q))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .any(|d| d <= dedup_tolerance);
            if !dup {
                kept.push(p);
            }
        }
        if kept.is_empty() {
            return Err(UniformError::EmptyCloud);
        }
        Ok(Self {
            points: kept,
            dedup_tolerance,
        })
    }

    /// Cloud without deduplication; only nonemptiness is enforced.
    pub fn raw(points: Vec<PointN<T>>) -> Result<Self> {
        if points.is_empty() {
            return Err(UniformError::EmptyCloud);
        }
        Ok(Self {
            points,
            dedup_tolerance: T::zero(),
        })
    }

    /// 1-d cloud from scalar values; test/CLI convenience.
    pub fn on_line(values: &[T]) -> Self {
        Self::raw(values.iter().map(|v| PointN::of(&[*v])).collect()).expect("nonempty")
    }

    pub fn points(&self) -> &[PointN<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn dedup_tolerance(&self) -> T {
        self.dedup_tolerance
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }
}

/// An entourage `U(λ, ε)` of the governing family.
#[derive(Clone, Debug)]
pub struct Entourage<T> {
    pub index: String,
    pub radius: T,
}

impl<T: Scalar> Entourage<T> {
    pub fn new(family: &PseudometricFamily<T>, index: &str, radius: T) -> Result<Self> {
        family.index_of(index)?;
        if radius <= T::zero() {
            return Err(UniformError::InvalidArgument(
                "entourage radius must be > 0".into(),
            ));
        }
        Ok(Self {
            index: index.to_string(),
            radius,
        })
    }
}

/// `d_λ(a, A) = min_{x∈A} d_λ(a, x)`.
pub fn dist_to_set<T: Scalar>(
    family: &PseudometricFamily<T>,
    label: &str,
    a: &PointN<T>,
    cloud: &PointCloud<T>,
) -> Result<T> {
    let mut best = T::infinity();
    for x in cloud.points() {
        best = best.min(family.eval(label, a, x)?);
    }
    Ok(best)
}

/// `H^λ(A, B)`: the max of the two one-sided excesses. Exact for finite
/// clouds, where sup/inf are max/min.
pub fn hausdorff_pseudometric<T: Scalar>(
    family: &PseudometricFamily<T>,
    label: &str,
    a: &PointCloud<T>,
    b: &PointCloud<T>,
) -> Result<T> {
    let mut excess_ab = T::zero();
    for x in a.points() {
        excess_ab = excess_ab.max(dist_to_set(family, label, x, b)?);
    }
    let mut excess_ba = T::zero();
    for y in b.points() {
        excess_ba = excess_ba.max(dist_to_set(family, label, y, a)?);
    }
    Ok(excess_ab.max(excess_ba))
}

/// The inflation formulation: the smallest ε (within `tol`) with mutual
/// ε-inclusion under open balls, found by bisection. Serves as the
/// independent oracle for [`hausdorff_pseudometric`].
pub fn hausdorff_via_inflation<T: Scalar>(
    family: &PseudometricFamily<T>,
    label: &str,
    a: &PointCloud<T>,
    b: &PointCloud<T>,
    tol: T,
) -> Result<T> {
    if tol <= T::zero() {
        return Err(UniformError::InvalidArgument("tol must be > 0".into()));
    }
    let mutual_inclusion = |eps: T| -> Result<bool> {
        for x in a.points() {
            if dist_to_set(family, label, x, b)? >= eps {
                return Ok(false);
            }
        }
        for y in b.points() {
            if dist_to_set(family, label, y, a)? >= eps {
                return Ok(false);
            }
        }
        Ok(true)
    };

    // Upper seed: max pairwise distance between the clouds guarantees
    // inclusion once pushed strictly above it.
    let mut hi = T::zero();
    for x in a.points() {
        for y in b.points() {
            hi = hi.max(family.eval(label, x, y)?);
        }
    }
    if hi == T::zero() {
        return Ok(T::zero());
    }
    hi = hi + tol;
    while !mutual_inclusion(hi)? {
        hi = hi + hi;
    }
    let mut lo = T::zero();
    let two = T::one() + T::one();
    while hi - lo > tol {
        let mid = (lo + hi) / two;
        if mutual_inclusion(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // the infimum lies in [lo, hi]; the lower end is exact when the clouds
    // coincide
    Ok(lo)
}

/// Strict mutual ε-inclusion test: true iff every point of each cloud is
/// within strict `d_λ`-distance ε of the other cloud. Ties at exactly ε
/// return false, matching the open-ball definition.
pub fn entourage_contains<T: Scalar>(
    family: &PseudometricFamily<T>,
    entourage: &Entourage<T>,
    a: &PointCloud<T>,
    b: &PointCloud<T>,
) -> Result<bool> {
    for x in a.points() {
        if dist_to_set(family, &entourage.index, x, b)? >= entourage.radius {
            return Ok(false);
        }
    }
    for y in b.points() {
        if dist_to_set(family, &entourage.index, y, a)? >= entourage.radius {
            return Ok(false);
        }
    }
    Ok(true)
}
