//! Convex-hull geometry over finite point sets.
//!
//! Dimensions 1 and 2 are handled exactly (interval / polygon constraints);
//! higher dimensions fall back to a Frank-Wolfe projection with a feasibility
//! tolerance.

use crate::scalar::{lit, Scalar};
use crate::space::PointN;

const FW_ITERS: usize = 600;
const BISECT_ITERS: usize = 80;

/// The convex hull of a finite point set, in a representation suited to the
/// ambient dimension.
#[derive(Clone, Debug)]
pub enum ConvexBody<T> {
    /// Hull of 1-d points: a closed interval.
    Interval { lo: T, hi: T },
    /// Hull of 2-d points with nonempty interior: CCW polygon vertices.
    Polygon { verts: Vec<PointN<T>> },
    /// Anything else: raw generators, handled by projection.
    General { points: Vec<PointN<T>> },
}

impl<T: Scalar> ConvexBody<T> {
    pub fn from_points(points: &[PointN<T>]) -> Self {
        assert!(!points.is_empty(), "convex body needs generators");
        match points[0].dim() {
            1 => {
                let mut lo = points[0].get(0);
                let mut hi = lo;
                for p in points {
                    lo = lo.min(p.get(0));
                    hi = hi.max(p.get(0));
                }
                ConvexBody::Interval { lo, hi }
            }
            2 => match monotone_chain(points) {
                Some(verts) => ConvexBody::Polygon { verts },
                None => ConvexBody::General {
                    points: points.to_vec(),
                },
            },
            _ => ConvexBody::General {
                points: points.to_vec(),
            },
        }
    }

    /// Generators of `x + c (K - x)`, the hull scaled about `x`.
    pub fn scaled_about(points: &[PointN<T>], x: &PointN<T>, c: T) -> Self {
        let scaled: Vec<_> = points.iter().map(|p| x.lerp(p, c)).collect();
        Self::from_points(&scaled)
    }

    pub fn contains(&self, p: &PointN<T>, tol: T) -> bool {
        match self {
            ConvexBody::Interval { lo, hi } => {
                let v = p.get(0);
                v >= *lo - tol && v <= *hi + tol
            }
            ConvexBody::Polygon { verts } => {
                let n = verts.len();
                for i in 0..n {
                    let a = &verts[i];
                    let b = &verts[(i + 1) % n];
                    // CCW interior lies to the left of each edge
                    if cross(a, b, p) < -tol {
                        return false;
                    }
                }
                true
            }
            ConvexBody::General { .. } => self.project(p).sub(p).norm2() <= tol,
        }
    }

    /// Euclidean projection onto the hull.
    pub fn project(&self, p: &PointN<T>) -> PointN<T> {
        match self {
            ConvexBody::Interval { lo, hi } => {
                PointN::of(&[p.get(0).max(*lo).min(*hi)])
            }
            ConvexBody::Polygon { verts } => {
                if self.contains(p, T::zero()) {
                    return p.clone();
                }
                let n = verts.len();
                let mut best = verts[0].clone();
                let mut best_d = T::infinity();
                for i in 0..n {
                    let q = project_segment(&verts[i], &verts[(i + 1) % n], p);
                    let d = q.sub(p).norm2();
                    if d < best_d {
                        best_d = d;
                        best = q;
                    }
                }
                best
            }
            ConvexBody::General { points } => frank_wolfe_project(points, p),
        }
    }

    /// Largest `s ∈ [0,1]` with `x + s (t - x)` in the hull. Assumes `x` is
    /// in the hull (within tolerance); returns 0 when even tiny steps leave.
    pub fn ray_exit(&self, x: &PointN<T>, t: &PointN<T>, tol: T) -> T {
        let d = t.sub(x);
        match self {
            ConvexBody::Interval { lo, hi } => {
                let xv = x.get(0);
                let dv = d.get(0);
                if dv == T::zero() {
                    return T::one();
                }
                let bound = if dv > T::zero() { *hi } else { *lo };
                let s = (bound - xv) / dv;
                s.max(T::zero()).min(T::one())
            }
            ConvexBody::Polygon { verts } => {
                let n = verts.len();
                let mut s_max = T::one();
                for i in 0..n {
                    let a = &verts[i];
                    let b = &verts[(i + 1) % n];
                    // outward normal of CCW edge (a,b)
                    let ex = b.get(0) - a.get(0);
                    let ey = b.get(1) - a.get(1);
                    let nx = ey;
                    let ny = -ex;
                    let nd = nx * d.get(0) + ny * d.get(1);
                    if nd > T::zero() {
                        let slack = nx * (a.get(0) - x.get(0)) + ny * (a.get(1) - x.get(1));
                        s_max = s_max.min((slack / nd).max(T::zero()));
                    }
                }
                s_max
            }
            ConvexBody::General { .. } => {
                // bisection on membership; monotone since the hull is convex
                if self.contains(t, tol) {
                    return T::one();
                }
                let probe = |s: T| self.contains(&x.lerp(t, s), tol);
                if !probe(T::zero()) {
                    return T::zero();
                }
                let mut lo = T::zero();
                let mut hi = T::one();
                let two = lit::<T>(2.0);
                for _ in 0..BISECT_ITERS {
                    let mid = (lo + hi) / two;
                    if probe(mid) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            }
        }
    }
}

fn cross<T: Scalar>(o: &PointN<T>, a: &PointN<T>, b: &PointN<T>) -> T {
    (a.get(0) - o.get(0)) * (b.get(1) - o.get(1))
        - (a.get(1) - o.get(1)) * (b.get(0) - o.get(0))
}

/// Andrew's monotone chain; returns CCW vertices, or `None` for degenerate
/// (collinear) input, which the caller handles by projection.
fn monotone_chain<T: Scalar>(points: &[PointN<T>]) -> Option<Vec<PointN<T>>> {
    let mut pts: Vec<PointN<T>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.get(0)
            .partial_cmp(&b.get(0))
            .unwrap()
            .then(a.get(1).partial_cmp(&b.get(1)).unwrap())
    });
    pts.dedup_by(|a, b| a.get(0) == b.get(0) && a.get(1) == b.get(1));
    if pts.len() < 3 {
        return None;
    }
    let mut lower: Vec<PointN<T>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= T::zero()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<PointN<T>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= T::zero()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        None
    } else {
        Some(lower)
    }
}

fn project_segment<T: Scalar>(a: &PointN<T>, b: &PointN<T>, p: &PointN<T>) -> PointN<T> {
    let ab = b.sub(a);
    let denom = ab.dot(&ab);
    if denom == T::zero() {
        return a.clone();
    }
    let t = p.sub(a).dot(&ab) / denom;
    a.lerp(b, t.max(T::zero()).min(T::one()))
}

/// Frank-Wolfe minimization of `‖z - p‖²` over the hull of `points`, with
/// exact line search per step.
fn frank_wolfe_project<T: Scalar>(points: &[PointN<T>], p: &PointN<T>) -> PointN<T> {
    let mut z = points
        .iter()
        .min_by(|a, b| {
            a.sub(p)
                .norm2()
                .partial_cmp(&b.sub(p).norm2())
                .unwrap()
        })
        .unwrap()
        .clone();
    for _ in 0..FW_ITERS {
        let g = z.sub(p);
        let v = points
            .iter()
            .min_by(|a, b| g.dot(a).partial_cmp(&g.dot(b)).unwrap())
            .unwrap();
        let d = v.sub(&z);
        let dd = d.dot(&d);
        if dd == T::zero() {
            break;
        }
        let gamma = (-g.dot(&d) / dd).max(T::zero()).min(T::one());
        if gamma == T::zero() {
            break;
        }
        z = z.add(&d.scale(gamma));
    }
    z
}
