//! Multi-functions with finite images, and the empirical checkers built on
//! them: weak semi-continuity, the universal continuity inequality,
//! F-contractivity, inwardness, residual sets and invariant-set iteration.

use std::fmt;
use std::sync::Arc;

use crate::error::{Result, UniformError};
use crate::hausdorff::{hausdorff_pseudometric, dist_to_set, PointCloud};
use crate::hull::ConvexBody;
use crate::scalar::{lit, Scalar};
use crate::space::{ContractionConstants, PointN, PseudometricFamily};

type ImageFn<T> = Arc<dyn Fn(&PointN<T>) -> PointCloud<T> + Send + Sync>;
type DomainFn<T> = Arc<dyn Fn(&PointN<T>) -> bool + Send + Sync>;
type MapFn<T> = Arc<dyn Fn(&PointN<T>) -> PointN<T> + Send + Sync>;

/// How a multi-function computes its finite image.
#[derive(Clone)]
pub enum MultiKind<T> {
    /// `T(x) = { s_j x + b_j }` over the branches, scalar `s_j`.
    AffineBranches(Vec<AffineBranch<T>>),
    /// Constant image, independent of the argument.
    Constant(PointCloud<T>),
    /// Arbitrary evaluation procedure; must be deterministic and reentrant.
    Custom(ImageFn<T>),
}

#[derive(Clone, Debug)]
pub struct AffineBranch<T> {
    pub scale: T,
    pub offset: Vec<T>,
}

/// A multi-function `T : D -> C(X)` with finite images.
#[derive(Clone)]
pub struct MultiFunction<T> {
    kind: MultiKind<T>,
    domain: Option<DomainFn<T>>,
    pub images_compact: bool,
}

impl<T: Scalar> fmt::Debug for MultiFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            MultiKind::AffineBranches(b) => format!("affine_branches({})", b.len()),
            MultiKind::Constant(c) => format!("constant({} pts)", c.len()),
            MultiKind::Custom(_) => "custom".to_string(),
        };
        write!(f, "MultiFunction({kind})")
    }
}

impl<T: Scalar> MultiFunction<T> {
    pub fn new(kind: MultiKind<T>) -> Self {
        Self {
            kind,
            domain: None,
            images_compact: true,
        }
    }

    pub fn with_domain(mut self, pred: DomainFn<T>) -> Self {
        self.domain = Some(pred);
        self
    }

    pub fn affine_branches(branches: Vec<AffineBranch<T>>) -> Self {
        Self::new(MultiKind::AffineBranches(branches))
    }

    pub fn constant(cloud: PointCloud<T>) -> Self {
        Self::new(MultiKind::Constant(cloud))
    }

    pub fn custom(f: impl Fn(&PointN<T>) -> PointCloud<T> + Send + Sync + 'static) -> Self {
        Self::new(MultiKind::Custom(Arc::new(f)))
    }

    /// The identity multi-function `T(x) = {x}`.
    pub fn identity() -> Self {
        Self::custom(|x| PointCloud::raw(vec![x.clone()]).expect("singleton"))
    }

    /// Wraps a single-valued map as a singleton-image multi-function.
    pub fn from_map(map: PointMap<T>) -> Self {
        Self::custom(move |x| PointCloud::raw(vec![map.eval(x)]).expect("singleton"))
    }

    pub fn in_domain(&self, x: &PointN<T>) -> bool {
        self.domain.as_ref().map_or(true, |d| d(x))
    }

    pub fn eval_image(&self, x: &PointN<T>) -> PointCloud<T> {
        match &self.kind {
            MultiKind::AffineBranches(branches) => {
                let pts = branches
                    .iter()
                    .map(|b| {
                        let coords = x
                            .coords()
                            .iter()
                            .zip(&b.offset)
                            .map(|(c, o)| *c * b.scale + *o)
                            .collect();
                        PointN::new(coords).expect("finite image point")
                    })
                    .collect();
                PointCloud::raw(pts).expect("nonempty branches")
            }
            MultiKind::Constant(c) => c.clone(),
            MultiKind::Custom(f) => f(x),
        }
    }

    /// Image of a finite set: the union of the pointwise images.
    pub fn image_of_cloud(&self, cloud: &PointCloud<T>) -> PointCloud<T> {
        let mut pts = Vec::new();
        for x in cloud.points() {
            pts.extend(self.eval_image(x).points().iter().cloned());
        }
        PointCloud::raw(pts).expect("nonempty union")
    }

    /// Largest image cardinality over the given sample points.
    pub fn max_image_size(&self, sample: &[PointN<T>]) -> usize {
        sample
            .iter()
            .map(|x| self.eval_image(x).len())
            .max()
            .unwrap_or(1)
    }
}

/// `d_λ(x, T(x))`.
pub fn image_distance<T: Scalar>(
    family: &PseudometricFamily<T>,
    label: &str,
    x: &PointN<T>,
    mf: &MultiFunction<T>,
) -> Result<T> {
    dist_to_set(family, label, x, &mf.eval_image(x))
}

/// A single-valued map, used by the Picard and inward solvers.
#[derive(Clone)]
pub enum PointMap<T> {
    /// `f(x)_i = scale_i x_i + offset_i`.
    AffineDiag { scale: Vec<T>, offset: Vec<T> },
    Custom(MapFn<T>),
}

impl<T: Scalar> fmt::Debug for PointMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointMap::AffineDiag { scale, offset } => {
                write!(f, "AffineDiag(scale={scale:?}, offset={offset:?})")
            }
            PointMap::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl<T: Scalar> PointMap<T> {
    pub fn affine_diag(scale: Vec<T>, offset: Vec<T>) -> Result<Self> {
        if scale.len() != offset.len() || scale.is_empty() {
            return Err(UniformError::InvalidArgument(
                "scale and offset must be nonempty and of equal length".into(),
            ));
        }
        Ok(Self::AffineDiag { scale, offset })
    }

    pub fn custom(f: impl Fn(&PointN<T>) -> PointN<T> + Send + Sync + 'static) -> Self {
        Self::Custom(Arc::new(f))
    }

    pub fn eval(&self, x: &PointN<T>) -> PointN<T> {
        match self {
            PointMap::AffineDiag { scale, offset } => {
                let coords = x
                    .coords()
                    .iter()
                    .zip(scale.iter().zip(offset))
                    .map(|(c, (s, o))| *c * *s + *o)
                    .collect();
                PointN::new(coords).expect("finite map value")
            }
            PointMap::Custom(f) => f(x),
        }
    }
}

/// Which empirical check produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    WeakLower,
    WeakUpper,
    ImageDistanceInequality,
    FContractive,
}

#[derive(Clone, Debug)]
pub struct Violation<T> {
    pub witness: Vec<PointN<T>>,
    pub values: Vec<T>,
    pub note: String,
}

/// Result of an empirical (grid-resolution-limited) property check.
#[derive(Clone, Debug)]
pub struct SemicontinuityReport<T> {
    pub kind: CheckKind,
    pub violations: Vec<Violation<T>>,
    pub samples_tested: usize,
}

impl<T> SemicontinuityReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn probe_points<T: Scalar>(x: &PointN<T>, radius: T) -> Vec<PointN<T>> {
    let half = radius / lit::<T>(2.0);
    let mut out = Vec::with_capacity(4 * x.dim());
    for i in 0..x.dim() {
        for r in [radius, -radius, half, -half] {
            let mut coords = x.coords().to_vec();
            coords[i] = coords[i] + r;
            out.push(PointN::new(coords).expect("finite probe"));
        }
    }
    out
}

/// Empirical weak lower semi-continuity: each grid point in the strict
/// sublevel set `{d_λ(x,Tx) < α}` must keep its sampled probe neighborhood
/// (radius ≤ `probe_radius`) inside the set.
pub fn check_weak_lower_sc<T: Scalar>(
    mf: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    label: &str,
    alpha: T,
    grid: &[PointN<T>],
    probe_radius: T,
) -> Result<SemicontinuityReport<T>> {
    if alpha < T::zero() {
        return Err(UniformError::InvalidArgument("alpha must be >= 0".into()));
    }
    if probe_radius <= T::zero() {
        return Err(UniformError::InvalidArgument(
            "probe radius must be > 0".into(),
        ));
    }
    let mut violations = Vec::new();
    let mut samples = 0usize;
    for x in grid.iter().filter(|x| mf.in_domain(x)) {
        samples += 1;
        let d = image_distance(family, label, x, mf)?;
        if d < alpha {
            for probe in probe_points(x, probe_radius) {
                if !mf.in_domain(&probe) {
                    continue;
                }
                let dp = image_distance(family, label, &probe, mf)?;
                if dp >= alpha {
                    violations.push(Violation {
                        witness: vec![x.clone(), probe],
                        values: vec![d, dp],
                        note: "probe left the strict sublevel set".into(),
                    });
                }
            }
        }
    }
    Ok(SemicontinuityReport {
        kind: CheckKind::WeakLower,
        violations,
        samples_tested: samples,
    })
}

/// Empirical weak upper semi-continuity: mirror of the lower check for the
/// strict superlevel set `{d_λ(x,Tx) > α}`.
pub fn check_weak_upper_sc<T: Scalar>(
    mf: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    label: &str,
    alpha: T,
    grid: &[PointN<T>],
    probe_radius: T,
) -> Result<SemicontinuityReport<T>> {
    if alpha < T::zero() {
        return Err(UniformError::InvalidArgument("alpha must be >= 0".into()));
    }
    if probe_radius <= T::zero() {
        return Err(UniformError::InvalidArgument(
            "probe radius must be > 0".into(),
        ));
    }
    let mut violations = Vec::new();
    let mut samples = 0usize;
    for x in grid.iter().filter(|x| mf.in_domain(x)) {
        samples += 1;
        let d = image_distance(family, label, x, mf)?;
        if d > alpha {
            for probe in probe_points(x, probe_radius) {
                if !mf.in_domain(&probe) {
                    continue;
                }
                let dp = image_distance(family, label, &probe, mf)?;
                if dp <= alpha {
                    violations.push(Violation {
                        witness: vec![x.clone(), probe],
                        values: vec![d, dp],
                        note: "probe left the strict superlevel set".into(),
                    });
                }
            }
        }
    }
    Ok(SemicontinuityReport {
        kind: CheckKind::WeakUpper,
        violations,
        samples_tested: samples,
    })
}

/// The inequality `|d_λ(u,Tu) - d_λ(v,Tv)| ≤ d_λ(u,v) + H^λ(Tv,Tu)`.
/// A theorem for every multi-function: any violation is an implementation
/// bug, not a property of `T`.
pub fn check_image_distance_inequality<T: Scalar>(
    mf: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    label: &str,
    sample_pairs: &[(PointN<T>, PointN<T>)],
) -> Result<SemicontinuityReport<T>> {
    let ftol = T::float_tol();
    let mut violations = Vec::new();
    for (u, v) in sample_pairs {
        let du = image_distance(family, label, u, mf)?;
        let dv = image_distance(family, label, v, mf)?;
        let lhs = (du - dv).abs();
        let h = hausdorff_pseudometric(family, label, &mf.eval_image(v), &mf.eval_image(u))?;
        let rhs = family.eval(label, u, v)? + h;
        if lhs > rhs + ftol {
            violations.push(Violation {
                witness: vec![u.clone(), v.clone()],
                values: vec![lhs, rhs],
                note: "continuity inequality failed".into(),
            });
        }
    }
    Ok(SemicontinuityReport {
        kind: CheckKind::ImageDistanceInequality,
        violations,
        samples_tested: sample_pairs.len(),
    })
}

/// Per-index report of an F-contractivity check.
#[derive(Clone, Debug)]
pub struct FContractiveReport<T> {
    pub worst_ratio: std::collections::BTreeMap<String, T>,
    pub violations: Vec<Violation<T>>,
    pub samples_tested: usize,
}

impl<T> FContractiveReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `H^λ(Tx, Ty) ≤ k_λ d_λ(x, y)` per index on every sampled pair,
/// reporting the worst observed ratio per index.
pub fn check_f_contractive<T: Scalar>(
    mf: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    k: &ContractionConstants<T>,
    sample_pairs: &[(PointN<T>, PointN<T>)],
) -> Result<FContractiveReport<T>> {
    let ftol = T::float_tol();
    let mut worst: std::collections::BTreeMap<String, T> = family
        .labels()
        .map(|l| (l.to_string(), T::zero()))
        .collect();
    let mut violations = Vec::new();
    for (x, y) in sample_pairs {
        let tx = mf.eval_image(x);
        let ty = mf.eval_image(y);
        for label in family.labels() {
            let h = hausdorff_pseudometric(family, label, &tx, &ty)?;
            let d = family.eval(label, x, y)?;
            let kl = k.get(label)?;
            if d > T::zero() {
                let ratio = h / d;
                let w = worst.get_mut(label).unwrap();
                *w = w.max(ratio);
            }
            if h > kl * d + ftol {
                violations.push(Violation {
                    witness: vec![x.clone(), y.clone()],
                    values: vec![h, kl * d],
                    note: format!("index `{label}`"),
                });
            }
        }
    }
    Ok(FContractiveReport {
        worst_ratio: worst,
        violations,
        samples_tested: sample_pairs.len(),
    })
}

/// Whether `t` lies in the inner set `I_K(x) = x + {c(y-x) : y ∈ K, c ≥ 1}`,
/// with `K` read as the convex hull of the cloud. Exact in 1-d/2-d, hull
/// projection with tolerance otherwise.
pub fn inner_set_membership<T: Scalar>(
    k_cloud: &PointCloud<T>,
    x: &PointN<T>,
    t: &PointN<T>,
    tol: T,
) -> Result<bool> {
    let body = ConvexBody::from_points(k_cloud.points());
    if !body.contains(x, tol) {
        return Err(UniformError::InvalidArgument(
            "base point lies outside the hull of K".into(),
        ));
    }
    if t.sub(x).norm2() <= tol {
        return Ok(true);
    }
    // t ∈ I_K(x) iff some point of the segment (x, t] at parameter s = 1/c
    // lies in hull(K); the feasible parameter set is [0, s_max].
    let s_max = body.ray_exit(x, t, tol);
    Ok(s_max > tol)
}

/// Whether `t` lies in the envelope of the inner set: some `z ∈ I_K(x)` has
/// `‖t-z‖_λ ≤ η ‖t-x‖_λ` for every index and every η of the schedule.
/// Decided by minimizing the worst per-index ratio over scaled copies of the
/// hull and comparing to the schedule floor.
pub fn envelope_membership<T: Scalar>(
    k_cloud: &PointCloud<T>,
    x: &PointN<T>,
    t: &PointN<T>,
    family: &PseudometricFamily<T>,
    eta_schedule: &[T],
    tol: T,
) -> Result<bool> {
    if eta_schedule.is_empty()
        || eta_schedule.iter().any(|e| *e <= T::zero())
        || eta_schedule.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(UniformError::InvalidArgument(
            "eta schedule must be a decreasing positive sequence".into(),
        ));
    }
    // zero right-hand side forces z = t = x, which is in I_K(x)
    if t.sub(x).norm2() <= tol {
        return Ok(true);
    }
    if inner_set_membership(k_cloud, x, t, tol)? {
        return Ok(true);
    }
    let eta_floor = *eta_schedule.last().unwrap();
    let ratio_at = |z: &PointN<T>| -> Result<T> {
        let mut worst = T::zero();
        for label in family.labels() {
            let num = family.eval(label, t, z)?;
            let den = family.eval(label, t, x)?;
            if den <= tol {
                if num > tol {
                    return Ok(T::infinity());
                }
            } else {
                worst = worst.max(num / den);
            }
        }
        Ok(worst)
    };
    // I_K(x) is the increasing union of x + c (K - x) over c ≥ 1
    let mut best = T::infinity();
    let mut c = T::one();
    let two = lit::<T>(2.0);
    for _ in 0..42 {
        let body = ConvexBody::scaled_about(k_cloud.points(), x, c);
        let z = body.project(t);
        best = best.min(ratio_at(&z)?);
        if best <= eta_floor + tol {
            return Ok(true);
        }
        c = c * two;
    }
    Ok(best <= eta_floor + tol)
}

/// Grid points `x` with `max_λ d_λ(x, Tx) ≤ η`: η-approximate fixed points.
/// An empty result is valid and returned as an empty vector.
pub fn residual_set_locator<T: Scalar>(
    mf: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    grid: &[PointN<T>],
    eta: T,
) -> Result<Vec<PointN<T>>> {
    if eta < T::zero() {
        return Err(UniformError::InvalidArgument("eta must be >= 0".into()));
    }
    let mut out = Vec::new();
    for x in grid.iter().filter(|x| mf.in_domain(x)) {
        let mut worst = T::zero();
        for label in family.labels() {
            worst = worst.max(image_distance(family, label, x, mf)?);
        }
        if worst <= eta {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Iterates `C_0 = {x_0}`, `C_{n+1} = {x_0} ∪ T(C_n)` to the least
/// `T`-invariant family containing the seed, within the finite universe.
pub fn invariant_set_iterate<T: Scalar>(
    mf: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    seed: &PointN<T>,
    universe: &PointCloud<T>,
    max_iter: usize,
) -> Result<PointCloud<T>> {
    let ftol = T::float_tol();
    let locate = |p: &PointN<T>| -> Result<usize> {
        for (i, u) in universe.points().iter().enumerate() {
            if family.max_dist(p, u)? <= ftol {
                return Ok(i);
            }
        }
        Err(UniformError::InvalidArgument(
            "multi-function left the universe".into(),
        ))
    };
    let seed_idx = locate(seed)?;
    let mut members = vec![false; universe.len()];
    members[seed_idx] = true;
    for _ in 0..max_iter {
        let mut next = members.clone();
        for (i, m) in members.iter().enumerate() {
            if *m {
                for y in mf.eval_image(&universe.points()[i]).points() {
                    next[locate(y)?] = true;
                }
            }
        }
        if next == members {
            let pts = members
                .iter()
                .enumerate()
                .filter(|(_, m)| **m)
                .map(|(i, _)| universe.points()[i].clone())
                .collect();
            return PointCloud::raw(pts);
        }
        members = next;
    }
    Err(UniformError::NonClosure(max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::PseudometricFamily;
    use std::collections::BTreeMap;

    fn line() -> PseudometricFamily<f64> {
        PseudometricFamily::line()
    }

    fn grid_1d(lo: f64, hi: f64, step: f64) -> Vec<PointN<f64>> {
        let mut out = Vec::new();
        let mut v = lo;
        while v <= hi + 1e-12 {
            out.push(PointN::of(&[v]));
            v += step;
        }
        out
    }

    #[test]
    fn weak_lower_identity_passes() {
        let f = line();
        let t = MultiFunction::identity();
        let rep =
            check_weak_lower_sc(&t, &f, "d1", 0.5, &grid_1d(-1.0, 1.0, 0.1), 0.05).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn weak_lower_boundary_violations() {
        let f = line();
        // T(x) = {0}: sublevel set for alpha = 1 is the open interval (-1, 1)
        let t = MultiFunction::constant(PointCloud::on_line(&[0.0]));
        let rep =
            check_weak_lower_sc(&t, &f, "d1", 1.0, &grid_1d(-2.0, 2.0, 0.1), 0.05).unwrap();
        assert!(!rep.passed());
        for v in &rep.violations {
            let x = v.witness[0].get(0).abs();
            assert!(
                (x - 1.0).abs() <= 0.05 + 1e-9,
                "violation away from the boundary at {x}"
            );
        }
    }

    #[test]
    fn weak_lower_vacuous_when_sublevel_empty() {
        let f = line();
        let t = MultiFunction::affine_branches(vec![AffineBranch {
            scale: 1.0,
            offset: vec![1.0],
        }]);
        let rep =
            check_weak_lower_sc(&t, &f, "d1", 0.5, &grid_1d(-1.0, 1.0, 0.1), 0.05).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn weak_upper_examples() {
        let f = line();
        let ident = MultiFunction::identity();
        let rep =
            check_weak_upper_sc(&ident, &f, "d1", 0.0, &grid_1d(-1.0, 1.0, 0.1), 0.05).unwrap();
        assert!(rep.passed());

        // step-image map: {0} for x < 0, {x} for x >= 0
        let step = MultiFunction::custom(|x: &PointN<f64>| {
            if x.get(0) < 0.0 {
                PointCloud::on_line(&[0.0])
            } else {
                PointCloud::raw(vec![x.clone()]).unwrap()
            }
        });
        let rep =
            check_weak_upper_sc(&step, &f, "d1", 0.5, &grid_1d(-2.0, 2.0, 0.1), 0.04).unwrap();
        assert!(rep.passed(), "violations: {:?}", rep.violations);
    }

    #[test]
    fn image_distance_examples() {
        let f = line();
        let halving = MultiFunction::affine_branches(vec![AffineBranch {
            scale: 0.5,
            offset: vec![0.0],
        }]);
        let pairs = vec![
            (PointN::of(&[0.0]), PointN::of(&[0.0])),
            (PointN::of(&[0.0]), PointN::of(&[4.0])),
        ];
        assert!(check_image_distance_inequality(&halving, &f, "d1", &pairs)
            .unwrap()
            .passed());

        let translating = MultiFunction::affine_branches(vec![
            AffineBranch {
                scale: 1.0,
                offset: vec![1.0],
            },
            AffineBranch {
                scale: 1.0,
                offset: vec![3.0],
            },
        ]);
        let pairs = vec![(PointN::of(&[1.0]), PointN::of(&[2.0]))];
        assert!(check_image_distance_inequality(&translating, &f, "d1", &pairs)
            .unwrap()
            .passed());
    }

    #[test]
    fn f_contractive_examples() {
        let f = line();
        let k3 = ContractionConstants::new(BTreeMap::from([("d1".to_string(), 1.0 / 3.0)]))
            .unwrap();
        let third = MultiFunction::affine_branches(vec![
            AffineBranch {
                scale: 1.0 / 3.0,
                offset: vec![0.0],
            },
            AffineBranch {
                scale: 1.0 / 3.0,
                offset: vec![1.0],
            },
        ]);
        let pairs: Vec<_> = (0..10)
            .map(|i| (PointN::of(&[i as f64 * 0.3]), PointN::of(&[i as f64 * -0.2 + 1.0])))
            .collect();
        let rep = check_f_contractive(&third, &f, &k3, &pairs).unwrap();
        assert!(rep.passed());
        assert!((rep.worst_ratio["d1"] - 1.0 / 3.0).abs() < 1e-9);

        let constant = MultiFunction::constant(PointCloud::on_line(&[1.0, 2.0]));
        let k0 = ContractionConstants::new(BTreeMap::from([("d1".to_string(), 0.0)])).unwrap();
        let rep = check_f_contractive(&constant, &f, &k0, &pairs).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.worst_ratio["d1"], 0.0);

        let doubling = MultiFunction::affine_branches(vec![AffineBranch {
            scale: 2.0,
            offset: vec![0.0],
        }]);
        let k9 = ContractionConstants::new(BTreeMap::from([("d1".to_string(), 0.9)])).unwrap();
        let rep = check_f_contractive(&doubling, &f, &k9, &pairs).unwrap();
        assert!(!rep.passed());
        assert!(rep.worst_ratio["d1"] > 1.9);
    }

    #[test]
    fn inner_set_examples() {
        let k = PointCloud::on_line(&[0.0, 1.0]);
        // t in K
        assert!(inner_set_membership(&k, &PointN::of(&[0.5]), &PointN::of(&[0.9]), 1e-9).unwrap());
        // reachable beyond the far face
        assert!(inner_set_membership(&k, &PointN::of(&[0.0]), &PointN::of(&[1.2]), 1e-9).unwrap());
        // blocked at the near face
        assert!(!inner_set_membership(&k, &PointN::of(&[1.0]), &PointN::of(&[1.5]), 1e-9).unwrap());
        // base point outside the hull is a contract violation
        assert!(inner_set_membership(&k, &PointN::of(&[2.0]), &PointN::of(&[3.0]), 1e-9).is_err());
    }

    #[test]
    fn envelope_examples() {
        let f = line();
        let k = PointCloud::on_line(&[0.0, 1.0]);
        let sched = [1.0, 0.5, 0.25, 0.125, 1e-3];
        // t in I_K(x)
        assert!(envelope_membership(&k, &PointN::of(&[0.0]), &PointN::of(&[1.2]), &f, &sched, 1e-9)
            .unwrap());
        // blocked direction stays blocked in the envelope
        assert!(
            !envelope_membership(&k, &PointN::of(&[1.0]), &PointN::of(&[1.5]), &f, &sched, 1e-9)
                .unwrap()
        );
        // interior base point sees the whole line
        assert!(
            envelope_membership(&k, &PointN::of(&[0.5]), &PointN::of(&[-7.0]), &f, &sched, 1e-9)
                .unwrap()
        );
    }

    #[test]
    fn residual_set_examples() {
        let f = line();
        let grid = grid_1d(0.0, 1.0, 0.1);

        let ident = MultiFunction::identity();
        assert_eq!(
            residual_set_locator(&ident, &f, &grid, 0.0).unwrap().len(),
            grid.len()
        );

        let halving = MultiFunction::affine_branches(vec![AffineBranch {
            scale: 0.5,
            offset: vec![0.0],
        }]);
        let r = residual_set_locator(&halving, &f, &grid, 0.05 + 1e-12).unwrap();
        let vals: Vec<f64> = r.iter().map(|p| p.get(0)).collect();
        assert_eq!(vals.len(), 2);
        assert!((vals[0] - 0.0).abs() < 1e-9 && (vals[1] - 0.1).abs() < 1e-9);

        let shift = MultiFunction::affine_branches(vec![AffineBranch {
            scale: 1.0,
            offset: vec![1.0],
        }]);
        assert!(residual_set_locator(&shift, &f, &grid, 0.5).unwrap().is_empty());
    }

    #[test]
    fn residual_set_monotone_in_eta() {
        let f = line();
        let grid = grid_1d(0.0, 1.0, 0.05);
        let halving = MultiFunction::affine_branches(vec![AffineBranch {
            scale: 0.5,
            offset: vec![0.0],
        }]);
        let small = residual_set_locator(&halving, &f, &grid, 0.02).unwrap();
        let large = residual_set_locator(&halving, &f, &grid, 0.2).unwrap();
        for p in &small {
            assert!(large.iter().any(|q| q == p));
        }
    }

    #[test]
    fn invariant_set_examples() {
        let f = line();
        let universe = PointCloud::on_line(&[0.0, 1.0, 2.0]);

        let ident = MultiFunction::identity();
        let c = invariant_set_iterate(&ident, &f, &PointN::of(&[1.0]), &universe, 10).unwrap();
        assert_eq!(c.len(), 1);

        // T(0)={0}, T(1)={0}, T(2)={1}
        let chain = MultiFunction::custom(|x: &PointN<f64>| {
            let v = x.get(0);
            let img = if v < 0.5 {
                0.0
            } else if v < 1.5 {
                0.0
            } else {
                1.0
            };
            PointCloud::on_line(&[img])
        });
        let c = invariant_set_iterate(&chain, &f, &PointN::of(&[2.0]), &universe, 10).unwrap();
        assert_eq!(c.len(), 3);

        let constant = MultiFunction::constant(PointCloud::on_line(&[0.0]));
        let c = invariant_set_iterate(&constant, &f, &PointN::of(&[0.0]), &universe, 10).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn invariant_set_non_closure() {
        let f = line();
        let universe = PointCloud::on_line(&[0.0, 1.0, 2.0]);
        let chain = MultiFunction::custom(|x: &PointN<f64>| {
            let v = x.get(0);
            PointCloud::on_line(&[if v > 0.5 { v - 1.0 } else { 0.0 }])
        });
        // needs 3 rounds to stabilize; 1 is not enough
        assert!(matches!(
            invariant_set_iterate(&chain, &f, &PointN::of(&[2.0]), &universe, 1),
            Err(UniformError::NonClosure(_))
        ));
    }
}
