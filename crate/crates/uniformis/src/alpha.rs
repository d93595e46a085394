//! Certified two-sided bounds on the non-compactness measure over set
//! expressions, plus an empirical covering proxy on finite clouds.
//!
//! The interval algebra is exact where the transfer rules are exact
//! (union, scale, hull, closure) and honestly one-sided elsewhere
//! (sums, thickenings); that is why the result is an interval and not a
//! single value.

use std::collections::BTreeSet;

use crate::error::{Result, UniformError};
use crate::hausdorff::PointCloud;
use crate::multifun::MultiFunction;
use crate::scalar::{lit, Scalar};
use crate::space::{ContractionConstants, PointN, PseudometricFamily};

/// Two-sided bound `[lo, hi]` on the non-compactness measure of a set;
/// `hi` may be infinite for unbounded-information atoms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> AlphaInterval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo >= T::zero() && hi >= lo) {
            return Err(UniformError::InvalidArgument(format!(
                "invalid alpha interval [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn exact(v: T) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn zero() -> Self {
        Self::exact(T::zero())
    }
}

/// Expression tree over abstract sets.
#[derive(Clone, Debug)]
pub enum SetExpr<T> {
    /// A concrete finite cloud; always precompact.
    FiniteAtom(PointCloud<T>),
    /// User-supplied axiom, e.g. a unit ball of an infinite-dimensional
    /// space with a known measure.
    AbstractAtom { name: String, alpha: AlphaInterval<T> },
    /// A ball of radius `r` with respect to every index.
    BallAtom { radius: T },
    Union(Vec<SetExpr<T>>),
    MinkowskiSum(Box<SetExpr<T>>, Box<SetExpr<T>>),
    Scale(T, Box<SetExpr<T>>),
    ConvexHull(Box<SetExpr<T>>),
    Closure(Box<SetExpr<T>>),
    /// `⋂_λ B_λ(A, ε)`.
    Thicken(Box<SetExpr<T>>, T),
    /// User axiom: the child is contained in the superset.
    SubsetAssert(Box<SetExpr<T>>, Box<SetExpr<T>>),
}

/// One applied rule in a derivation trace.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub node: String,
    pub rule: String,
    pub lo: f64,
    pub hi: f64,
}

/// Structural recursion computing the bound interval, with a rule-by-rule
/// derivation trace.
pub fn alpha_bounds<T: Scalar>(expr: &SetExpr<T>) -> Result<(AlphaInterval<T>, Vec<TraceStep>)> {
    let mut trace = Vec::new();
    let interval = bounds_rec(expr, &mut trace)?;
    Ok((interval, trace))
}

fn push<T: Scalar>(trace: &mut Vec<TraceStep>, node: &str, rule: &str, iv: AlphaInterval<T>) {
    trace.push(TraceStep {
        node: node.to_string(),
        rule: rule.to_string(),
        lo: iv.lo.to_f64().unwrap_or(f64::NAN),
        hi: iv.hi.to_f64().unwrap_or(f64::INFINITY),
    });
}

fn bounds_rec<T: Scalar>(
    expr: &SetExpr<T>,
    trace: &mut Vec<TraceStep>,
) -> Result<AlphaInterval<T>> {
    let iv = match expr {
        SetExpr::FiniteAtom(_) => {
            let iv = AlphaInterval::zero();
            push(trace, "finite", "finite-precompact", iv);
            iv
        }
        SetExpr::AbstractAtom { name, alpha } => {
            AlphaInterval::new(alpha.lo, alpha.hi)?;
            push(trace, name, "axiom", *alpha);
            *alpha
        }
        SetExpr::BallAtom { radius } => {
            if *radius <= T::zero() {
                return Err(UniformError::InvalidArgument(
                    "ball radius must be > 0".into(),
                ));
            }
            // one ball of radius r covers, so the measure is at most the
            // diameter bound 2r; no lower bound is implied
            let iv = AlphaInterval::new(T::zero(), *radius + *radius)?;
            push(trace, "ball", "ball-diameter", iv);
            iv
        }
        SetExpr::Union(children) => {
            if children.is_empty() {
                return Err(UniformError::Malformed("empty union".into()));
            }
            let mut lo = T::zero();
            let mut hi = T::zero();
            for c in children {
                let ci = bounds_rec(c, trace)?;
                lo = lo.max(ci.lo);
                hi = hi.max(ci.hi);
            }
            let iv = AlphaInterval::new(lo, hi)?;
            push(trace, "union", "union-max", iv);
            iv
        }
        SetExpr::MinkowskiSum(l, r) => {
            let li = bounds_rec(l, trace)?;
            let ri = bounds_rec(r, trace)?;
            // upper: subadditivity; lower: a sum contains a translate of
            // each summand, and translates preserve the measure
            let iv = AlphaInterval::new(li.lo.max(ri.lo), li.hi + ri.hi)?;
            push(trace, "sum", "sum-subadditive/translate-lower", iv);
            iv
        }
        SetExpr::Scale(beta, child) => {
            let ci = bounds_rec(child, trace)?;
            let b = beta.abs();
            let iv = AlphaInterval::new(b * ci.lo, b * ci.hi)?;
            push(trace, "scale", "scale-homogeneity", iv);
            iv
        }
        SetExpr::ConvexHull(child) => {
            let iv = bounds_rec(child, trace)?;
            push(trace, "hull", "hull-invariance", iv);
            iv
        }
        SetExpr::Closure(child) => {
            let iv = bounds_rec(child, trace)?;
            push(trace, "closure", "closure-invariance", iv);
            iv
        }
        SetExpr::Thicken(child, eps) => {
            if *eps <= T::zero() {
                return Err(UniformError::InvalidArgument(
                    "thickening radius must be > 0".into(),
                ));
            }
            let ci = bounds_rec(child, trace)?;
            // upper: thickening adds at most eps; lower: the set is a
            // subset of its thickening
            let iv = AlphaInterval::new(ci.lo, ci.hi + *eps)?;
            push(trace, "thicken", "thicken-upper/subset-lower", iv);
            iv
        }
        SetExpr::SubsetAssert(child, superset) => {
            let ci = bounds_rec(child, trace)?;
            let si = bounds_rec(superset, trace)?;
            let iv = AlphaInterval::new(ci.lo, ci.hi.min(si.hi))?;
            push(trace, "subset", "subset-monotone", iv);
            iv
        }
    };
    Ok(iv)
}

/// Operator expressions over one abstract set argument, restricted to the
/// rules with exact or known transfer factors.
#[derive(Clone, Debug)]
pub enum OperatorExpr<T> {
    /// The operator's set argument.
    Argument,
    Scale(T, Box<OperatorExpr<T>>),
    Translate(Vec<T>, Box<OperatorExpr<T>>),
    ConvexHull(Box<OperatorExpr<T>>),
    Closure(Box<OperatorExpr<T>>),
    /// Union with a fixed finite set (measure zero).
    UnionFinite(Box<OperatorExpr<T>>, PointCloud<T>),
}

/// Outcome of a k-set-contraction certification.
#[derive(Clone, Debug)]
pub enum KscOutcome<T> {
    Certified { factor: T, trace: Vec<TraceStep> },
    Refused { blocking_node: String, reason: String },
}

/// Symbolically composes the per-rule transfer factors of the operator and
/// certifies `α(T(A)) ≤ k α(A)` iff the composed factor is ≤ k. Operators
/// outside the closed rule set are refusals, not judgments.
pub fn certify_k_set_contraction<T: Scalar>(op: &OperatorExpr<T>, k: T) -> Result<KscOutcome<T>> {
    if k < T::zero() {
        return Err(UniformError::InvalidArgument("k must be >= 0".into()));
    }
    let mut trace = Vec::new();
    let factor = factor_rec(op, &mut trace)?;
    if factor <= k {
        Ok(KscOutcome::Certified { factor, trace })
    } else {
        Ok(KscOutcome::Refused {
            blocking_node: trace
                .last()
                .map(|s| s.node.clone())
                .unwrap_or_else(|| "argument".into()),
            reason: format!(
                "composed transfer factor {} exceeds k = {}",
                factor.to_f64().unwrap_or(f64::NAN),
                k.to_f64().unwrap_or(f64::NAN)
            ),
        })
    }
}

fn factor_rec<T: Scalar>(op: &OperatorExpr<T>, trace: &mut Vec<TraceStep>) -> Result<T> {
    let (node, rule, factor) = match op {
        OperatorExpr::Argument => ("argument", "identity-factor", T::one()),
        OperatorExpr::Scale(beta, child) => {
            let f = factor_rec(child, trace)?;
            ("scale", "scale-homogeneity", beta.abs() * f)
        }
        OperatorExpr::Translate(_, child) => {
            let f = factor_rec(child, trace)?;
            ("translate", "translate-invariance", f)
        }
        OperatorExpr::ConvexHull(child) => {
            let f = factor_rec(child, trace)?;
            ("hull", "hull-invariance", f)
        }
        OperatorExpr::Closure(child) => {
            let f = factor_rec(child, trace)?;
            ("closure", "closure-invariance", f)
        }
        OperatorExpr::UnionFinite(child, _) => {
            let f = factor_rec(child, trace)?;
            ("union-finite", "union-max-with-zero", f)
        }
    };
    trace.push(TraceStep {
        node: node.to_string(),
        rule: rule.to_string(),
        lo: factor.to_f64().unwrap_or(f64::NAN),
        hi: factor.to_f64().unwrap_or(f64::NAN),
    });
    Ok(factor)
}

/// Candidate centers for covering: the cloud points themselves plus all
/// pairwise midpoints, in a deterministic order (points first, then
/// midpoints in lexicographic pair order).
fn cover_candidates<T: Scalar>(cloud: &PointCloud<T>) -> Vec<PointN<T>> {
    let pts = cloud.points();
    let mut cands: Vec<PointN<T>> = pts.to_vec();
    let half = lit::<T>(0.5);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            cands.push(pts[i].add(&pts[j]).scale(half));
        }
    }
    cands
}

/// Greedy covering of the cloud by `d_λ`-balls centered at the candidates:
/// repeatedly pick the candidate covering the most uncovered points, ties
/// broken by lowest candidate index. `strict` selects open vs closed balls.
fn greedy_cover<T: Scalar>(
    dists: &[Vec<T>],
    n_points: usize,
    radius: T,
    strict: bool,
) -> usize {
    let in_ball = |d: T| {
        if strict {
            d < radius
        } else {
            d <= radius
        }
    };
    let mut covered = vec![false; n_points];
    let mut count = 0usize;
    while covered.iter().any(|c| !c) {
        let mut best_idx = None;
        let mut best_cover = 0usize;
        for (ci, row) in dists.iter().enumerate() {
            let c = row
                .iter()
                .enumerate()
                .filter(|(pi, d)| !covered[*pi] && in_ball(**d))
                .count();
            if c > best_cover {
                best_cover = c;
                best_idx = Some(ci);
            }
        }
        match best_idx {
            Some(ci) => {
                for (pi, d) in dists[ci].iter().enumerate() {
                    if in_ball(*d) {
                        covered[pi] = true;
                    }
                }
                count += 1;
            }
            // nothing can be covered at this radius
            None => return usize::MAX,
        }
    }
    count
}

fn candidate_distances<T: Scalar>(
    cloud: &PointCloud<T>,
    family: &PseudometricFamily<T>,
    label: &str,
) -> Result<Vec<Vec<T>>> {
    let cands = cover_candidates(cloud);
    cands
        .iter()
        .map(|c| {
            cloud
                .points()
                .iter()
                .map(|p| family.eval(label, c, p))
                .collect()
        })
        .collect()
}

/// Size of a greedy cover of the cloud by open `d_λ`-balls of radius ε;
/// upper-bounds the true covering number, deterministic by construction.
pub fn greedy_cover_number<T: Scalar>(
    cloud: &PointCloud<T>,
    family: &PseudometricFamily<T>,
    label: &str,
    eps: T,
) -> Result<usize> {
    if eps <= T::zero() {
        return Err(UniformError::InvalidArgument("eps must be > 0".into()));
    }
    let dists = candidate_distances(cloud, family, label)?;
    let n = greedy_cover(&dists, cloud.len(), eps, true);
    if n == usize::MAX {
        // eps > 0 and every point is its own candidate, so this is unreachable
        return Err(UniformError::InvalidArgument(
            "cloud not coverable at this radius".into(),
        ));
    }
    Ok(n)
}

/// Least half-width `eps` such that `r` closed intervals of length `2 eps`
/// cover the sorted values; bisection against the optimal 1-d sweep.
fn interval_cover_radius<T: Scalar>(sorted: &[T], budget: usize) -> T {
    let feasible = |eps: T| {
        let mut groups = 1usize;
        let mut start = sorted[0];
        let two_eps = eps + eps;
        for v in &sorted[1..] {
            if *v - start > two_eps {
                groups += 1;
                start = *v;
            }
        }
        groups <= budget
    };
    let span = *sorted.last().unwrap() - sorted[0];
    if span == T::zero() || feasible(T::zero()) {
        return T::zero();
    }
    let mut lo = T::zero();
    let mut hi = span / lit::<T>(2.0);
    let two = lit::<T>(2.0);
    for _ in 0..80 {
        let mid = (lo + hi) / two;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Empirical non-compactness proxy: `2 ε*` where `ε*` is the least radius
/// (per index, then maximized over indices) at which a budget of `r` balls
/// covers the cloud.
///
/// Indices reducing to a scaled coordinate difference use the exact 1-d
/// interval sweep (optimal, hence monotone under subsets and budgets);
/// other indices fall back to the greedy cover over critical radii and are
/// reported as non-certifying approximations.
pub fn empirical_alpha<T: Scalar>(
    cloud: &PointCloud<T>,
    family: &PseudometricFamily<T>,
    ball_budget: usize,
) -> Result<T> {
    if ball_budget < 1 {
        return Err(UniformError::InvalidArgument(
            "ball budget must be >= 1".into(),
        ));
    }
    let mut worst = T::zero();
    for label in family.labels() {
        let eps_star = match family.as_scaled_abs(label) {
            Some((coord, scale)) => {
                let mut vals: Vec<T> = cloud.points().iter().map(|p| p.get(coord)).collect();
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                scale * interval_cover_radius(&vals, ball_budget)
            }
            None => {
                let dists = candidate_distances(cloud, family, label)?;
                // critical radii: all candidate-to-point distances
                let mut crit: Vec<T> = dists.iter().flatten().copied().collect();
                crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
                crit.dedup();
                // binary search the smallest critical radius whose closed
                // greedy cover fits the budget
                let fits = |radius: T| greedy_cover(&dists, cloud.len(), radius, false) <= ball_budget;
                if fits(T::zero()) {
                    T::zero()
                } else {
                    let mut lo = 0usize; // known infeasible
                    let mut hi = crit.len() - 1; // feasible: every point near some candidate
                    while hi - lo > 1 {
                        let mid = (lo + hi) / 2;
                        if fits(crit[mid]) {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    crit[hi]
                }
            }
        };
        worst = worst.max(eps_star);
    }
    Ok(worst + worst)
}

/// Report of a finite-budget set-contraction check on sampled clouds.
#[derive(Clone, Debug)]
pub struct SetContractionReport<T> {
    /// `(lhs, rhs)` per cloud: `empirical_alpha(T(A))` vs
    /// `k · empirical_alpha(A) + tol`.
    pub cases: Vec<(T, T)>,
    pub worst_slack: T,
    pub violations: usize,
    /// Budget used for image clouds: the sample budget times the maximal
    /// image cardinality, matching the ball-multiplication in the covering
    /// argument for F-contractive maps.
    pub image_budget: usize,
}

impl<T> SetContractionReport<T> {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Finite-budget analogue of the set-contraction property of F-contractive
/// multi-functions: for each sampled cloud `A`,
/// `empirical_alpha(T(A), r·m) ≤ k_sup · empirical_alpha(A, r) + tol`,
/// where `m` is the maximal image cardinality.
pub fn check_set_contraction_sampled<T: Scalar>(
    mf: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    k: &ContractionConstants<T>,
    sample_clouds: &[PointCloud<T>],
    ball_budget: usize,
    tol: T,
) -> Result<SetContractionReport<T>> {
    let k_sup = k.sup();
    let mut cases = Vec::with_capacity(sample_clouds.len());
    let mut worst_slack = T::neg_infinity();
    let mut violations = 0usize;
    let mut image_budget = ball_budget;
    for a in sample_clouds {
        let m = mf.max_image_size(a.points()).max(1);
        image_budget = ball_budget * m;
        let ta = mf.image_of_cloud(a);
        let lhs = empirical_alpha(&ta, family, image_budget)?;
        let rhs = k_sup * empirical_alpha(a, family, ball_budget)? + tol;
        if lhs > rhs {
            violations += 1;
        }
        worst_slack = worst_slack.max(lhs - rhs);
        cases.push((lhs, rhs));
    }
    Ok(SetContractionReport {
        cases,
        worst_slack,
        violations,
        image_budget,
    })
}

/// Distinct labels appearing in an expression's abstract atoms; used by the
/// CLI for input validation messages.
pub fn abstract_names<T>(expr: &SetExpr<T>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_names(expr, &mut out);
    out
}

fn collect_names<T>(expr: &SetExpr<T>, out: &mut BTreeSet<String>) {
    match expr {
        SetExpr::AbstractAtom { name, .. } => {
            out.insert(name.clone());
        }
        SetExpr::Union(cs) => cs.iter().for_each(|c| collect_names(c, out)),
        SetExpr::MinkowskiSum(l, r) | SetExpr::SubsetAssert(l, r) => {
            collect_names(l, out);
            collect_names(r, out);
        }
        SetExpr::Scale(_, c)
        | SetExpr::ConvexHull(c)
        | SetExpr::Closure(c)
        | SetExpr::Thicken(c, _) => collect_names(c, out),
        SetExpr::FiniteAtom(_) | SetExpr::BallAtom { .. } => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multifun::AffineBranch;
    use crate::space::PseudometricFamily;
    use std::collections::BTreeMap;

    fn iv(lo: f64, hi: f64) -> AlphaInterval<f64> {
        AlphaInterval::new(lo, hi).unwrap()
    }

    fn atom(name: &str, lo: f64, hi: f64) -> SetExpr<f64> {
        SetExpr::AbstractAtom {
            name: name.into(),
            alpha: iv(lo, hi),
        }
    }

    #[test]
    fn alpha_bounds_rule_examples() {
        let (b, _) = alpha_bounds(&SetExpr::FiniteAtom(PointCloud::on_line(&[1.0, 2.0]))).unwrap();
        assert_eq!(b, iv(0.0, 0.0));

        let (b, _) =
            alpha_bounds(&SetExpr::Union(vec![atom("a", 1.0, 1.0), atom("b", 0.5, 0.5)])).unwrap();
        assert_eq!(b, iv(1.0, 1.0));

        let (b, _) = alpha_bounds(&SetExpr::Scale(0.5, Box::new(atom("a", 2.0, 2.0)))).unwrap();
        assert_eq!(b, iv(1.0, 1.0));

        let (b, _) = alpha_bounds(&SetExpr::ConvexHull(Box::new(atom("a", 1.0, 1.0)))).unwrap();
        assert_eq!(b, iv(1.0, 1.0));

        let (b, _) = alpha_bounds(&SetExpr::MinkowskiSum(
            Box::new(atom("a", 1.0, 1.0)),
            Box::new(atom("b", 2.0, 2.0)),
        ))
        .unwrap();
        assert_eq!(b, iv(2.0, 3.0));

        let (b, _) =
            alpha_bounds(&SetExpr::Thicken(Box::new(atom("a", 1.0, 1.0)), 0.5)).unwrap();
        assert_eq!(b, iv(1.0, 1.5));

        let (b, _) = alpha_bounds(&SetExpr::BallAtom { radius: 3.0 }).unwrap();
        assert_eq!(b, iv(0.0, 6.0));
    }

    #[test]
    fn subset_assert_narrows() {
        let e = SetExpr::SubsetAssert(
            Box::new(atom("a", 1.0, 5.0)),
            Box::new(atom("b", 0.0, 2.0)),
        );
        let (b, _) = alpha_bounds(&e).unwrap();
        assert_eq!(b, iv(1.0, 2.0));
    }

    #[test]
    fn malformed_trees_rejected() {
        assert!(alpha_bounds(&SetExpr::<f64>::Union(vec![])).is_err());
        assert!(alpha_bounds(&SetExpr::<f64>::BallAtom { radius: -1.0 }).is_err());
        assert!(alpha_bounds(&SetExpr::Thicken(Box::new(atom("a", 1.0, 1.0)), 0.0)).is_err());
    }

    #[test]
    fn certify_examples() {
        // T(A) = 0.5 co(A) + v
        let op = OperatorExpr::Translate(
            vec![1.0],
            Box::new(OperatorExpr::Scale(
                0.5,
                Box::new(OperatorExpr::ConvexHull(Box::new(OperatorExpr::Argument))),
            )),
        );
        match certify_k_set_contraction(&op, 0.5).unwrap() {
            KscOutcome::Certified { factor, .. } => assert_eq!(factor, 0.5),
            other => panic!("expected certificate, got {other:?}"),
        }

        match certify_k_set_contraction(&OperatorExpr::<f64>::Argument, 0.9).unwrap() {
            KscOutcome::Refused { .. } => {}
            other => panic!("expected refusal, got {other:?}"),
        }

        // T(A) = co(A) ∪ F with F finite, factor 1
        let op = OperatorExpr::UnionFinite(
            Box::new(OperatorExpr::ConvexHull(Box::new(OperatorExpr::Argument))),
            PointCloud::on_line(&[0.0, 5.0]),
        );
        match certify_k_set_contraction(&op, 1.0).unwrap() {
            KscOutcome::Certified { factor, .. } => assert_eq!(factor, 1.0),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn greedy_cover_examples() {
        let f = PseudometricFamily::<f64>::line();
        let single = PointCloud::on_line(&[7.0]);
        assert_eq!(greedy_cover_number(&single, &f, "d1", 0.1).unwrap(), 1);

        let integers = PointCloud::on_line(&(0..10).map(|i| i as f64).collect::<Vec<_>>());
        assert_eq!(greedy_cover_number(&integers, &f, "d1", 0.5).unwrap(), 10);
        assert_eq!(greedy_cover_number(&integers, &f, "d1", 1.5).unwrap(), 4);
    }

    #[test]
    fn empirical_alpha_examples() {
        let f = PseudometricFamily::<f64>::line();
        let single = PointCloud::on_line(&[3.0]);
        assert_eq!(empirical_alpha(&single, &f, 1).unwrap(), 0.0);

        let pair = PointCloud::on_line(&[0.0, 1.0]);
        let a = empirical_alpha(&pair, &f, 1).unwrap();
        assert!((a - 1.0).abs() < 1e-9, "got {a}");

        // budget >= cloud size: every point can be its own center
        assert_eq!(empirical_alpha(&pair, &f, 2).unwrap(), 0.0);
    }

    #[test]
    fn empirical_alpha_monotone_in_budget() {
        let f = PseudometricFamily::<f64>::line();
        let cloud = PointCloud::on_line(&[0.0, 0.3, 1.1, 2.0, 2.2, 3.5]);
        let mut prev = f64::INFINITY;
        for r in 1..=6 {
            let a = empirical_alpha(&cloud, &f, r).unwrap();
            assert!(a <= prev + 1e-12);
            prev = a;
        }
    }

    #[test]
    fn empirical_alpha_2d_fallback() {
        let f = PseudometricFamily::<f64>::new(
            2,
            vec![crate::space::Pseudometric {
                label: "e".into(),
                kind: crate::space::MetricKind::EuclideanSubset { coords: vec![0, 1] },
            }],
            true,
        )
        .unwrap();
        let cloud = PointCloud::raw(vec![
            PointN::of(&[0.0, 0.0]),
            PointN::of(&[1.0, 0.0]),
            PointN::of(&[0.0, 1.0]),
            PointN::of(&[1.0, 1.0]),
        ])
        .unwrap();
        // one ball centered at a midpoint-derived candidate must reach all
        // four corners; the best candidate is the center at distance
        // sqrt(2)/2 from each corner
        let a = empirical_alpha(&cloud, &f, 1).unwrap();
        assert!((a - std::f64::consts::SQRT_2).abs() < 1e-9, "got {a}");
        assert_eq!(empirical_alpha(&cloud, &f, 4).unwrap(), 0.0);
    }

    #[test]
    fn set_contraction_desk_scale() {
        let f = PseudometricFamily::<f64>::line();
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
        let k = ContractionConstants::new(BTreeMap::from([("d1".to_string(), 1.0 / 3.0)]))
            .unwrap();
        let clouds: Vec<_> = (0..5)
            .map(|s| {
                PointCloud::on_line(
                    &(0..50)
                        .map(|i| (i as f64 * 0.061 + s as f64 * 0.013) % 3.0)
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        let rep = check_set_contraction_sampled(&third, &f, &k, &clouds, 3, 0.05).unwrap();
        assert!(rep.passed(), "worst slack {}", rep.worst_slack);
    }

    #[test]
    fn doubling_map_fails_set_contraction() {
        let f = PseudometricFamily::<f64>::line();
        let doubling = MultiFunction::affine_branches(vec![AffineBranch {
            scale: 2.0,
            offset: vec![0.0],
        }]);
        let k = ContractionConstants::new(BTreeMap::from([("d1".to_string(), 0.5)])).unwrap();
        let cloud = PointCloud::on_line(&(0..40).map(|i| i as f64 * 0.077).collect::<Vec<_>>());
        let rep = check_set_contraction_sampled(&doubling, &f, &k, &[cloud], 3, 1e-6).unwrap();
        assert!(!rep.passed());
    }
}
