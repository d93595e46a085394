//! The potential-induced partial order, finite maximality oracles, and the
//! Bishop-Phelps / Ekeland searches over finite candidate sets.
//!
//! Maximality here is always relative to the supplied candidates; the
//! reports say so and never claim anything about the ambient space.

use std::collections::BTreeMap;

use crate::error::{Result, UniformError};
use crate::hausdorff::PointCloud;
use crate::scalar::Scalar;
use crate::solvers::PotentialFamily;
use crate::space::{PointN, PseudometricFamily};

/// A separating family together with potentials; the order below is only a
/// partial order (not merely a preorder) when the family separates points.
#[derive(Clone, Debug)]
pub struct OrderContext<T> {
    family: PseudometricFamily<T>,
    potentials: PotentialFamily<T>,
}

impl<T: Scalar> OrderContext<T> {
    pub fn new(family: PseudometricFamily<T>, potentials: PotentialFamily<T>) -> Result<Self> {
        if !family.separating() {
            return Err(UniformError::NotSeparating);
        }
        for label in potentials.labels() {
            family.index_of(label)?;
        }
        Ok(Self { family, potentials })
    }

    pub fn family(&self) -> &PseudometricFamily<T> {
        &self.family
    }

    pub fn potentials(&self) -> &PotentialFamily<T> {
        &self.potentials
    }

    /// `u ⪯ v` iff `d_λ(u, v) ≤ φ_λ(u) − φ_λ(v)` for every index, with
    /// float tolerance on the comparison.
    pub fn precedes(&self, u: &PointN<T>, v: &PointN<T>) -> Result<bool> {
        let ftol = T::float_tol();
        for label in self.potentials.labels() {
            let lhs = self.family.eval(label, u, v)?;
            let rhs = self.potentials.eval(label, u)? - self.potentials.eval(label, v)?;
            if lhs > rhs + ftol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All candidates not strictly below another candidate: `v` is kept iff no
/// distinct `w` satisfies `precedes(v, w)` with `w ≠ v` as points. Brute
/// force over all pairs; this is the oracle the searches are tested against.
pub fn maximal_elements<T: Scalar>(
    ctx: &OrderContext<T>,
    candidates: &PointCloud<T>,
) -> Result<PointCloud<T>> {
    let ftol = T::float_tol();
    let pts = candidates.points();
    let mut kept = Vec::new();
    for (i, v) in pts.iter().enumerate() {
        let mut maximal = true;
        for (j, w) in pts.iter().enumerate() {
            if i == j || ctx.family.max_dist(v, w)? <= ftol {
                continue;
            }
            if ctx.precedes(v, w)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            kept.push(v.clone());
        }
    }
    PointCloud::raw(kept)
}

/// Verification record for one returned point.
#[derive(Clone, Debug)]
pub struct VariationalReport<T> {
    /// Per index: `φ_λ(x*) + d_λ(x₀, x*)` vs `φ_λ(x₀)` (condition holds for
    /// every entry by construction).
    pub descent_slack: BTreeMap<String, T>,
    /// Per index: `d_λ(x₀, x*)`; only bounded by δ in the Ekeland variant.
    pub displacement: BTreeMap<String, T>,
    /// For every other candidate, the best strictness margin
    /// `max_μ (φ_μ(x) + d_μ(x, x*) − φ_μ(x*))`; all positive when the
    /// strict-minimality condition holds.
    pub strictness_margins: Vec<T>,
    pub strict_ok: bool,
}

fn tie_break_key<T: Scalar>(
    family: &PseudometricFamily<T>,
    x0: &PointN<T>,
    v: &PointN<T>,
) -> Result<T> {
    family.max_dist(x0, v)
}

fn verify_strictness<T: Scalar>(
    ctx: &OrderContext<T>,
    star: &PointN<T>,
    candidates: &[PointN<T>],
) -> Result<(Vec<T>, bool)> {
    let ftol = T::float_tol();
    let mut margins = Vec::new();
    let mut ok = true;
    for x in candidates {
        if ctx.family.max_dist(x, star)? <= ftol {
            continue; // the point itself (or an indistinguishable twin)
        }
        let mut best = T::neg_infinity();
        for label in ctx.potentials.labels() {
            let margin = ctx.potentials.eval(label, x)? + ctx.family.eval(label, x, star)?
                - ctx.potentials.eval(label, star)?;
            best = best.max(margin);
        }
        if best <= ftol {
            ok = false;
        }
        margins.push(best);
    }
    Ok((margins, ok))
}

/// Bishop-Phelps over a finite candidate set: restricts to the up-set of
/// `x₀`, returns a maximal element of it (ties: nearest to `x₀` under the
/// max distance, then lowest index), and verifies the descent and
/// strict-minimality conditions.
pub fn bishop_phelps_search<T: Scalar>(
    ctx: &OrderContext<T>,
    x0: &PointN<T>,
    candidates: &PointCloud<T>,
    _tol: T,
) -> Result<(PointN<T>, VariationalReport<T>)> {
    let ftol = T::float_tol();
    let in_cloud = candidates
        .points()
        .iter()
        .map(|p| ctx.family.max_dist(p, x0).map(|d| d <= ftol))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .any(|b| b);
    if !in_cloud {
        return Err(UniformError::InvalidArgument(
            "x0 must be one of the candidates".into(),
        ));
    }
    let mut upset = Vec::new();
    for p in candidates.points() {
        if ctx.precedes(x0, p)? {
            upset.push(p.clone());
        }
    }
    let upset_cloud = PointCloud::raw(upset)?;
    let maximal = maximal_elements(ctx, &upset_cloud)?;
    let mut star = maximal.points()[0].clone();
    let mut star_key = tie_break_key(&ctx.family, x0, &star)?;
    for v in &maximal.points()[1..] {
        let key = tie_break_key(&ctx.family, x0, v)?;
        if key < star_key - ftol {
            star_key = key;
            star = v.clone();
        }
    }

    let mut descent_slack = BTreeMap::new();
    let mut displacement = BTreeMap::new();
    for label in ctx.potentials.labels() {
        let d = ctx.family.eval(label, x0, &star)?;
        let slack = ctx.potentials.eval(label, x0)?
            - ctx.potentials.eval(label, &star)?
            - d;
        descent_slack.insert(label.to_string(), slack);
        displacement.insert(label.to_string(), d);
    }
    let (strictness_margins, strict_ok) =
        verify_strictness(ctx, &star, upset_cloud.points())?;
    Ok((
        star,
        VariationalReport {
            descent_slack,
            displacement,
            strictness_margins,
            strict_ok,
        },
    ))
}

/// Ekeland over a finite candidate set: checks the near-minimality
/// hypothesis `φ_λ(x₀) ≤ min φ_λ + δ_λ`, restricts to the sublevel set
/// `Y = ⋂_λ {φ_λ ≤ φ_λ(x₀)}`, and runs the Bishop-Phelps search inside.
/// The strict-minimality condition is verified against every candidate,
/// including those outside `Y`.
pub fn ekeland_search<T: Scalar>(
    ctx: &OrderContext<T>,
    x0: &PointN<T>,
    delta: &BTreeMap<String, T>,
    candidates: &PointCloud<T>,
    tol: T,
) -> Result<(PointN<T>, VariationalReport<T>)> {
    let ftol = T::float_tol();
    for label in ctx.potentials.labels() {
        let d_l = delta
            .get(label)
            .copied()
            .ok_or_else(|| UniformError::UnknownIndex(label.to_string()))?;
        if d_l <= T::zero() {
            return Err(UniformError::InvalidArgument(format!(
                "delta for `{label}` must be > 0"
            )));
        }
        let mut inf = T::infinity();
        for p in candidates.points() {
            inf = inf.min(ctx.potentials.eval(label, p)?);
        }
        let phi0 = ctx.potentials.eval(label, x0)?;
        if phi0 > inf + d_l + ftol {
            return Err(UniformError::HypothesisViolation {
                index: label.to_string(),
                detail: format!(
                    "near-minimality fails: phi(x0) = {} exceeds inf + delta = {}",
                    phi0.to_f64().unwrap_or(f64::NAN),
                    (inf + d_l).to_f64().unwrap_or(f64::NAN)
                ),
            });
        }
    }
    // sublevel restriction; x0 always qualifies
    let mut y = Vec::new();
    for p in candidates.points() {
        let mut inside = true;
        for label in ctx.potentials.labels() {
            if ctx.potentials.eval(label, p)?
                > ctx.potentials.eval(label, x0)? + ftol
            {
                inside = false;
                break;
            }
        }
        if inside {
            y.push(p.clone());
        }
    }
    let y_cloud = PointCloud::raw(y)?;
    let (star, mut report) = bishop_phelps_search(ctx, x0, &y_cloud, tol)?;
    // displacement bound delta follows from descent plus near-minimality;
    // recorded, and re-verified against the full candidate set
    let (margins, strict_ok) = verify_strictness(ctx, &star, candidates.points())?;
    report.strictness_margins = margins;
    report.strict_ok = strict_ok;
    Ok((star, report))
}
