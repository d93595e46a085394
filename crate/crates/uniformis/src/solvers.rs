//! Fixed-point iteration: Picard for contractive maps, Nadler iteration for
//! contractive multi-functions, potential descent, and the weakly-inward
//! solver on a convex body.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Result, UniformError};
use crate::hausdorff::PointCloud;
use crate::hull::ConvexBody;
use crate::multifun::{MultiFunction, PointMap};
use crate::scalar::{lit, Scalar};
use crate::space::{ContractionConstants, PointN, PseudometricFamily};

/// Shared iteration budget and residual target.
#[derive(Clone, Copy, Debug)]
pub struct SolverConfig<T> {
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Scalar> SolverConfig<T> {
    pub fn new(tol: T, max_iter: usize) -> Result<Self> {
        if tol <= T::zero() {
            return Err(UniformError::InvalidArgument("tol must be > 0".into()));
        }
        if max_iter < 1 {
            return Err(UniformError::InvalidArgument(
                "max_iter must be >= 1".into(),
            ));
        }
        Ok(Self { tol, max_iter })
    }

    /// Summable slack schedule `ε_n = tol · 2⁻ⁿ`.
    pub fn slack(&self, n: usize) -> T {
        let mut s = self.tol;
        let half = lit::<T>(0.5);
        for _ in 0..n {
            s = s * half;
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Converged,
    MaxIter,
    Stalled,
}

/// Full record of a solve: the iterate path, per-step residual maps
/// `λ → d_λ(x_n, x_{n+1})`, and the termination reason.
#[derive(Clone, Debug)]
pub struct SolverTrace<T> {
    pub iterates: Vec<PointN<T>>,
    pub residuals: Vec<BTreeMap<String, T>>,
    pub termination: Termination,
    pub a_priori_bound_satisfied: bool,
}

impl<T: Scalar> SolverTrace<T> {
    pub fn final_point(&self) -> &PointN<T> {
        self.iterates.last().expect("nonempty trace")
    }

    pub fn steps(&self) -> usize {
        self.residuals.len()
    }
}

type PotentialFn<T> = Arc<dyn Fn(&PointN<T>) -> T + Send + Sync>;

/// Indexed family of bounded-below potentials `{φ_λ}`; the declared lower
/// bounds are asserted on every evaluation.
#[derive(Clone)]
pub struct PotentialFamily<T> {
    per_index: BTreeMap<String, PotentialFn<T>>,
    lower_bounds: BTreeMap<String, T>,
}

impl<T: Scalar> PotentialFamily<T> {
    pub fn new(
        per_index: BTreeMap<String, PotentialFn<T>>,
        lower_bounds: BTreeMap<String, T>,
    ) -> Result<Self> {
        if per_index.is_empty() {
            return Err(UniformError::InvalidArgument(
                "potential family must be nonempty".into(),
            ));
        }
        if per_index.keys().ne(lower_bounds.keys()) {
            return Err(UniformError::InvalidArgument(
                "potential labels and lower-bound labels must coincide".into(),
            ));
        }
        Ok(Self {
            per_index,
            lower_bounds,
        })
    }

    /// The same potential and bound for every index of the family.
    pub fn uniform(
        family: &PseudometricFamily<T>,
        phi: impl Fn(&PointN<T>) -> T + Send + Sync + 'static,
        lower_bound: T,
    ) -> Result<Self> {
        let f: PotentialFn<T> = Arc::new(phi);
        Self::new(
            family
                .labels()
                .map(|l| (l.to_string(), Arc::clone(&f)))
                .collect(),
            family.labels().map(|l| (l.to_string(), lower_bound)).collect(),
        )
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.per_index.keys().map(String::as_str)
    }

    pub fn lower_bound(&self, label: &str) -> Result<T> {
        self.lower_bounds
            .get(label)
            .copied()
            .ok_or_else(|| UniformError::UnknownIndex(label.to_string()))
    }

    pub fn eval(&self, label: &str, x: &PointN<T>) -> Result<T> {
        let f = self
            .per_index
            .get(label)
            .ok_or_else(|| UniformError::UnknownIndex(label.to_string()))?;
        let v = f(x);
        let bound = self.lower_bounds[label];
        if v < bound - T::float_tol() {
            return Err(UniformError::PotentialBelowBound {
                index: label.to_string(),
                value: v.to_f64().unwrap_or(f64::NAN),
                bound: bound.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(v)
    }

    /// All potentials at a point, in label order.
    pub fn eval_all(&self, x: &PointN<T>) -> Result<BTreeMap<String, T>> {
        self.labels()
            .map(|l| Ok((l.to_string(), self.eval(l, x)?)))
            .collect()
    }
}

impl<T> std::fmt::Debug for PotentialFamily<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PotentialFamily")
            .field("labels", &self.per_index.keys().collect::<Vec<_>>())
            .finish()
    }
}

fn residual_map<T: Scalar>(
    family: &PseudometricFamily<T>,
    x: &PointN<T>,
    y: &PointN<T>,
) -> Result<BTreeMap<String, T>> {
    family.all_dists(x, y)
}

/// Picard iteration `x_{n+1} = f(x_n)` with the a-posteriori stop
/// `max_λ d_λ(x_n, x_{n+1}) · k_sup / (1 − k_sup) ≤ tol`, which bounds the
/// remaining distance to the fixed point.
pub fn picard_solve<T: Scalar>(
    f: &PointMap<T>,
    family: &PseudometricFamily<T>,
    k: &ContractionConstants<T>,
    x0: &PointN<T>,
    cfg: &SolverConfig<T>,
) -> Result<(PointN<T>, SolverTrace<T>)> {
    let k_sup = k.sup();
    let gain = k_sup / (T::one() - k_sup);
    let mut iterates = vec![x0.clone()];
    let mut residuals = Vec::new();
    let mut termination = Termination::MaxIter;
    for _ in 0..cfg.max_iter {
        let x = iterates.last().unwrap().clone();
        let next = f.eval(&x);
        let r = residual_map(family, &x, &next)?;
        let step = r.values().copied().fold(T::zero(), T::max);
        iterates.push(next);
        residuals.push(r);
        if step * gain <= cfg.tol && step <= cfg.tol {
            termination = Termination::Converged;
            break;
        }
    }
    let star = iterates.last().unwrap().clone();
    // post-hoc a-priori bound against the returned point
    let d0 = if iterates.len() > 1 {
        family.max_dist(&iterates[0], &iterates[1])?
    } else {
        T::zero()
    };
    let mut bound_ok = true;
    let mut pow = T::one();
    for x in &iterates {
        let lhs = family.max_dist(x, &star)?;
        let rhs = pow / (T::one() - k_sup) * d0 + cfg.tol;
        if lhs > rhs + T::float_tol() {
            bound_ok = false;
        }
        pow = pow * k_sup;
    }
    Ok((
        star,
        SolverTrace {
            iterates,
            residuals,
            termination,
            a_priori_bound_satisfied: bound_ok,
        },
    ))
}

/// How the next iterate is picked from a finite image.
#[derive(Clone, Copy, Debug)]
pub enum SelectionStrategy {
    /// Minimize `ρ(x_n, ·)` over the image (classical nearest selection).
    NearestRho,
    /// Always take the image point at this index; out-of-range indices clamp
    /// to the last point.
    Branch(usize),
}

fn rho_hausdorff<T: Scalar>(
    family: &PseudometricFamily<T>,
    a: &PointCloud<T>,
    b: &PointCloud<T>,
) -> Result<T> {
    let excess = |from: &PointCloud<T>, to: &PointCloud<T>| -> Result<T> {
        let mut worst = T::zero();
        for x in from.points() {
            let mut best = T::infinity();
            for y in to.points() {
                best = best.min(family.sup_metric_rho(x, y)?);
            }
            worst = worst.max(best);
        }
        Ok(worst)
    };
    Ok(excess(a, b)?.max(excess(b, a)?))
}

fn residual_to_image<T: Scalar>(
    family: &PseudometricFamily<T>,
    x: &PointN<T>,
    image: &PointCloud<T>,
) -> Result<T> {
    let mut worst = T::zero();
    for label in family.labels() {
        let mut best = T::infinity();
        for y in image.points() {
            best = best.min(family.eval(label, x, y)?);
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

/// Nadler iteration for multi-functions with finite images. Stops when
/// `max_λ d_λ(x_n, T(x_n)) ≤ tol`; flags stalling when the residual fails
/// to decrease over a 10-step window.
pub fn nadler_solve<T: Scalar>(
    t: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    k: &ContractionConstants<T>,
    x0: &PointN<T>,
    cfg: &SolverConfig<T>,
    strategy: SelectionStrategy,
) -> Result<(PointN<T>, SolverTrace<T>)> {
    let k_sup = k.sup();
    let mut iterates = vec![x0.clone()];
    let mut residuals = Vec::new();
    let mut termination = Termination::MaxIter;
    let mut prev_image: Option<PointCloud<T>> = None;
    let mut window_best = T::infinity();
    let mut window_len = 0usize;
    for n in 0..cfg.max_iter {
        let x = iterates.last().unwrap().clone();
        let image = t.eval_image(&x);
        let res = residual_to_image(family, &x, &image)?;
        if res <= cfg.tol {
            termination = Termination::Converged;
            break;
        }
        if res < window_best - T::float_tol() {
            window_best = res;
            window_len = 0;
        } else {
            window_len += 1;
            if window_len >= 10 {
                termination = Termination::Stalled;
                break;
            }
        }
        let next = match strategy {
            SelectionStrategy::NearestRho => {
                // the classical construction caps the step at
                // H^ρ(T(x_{n−1}), T(x_n)) + ε_n; finite images admit an
                // exact minimizer, so we record the cap as a bound check
                // rather than constrain the choice
                let cap = match &prev_image {
                    Some(prev) => rho_hausdorff(family, prev, &image)? + cfg.slack(n),
                    None => T::infinity(),
                };
                let best = image
                    .points()
                    .iter()
                    .map(|y| family.sup_metric_rho(&x, y).map(|d| (y, d)))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .min_by(|(_, a), (_, b)| a.partial_cmp(b).unwrap())
                    .map(|(y, _)| y.clone())
                    .unwrap();
                debug_assert!(
                    family.sup_metric_rho(&x, &best)? <= cap + T::float_tol()
                        || k_sup >= T::one()
                );
                best
            }
            SelectionStrategy::Branch(i) => {
                image.points()[i.min(image.len() - 1)].clone()
            }
        };
        let r = residual_map(family, &x, &next)?;
        iterates.push(next);
        residuals.push(r);
        prev_image = Some(image);
    }
    let star = iterates.last().unwrap().clone();
    Ok((
        star,
        SolverTrace {
            iterates,
            residuals,
            termination,
            a_priori_bound_satisfied: true,
        },
    ))
}

/// Per-index distance gaps of a selected image point.
#[derive(Clone, Debug)]
pub struct GapReport<T> {
    /// `λ → d_λ(x, y) − d_λ(x, T(x))` for the returned `y`.
    pub gaps: BTreeMap<String, T>,
    /// Whether all gaps vanish (a simultaneous minimizer exists and was
    /// returned).
    pub simultaneous: bool,
}

/// Picks `y ∈ T(x)` minimizing the worst per-index distance gap; ties break
/// to the lowest image index. Whenever some image point attains every
/// per-index minimum simultaneously, it is returned with all gaps zero.
pub fn metric_selection<T: Scalar>(
    t: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    x: &PointN<T>,
) -> Result<(PointN<T>, GapReport<T>)> {
    let image = t.eval_image(x);
    let mut floor: BTreeMap<String, T> = BTreeMap::new();
    for label in family.labels() {
        let mut best = T::infinity();
        for y in image.points() {
            best = best.min(family.eval(label, x, y)?);
        }
        floor.insert(label.to_string(), best);
    }
    let mut best_idx = 0usize;
    let mut best_gap = T::infinity();
    for (i, y) in image.points().iter().enumerate() {
        let mut worst = T::zero();
        for (label, f) in &floor {
            worst = worst.max(family.eval(label, x, y)? - *f);
        }
        if worst < best_gap - T::float_tol() {
            best_gap = worst;
            best_idx = i;
        }
    }
    let y = image.points()[best_idx].clone();
    let mut gaps = BTreeMap::new();
    let mut simultaneous = true;
    for (label, f) in &floor {
        let g = family.eval(label, x, &y)? - *f;
        if g > T::float_tol() {
            simultaneous = false;
        }
        gaps.insert(label.clone(), g);
    }
    Ok((y, GapReport { gaps, simultaneous }))
}

/// Potential descent: steps to an image point `y` with
/// `d_λ(x, y) ≤ φ_λ(x) − φ_λ(y)` for every λ and progress
/// `min_λ (φ_λ(x) − φ_λ(y)) ≥ tol`; among admissible points, the one with
/// the largest minimal progress wins, ties to the lowest image index. Stops
/// when no admissible point remains; the final point is approximately
/// stationary, with its fixed-point residual left to the caller to read off
/// the trace.
pub fn caristi_descent<T: Scalar>(
    t: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    phi: &PotentialFamily<T>,
    x0: &PointN<T>,
    cfg: &SolverConfig<T>,
) -> Result<(PointN<T>, SolverTrace<T>)> {
    let ftol = T::float_tol();
    let mut iterates = vec![x0.clone()];
    let mut residuals = Vec::new();
    let mut termination = Termination::MaxIter;
    for _ in 0..cfg.max_iter {
        let x = iterates.last().unwrap().clone();
        let phi_x = phi.eval_all(&x)?;
        let image = t.eval_image(&x);
        let mut best: Option<(usize, T)> = None;
        for (i, y) in image.points().iter().enumerate() {
            let mut progress = T::infinity();
            let mut admissible = true;
            for label in phi.labels() {
                let drop = phi_x[label] - phi.eval(label, y)?;
                if family.eval(label, &x, y)? > drop + ftol {
                    admissible = false;
                    break;
                }
                progress = progress.min(drop);
            }
            if admissible && progress >= cfg.tol {
                let better = match best {
                    Some((_, p)) => progress > p + ftol,
                    None => true,
                };
                if better {
                    best = Some((i, progress));
                }
            }
        }
        match best {
            Some((i, _)) => {
                let y = image.points()[i].clone();
                residuals.push(residual_map(family, &x, &y)?);
                iterates.push(y);
            }
            None => {
                termination = Termination::Converged;
                break;
            }
        }
    }
    let star = iterates.last().unwrap().clone();
    Ok((
        star,
        SolverTrace {
            iterates,
            residuals,
            termination,
            a_priori_bound_satisfied: true,
        },
    ))
}

/// Potentials `φ_λ(x) = d_λ(x, T(x)) / (1 − k_λ)` with lower bounds 0; the
/// standard descent potentials of a contractive multi-function.
pub fn caristi_contraction_potentials<T: Scalar>(
    t: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    k: &ContractionConstants<T>,
) -> Result<PotentialFamily<T>> {
    let mut per_index: BTreeMap<String, PotentialFn<T>> = BTreeMap::new();
    let mut bounds = BTreeMap::new();
    for (label, k_l) in k.iter() {
        family.index_of(label)?;
        let t = t.clone();
        let fam = family.clone();
        let label_owned = label.to_string();
        let denom = T::one() - k_l;
        per_index.insert(
            label.to_string(),
            Arc::new(move |x: &PointN<T>| {
                let image = t.eval_image(x);
                let mut best = T::infinity();
                for y in image.points() {
                    best = best.min(fam.eval(&label_owned, x, y).expect("valid index"));
                }
                best / denom
            }),
        );
        bounds.insert(label.to_string(), T::zero());
    }
    PotentialFamily::new(per_index, bounds)
}

/// Outcome of the sampled decrease-condition check, with the descent run it
/// licenses on success.
#[derive(Clone, Debug)]
pub struct ContractiveBridgeReport<T> {
    /// `(sample, label, lhs, rhs)` for each failed inequality.
    pub violations: Vec<(PointN<T>, String, T, T)>,
    pub fixed_point: Option<PointN<T>>,
    pub trace: Option<SolverTrace<T>>,
}

impl<T> ContractiveBridgeReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `d_λ(f(x), T(f(x))) ≤ d_λ(x, T(x)) + r_λ d_λ(x, f(x))` on every
/// sample for every index (all `r_λ < 0` required); on pass, runs potential
/// descent along `f` with `φ_λ(x) = −d_λ(x, T(x)) / r_λ` from the first
/// sample and reports the fixed point of `f` found.
pub fn check_contractive_bridge<T: Scalar>(
    f: &PointMap<T>,
    t: &MultiFunction<T>,
    family: &PseudometricFamily<T>,
    r: &BTreeMap<String, T>,
    samples: &[PointN<T>],
    cfg: &SolverConfig<T>,
) -> Result<ContractiveBridgeReport<T>> {
    if r.is_empty() {
        return Err(UniformError::InvalidArgument(
            "at least one decrease rate required".into(),
        ));
    }
    for (label, r_l) in r {
        family.index_of(label)?;
        if *r_l >= T::zero() {
            return Err(UniformError::InvalidArgument(format!(
                "decrease rate for `{label}` must be < 0, got {r_l}"
            )));
        }
    }
    if samples.is_empty() {
        return Err(UniformError::InvalidArgument(
            "at least one sample required".into(),
        ));
    }
    let ftol = T::float_tol();
    let dist_to_image = |label: &str, x: &PointN<T>| -> Result<T> {
        let image = t.eval_image(x);
        let mut best = T::infinity();
        for y in image.points() {
            best = best.min(family.eval(label, x, y)?);
        }
        Ok(best)
    };
    let mut violations = Vec::new();
    for x in samples {
        let fx = f.eval(x);
        for (label, r_l) in r {
            let lhs = dist_to_image(label, &fx)?;
            let rhs = dist_to_image(label, x)? + *r_l * family.eval(label, x, &fx)?;
            if lhs > rhs + ftol {
                violations.push((x.clone(), label.clone(), lhs, rhs));
            }
        }
    }
    if !violations.is_empty() {
        return Ok(ContractiveBridgeReport {
            violations,
            fixed_point: None,
            trace: None,
        });
    }
    let mut per_index: BTreeMap<String, PotentialFn<T>> = BTreeMap::new();
    let mut bounds = BTreeMap::new();
    for (label, r_l) in r {
        let t = t.clone();
        let fam = family.clone();
        let label_owned = label.clone();
        let rate = *r_l;
        per_index.insert(
            label.clone(),
            Arc::new(move |x: &PointN<T>| {
                let image = t.eval_image(x);
                let mut best = T::infinity();
                for y in image.points() {
                    best = best.min(fam.eval(&label_owned, x, y).expect("valid index"));
                }
                -best / rate
            }),
        );
        bounds.insert(label.clone(), T::zero());
    }
    let phi = PotentialFamily::new(per_index, bounds)?;
    let along_f = MultiFunction::from_map(f.clone());
    let (star, trace) = caristi_descent(&along_f, family, &phi, &samples[0], cfg)?;
    Ok(ContractiveBridgeReport {
        violations,
        fixed_point: Some(star),
        trace: Some(trace),
    })
}

/// A solved inwardness step at one iterate: the hull point stepped to, the
/// overshoot factor, and the per-index defect of the ray equation
/// `T(x) − x = c (f − x)`.
#[derive(Clone, Debug)]
pub struct InwardnessWitness<T> {
    pub at: PointN<T>,
    pub f: PointN<T>,
    pub c: T,
    pub residuals: BTreeMap<String, T>,
    pub epsilons: BTreeMap<String, T>,
}

/// Solver for maps that leave the body `K` but only along inward rays:
/// at each iterate either `T(x)` already lies in the hull (plain step,
/// `c = 1`) or a witness `(f, c)` with `f ∈ K`, `c ≥ 1` and small defect
/// `‖T(x) − x − c(f − x)‖_λ ≤ ε_λ ‖T(x) − x‖_λ` is solved for, and the
/// solver steps to `f`. The margins `ε_λ = 0.9 (1 − k_λ)/(1 + k_λ)` keep
/// the combined map contractive.
pub fn inward_solve<T: Scalar>(
    t: &PointMap<T>,
    k_generators: &[PointN<T>],
    family: &PseudometricFamily<T>,
    k: &ContractionConstants<T>,
    x0: &PointN<T>,
    cfg: &SolverConfig<T>,
) -> Result<(PointN<T>, SolverTrace<T>, Vec<InwardnessWitness<T>>)> {
    let ftol = T::float_tol();
    let hull = ConvexBody::from_points(k_generators);
    if !hull.contains(x0, ftol) {
        return Err(UniformError::InvalidArgument(
            "x0 must lie in the hull of K".into(),
        ));
    }
    let nine_tenths = lit::<T>(0.9);
    let epsilons: BTreeMap<String, T> = k
        .iter()
        .map(|(label, k_l)| {
            (
                label.to_string(),
                nine_tenths * (T::one() - k_l) / (T::one() + k_l),
            )
        })
        .collect();
    for label in epsilons.keys() {
        family.index_of(label)?;
    }
    let eps_min = epsilons.values().copied().fold(T::infinity(), T::min);

    let mut iterates = vec![x0.clone()];
    let mut residuals = Vec::new();
    let mut witnesses = Vec::new();
    let mut termination = Termination::MaxIter;
    for _ in 0..cfg.max_iter {
        let x = iterates.last().unwrap().clone();
        let tx = t.eval(&x);
        if family.max_dist(&x, &tx)? <= cfg.tol {
            termination = Termination::Converged;
            break;
        }
        let (f, c) = if hull.contains(&tx, ftol) {
            (tx.clone(), T::one())
        } else {
            // witness along the ray toward T(x): the exit point of the hull
            // gives a zero-defect witness when the ray makes real progress
            let s_exit = hull.ray_exit(&x, &tx, ftol);
            let ray_ok = s_exit > ftol;
            let candidate = if ray_ok {
                let f = x.lerp(&tx, s_exit);
                Some((f, T::one() / s_exit))
            } else {
                None
            };
            let scored = match candidate {
                Some(fc) => Some(fc),
                None => {
                    // boundary iterate with an outward ray: scan overshoot
                    // factors and project, keeping the smallest normalized
                    // defect
                    let mut best: Option<(PointN<T>, T, T)> = None;
                    let norm = family.max_dist(&x, &tx)?;
                    for i in 1..=40usize {
                        let s = lit::<T>(i as f64 / 40.0);
                        let f = hull.project(&x.lerp(&tx, s));
                        let c = T::one() / s;
                        let virt = x.add(&f.sub(&x).scale(c));
                        let defect = family.max_dist(&tx, &virt)? / norm;
                        let better = match &best {
                            Some((_, _, d)) => defect < *d,
                            None => true,
                        };
                        if better {
                            best = Some((f, c, defect));
                        }
                    }
                    best.map(|(f, c, _)| (f, c))
                }
            };
            let (f, c) = scored.ok_or_else(|| UniformError::WitnessInfeasible {
                iterate: x.coords().iter().map(|v| v.to_f64().unwrap()).collect(),
                ratio: f64::INFINITY,
                required: eps_min.to_f64().unwrap_or(f64::NAN),
            })?;
            // per-index acceptance against the margins
            let virt = x.add(&f.sub(&x).scale(c));
            for (label, eps) in &epsilons {
                let defect = family.eval(label, &tx, &virt)?;
                let scale = family.eval(label, &x, &tx)?;
                if defect > *eps * scale + ftol {
                    return Err(UniformError::WitnessInfeasible {
                        iterate: x.coords().iter().map(|v| v.to_f64().unwrap()).collect(),
                        ratio: (defect / scale.max(ftol)).to_f64().unwrap_or(f64::NAN),
                        required: eps.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
            (f, c)
        };
        let virt = x.add(&f.sub(&x).scale(c));
        let mut wit_res = BTreeMap::new();
        for label in family.labels() {
            wit_res.insert(label.to_string(), family.eval(label, &tx, &virt)?);
        }
        witnesses.push(InwardnessWitness {
            at: x.clone(),
            f: f.clone(),
            c,
            residuals: wit_res,
            epsilons: epsilons.clone(),
        });
        residuals.push(residual_map(family, &x, &f)?);
        iterates.push(f);
    }
    let star = iterates.last().unwrap().clone();
    Ok((
        star,
        SolverTrace {
            iterates,
            residuals,
            termination,
            a_priori_bound_satisfied: true,
        },
        witnesses,
    ))
}
