//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line.
//! Randomized criteria use a fixed seed so runs are reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uniformis::alpha::{alpha_bounds, check_set_contraction_sampled, empirical_alpha, AlphaInterval, SetExpr};
use uniformis::hausdorff::{hausdorff_pseudometric, hausdorff_via_inflation, PointCloud};
use uniformis::multifun::{
    check_image_distance_inequality, invariant_set_iterate, AffineBranch, MultiFunction,
};
use uniformis::solvers::{
    caristi_descent, inward_solve, nadler_solve, picard_solve, PotentialFamily,
    SelectionStrategy, SolverConfig, Termination,
};
use uniformis::space::{
    ContractionConstants, MetricKind, PointN, Pseudometric, PseudometricFamily,
};
use uniformis::variational::{ekeland_search, maximal_elements, OrderContext};

fn report(criterion: usize, name: &str, pass: bool) {
    println!(
        "criterion {criterion:>2} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed");
}

fn plane3() -> PseudometricFamily<f64> {
    PseudometricFamily::new(
        2,
        vec![
            Pseudometric {
                label: "d1".into(),
                kind: MetricKind::CoordinateAbs { coord: 0 },
            },
            Pseudometric {
                label: "d2".into(),
                kind: MetricKind::CoordinateAbs { coord: 1 },
            },
            Pseudometric {
                label: "e".into(),
                kind: MetricKind::EuclideanSubset { coords: vec![0, 1] },
            },
        ],
        true,
    )
    .unwrap()
}

fn random_cloud(rng: &mut ChaCha8Rng, max_len: usize) -> PointCloud<f64> {
    let n = rng.gen_range(1..=max_len);
    PointCloud::raw(
        (0..n)
            .map(|_| PointN::of(&[rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)]))
            .collect(),
    )
    .unwrap()
}

#[test]
fn criterion_01_hausdorff_oracle_equivalence() {
    let start = Instant::now();
    let family = plane3();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ok = true;
    for _ in 0..1000 {
        let a = random_cloud(&mut rng, 20);
        let b = random_cloud(&mut rng, 20);
        for label in family.labels() {
            let direct = hausdorff_pseudometric(&family, label, &a, &b).unwrap();
            let oracle = hausdorff_via_inflation(&family, label, &a, &b, 1e-7).unwrap();
            if (direct - oracle).abs() > 1e-6 {
                ok = false;
            }
        }
    }
    let in_time = start.elapsed().as_secs_f64() < 10.0;
    report(1, "hausdorff oracle equivalence", ok && in_time);
}

#[test]
fn criterion_02_hausdorff_pseudometric_axioms() {
    let start = Instant::now();
    let family = plane3();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut ok = true;
    for _ in 0..500 {
        let a = random_cloud(&mut rng, 12);
        let b = random_cloud(&mut rng, 12);
        let c = random_cloud(&mut rng, 12);
        for label in family.labels() {
            let h = |x: &PointCloud<f64>, y: &PointCloud<f64>| {
                hausdorff_pseudometric(&family, label, x, y).unwrap()
            };
            if h(&a, &a) > 1e-9 {
                ok = false;
            }
            if (h(&a, &b) - h(&b, &a)).abs() > 1e-9 {
                ok = false;
            }
            if h(&a, &c) > h(&a, &b) + h(&b, &c) + 1e-9 {
                ok = false;
            }
        }
    }
    let in_time = start.elapsed().as_secs_f64() < 10.0;
    report(2, "hausdorff pseudometric axioms", ok && in_time);
}

#[test]
fn criterion_03_continuity_inequality() {
    let family = plane3();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let corpus: Vec<MultiFunction<f64>> = vec![
        MultiFunction::identity(),
        MultiFunction::constant(
            PointCloud::raw(vec![PointN::of(&[0.5, -0.5]), PointN::of(&[1.0, 1.0])]).unwrap(),
        ),
        MultiFunction::affine_branches(vec![
            AffineBranch {
                scale: 1.0 / 3.0,
                offset: vec![0.0, 0.0],
            },
            AffineBranch {
                scale: 1.0 / 3.0,
                offset: vec![1.0, -1.0],
            },
        ]),
        MultiFunction::custom(|x: &PointN<f64>| {
            PointCloud::raw(vec![
                PointN::of(&[x.get(1), x.get(0)]),
                PointN::of(&[x.get(0).abs(), 0.0]),
            ])
            .unwrap()
        }),
    ];
    let pairs: Vec<(PointN<f64>, PointN<f64>)> = (0..1000)
        .map(|_| {
            (
                PointN::of(&[rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]),
                PointN::of(&[rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]),
            )
        })
        .collect();
    let mut ok = true;
    for mf in &corpus {
        for label in family.labels() {
            let rep = check_image_distance_inequality(mf, &family, label, &pairs).unwrap();
            if !rep.passed() {
                ok = false;
            }
        }
    }
    report(3, "continuity inequality on corpus", ok);
}

enum Tree {
    Atom(f64),
    Union(Vec<Tree>),
    Scale(f64, Box<Tree>),
    Hull(Box<Tree>),
    Closure(Box<Tree>),
}

fn random_tree(rng: &mut ChaCha8Rng, depth: usize) -> Tree {
    if depth == 0 {
        return Tree::Atom(rng.gen_range(0.0..4.0));
    }
    match rng.gen_range(0..5) {
        0 => Tree::Atom(rng.gen_range(0.0..4.0)),
        1 => Tree::Union(
            (0..rng.gen_range(1..=3))
                .map(|_| random_tree(rng, depth - 1))
                .collect(),
        ),
        2 => Tree::Scale(rng.gen_range(-2.0..2.0), Box::new(random_tree(rng, depth - 1))),
        3 => Tree::Hull(Box::new(random_tree(rng, depth - 1))),
        _ => Tree::Closure(Box::new(random_tree(rng, depth - 1))),
    }
}

fn to_expr(t: &Tree, counter: &mut usize) -> SetExpr<f64> {
    match t {
        Tree::Atom(a) => {
            *counter += 1;
            SetExpr::AbstractAtom {
                name: format!("a{counter}"),
                alpha: AlphaInterval::new(*a, *a).unwrap(),
            }
        }
        Tree::Union(cs) => SetExpr::Union(cs.iter().map(|c| to_expr(c, counter)).collect()),
        Tree::Scale(b, c) => SetExpr::Scale(*b, Box::new(to_expr(c, counter))),
        Tree::Hull(c) => SetExpr::ConvexHull(Box::new(to_expr(c, counter))),
        Tree::Closure(c) => SetExpr::Closure(Box::new(to_expr(c, counter))),
    }
}

/// Independent oracle: the exact value is the max over atoms of the atom
/// value times the absolute product of the scales on its path; unions,
/// hulls and closures contribute nothing else.
fn oracle_value(t: &Tree, multiplier: f64) -> f64 {
    match t {
        Tree::Atom(a) => multiplier * a,
        Tree::Union(cs) => cs
            .iter()
            .map(|c| oracle_value(c, multiplier))
            .fold(0.0, f64::max),
        Tree::Scale(b, c) => oracle_value(c, multiplier * b.abs()),
        Tree::Hull(c) | Tree::Closure(c) => oracle_value(c, multiplier),
    }
}

#[test]
fn criterion_04_alpha_calculus_exactness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ok = true;
    for _ in 0..100 {
        let tree = random_tree(&mut rng, 6);
        let mut counter = 0;
        let expr = to_expr(&tree, &mut counter);
        let (iv, _) = alpha_bounds(&expr).unwrap();
        let expected = oracle_value(&tree, 1.0);
        if (iv.lo - expected).abs() > 1e-9 || (iv.hi - expected).abs() > 1e-9 {
            ok = false;
        }
    }
    let in_time = start.elapsed().as_secs_f64() < 5.0;
    report(4, "alpha interval calculus exactness", ok && in_time);
}

#[test]
fn criterion_05_empirical_alpha_coherence() {
    let family = PseudometricFamily::<f64>::line();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = true;
    for _ in 0..200 {
        let n = rng.gen_range(2..=30);
        let b_vals: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        let keep = rng.gen_range(1..=n);
        let a_vals: Vec<f64> = b_vals[..keep].to_vec();
        let budget = rng.gen_range(1..=4);
        let a = empirical_alpha(&PointCloud::on_line(&a_vals), &family, budget).unwrap();
        let b = empirical_alpha(&PointCloud::on_line(&b_vals), &family, budget).unwrap();
        if a > b + 1e-6 {
            ok = false;
        }
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=20);
        let m = rng.gen_range(1..=20);
        let a_vals: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        let b_vals: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..10.0)).collect();
        let mut u_vals = a_vals.clone();
        u_vals.extend_from_slice(&b_vals);
        let budget = rng.gen_range(1..=4);
        let a = empirical_alpha(&PointCloud::on_line(&a_vals), &family, budget).unwrap();
        let b = empirical_alpha(&PointCloud::on_line(&b_vals), &family, budget).unwrap();
        let u = empirical_alpha(&PointCloud::on_line(&u_vals), &family, budget).unwrap();
        if u + 1e-6 < a.max(b) {
            ok = false;
        }
    }
    report(5, "empirical alpha coherence", ok);
}

#[test]
fn criterion_06_set_contraction_desk_scale() {
    let start = Instant::now();
    let family = PseudometricFamily::<f64>::line();
    let t = MultiFunction::affine_branches(vec![
        AffineBranch {
            scale: 1.0 / 3.0,
            offset: vec![0.0],
        },
        AffineBranch {
            scale: 1.0 / 3.0,
            offset: vec![1.0],
        },
    ]);
    let k = ContractionConstants::uniform(&family, 1.0 / 3.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let clouds: Vec<PointCloud<f64>> = (0..50)
        .map(|_| {
            PointCloud::on_line(&(0..100).map(|_| rng.gen_range(0.0..3.0)).collect::<Vec<_>>())
        })
        .collect();
    let rep = check_set_contraction_sampled(&t, &family, &k, &clouds, 3, 0.05).unwrap();
    let in_time = start.elapsed().as_secs_f64() < 30.0;
    report(6, "set contraction at desk scale", rep.passed() && in_time);
}

#[test]
fn criterion_07_picard_rate_and_uniqueness() {
    let family = PseudometricFamily::<f64>::coordinate(2);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let tol = 1e-9;
    let cfg = SolverConfig::new(tol, 100_000).unwrap();
    let mut ok = true;
    for _ in 0..20 {
        let a: [f64; 2] = [rng.gen_range(0.05..0.9), rng.gen_range(0.05..0.9)];
        let sign = [
            if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
            if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
        ];
        let scale = vec![a[0] * sign[0], a[1] * sign[1]];
        let offset = vec![rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let f = uniformis::multifun::PointMap::affine_diag(scale.clone(), offset.clone())
            .unwrap();
        let k_sup = a[0].max(a[1]);
        let k = ContractionConstants::uniform(&family, k_sup).unwrap();
        let exact = PointN::of(&[
            offset[0] / (1.0 - scale[0]),
            offset[1] / (1.0 - scale[1]),
        ]);
        let x0 = PointN::of(&[rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]);
        let (star, trace) = picard_solve(&f, &family, &k, &x0, &cfg).unwrap();
        if trace.termination != Termination::Converged {
            ok = false;
            continue;
        }
        if family.max_dist(&star, &f.eval(&star)).unwrap() > tol {
            ok = false;
        }
        if family.max_dist(&star, &exact).unwrap() > 1e-7 {
            ok = false;
        }
        let d0 = family.max_dist(&trace.iterates[0], &trace.iterates[1]).unwrap();
        if d0 > 0.0 {
            let budget =
                ((tol * (1.0 - k_sup) / d0).ln() / k_sup.ln()).ceil() as usize + 5;
            if trace.steps() > budget {
                ok = false;
            }
        }
        let y0 = PointN::of(&[rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)]);
        let (star2, _) = picard_solve(&f, &family, &k, &y0, &cfg).unwrap();
        for label in family.labels() {
            if family.eval(label, &star, &star2).unwrap() > 2.0 * tol {
                ok = false;
            }
        }
    }
    report(7, "picard rate and uniqueness", ok);
}

#[test]
fn criterion_08_nadler_both_branches() {
    let family = PseudometricFamily::<f64>::line();
    let t = MultiFunction::affine_branches(vec![
        AffineBranch {
            scale: 1.0 / 3.0,
            offset: vec![0.0],
        },
        AffineBranch {
            scale: 1.0 / 3.0,
            offset: vec![1.0],
        },
    ]);
    let k = ContractionConstants::uniform(&family, 1.0 / 3.0).unwrap();
    let cfg = SolverConfig::new(1e-9, 10_000).unwrap();
    let mut ok = true;
    for (branch, target) in [(0usize, 0.0), (1usize, 1.5)] {
        let (star, trace) = nadler_solve(
            &t,
            &family,
            &k,
            &PointN::of(&[3.0]),
            &cfg,
            SelectionStrategy::Branch(branch),
        )
        .unwrap();
        if trace.termination != Termination::Converged || (star.get(0) - target).abs() > 1e-7 {
            ok = false;
        }
        for n in 1..trace.steps() {
            let prev = family
                .max_dist(&trace.iterates[n - 1], &trace.iterates[n])
                .unwrap();
            let step = family
                .max_dist(&trace.iterates[n], &trace.iterates[n + 1])
                .unwrap();
            if step > prev / 3.0 + cfg.slack(n) + 1e-12 {
                ok = false;
            }
        }
    }
    report(8, "nadler branch convergence and step bound", ok);
}

#[test]
fn criterion_09_caristi_descent_r2() {
    let family = PseudometricFamily::<f64>::coordinate(2);
    let phi = PotentialFamily::new(
        BTreeMap::from([
            (
                "d1".to_string(),
                Arc::new(|x: &PointN<f64>| 2.0 * x.get(0).abs())
                    as Arc<dyn Fn(&PointN<f64>) -> f64 + Send + Sync>,
            ),
            (
                "d2".to_string(),
                Arc::new(|x: &PointN<f64>| 2.0 * x.get(1).abs())
                    as Arc<dyn Fn(&PointN<f64>) -> f64 + Send + Sync>,
            ),
        ]),
        BTreeMap::from([("d1".to_string(), 0.0), ("d2".to_string(), 0.0)]),
    )
    .unwrap();
    let halve = MultiFunction::custom(|x: &PointN<f64>| {
        PointCloud::raw(vec![x.scale(0.5)]).unwrap()
    });
    let cfg = SolverConfig::new(1e-7, 10_000).unwrap();
    let (star, trace) =
        caristi_descent(&halve, &family, &phi, &PointN::of(&[1.0, 1.0]), &cfg).unwrap();
    let mut ok = star.get(0).abs() <= 1e-6 && star.get(1).abs() <= 1e-6;
    for label in family.labels() {
        let mut total = 0.0;
        for n in 0..trace.steps() {
            let cur = phi.eval(label, &trace.iterates[n]).unwrap();
            let next = phi.eval(label, &trace.iterates[n + 1]).unwrap();
            if next > cur + 1e-12 {
                ok = false;
            }
            total += family
                .eval(label, &trace.iterates[n], &trace.iterates[n + 1])
                .unwrap();
            if total > phi.eval(label, &trace.iterates[0]).unwrap() + 1e-12 {
                ok = false;
            }
        }
    }
    report(9, "caristi descent telescoping", ok);
}

#[test]
fn criterion_10_ekeland_grid() {
    let family = PseudometricFamily::<f64>::line();
    let phi = PotentialFamily::uniform(&family, |x: &PointN<f64>| x.get(0).abs(), 0.0).unwrap();
    let ctx = OrderContext::new(family.clone(), phi.clone()).unwrap();
    let grid = PointCloud::on_line(
        &(0..41).map(|i| -1.0 + i as f64 * 0.05).collect::<Vec<_>>(),
    );
    assert_eq!(grid.len(), 41);
    let x0 = PointN::of(&[0.3]);
    let delta = BTreeMap::from([("d1".to_string(), 0.3)]);
    let (star, report_ek) = ekeland_search(&ctx, &x0, &delta, &grid, 1e-9).unwrap();
    let mut ok = star.get(0).abs() <= 1e-9;
    // potential does not increase and the displacement stays within delta
    for label in phi.labels() {
        if phi.eval(label, &star).unwrap() > phi.eval(label, &x0).unwrap() {
            ok = false;
        }
        if family.eval(label, &x0, &star).unwrap() > delta[label] {
            ok = false;
        }
    }
    if !report_ek.strict_ok || report_ek.strictness_margins.len() != 40 {
        ok = false;
    }
    // oracle agreement: the point is maximal in the up-set of x0
    let mut upset = Vec::new();
    for p in grid.points() {
        if ctx.precedes(&x0, p).unwrap() {
            upset.push(p.clone());
        }
    }
    let maximal = maximal_elements(&ctx, &PointCloud::raw(upset).unwrap()).unwrap();
    if !maximal
        .points()
        .iter()
        .any(|m| family.max_dist(m, &star).unwrap() <= 1e-12)
    {
        ok = false;
    }
    report(10, "ekeland grid search vs oracle", ok);
}

#[test]
fn criterion_11_inward_solver() {
    let family = PseudometricFamily::<f64>::line();
    let t = uniformis::multifun::PointMap::affine_diag(vec![-0.5], vec![1.2]).unwrap();
    let k = ContractionConstants::uniform(&family, 0.5).unwrap();
    let kgen = [PointN::of(&[0.0]), PointN::of(&[1.0])];
    let cfg = SolverConfig::new(1e-9, 10_000).unwrap();
    let (star, trace, wits) =
        inward_solve(&t, &kgen, &family, &k, &PointN::of(&[0.0]), &cfg).unwrap();
    let mut ok = trace.termination == Termination::Converged
        && (star.get(0) - 0.8).abs() <= 1e-7;
    let w0 = &wits[0];
    if (w0.f.get(0) - 1.0).abs() > 1e-9
        || (w0.c - 1.2).abs() > 1e-9
        || w0.residuals["d1"].abs() > 1e-9
    {
        ok = false;
    }
    // intermediate step inequality on every accepted step
    for w in &wits {
        let x = &w.at;
        let f = &w.f;
        let tx = t.eval(x);
        let tf = t.eval(f);
        for label in family.labels() {
            let k_l = k.get(label).unwrap();
            let eps = w.epsilons[label];
            let lhs = family.eval(label, f, &tf).unwrap();
            let rhs = family.eval(label, x, &tx).unwrap()
                + (k_l - (1.0 - eps) / (1.0 + eps)) * family.eval(label, x, f).unwrap();
            if lhs > rhs + 1e-9 {
                ok = false;
            }
        }
    }
    report(11, "weakly inward solver", ok);
}

#[test]
fn criterion_12_invariant_set_exhaustive() {
    let family = PseudometricFamily::<f64>::line();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut ok = true;
    for _ in 0..100 {
        let n = rng.gen_range(1..=8usize);
        let universe = PointCloud::on_line(&(0..n).map(|i| i as f64).collect::<Vec<_>>());
        // random image table: each point maps to 1..=3 universe indices
        let table: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                let m = rng.gen_range(1..=3usize.min(n));
                let mut set = BTreeSet::new();
                while set.len() < m {
                    set.insert(rng.gen_range(0..n));
                }
                set.into_iter().collect()
            })
            .collect();
        let table_for_mf = table.clone();
        let mf = MultiFunction::custom(move |x: &PointN<f64>| {
            let i = x.get(0).round() as usize;
            PointCloud::on_line(
                &table_for_mf[i]
                    .iter()
                    .map(|j| *j as f64)
                    .collect::<Vec<_>>(),
            )
        });
        let seed_idx = rng.gen_range(0..n);
        // brute-force minimal invariant superset: closure of {seed} under
        // the image table
        let mut closed = vec![false; n];
        closed[seed_idx] = true;
        loop {
            let mut changed = false;
            for i in 0..n {
                if closed[i] {
                    for j in &table[i] {
                        if !closed[*j] {
                            closed[*j] = true;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let expected: Vec<f64> = closed
            .iter()
            .enumerate()
            .filter(|(_, c)| **c)
            .map(|(i, _)| i as f64)
            .collect();
        let got = invariant_set_iterate(
            &mf,
            &family,
            &PointN::of(&[seed_idx as f64]),
            &universe,
            2 * n + 2,
        )
        .unwrap();
        let got_vals: Vec<f64> = got.points().iter().map(|p| p.get(0)).collect();
        if got_vals != expected {
            ok = false;
        }
    }
    report(12, "invariant set iteration vs brute force", ok);
}
