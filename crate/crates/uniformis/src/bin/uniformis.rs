//! Command-line front end: every solver and checker on declarative JSON
//! inputs, with line-delimited trace records and a summary line.
//!
//! Exit codes: 0 success/converged, 1 usage or input error, 2
//! non-convergence, 3 contract/hypothesis violation or infeasible witness.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use uniformis::alpha::{
    alpha_bounds, certify_k_set_contraction, check_set_contraction_sampled, empirical_alpha, KscOutcome,
};
use uniformis::error::UniformError;
use uniformis::hausdorff::{hausdorff_pseudometric, hausdorff_via_inflation, PointCloud};
use uniformis::io::{
    load_json, parse_indexed_values, CloudDoc, ExprDoc, MapDoc, MultiFnDoc, OperatorDoc,
    PotentialsDoc, SpaceDoc,
};
use uniformis::multifun::{
    check_f_contractive, check_image_distance_inequality, check_weak_lower_sc, check_weak_upper_sc,
    inner_set_membership, MultiFunction,
};
use uniformis::scalar::default_float_tol;
use uniformis::solvers::{
    caristi_descent, inward_solve, nadler_solve, picard_solve, SelectionStrategy, SolverConfig,
    SolverTrace, Termination,
};
use uniformis::space::{ContractionConstants, PointN, PseudometricFamily};
use uniformis::variational::{bishop_phelps_search, ekeland_search, OrderContext};

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_NO_CONVERGENCE: u8 = 2;
const EXIT_CONTRACT: u8 = 3;

#[derive(Parser)]
#[command(name = "uniformis", disable_help_subcommand = true)]
#[command(about = "Analysis on uniform spaces presented by pseudometric families")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Residual target for solvers and empirical checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Iteration budget for solvers.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_iter: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write trace records to this path.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,
    /// Suppress per-iteration trace records on stdout.
    #[arg(long, global = true, default_value_t = false)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hausdorff pseudometric between two clouds, with the inflation oracle.
    Hausdorff {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        index: String,
    },
    /// Two-sided non-compactness bounds of a set expression.
    Alpha {
        #[arg(long)]
        expr: PathBuf,
    },
    /// Certify an operator expression as a k-set contraction.
    CertifyKsc {
        #[arg(long)]
        op: PathBuf,
        #[arg(long)]
        k: f64,
    },
    /// Empirical property checks on a multi-function.
    Check {
        /// One of weak-lsc, weak-usc, image-ineq, fcontractive, inward.
        #[arg(long)]
        what: String,
        #[arg(long)]
        space: PathBuf,
        /// Multi-function file (weak-lsc, weak-usc, image-ineq, fcontractive).
        #[arg(long)]
        multifn: Option<PathBuf>,
        /// Affine map file (inward).
        #[arg(long)]
        map: Option<PathBuf>,
        /// Sample/grid points for the check.
        #[arg(long)]
        samples: PathBuf,
        /// Pseudometric index (defaults to the first of the family).
        #[arg(long)]
        index: Option<String>,
        /// Level for the sub/superlevel checks.
        #[arg(long, default_value_t = 1.0)]
        level: f64,
        #[arg(long, default_value_t = 0.25)]
        probe_radius: f64,
        /// Contraction constants (number or JSON object).
        #[arg(long)]
        k: Option<String>,
        /// Generators of the convex body K (inward).
        #[arg(long)]
        body: Option<PathBuf>,
    },
    SolvePicard {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        operator: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        k: String,
    },
    SolveNadler {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        operator: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        k: String,
        /// Force a fixed image branch instead of nearest selection.
        #[arg(long)]
        branch: Option<usize>,
    },
    SolveCaristi {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        operator: PathBuf,
        #[arg(long)]
        potentials: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
    },
    SolveInward {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        operator: PathBuf,
        #[arg(long)]
        body: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        k: String,
    },
    BishopPhelps {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        potentials: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        grid: PathBuf,
    },
    Ekeland {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        potentials: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long)]
        grid: PathBuf,
    },
    /// Curated end-to-end reproductions with PASS/FAIL output.
    Demo {
        name: String,
    },
}

struct Emitter {
    trace_file: Option<std::fs::File>,
    quiet: bool,
}

impl Emitter {
    fn new(opts: &GlobalOpts) -> Result<Self, UniformError> {
        let trace_file = match &opts.trace {
            Some(p) => Some(std::fs::File::create(p)?),
            None => None,
        };
        Ok(Self {
            trace_file,
            quiet: opts.quiet,
        })
    }

    fn record(&mut self, value: &serde_json::Value) {
        let line = value.to_string();
        if !self.quiet {
            println!("{line}");
        }
        if let Some(f) = &mut self.trace_file {
            let _ = writeln!(f, "{line}");
        }
    }

    fn summary(&mut self, value: &serde_json::Value) {
        let line = value.to_string();
        println!("{line}");
        if let Some(f) = &mut self.trace_file {
            let _ = writeln!(f, "{line}");
        }
    }
}

fn parse_point(raw: &str, dimension: usize) -> Result<PointN<f64>, UniformError> {
    let coords = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| UniformError::Malformed(format!("bad coordinate `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dimension {
        return Err(UniformError::DimensionMismatch {
            expected: dimension,
            got: coords.len(),
        });
    }
    PointN::new(coords)
}

fn error_exit_code(err: &UniformError) -> u8 {
    match err {
        UniformError::WitnessInfeasible { .. }
        | UniformError::HypothesisViolation { .. }
        | UniformError::PotentialBelowBound { .. }
        | UniformError::BadContractionConstant { .. }
        | UniformError::NonClosure(_)
        | UniformError::NotSeparating => EXIT_CONTRACT,
        _ => EXIT_USAGE,
    }
}

fn emit_solver_trace(em: &mut Emitter, trace: &SolverTrace<f64>) {
    for (n, x) in trace.iterates.iter().enumerate() {
        let residuals = trace
            .residuals
            .get(n)
            .map(|m| json!(m))
            .unwrap_or_else(|| json!(null));
        em.record(&json!({
            "iter": n,
            "point": x.coords(),
            "residuals": residuals,
        }));
    }
}

fn termination_code(t: Termination) -> u8 {
    match t {
        Termination::Converged => EXIT_OK,
        Termination::MaxIter | Termination::Stalled => EXIT_NO_CONVERGENCE,
    }
}

fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::Converged => "converged",
        Termination::MaxIter => "max-iter",
        Termination::Stalled => "stalled",
    }
}

fn run(cli: Cli) -> Result<u8, UniformError> {
    let opts = cli.global.clone();
    let mut em = Emitter::new(&opts)?;
    let cfg = SolverConfig::new(opts.tol, opts.max_iter)?;
    match cli.command {
        Command::Hausdorff { space, a, b, index } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let a = load_json::<CloudDoc>(&a)?.to_cloud()?;
            let b = load_json::<CloudDoc>(&b)?.to_cloud()?;
            let direct = hausdorff_pseudometric(&family, &index, &a, &b)?;
            let oracle = hausdorff_via_inflation(&family, &index, &a, &b, opts.tol.max(1e-12))?;
            let agree = (direct - oracle).abs() <= opts.tol.max(1e-9) * 10.0;
            em.summary(&json!({
                "hausdorff": direct,
                "inflation_oracle": oracle,
                "oracle_agrees": agree,
                "index": index,
            }));
            Ok(if agree { EXIT_OK } else { EXIT_CONTRACT })
        }
        Command::Alpha { expr } => {
            let expr = load_json::<ExprDoc>(&expr)?.to_expr()?;
            let (iv, trace) = alpha_bounds(&expr)?;
            for step in &trace {
                em.record(&json!({
                    "node": step.node,
                    "rule": step.rule,
                    "lo": step.lo,
                    "hi": step.hi,
                }));
            }
            em.summary(&json!({"alpha_lo": iv.lo, "alpha_hi": iv.hi}));
            Ok(EXIT_OK)
        }
        Command::CertifyKsc { op, k } => {
            let op = load_json::<OperatorDoc>(&op)?.to_operator()?;
            match certify_k_set_contraction(&op, k)? {
                KscOutcome::Certified { factor, trace } => {
                    for step in &trace {
                        em.record(&json!({"node": step.node, "rule": step.rule, "factor": step.lo}));
                    }
                    em.summary(&json!({"certified": true, "factor": factor, "k": k}));
                    Ok(EXIT_OK)
                }
                KscOutcome::Refused {
                    blocking_node,
                    reason,
                } => {
                    em.summary(&json!({
                        "certified": false,
                        "blocking_node": blocking_node,
                        "reason": reason,
                    }));
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Check {
            what,
            space,
            multifn,
            map,
            samples,
            index,
            level,
            probe_radius,
            k,
            body,
        } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let samples = load_json::<CloudDoc>(&samples)?.to_cloud()?;
            let label = match &index {
                Some(l) => l.clone(),
                None => family
                    .labels()
                    .next()
                    .expect("nonempty family")
                    .to_string(),
            };
            let need_mf = || -> Result<MultiFunction<f64>, UniformError> {
                multifn
                    .as_ref()
                    .ok_or_else(|| UniformError::Malformed("--multifn is required".into()))
                    .and_then(|p| load_json::<MultiFnDoc>(p)?.to_multifun())
            };
            let (passed, detail) = match what.as_str() {
                "weak-lsc" | "weak-usc" => {
                    let mf = need_mf()?;
                    let rep = if what == "weak-lsc" {
                        check_weak_lower_sc(&mf, &family, &label, level, samples.points(), probe_radius)?
                    } else {
                        check_weak_upper_sc(&mf, &family, &label, level, samples.points(), probe_radius)?
                    };
                    (
                        rep.passed(),
                        json!({
                            "violations": rep.violations.len(),
                            "samples": rep.samples_tested,
                        }),
                    )
                }
                "image-ineq" => {
                    let mf = need_mf()?;
                    let pts = samples.points();
                    let mut pairs = Vec::new();
                    for u in pts {
                        for v in pts {
                            pairs.push((u.clone(), v.clone()));
                        }
                    }
                    let rep = check_image_distance_inequality(&mf, &family, &label, &pairs)?;
                    (
                        rep.passed(),
                        json!({"violations": rep.violations.len(), "pairs": pairs.len()}),
                    )
                }
                "fcontractive" => {
                    let mf = need_mf()?;
                    let raw = k
                        .as_ref()
                        .ok_or_else(|| UniformError::Malformed("--k is required".into()))?;
                    let kc = ContractionConstants::new(parse_indexed_values(raw, &family)?)?;
                    let pts = samples.points();
                    let mut pairs = Vec::new();
                    for (i, u) in pts.iter().enumerate() {
                        for v in &pts[i + 1..] {
                            pairs.push((u.clone(), v.clone()));
                        }
                    }
                    let rep = check_f_contractive(&mf, &family, &kc, &pairs)?;
                    (
                        rep.passed(),
                        json!({
                            "violations": rep.violations.len(),
                            "worst_ratio": rep.worst_ratio,
                        }),
                    )
                }
                "inward" => {
                    let map = map
                        .as_ref()
                        .ok_or_else(|| UniformError::Malformed("--map is required".into()))?;
                    let map = load_json::<MapDoc>(map)?.to_map()?;
                    let body = body
                        .as_ref()
                        .ok_or_else(|| UniformError::Malformed("--body is required".into()))?;
                    let body = load_json::<CloudDoc>(body)?.to_cloud()?;
                    let hull =
                        uniformis::hull::ConvexBody::from_points(body.points());
                    let mut failures = 0usize;
                    let mut tested = 0usize;
                    for x in samples.points() {
                        // only points of the body itself are meaningful bases
                        if !hull.contains(x, default_float_tol()) {
                            continue;
                        }
                        tested += 1;
                        let tx = map.eval(x);
                        if !inner_set_membership(&body, x, &tx, default_float_tol())? {
                            failures += 1;
                        }
                    }
                    (
                        failures == 0,
                        json!({"violations": failures, "samples": tested}),
                    )
                }
                other => {
                    return Err(UniformError::Malformed(format!(
                        "unknown check `{other}`; expected weak-lsc, weak-usc, image-ineq, fcontractive, inward"
                    )))
                }
            };
            em.summary(&json!({
                "check": what,
                "passed": passed,
                "detail": detail,
            }));
            Ok(if passed { EXIT_OK } else { EXIT_CONTRACT })
        }
        Command::SolvePicard {
            space,
            operator,
            x0,
            k,
        } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let f = load_json::<MapDoc>(&operator)?.to_map()?;
            let kc = ContractionConstants::new(parse_indexed_values(&k, &family)?)?;
            let x0 = parse_point(&x0, family.dimension())?;
            let (star, trace) = picard_solve(&f, &family, &kc, &x0, &cfg)?;
            emit_solver_trace(&mut em, &trace);
            let residual = family.max_dist(&star, &f.eval(&star))?;
            em.summary(&json!({
                "termination": termination_name(trace.termination),
                "point": star.coords(),
                "residual": residual,
                "a_priori_bound_satisfied": trace.a_priori_bound_satisfied,
                "iterations": trace.steps(),
            }));
            Ok(termination_code(trace.termination))
        }
        Command::SolveNadler {
            space,
            operator,
            x0,
            k,
            branch,
        } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let t = load_json::<MultiFnDoc>(&operator)?.to_multifun()?;
            let kc = ContractionConstants::new(parse_indexed_values(&k, &family)?)?;
            let x0 = parse_point(&x0, family.dimension())?;
            let strategy = match branch {
                Some(i) => SelectionStrategy::Branch(i),
                None => SelectionStrategy::NearestRho,
            };
            let (star, trace) = nadler_solve(&t, &family, &kc, &x0, &cfg, strategy)?;
            emit_solver_trace(&mut em, &trace);
            em.summary(&json!({
                "termination": termination_name(trace.termination),
                "point": star.coords(),
                "iterations": trace.steps(),
            }));
            Ok(termination_code(trace.termination))
        }
        Command::SolveCaristi {
            space,
            operator,
            potentials,
            x0,
        } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let t = load_json::<MultiFnDoc>(&operator)?.to_multifun()?;
            let phi = load_json::<PotentialsDoc>(&potentials)?.to_potentials(&family)?;
            let x0 = parse_point(&x0, family.dimension())?;
            let (star, trace) = caristi_descent(&t, &family, &phi, &x0, &cfg)?;
            emit_solver_trace(&mut em, &trace);
            let image = t.eval_image(&star);
            let mut residual = 0.0f64;
            for label in family.labels() {
                let mut best = f64::INFINITY;
                for y in image.points() {
                    best = best.min(family.eval(label, &star, y)?);
                }
                residual = residual.max(best);
            }
            em.summary(&json!({
                "termination": termination_name(trace.termination),
                "point": star.coords(),
                "residual": residual,
                "iterations": trace.steps(),
            }));
            Ok(termination_code(trace.termination))
        }
        Command::SolveInward {
            space,
            operator,
            body,
            x0,
            k,
        } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let t = load_json::<MapDoc>(&operator)?.to_map()?;
            let body = load_json::<CloudDoc>(&body)?.to_cloud()?;
            let kc = ContractionConstants::new(parse_indexed_values(&k, &family)?)?;
            let x0 = parse_point(&x0, family.dimension())?;
            let (star, trace, witnesses) =
                inward_solve(&t, body.points(), &family, &kc, &x0, &cfg)?;
            emit_solver_trace(&mut em, &trace);
            for w in &witnesses {
                em.record(&json!({
                    "witness_at": w.at.coords(),
                    "f": w.f.coords(),
                    "c": w.c,
                    "residuals": w.residuals,
                    "epsilons": w.epsilons,
                }));
            }
            let residual = family.max_dist(&star, &t.eval(&star))?;
            em.summary(&json!({
                "termination": termination_name(trace.termination),
                "point": star.coords(),
                "residual": residual,
                "iterations": trace.steps(),
            }));
            Ok(termination_code(trace.termination))
        }
        Command::BishopPhelps {
            space,
            potentials,
            x0,
            grid,
        } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let phi = load_json::<PotentialsDoc>(&potentials)?.to_potentials(&family)?;
            let grid = load_json::<CloudDoc>(&grid)?.to_cloud()?;
            let x0 = parse_point(&x0, family.dimension())?;
            let ctx = OrderContext::new(family, phi)?;
            let (star, report) = bishop_phelps_search(&ctx, &x0, &grid, opts.tol)?;
            em.summary(&json!({
                "point": star.coords(),
                "descent_slack": report.descent_slack,
                "displacement": report.displacement,
                "strict_ok": report.strict_ok,
            }));
            Ok(if report.strict_ok { EXIT_OK } else { EXIT_CONTRACT })
        }
        Command::Ekeland {
            space,
            potentials,
            x0,
            delta,
            grid,
        } => {
            let family = load_json::<SpaceDoc>(&space)?.to_family()?;
            let phi = load_json::<PotentialsDoc>(&potentials)?.to_potentials(&family)?;
            let grid = load_json::<CloudDoc>(&grid)?.to_cloud()?;
            let x0 = parse_point(&x0, family.dimension())?;
            let delta = parse_indexed_values(&delta, &family)?;
            let ctx = OrderContext::new(family, phi)?;
            let (star, report) = ekeland_search(&ctx, &x0, &delta, &grid, opts.tol)?;
            em.summary(&json!({
                "point": star.coords(),
                "descent_slack": report.descent_slack,
                "displacement": report.displacement,
                "strict_ok": report.strict_ok,
            }));
            Ok(if report.strict_ok { EXIT_OK } else { EXIT_CONTRACT })
        }
        Command::Demo { name } => run_demo(&name, &mut em, &cfg),
    }
}

fn demo_result(em: &mut Emitter, name: &str, pass: bool, detail: serde_json::Value) -> u8 {
    em.summary(&json!({
        "demo": name,
        "status": if pass { "PASS" } else { "FAIL" },
        "detail": detail,
    }));
    if pass {
        EXIT_OK
    } else {
        EXIT_NO_CONVERGENCE
    }
}

fn run_demo(name: &str, em: &mut Emitter, cfg: &SolverConfig<f64>) -> Result<u8, UniformError> {
    use uniformis::multifun::AffineBranch;
    let line = PseudometricFamily::<f64>::line();
    match name {
        "hausdorff-pair" => {
            let a = PointCloud::on_line(&[0.0, 1.0]);
            let b = PointCloud::on_line(&[0.0]);
            let h = hausdorff_pseudometric(&line, "d1", &a, &b)?;
            let oracle = hausdorff_via_inflation(&line, "d1", &a, &b, 1e-9)?;
            let pass = (h - 1.0).abs() < 1e-12 && (h - oracle).abs() <= 1e-6;
            Ok(demo_result(em, name, pass, json!({"h": h, "oracle": oracle})))
        }
        "alpha-scale" => {
            let expr = uniformis::alpha::SetExpr::Scale(
                0.5,
                Box::new(uniformis::alpha::SetExpr::AbstractAtom {
                    name: "a".into(),
                    alpha: uniformis::alpha::AlphaInterval::new(2.0, 2.0)?,
                }),
            );
            let (iv, _) = alpha_bounds(&expr)?;
            let pass = iv.lo == 1.0 && iv.hi == 1.0;
            Ok(demo_result(em, name, pass, json!({"lo": iv.lo, "hi": iv.hi})))
        }
        "picard-average" => {
            let f = uniformis::multifun::PointMap::affine_diag(vec![0.5], vec![0.5])?;
            let k = ContractionConstants::uniform(&line, 0.5)?;
            let (star, trace) = picard_solve(&f, &line, &k, &PointN::of(&[0.0]), cfg)?;
            let pass = trace.termination == Termination::Converged
                && (star.get(0) - 1.0).abs() < 1e-7;
            Ok(demo_result(em, name, pass, json!({"point": star.coords()})))
        }
        "nadler-two-branch" => {
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
            let k = ContractionConstants::uniform(&line, 1.0 / 3.0)?;
            let (star, trace) = nadler_solve(
                &t,
                &line,
                &k,
                &PointN::of(&[3.0]),
                cfg,
                SelectionStrategy::NearestRho,
            )?;
            let x = star.get(0);
            let pass = trace.termination == Termination::Converged
                && (x.abs() < 1e-6 || (x - 1.5).abs() < 1e-6);
            Ok(demo_result(em, name, pass, json!({"point": star.coords()})))
        }
        "caristi-r2" => {
            let f2 = PseudometricFamily::<f64>::coordinate(2);
            let phi = uniformis::solvers::PotentialFamily::new(
                BTreeMap::from([
                    (
                        "d1".to_string(),
                        std::sync::Arc::new(|x: &PointN<f64>| 2.0 * x.get(0).abs())
                            as std::sync::Arc<dyn Fn(&PointN<f64>) -> f64 + Send + Sync>,
                    ),
                    (
                        "d2".to_string(),
                        std::sync::Arc::new(|x: &PointN<f64>| 2.0 * x.get(1).abs())
                            as std::sync::Arc<dyn Fn(&PointN<f64>) -> f64 + Send + Sync>,
                    ),
                ]),
                BTreeMap::from([("d1".to_string(), 0.0), ("d2".to_string(), 0.0)]),
            )?;
            let halve = MultiFunction::custom(|x: &PointN<f64>| {
                PointCloud::raw(vec![x.scale(0.5)]).expect("nonempty")
            });
            let caristi_cfg = SolverConfig::new(1e-7, cfg.max_iter)?;
            let (star, _) =
                caristi_descent(&halve, &f2, &phi, &PointN::of(&[1.0, 1.0]), &caristi_cfg)?;
            let pass = star.get(0).abs() < 1e-6 && star.get(1).abs() < 1e-6;
            Ok(demo_result(em, name, pass, json!({"point": star.coords()})))
        }
        "set-contraction-third-map" => {
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
            let k = ContractionConstants::uniform(&line, 1.0 / 3.0)?;
            let clouds: Vec<_> = (0..10)
                .map(|s| {
                    PointCloud::on_line(
                        &(0..100)
                            .map(|i| (i as f64 * 0.137 + s as f64 * 0.29) % 3.0)
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            let rep = check_set_contraction_sampled(&t, &line, &k, &clouds, 3, 0.05)?;
            Ok(demo_result(
                em,
                name,
                rep.passed(),
                json!({"worst_slack": rep.worst_slack}),
            ))
        }
        "empirical-alpha-pair" => {
            let pair = PointCloud::on_line(&[0.0, 1.0]);
            let a = empirical_alpha(&pair, &line, 1)?;
            let pass = (a - 1.0).abs() < 1e-9;
            Ok(demo_result(em, name, pass, json!({"alpha": a})))
        }
        "bishop-phelps-abs" => {
            let phi = uniformis::solvers::PotentialFamily::uniform(
                &line,
                |x: &PointN<f64>| x.get(0).abs(),
                0.0,
            )?;
            let ctx = OrderContext::new(line.clone(), phi)?;
            let grid = PointCloud::on_line(
                &(-10..=10).map(|i| i as f64 * 0.1).collect::<Vec<_>>(),
            );
            let (star, report) =
                bishop_phelps_search(&ctx, &PointN::of(&[0.3]), &grid, cfg.tol)?;
            let pass = star.get(0).abs() < 1e-9 && report.strict_ok;
            Ok(demo_result(em, name, pass, json!({"point": star.coords()})))
        }
        "ekeland-abs" => {
            let phi = uniformis::solvers::PotentialFamily::uniform(
                &line,
                |x: &PointN<f64>| x.get(0).abs(),
                0.0,
            )?;
            let ctx = OrderContext::new(line.clone(), phi)?;
            let grid = PointCloud::on_line(
                &(-20..=20).map(|i| i as f64 * 0.05).collect::<Vec<_>>(),
            );
            let delta = BTreeMap::from([("d1".to_string(), 0.3)]);
            let (star, report) =
                ekeland_search(&ctx, &PointN::of(&[0.3]), &delta, &grid, cfg.tol)?;
            let pass = star.get(0).abs() < 1e-9
                && report.strict_ok
                && report.displacement["d1"] <= 0.3 + 1e-12
                && report.descent_slack["d1"] >= -1e-12;
            Ok(demo_result(em, name, pass, json!({"point": star.coords()})))
        }
        "inward-affine" => {
            let t = uniformis::multifun::PointMap::affine_diag(vec![-0.5], vec![1.2])?;
            let k = ContractionConstants::uniform(&line, 0.5)?;
            let kgen = [PointN::of(&[0.0]), PointN::of(&[1.0])];
            let (star, trace, wits) =
                inward_solve(&t, &kgen, &line, &k, &PointN::of(&[0.0]), cfg)?;
            let w0 = &wits[0];
            let pass = trace.termination == Termination::Converged
                && (star.get(0) - 0.8).abs() < 1e-7
                && (w0.f.get(0) - 1.0).abs() < 1e-9
                && (w0.c - 1.2).abs() < 1e-9;
            Ok(demo_result(
                em,
                name,
                pass,
                json!({"point": star.coords(), "witness_c": w0.c}),
            ))
        }
        "invariant-set" => {
            let universe = PointCloud::on_line(&[0.0, 1.0, 2.0, 3.0]);
            let succ = MultiFunction::custom(|x: &PointN<f64>| {
                let v = x.get(0);
                PointCloud::on_line(&[if v < 2.0 { v + 1.0 } else { v }])
            });
            let closed = uniformis::multifun::invariant_set_iterate(
                &succ,
                &line,
                &PointN::of(&[0.0]),
                &universe,
                16,
            )?;
            let got: Vec<f64> = closed.points().iter().map(|p| p.get(0)).collect();
            let pass = got == vec![0.0, 1.0, 2.0];
            Ok(demo_result(em, name, pass, json!({"members": got})))
        }
        other => Err(UniformError::Malformed(format!(
            "unknown demo `{other}`; available: hausdorff-pair, alpha-scale, picard-average, \
             nadler-two-branch, caristi-r2, set-contraction-third-map, empirical-alpha-pair, \
             bishop-phelps-abs, ekeland-abs, inward-affine, invariant-set"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error_exit_code(&err))
        }
    }
}
