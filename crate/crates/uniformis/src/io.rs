//! JSON document formats for the CLI: spaces, clouds, multi-functions,
//! maps, set/operator expressions, and potential families. All documents
//! use `f64`; they feed the concrete aliases at the crate root.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alpha::{AlphaInterval, OperatorExpr, SetExpr};
use crate::error::{Result, UniformError};
use crate::hausdorff::PointCloud;
use crate::multifun::{AffineBranch, MultiFunction, PointMap};
use crate::solvers::PotentialFamily;
use crate::space::{MetricKind, PointN, Pseudometric, PseudometricFamily};

pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum MetricKindDoc {
    CoordinateAbs { coord: usize },
    WeightedAbs { weights: Vec<f64> },
    EuclideanSubset { coords: Vec<usize> },
    MaxOfAll,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricDoc {
    pub label: String,
    #[serde(flatten)]
    pub kind: MetricKindDoc,
}

/// `{ "dimension": n, "pseudometrics": [...], "separating": bool }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub dimension: usize,
    pub pseudometrics: Vec<MetricDoc>,
    #[serde(default)]
    pub separating: bool,
}

impl SpaceDoc {
    pub fn to_family(&self) -> Result<PseudometricFamily<f64>> {
        let metrics = self
            .pseudometrics
            .iter()
            .map(|m| Pseudometric {
                label: m.label.clone(),
                kind: match &m.kind {
                    MetricKindDoc::CoordinateAbs { coord } => {
                        MetricKind::CoordinateAbs { coord: *coord }
                    }
                    MetricKindDoc::WeightedAbs { weights } => MetricKind::WeightedAbs {
                        weights: weights.clone(),
                    },
                    MetricKindDoc::EuclideanSubset { coords } => MetricKind::EuclideanSubset {
                        coords: coords.clone(),
                    },
                    MetricKindDoc::MaxOfAll => MetricKind::MaxOfAll,
                },
            })
            .collect();
        PseudometricFamily::new(self.dimension, metrics, self.separating)
    }
}

/// `{ "points": [[...], ...] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CloudDoc {
    pub points: Vec<Vec<f64>>,
}

impl CloudDoc {
    pub fn to_cloud(&self) -> Result<PointCloud<f64>> {
        let pts = self
            .points
            .iter()
            .map(|c| PointN::new(c.clone()))
            .collect::<Result<Vec<_>>>()?;
        PointCloud::raw(pts)
    }

    pub fn from_cloud(cloud: &PointCloud<f64>) -> Self {
        Self {
            points: cloud.points().iter().map(|p| p.coords().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchDoc {
    pub scale: f64,
    pub offset: Vec<f64>,
}

/// Multi-function description: affine branches or a constant cloud.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MultiFnDoc {
    AffineBranches { branches: Vec<BranchDoc> },
    Constant { cloud: CloudDoc },
}

impl MultiFnDoc {
    pub fn to_multifun(&self) -> Result<MultiFunction<f64>> {
        match self {
            MultiFnDoc::AffineBranches { branches } => {
                if branches.is_empty() {
                    return Err(UniformError::Malformed(
                        "multi-function needs at least one branch".into(),
                    ));
                }
                Ok(MultiFunction::affine_branches(
                    branches
                        .iter()
                        .map(|b| AffineBranch {
                            scale: b.scale,
                            offset: b.offset.clone(),
                        })
                        .collect(),
                ))
            }
            MultiFnDoc::Constant { cloud } => Ok(MultiFunction::constant(cloud.to_cloud()?)),
        }
    }
}

/// Single-valued affine map `x ↦ scale ⊙ x + offset` (componentwise).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapDoc {
    pub scale: Vec<f64>,
    pub offset: Vec<f64>,
}

impl MapDoc {
    pub fn to_map(&self) -> Result<PointMap<f64>> {
        PointMap::affine_diag(self.scale.clone(), self.offset.clone())
    }
}

/// Set-expression tree mirroring the node variants.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ExprDoc {
    Finite { cloud: CloudDoc },
    Abstract { name: String, lo: f64, hi: f64 },
    Ball { radius: f64 },
    Union { args: Vec<ExprDoc> },
    MinkowskiSum { left: Box<ExprDoc>, right: Box<ExprDoc> },
    Scale { factor: f64, arg: Box<ExprDoc> },
    ConvexHull { arg: Box<ExprDoc> },
    Closure { arg: Box<ExprDoc> },
    Thicken { arg: Box<ExprDoc>, eps: f64 },
    SubsetAssert { arg: Box<ExprDoc>, superset: Box<ExprDoc> },
}

impl ExprDoc {
    pub fn to_expr(&self) -> Result<SetExpr<f64>> {
        Ok(match self {
            ExprDoc::Finite { cloud } => SetExpr::FiniteAtom(cloud.to_cloud()?),
            ExprDoc::Abstract { name, lo, hi } => SetExpr::AbstractAtom {
                name: name.clone(),
                alpha: AlphaInterval::new(*lo, *hi)?,
            },
            ExprDoc::Ball { radius } => SetExpr::BallAtom { radius: *radius },
            ExprDoc::Union { args } => SetExpr::Union(
                args.iter().map(|a| a.to_expr()).collect::<Result<Vec<_>>>()?,
            ),
            ExprDoc::MinkowskiSum { left, right } => {
                SetExpr::MinkowskiSum(Box::new(left.to_expr()?), Box::new(right.to_expr()?))
            }
            ExprDoc::Scale { factor, arg } => {
                SetExpr::Scale(*factor, Box::new(arg.to_expr()?))
            }
            ExprDoc::ConvexHull { arg } => SetExpr::ConvexHull(Box::new(arg.to_expr()?)),
            ExprDoc::Closure { arg } => SetExpr::Closure(Box::new(arg.to_expr()?)),
            ExprDoc::Thicken { arg, eps } => {
                SetExpr::Thicken(Box::new(arg.to_expr()?), *eps)
            }
            ExprDoc::SubsetAssert { arg, superset } => SetExpr::SubsetAssert(
                Box::new(arg.to_expr()?),
                Box::new(superset.to_expr()?),
            ),
        })
    }
}

/// Operator-expression tree for contraction certification.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OperatorDoc {
    Argument,
    Scale { factor: f64, arg: Box<OperatorDoc> },
    Translate { offset: Vec<f64>, arg: Box<OperatorDoc> },
    ConvexHull { arg: Box<OperatorDoc> },
    Closure { arg: Box<OperatorDoc> },
    UnionFinite { arg: Box<OperatorDoc>, cloud: CloudDoc },
}

impl OperatorDoc {
    pub fn to_operator(&self) -> Result<OperatorExpr<f64>> {
        Ok(match self {
            OperatorDoc::Argument => OperatorExpr::Argument,
            OperatorDoc::Scale { factor, arg } => {
                OperatorExpr::Scale(*factor, Box::new(arg.to_operator()?))
            }
            OperatorDoc::Translate { offset, arg } => {
                OperatorExpr::Translate(offset.clone(), Box::new(arg.to_operator()?))
            }
            OperatorDoc::ConvexHull { arg } => {
                OperatorExpr::ConvexHull(Box::new(arg.to_operator()?))
            }
            OperatorDoc::Closure { arg } => {
                OperatorExpr::Closure(Box::new(arg.to_operator()?))
            }
            OperatorDoc::UnionFinite { arg, cloud } => {
                OperatorExpr::UnionFinite(Box::new(arg.to_operator()?), cloud.to_cloud()?)
            }
        })
    }
}

/// One potential `φ_λ` as a closed-form description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialKindDoc {
    /// `scale · d_λ(x, center)` under this index's own pseudometric.
    ScaledDistance { scale: f64, center: Vec<f64> },
    /// `scale · d_λ(x, center)²`.
    Quadratic { scale: f64, center: Vec<f64> },
    Constant { value: f64 },
    /// `Σ coeffs_i x_i + intercept`; the declared lower bound is trusted
    /// and asserted at runtime.
    Affine { coeffs: Vec<f64>, intercept: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialDoc {
    pub label: String,
    #[serde(flatten)]
    pub kind: PotentialKindDoc,
    #[serde(default)]
    pub lower_bound: f64,
}

/// `{ "potentials": [ {label, kind, ...}, ... ] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialsDoc {
    pub potentials: Vec<PotentialDoc>,
}

impl PotentialsDoc {
    pub fn to_potentials(&self, family: &PseudometricFamily<f64>) -> Result<PotentialFamily<f64>> {
        let mut per_index: BTreeMap<String, Arc<dyn Fn(&PointN<f64>) -> f64 + Send + Sync>> =
            BTreeMap::new();
        let mut bounds = BTreeMap::new();
        for doc in &self.potentials {
            family.index_of(&doc.label)?;
            let fam = family.clone();
            let label = doc.label.clone();
            let f: Arc<dyn Fn(&PointN<f64>) -> f64 + Send + Sync> = match &doc.kind {
                PotentialKindDoc::ScaledDistance { scale, center } => {
                    let center = PointN::new(center.clone())?;
                    let scale = *scale;
                    Arc::new(move |x: &PointN<f64>| {
                        scale * fam.eval(&label, x, &center).expect("valid index")
                    })
                }
                PotentialKindDoc::Quadratic { scale, center } => {
                    let center = PointN::new(center.clone())?;
                    let scale = *scale;
                    Arc::new(move |x: &PointN<f64>| {
                        let d = fam.eval(&label, x, &center).expect("valid index");
                        scale * d * d
                    })
                }
                PotentialKindDoc::Constant { value } => {
                    let v = *value;
                    Arc::new(move |_: &PointN<f64>| v)
                }
                PotentialKindDoc::Affine { coeffs, intercept } => {
                    let coeffs = coeffs.clone();
                    let intercept = *intercept;
                    Arc::new(move |x: &PointN<f64>| {
                        coeffs
                            .iter()
                            .zip(x.coords())
                            .map(|(c, v)| c * v)
                            .sum::<f64>()
                            + intercept
                    })
                }
            };
            per_index.insert(doc.label.clone(), f);
            bounds.insert(doc.label.clone(), doc.lower_bound);
        }
        PotentialFamily::new(per_index, bounds)
    }
}

/// `λ → value` maps as they appear on the command line (`--k`, `--delta`,
/// `--r`): either a bare number applied to every index, or a JSON object.
pub fn parse_indexed_values(
    raw: &str,
    family: &PseudometricFamily<f64>,
) -> Result<BTreeMap<String, f64>> {
    if let Ok(v) = raw.parse::<f64>() {
        return Ok(family.labels().map(|l| (l.to_string(), v)).collect());
    }
    let map: BTreeMap<String, f64> = serde_json::from_str(raw)?;
    for label in map.keys() {
        family.index_of(label)?;
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_doc_round_trip() {
        let text = r#"{
            "dimension": 2,
            "pseudometrics": [
                {"label": "d1", "kind": "coordinate_abs", "params": {"coord": 0}},
                {"label": "d2", "kind": "weighted_abs", "params": {"weights": [0.0, 2.0]}},
                {"label": "e", "kind": "euclidean_subset", "params": {"coords": [0, 1]}},
                {"label": "__max", "kind": "max_of_all"}
            ],
            "separating": true
        }"#;
        let doc: SpaceDoc = serde_json::from_str(text).unwrap();
        let family = doc.to_family().unwrap();
        assert_eq!(family.dimension(), 2);
        assert!(family.saturated());
        let x = PointN::of(&[0.0, 0.0]);
        let y = PointN::of(&[3.0, 1.0]);
        assert_eq!(family.eval("d1", &x, &y).unwrap(), 3.0);
        assert_eq!(family.eval("d2", &x, &y).unwrap(), 2.0);

        let back = serde_json::to_string(&doc).unwrap();
        let again: SpaceDoc = serde_json::from_str(&back).unwrap();
        assert_eq!(again.pseudometrics.len(), 4);
    }

    #[test]
    fn cloud_and_multifn_docs() {
        let c: CloudDoc = serde_json::from_str(r#"{"points": [[0.0], [1.0]]}"#).unwrap();
        assert_eq!(c.to_cloud().unwrap().len(), 2);

        let m: MultiFnDoc = serde_json::from_str(
            r#"{"kind": "affine_branches",
                "branches": [{"scale": 0.3333333333333333, "offset": [0.0]},
                             {"scale": 0.3333333333333333, "offset": [1.0]}]}"#,
        )
        .unwrap();
        let mf = m.to_multifun().unwrap();
        assert_eq!(mf.eval_image(&PointN::of(&[3.0])).len(), 2);

        let m: MultiFnDoc =
            serde_json::from_str(r#"{"kind": "constant", "cloud": {"points": [[7.0]]}}"#)
                .unwrap();
        let mf = m.to_multifun().unwrap();
        assert_eq!(mf.eval_image(&PointN::of(&[0.0])).points()[0].get(0), 7.0);
    }

    #[test]
    fn expr_doc_nested() {
        let text = r#"{
            "op": "scale", "factor": 0.5,
            "arg": {"op": "union", "args": [
                {"op": "abstract", "name": "a", "lo": 2.0, "hi": 2.0},
                {"op": "finite", "cloud": {"points": [[0.0], [1.0]]}}
            ]}
        }"#;
        let doc: ExprDoc = serde_json::from_str(text).unwrap();
        let (iv, trace) = crate::alpha::alpha_bounds(&doc.to_expr().unwrap()).unwrap();
        assert_eq!((iv.lo, iv.hi), (1.0, 1.0));
        assert!(trace.iter().any(|s| s.rule == "scale-homogeneity"));
    }

    #[test]
    fn operator_doc_nested() {
        let text = r#"{
            "op": "translate", "offset": [1.0],
            "arg": {"op": "scale", "factor": 0.5, "arg": {"op": "argument"}}
        }"#;
        let doc: OperatorDoc = serde_json::from_str(text).unwrap();
        match crate::alpha::certify_k_set_contraction(&doc.to_operator().unwrap(), 0.5).unwrap() {
            crate::alpha::KscOutcome::Certified { factor, .. } => assert_eq!(factor, 0.5),
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn potentials_doc() {
        let family = PseudometricFamily::<f64>::line();
        let doc: PotentialsDoc = serde_json::from_str(
            r#"{"potentials": [
                {"label": "d1", "kind": "scaled_distance",
                 "scale": 2.0, "center": [0.0], "lower_bound": 0.0}
            ]}"#,
        )
        .unwrap();
        let phi = doc.to_potentials(&family).unwrap();
        assert_eq!(phi.eval("d1", &PointN::of(&[1.5])).unwrap(), 3.0);
    }

    #[test]
    fn indexed_values_parsing() {
        let family = PseudometricFamily::<f64>::coordinate(2);
        let uniform = parse_indexed_values("0.5", &family).unwrap();
        assert_eq!(uniform["d1"], 0.5);
        assert_eq!(uniform["d2"], 0.5);
        let per = parse_indexed_values(r#"{"d1": 0.25, "d2": 0.75}"#, &family).unwrap();
        assert_eq!(per["d1"], 0.25);
        assert!(parse_indexed_values(r#"{"zz": 1.0}"#, &family).is_err());
    }
}
