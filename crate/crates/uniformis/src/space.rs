//! Uniform spaces presented as finite saturated families of pseudometrics
//! over coordinate-vector points.

use std::collections::BTreeMap;

use crate::error::{Result, UniformError};
use crate::scalar::Scalar;

/// Label of the synthetic top index added by [`PseudometricFamily::saturate`].
pub const MAX_LABEL: &str = "__max";

/// A point of the ambient space: a finite real coordinate vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PointN<T> {
    coords: Vec<T>,
}

impl<T: Scalar> PointN<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.is_empty() {
            return Err(UniformError::InvalidArgument(
                "point must have dimension >= 1".into(),
            ));
        }
        for (i, c) in coords.iter().enumerate() {
            if !c.is_finite() {
                return Err(UniformError::NonFiniteCoordinate(i));
            }
        }
        Ok(Self { coords })
    }

    /// Shorthand used pervasively in tests; panics on invalid coordinates.
    pub fn of(coords: &[T]) -> Self {
        Self::new(coords.to_vec()).expect("valid point")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> T {
        self.coords[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| *a + *b)
            .collect();
        Self { coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| *a - *b)
            .collect();
        Self { coords }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            coords: self.coords.iter().map(|c| *c * s).collect(),
        }
    }

    /// `self + s * (other - self)`.
    pub fn lerp(&self, other: &Self, s: T) -> Self {
        self.add(&other.sub(self).scale(s))
    }

    pub fn norm2(&self) -> T {
        self.coords.iter().map(|c| *c * *c).sum::<T>().sqrt()
    }

    pub fn dot(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| *a * *b)
            .sum()
    }
}

/// Evaluation rule for one pseudometric index.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricKind<T> {
    /// `|x_i - y_i|` for a single coordinate `i`.
    CoordinateAbs { coord: usize },
    /// `sum_i w_i |x_i - y_i|` with nonnegative weights.
    WeightedAbs { weights: Vec<T> },
    /// Euclidean norm restricted to a coordinate subset.
    EuclideanSubset { coords: Vec<usize> },
    /// Pointwise maximum over every other index of the family; realizes
    /// condition (S) for finite index sets.
    MaxOfAll,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pseudometric<T> {
    pub label: String,
    pub kind: MetricKind<T>,
}

/// A finite indexed family `{d_λ}` presenting the uniform space.
///
/// All evaluations are pure; the family is immutable after construction.
#[derive(Clone, Debug)]
pub struct PseudometricFamily<T> {
    metrics: Vec<Pseudometric<T>>,
    dimension: usize,
    separating: bool,
    saturated: bool,
}

impl<T: Scalar> PseudometricFamily<T> {
    pub fn new(
        dimension: usize,
        metrics: Vec<Pseudometric<T>>,
        separating: bool,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(UniformError::InvalidArgument(
                "ambient dimension must be >= 1".into(),
            ));
        }
        if metrics.is_empty() {
            return Err(UniformError::EmptyFamily);
        }
        let mut seen = std::collections::BTreeSet::new();
        for m in &metrics {
            if !seen.insert(m.label.clone()) {
                return Err(UniformError::InvalidArgument(format!(
                    "duplicate pseudometric label `{}`",
                    m.label
                )));
            }
            match &m.kind {
                MetricKind::CoordinateAbs { coord } => {
                    if *coord >= dimension {
                        return Err(UniformError::InvalidArgument(format!(
                            "coordinate {coord} out of range for dimension {dimension}"
                        )));
                    }
                }
                MetricKind::WeightedAbs { weights } => {
                    if weights.len() != dimension {
                        return Err(UniformError::InvalidArgument(
                            "weight vector length must equal the dimension".into(),
                        ));
                    }
                    if weights.iter().any(|w| !w.is_finite() || *w < T::zero()) {
                        return Err(UniformError::InvalidArgument(
                            "weights must be finite and nonnegative".into(),
                        ));
                    }
                }
                MetricKind::EuclideanSubset { coords } => {
                    if coords.is_empty() || coords.iter().any(|c| *c >= dimension) {
                        return Err(UniformError::InvalidArgument(
                            "euclidean subset must be nonempty and in range".into(),
                        ));
                    }
                }
                MetricKind::MaxOfAll => {}
            }
        }
        let saturated = metrics.iter().any(|m| matches!(m.kind, MetricKind::MaxOfAll));
        Ok(Self {
            metrics,
            dimension,
            separating,
            saturated,
        })
    }

    /// The real line with the single pseudometric `|x - y|`, labeled `d1`.
    pub fn line() -> Self {
        Self::coordinate(1)
    }

    /// `R^n` with the coordinate pseudometrics `d1..dn`, `d_i = |x_i - y_i|`.
    /// Separating as a family.
    pub fn coordinate(dimension: usize) -> Self {
        let metrics = (0..dimension)
            .map(|i| Pseudometric {
                label: format!("d{}", i + 1),
                kind: MetricKind::CoordinateAbs { coord: i },
            })
            .collect();
        Self::new(dimension, metrics, true).expect("valid coordinate family")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn separating(&self) -> bool {
        self.separating
    }

    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.metrics.iter().map(|m| m.label.as_str())
    }

    pub fn metrics(&self) -> &[Pseudometric<T>] {
        &self.metrics
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.metrics
            .iter()
            .position(|m| m.label == label)
            .ok_or_else(|| UniformError::UnknownIndex(label.to_string()))
    }

    fn check_dims(&self, x: &PointN<T>, y: &PointN<T>) -> Result<()> {
        for p in [x, y] {
            if p.dim() != self.dimension {
                return Err(UniformError::DimensionMismatch {
                    expected: self.dimension,
                    got: p.dim(),
                });
            }
        }
        Ok(())
    }

    /// `d_λ(x, y)` for the index with the given label.
    pub fn eval(&self, label: &str, x: &PointN<T>, y: &PointN<T>) -> Result<T> {
        let idx = self.index_of(label)?;
        self.check_dims(x, y)?;
        Ok(self.eval_kind(&self.metrics[idx].kind, x, y))
    }

    fn eval_kind(&self, kind: &MetricKind<T>, x: &PointN<T>, y: &PointN<T>) -> T {
        match kind {
            MetricKind::CoordinateAbs { coord } => (x.get(*coord) - y.get(*coord)).abs(),
            MetricKind::WeightedAbs { weights } => weights
                .iter()
                .enumerate()
                .map(|(i, w)| *w * (x.get(i) - y.get(i)).abs())
                .sum(),
            MetricKind::EuclideanSubset { coords } => coords
                .iter()
                .map(|i| {
                    let d = x.get(*i) - y.get(*i);
                    d * d
                })
                .sum::<T>()
                .sqrt(),
            MetricKind::MaxOfAll => self
                .metrics
                .iter()
                .filter(|m| !matches!(m.kind, MetricKind::MaxOfAll))
                .map(|m| self.eval_kind(&m.kind, x, y))
                .fold(T::zero(), T::max),
        }
    }

    /// Max of `d_λ(x, y)` over every index.
    pub fn max_dist(&self, x: &PointN<T>, y: &PointN<T>) -> Result<T> {
        self.check_dims(x, y)?;
        Ok(self
            .metrics
            .iter()
            .map(|m| self.eval_kind(&m.kind, x, y))
            .fold(T::zero(), T::max))
    }

    /// Per-index distances keyed by label.
    pub fn all_dists(&self, x: &PointN<T>, y: &PointN<T>) -> Result<BTreeMap<String, T>> {
        self.check_dims(x, y)?;
        Ok(self
            .metrics
            .iter()
            .map(|m| (m.label.clone(), self.eval_kind(&m.kind, x, y)))
            .collect())
    }

    /// Adds the top index `__max` witnessing condition (S). Idempotent;
    /// original indices are preserved unchanged.
    pub fn saturate(&self) -> Result<Self> {
        if self.metrics.is_empty() {
            return Err(UniformError::EmptyFamily);
        }
        if self.saturated {
            return Ok(self.clone());
        }
        let mut metrics = self.metrics.clone();
        metrics.push(Pseudometric {
            label: MAX_LABEL.to_string(),
            kind: MetricKind::MaxOfAll,
        });
        Self::new(self.dimension, metrics, self.separating)
    }

    /// The metric `ρ(x,y) = sup_λ d_λ(x,y) ∧ 1`.
    pub fn sup_metric_rho(&self, x: &PointN<T>, y: &PointN<T>) -> Result<T> {
        Ok(self.max_dist(x, y)?.min(T::one()))
    }

    /// Whether every index reduces, on this family's dimension, to a scaled
    /// absolute difference of a single coordinate; returns `(coord, scale)`
    /// per label when so. Used by the exact 1-d covering routines.
    pub fn as_scaled_abs(&self, label: &str) -> Option<(usize, T)> {
        let idx = self.index_of(label).ok()?;
        self.kind_as_scaled_abs(&self.metrics[idx].kind)
    }

    fn kind_as_scaled_abs(&self, kind: &MetricKind<T>) -> Option<(usize, T)> {
        match kind {
            MetricKind::CoordinateAbs { coord } => Some((*coord, T::one())),
            MetricKind::WeightedAbs { weights } => {
                let nonzero: Vec<_> = weights
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| **w > T::zero())
                    .collect();
                match nonzero.as_slice() {
                    [] => None,
                    [(i, w)] => Some((*i, **w)),
                    _ => None,
                }
            }
            MetricKind::EuclideanSubset { coords } => match coords.as_slice() {
                [i] => Some((*i, T::one())),
                _ => None,
            },
            MetricKind::MaxOfAll => {
                let mut coord = None;
                let mut scale = T::zero();
                for m in self
                    .metrics
                    .iter()
                    .filter(|m| !matches!(m.kind, MetricKind::MaxOfAll))
                {
                    let (c, s) = self.kind_as_scaled_abs(&m.kind)?;
                    match coord {
                        None => coord = Some(c),
                        Some(c0) if c0 != c => return None,
                        _ => {}
                    }
                    scale = scale.max(s);
                }
                coord.map(|c| (c, scale))
            }
        }
    }
}

/// Whether the sequence has a tail of `d_λ`-diameter below `eps` for every
/// index simultaneously.
pub fn is_cauchy_at_tolerance<T: Scalar>(
    seq: &[PointN<T>],
    family: &PseudometricFamily<T>,
    eps: T,
) -> Result<bool> {
    if eps <= T::zero() {
        return Err(UniformError::InvalidArgument("eps must be > 0".into()));
    }
    if seq.is_empty() {
        return Err(UniformError::InvalidArgument(
            "sequence must be nonempty".into(),
        ));
    }
    if seq.len() == 1 {
        return Ok(true);
    }
    // a meaningful tail has at least one pair; the singleton tail is
    // excluded so a wildly oscillating finite sequence is not vacuously
    // declared Cauchy
    'tails: for start in 0..seq.len() - 1 {
        for m in start..seq.len() {
            for n in m + 1..seq.len() {
                if family.max_dist(&seq[m], &seq[n])? >= eps {
                    continue 'tails;
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Per-index contraction constants `k_λ ∈ [0,1)`.
#[derive(Clone, Debug)]
pub struct ContractionConstants<T> {
    per_index: BTreeMap<String, T>,
}

impl<T: Scalar> ContractionConstants<T> {
    pub fn new(per_index: BTreeMap<String, T>) -> Result<Self> {
        if per_index.is_empty() {
            return Err(UniformError::InvalidArgument(
                "at least one contraction constant required".into(),
            ));
        }
        for (label, k) in &per_index {
            if !(*k >= T::zero() && *k < T::one()) {
                return Err(UniformError::BadContractionConstant {
                    index: label.clone(),
                    value: k.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self { per_index })
    }

    /// The same constant for every index of the family.
    pub fn uniform(family: &PseudometricFamily<T>, k: T) -> Result<Self> {
        Self::new(family.labels().map(|l| (l.to_string(), k)).collect())
    }

    pub fn get(&self, label: &str) -> Result<T> {
        self.per_index
            .get(label)
            .copied()
            .ok_or_else(|| UniformError::UnknownIndex(label.to_string()))
    }

    /// `sup_λ k_λ`; strictly below 1 by construction.
    pub fn sup(&self) -> T {
        self.per_index
            .values()
            .copied()
            .fold(T::zero(), T::max)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, T)> {
        self.per_index.iter().map(|(l, k)| (l.as_str(), *k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[f64]) -> PointN<f64> {
        PointN::of(cs)
    }

    #[test]
    fn saturate_single_index_max_equals_it() {
        let f = PseudometricFamily::<f64>::line();
        let sat = f.saturate().unwrap();
        assert!(sat.saturated());
        let x = p(&[0.3]);
        let y = p(&[1.7]);
        let d1 = sat.eval("d1", &x, &y).unwrap();
        let dm = sat.eval(MAX_LABEL, &x, &y).unwrap();
        assert_eq!(d1, dm);
    }

    #[test]
    fn saturate_max_over_coordinates() {
        let f = PseudometricFamily::<f64>::coordinate(2).saturate().unwrap();
        let v = f.eval(MAX_LABEL, &p(&[0.0, 0.0]), &p(&[1.0, 3.0])).unwrap();
        assert_eq!(v, 3.0);
    }

    #[test]
    fn saturate_idempotent() {
        let f = PseudometricFamily::<f64>::coordinate(3);
        let s1 = f.saturate().unwrap();
        let s2 = s1.saturate().unwrap();
        assert_eq!(
            s1.labels().collect::<Vec<_>>(),
            s2.labels().collect::<Vec<_>>()
        );
        let x = p(&[1.0, -2.0, 0.5]);
        let y = p(&[0.0, 4.0, 0.5]);
        for l in s1.labels() {
            assert_eq!(s1.eval(l, &x, &y).unwrap(), s2.eval(l, &x, &y).unwrap());
        }
    }

    #[test]
    fn rho_examples() {
        let f2 = PseudometricFamily::<f64>::coordinate(2);
        let x = p(&[0.0, 0.0]);
        assert_eq!(f2.sup_metric_rho(&x, &x).unwrap(), 0.0);
        assert!((f2.sup_metric_rho(&x, &p(&[0.2, 0.7])).unwrap() - 0.7).abs() < 1e-15);
        let f1 = PseudometricFamily::<f64>::line();
        assert_eq!(f1.sup_metric_rho(&p(&[0.0]), &p(&[5.0])).unwrap(), 1.0);
    }

    #[test]
    fn cauchy_examples() {
        let f = PseudometricFamily::<f64>::line();
        let constant: Vec<_> = (0..10).map(|_| p(&[2.0])).collect();
        assert!(is_cauchy_at_tolerance(&constant, &f, 1e-6).unwrap());

        let halving: Vec<_> = (0..20).map(|n| p(&[0.5f64.powi(n)])).collect();
        assert!(is_cauchy_at_tolerance(&halving, &f, 0.1).unwrap());

        let alternating: Vec<_> = (0..20).map(|n| p(&[if n % 2 == 0 { 1.0 } else { -1.0 }])).collect();
        assert!(!is_cauchy_at_tolerance(&alternating, &f, 0.5).unwrap());
    }

    #[test]
    fn cauchy_rejects_bad_eps() {
        let f = PseudometricFamily::<f64>::line();
        assert!(is_cauchy_at_tolerance(&[p(&[0.0])], &f, 0.0).is_err());
    }

    #[test]
    fn contraction_constants_validation() {
        let mut m = BTreeMap::new();
        m.insert("d1".to_string(), 0.5);
        m.insert("d2".to_string(), 0.9);
        let k = ContractionConstants::new(m).unwrap();
        assert_eq!(k.sup(), 0.9);

        let mut bad = BTreeMap::new();
        bad.insert("d1".to_string(), 1.0);
        assert!(ContractionConstants::new(bad).is_err());
    }

    #[test]
    fn dimension_mismatch_detected() {
        let f = PseudometricFamily::<f64>::coordinate(2);
        assert!(f.eval("d1", &p(&[0.0]), &p(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn scaled_abs_detection() {
        let f = PseudometricFamily::<f64>::new(
            2,
            vec![
                Pseudometric {
                    label: "w".into(),
                    kind: MetricKind::WeightedAbs {
                        weights: vec![0.0, 2.5],
                    },
                },
            ],
            false,
        )
        .unwrap();
        assert_eq!(f.as_scaled_abs("w"), Some((1, 2.5)));

        let g = PseudometricFamily::<f64>::new(
            2,
            vec![Pseudometric {
                label: "e".into(),
                kind: MetricKind::EuclideanSubset { coords: vec![0, 1] },
            }],
            false,
        )
        .unwrap();
        assert_eq!(g.as_scaled_abs("e"), None);
    }
}
