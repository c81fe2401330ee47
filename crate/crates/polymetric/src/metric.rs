//! Metric descriptors and combinators.
//!
//! A [`MetricDescriptor`] is a closed recipe for a distance function on the
//! ambient space. Base metrics can be combined with a
//! [`CombinatorDescriptor`]: any function of the part distances that is
//! coordinatewise monotone, vanishes only at the zero tuple, and is
//! subadditive yields another metric. The shipped combinators (sum, max,
//! weighted sum) all satisfy those conditions; [`check_combinator_conditions`]
//! verifies them empirically, and [`check_metric_axioms`] property-checks the
//! metric axioms of any descriptor on seeded random triples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::AmbientPoint;

/// A closed recipe for a distance function on the ambient space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MetricDescriptor {
    Euclidean,
    Manhattan,
    Chebyshev,
    /// 0 when the points coincide coordinatewise, 1 otherwise.
    Discrete,
    /// Euclidean after scaling coordinate differences by per-axis weights.
    WeightedEuclidean { weights: Vec<f64> },
    /// rho / (1 + rho) applied to an inner metric; always in [0, 1).
    BoundedTransform { inner: Box<MetricDescriptor> },
    /// A combinator applied pointwise to part metrics.
    Combined {
        combinator: CombinatorDescriptor,
        parts: Vec<MetricDescriptor>,
    },
}

/// A combinator of part distances satisfying the monotone / zero-only-at-zero
/// / subadditive conditions, so that applying it to metrics yields a metric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CombinatorDescriptor {
    Sum,
    Max,
    WeightedSum { weights: Vec<f64> },
}

impl CombinatorDescriptor {
    /// Applies the combinator to a tuple of nonnegative values.
    pub fn apply(&self, values: &[f64]) -> Result<f64> {
        match self {
            CombinatorDescriptor::Sum => Ok(values.iter().sum()),
            CombinatorDescriptor::Max => {
                Ok(values.iter().cloned().fold(0.0_f64, f64::max))
            }
            CombinatorDescriptor::WeightedSum { weights } => {
                if weights.len() != values.len() {
                    return Err(Error::Config(format!(
                        "weighted sum has {} weights but {} parts",
                        weights.len(),
                        values.len()
                    )));
                }
                Ok(weights.iter().zip(values).map(|(w, v)| w * v).sum())
            }
        }
    }

    fn validate(&self, arity: usize) -> Result<()> {
        if let CombinatorDescriptor::WeightedSum { weights } = self {
            if weights.len() != arity {
                return Err(Error::Config(format!(
                    "weighted sum has {} weights but {} parts",
                    weights.len(),
                    arity
                )));
            }
            for &w in weights {
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::Config(format!(
                        "weighted sum weight {w} must be strictly positive and finite"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl MetricDescriptor {
    /// Checks structural invariants of the descriptor against a dimension.
    pub fn validate(&self, dimension: usize) -> Result<()> {
        match self {
            MetricDescriptor::Euclidean
            | MetricDescriptor::Manhattan
            | MetricDescriptor::Chebyshev
            | MetricDescriptor::Discrete => Ok(()),
            MetricDescriptor::WeightedEuclidean { weights } => {
                if weights.len() != dimension {
                    return Err(Error::Config(format!(
                        "weighted euclidean has {} weights for dimension {}",
                        weights.len(),
                        dimension
                    )));
                }
                for &w in weights {
                    if !(w.is_finite() && w > 0.0) {
                        return Err(Error::Config(format!(
                            "weighted euclidean weight {w} must be strictly positive and finite"
                        )));
                    }
                }
                Ok(())
            }
            MetricDescriptor::BoundedTransform { inner } => inner.validate(dimension),
            MetricDescriptor::Combined { combinator, parts } => {
                if parts.is_empty() {
                    return Err(Error::Config("combined metric needs at least one part".into()));
                }
                combinator.validate(parts.len())?;
                for part in parts {
                    part.validate(dimension)?;
                }
                Ok(())
            }
        }
    }

    /// Evaluates the distance between two points.
    pub fn eval(&self, x: &AmbientPoint, y: &AmbientPoint) -> Result<f64> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                expected: x.dim(),
                actual: y.dim(),
            });
        }
        self.validate(x.dim())?;
        Ok(self.eval_unchecked(x.coords(), y.coords()))
    }

    fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let diffs = || x.iter().zip(y).map(|(a, b)| a - b);
        match self {
            MetricDescriptor::Euclidean => diffs().map(|d| d * d).sum::<f64>().sqrt(),
            MetricDescriptor::Manhattan => diffs().map(f64::abs).sum(),
            MetricDescriptor::Chebyshev => diffs().map(f64::abs).fold(0.0, f64::max),
            MetricDescriptor::Discrete => {
                if x == y {
                    0.0
                } else {
                    1.0
                }
            }
            MetricDescriptor::WeightedEuclidean { weights } => diffs()
                .zip(weights)
                .map(|(d, w)| (w * d) * (w * d))
                .sum::<f64>()
                .sqrt(),
            MetricDescriptor::BoundedTransform { inner } => {
                let rho = inner.eval_unchecked(x, y);
                rho / (1.0 + rho)
            }
            MetricDescriptor::Combined { combinator, parts } => {
                let values: Vec<f64> =
                    parts.iter().map(|p| p.eval_unchecked(x, y)).collect();
                combinator.apply(&values).expect("validated arity")
            }
        }
    }
}

/// Builds the combined metric F(rho_1, ..., rho_m).
pub fn combine(
    combinator: CombinatorDescriptor,
    parts: Vec<MetricDescriptor>,
) -> Result<MetricDescriptor> {
    if parts.is_empty() {
        return Err(Error::Config("combined metric needs at least one part".into()));
    }
    combinator.validate(parts.len())?;
    Ok(MetricDescriptor::Combined { combinator, parts })
}

/// Outcome of a randomized metric-axiom check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub samples_tested: usize,
    pub definiteness_failures: usize,
    pub symmetry_failures: usize,
    pub triangle_failures: usize,
    /// Largest observed rho(x,z) - (rho(x,y) + rho(y,z)); negative when the
    /// triangle inequality held with slack on every sample.
    pub worst_triangle_slack: f64,
    pub passed: bool,
}

impl AxiomReport {
    fn finish(mut self) -> Self {
        self.passed = self.definiteness_failures == 0
            && self.symmetry_failures == 0
            && self.triangle_failures == 0;
        self
    }
}

fn sample_point(rng: &mut ChaCha8Rng, dimension: usize) -> Vec<f64> {
    (0..dimension).map(|_| rng.gen_range(-10.0..10.0)).collect()
}

/// Property-checks the metric axioms of an arbitrary distance function on
/// seeded random triples from [-10, 10]^d. This is the extension point used
/// for negative controls; shipped descriptors go through
/// [`check_metric_axioms`].
pub fn check_metric_fn<F>(
    rho: F,
    dimension: usize,
    sample_count: usize,
    seed: u64,
    tolerance: f64,
) -> AxiomReport
where
    F: Fn(&[f64], &[f64]) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport {
        samples_tested: sample_count,
        definiteness_failures: 0,
        symmetry_failures: 0,
        triangle_failures: 0,
        worst_triangle_slack: f64::NEG_INFINITY,
        passed: false,
    };
    for _ in 0..sample_count {
        let x = sample_point(&mut rng, dimension);
        let y = sample_point(&mut rng, dimension);
        let z = sample_point(&mut rng, dimension);
        let xy = rho(&x, &y);
        let yx = rho(&y, &x);
        let yz = rho(&y, &z);
        let xz = rho(&x, &z);

        // Definiteness is checked statistically: rho(x,x) must vanish and a
        // near-zero distance must come with near-equal coordinates.
        let max_gap = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if rho(&x, &x) > tolerance || (xy <= tolerance && max_gap > 1000.0 * tolerance) {
            report.definiteness_failures += 1;
        }
        if (xy - yx).abs() > tolerance {
            report.symmetry_failures += 1;
        }
        let slack = xz - (xy + yz);
        report.worst_triangle_slack = report.worst_triangle_slack.max(slack);
        if xz > xy + yz + tolerance * (1.0 + xz) {
            report.triangle_failures += 1;
        }
    }
    report.finish()
}

/// Property-checks the metric axioms of a descriptor.
pub fn check_metric_axioms(
    desc: &MetricDescriptor,
    dimension: usize,
    sample_count: usize,
    seed: u64,
    tolerance: f64,
) -> Result<AxiomReport> {
    if sample_count == 0 {
        return Err(Error::Config("sample_count must be at least 1".into()));
    }
    if tolerance <= 0.0 || tolerance.is_nan() {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    desc.validate(dimension)?;
    Ok(check_metric_fn(
        |x, y| desc.eval_unchecked(x, y),
        dimension,
        sample_count,
        seed,
        tolerance,
    ))
}

/// Outcome of checking the combinator conditions on random nonnegative tuples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub samples_tested: usize,
    pub monotonicity_failures: usize,
    pub zero_failures: usize,
    pub subadditivity_failures: usize,
    pub passed: bool,
}

/// Checks the three combinator conditions for an arbitrary function of
/// nonnegative m-tuples: coordinatewise monotonicity, zero only at the zero
/// tuple, and subadditivity over tuple addition.
pub fn check_combinator_fn<F>(
    f: F,
    arity: usize,
    sample_count: usize,
    seed: u64,
    tolerance: f64,
) -> ConditionReport
where
    F: Fn(&[f64]) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ConditionReport {
        samples_tested: sample_count,
        monotonicity_failures: 0,
        zero_failures: 0,
        subadditivity_failures: 0,
        passed: false,
    };
    let zero = vec![0.0; arity];
    if f(&zero).abs() > tolerance {
        report.zero_failures += 1;
    }
    for i in 0..sample_count {
        let mut x: Vec<f64> = (0..arity).map(|_| rng.gen_range(0.0..10.0)).collect();
        // zero-only-at-zero needs tuples touching the boundary of E^m
        if i % 4 == 0 {
            let j = rng.gen_range(0..arity);
            x[j] = 0.0;
        }
        let y: Vec<f64> = (0..arity).map(|_| rng.gen_range(0.0..10.0)).collect();
        // dominated coordinatewise by x
        let smaller: Vec<f64> = x
            .iter()
            .map(|&v| v * rng.gen_range(0.0..1.0))
            .collect();
        if f(&x) < f(&smaller) - tolerance {
            report.monotonicity_failures += 1;
        }
        let max_coord = x.iter().cloned().fold(0.0, f64::max);
        if f(&x) <= tolerance && max_coord > 1000.0 * tolerance {
            report.zero_failures += 1;
        }
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        if f(&sum) > f(&x) + f(&y) + tolerance {
            report.subadditivity_failures += 1;
        }
    }
    report.passed = report.monotonicity_failures == 0
        && report.zero_failures == 0
        && report.subadditivity_failures == 0;
    report
}

/// Checks the combinator conditions for a shipped combinator variant.
pub fn check_combinator_conditions(
    comb: &CombinatorDescriptor,
    arity: usize,
    sample_count: usize,
    seed: u64,
    tolerance: f64,
) -> Result<ConditionReport> {
    if arity == 0 {
        return Err(Error::Config("arity must be at least 1".into()));
    }
    comb.validate(arity)?;
    Ok(check_combinator_fn(
        |values| comb.apply(values).expect("validated arity"),
        arity,
        sample_count,
        seed,
        tolerance,
    ))
}
