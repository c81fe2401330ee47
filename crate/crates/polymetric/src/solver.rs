//! Contraction maps on a multi-metric space and the multi-seed fixed-point
//! solver.
//!
//! A contraction routes each component into some component while shrinking
//! distances by a factor alpha < 1. The solver seeds one orbit per component
//! at the region center, iterates until the geometric tail bound certifies
//! the requested tolerance, deduplicates the limits, and reports between 1
//! and m fixed points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::metric::MetricDescriptor;
use crate::point::AmbientPoint;
use crate::space::{MultiMetricSpace, PartialDistance, Region};

/// One-dimensional closed forms usable per coordinate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum CoordForm {
    /// x -> scale * x + offset
    Affine { scale: f64, offset: f64 },
    /// x -> cos x
    Cosine,
    /// x -> amplitude * sin x
    ScaledSine { amplitude: f64 },
    /// x -> (a x + b) / (c x + d)
    Rational { a: f64, b: f64, c: f64, d: f64 },
}

impl CoordForm {
    fn apply(&self, x: f64) -> f64 {
        match self {
            CoordForm::Affine { scale, offset } => scale * x + offset,
            CoordForm::Cosine => x.cos(),
            CoordForm::ScaledSine { amplitude } => amplitude * x.sin(),
            CoordForm::Rational { a, b, c, d } => (a * x + b) / (c * x + d),
        }
    }
}

/// The closed rule catalog for self-maps of the space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MapRule {
    /// x -> matrix * x + offset
    Affine {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
    },
    /// independent 1-d forms per coordinate
    Coordinatewise { forms: Vec<CoordForm> },
    /// rules guarded by component membership; ties go to the lowest guard id
    Piecewise { pieces: Vec<PiecewiseRule> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseRule {
    pub component: usize,
    pub rule: MapRule,
}

/// A candidate contraction: a closed-form rule plus an optional claimed
/// contraction constant. The constant is never trusted on its own; the
/// solver estimates alpha by sampling and uses the claim only to tighten
/// the stopping rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionMap {
    pub rule: MapRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_alpha: Option<f64>,
}

impl ContractionMap {
    pub fn new(rule: MapRule) -> Self {
        ContractionMap {
            rule,
            claimed_alpha: None,
        }
    }

    pub fn validate(&self, dimension: usize) -> Result<()> {
        if let Some(alpha) = self.claimed_alpha {
            if !(alpha > 0.0 && alpha < 1.0) {
                return Err(Error::Config(format!(
                    "claimed_alpha {alpha} must lie strictly inside (0, 1)"
                )));
            }
        }
        validate_rule(&self.rule, dimension)
    }
}

fn validate_rule(rule: &MapRule, dimension: usize) -> Result<()> {
    match rule {
        MapRule::Affine { matrix, offset } => {
            if matrix.len() != dimension || offset.len() != dimension {
                return Err(Error::Config(format!(
                    "affine rule has {} rows and offset length {} for dimension {}",
                    matrix.len(),
                    offset.len(),
                    dimension
                )));
            }
            for row in matrix {
                if row.len() != dimension {
                    return Err(Error::Config(format!(
                        "affine matrix row has length {} for dimension {}",
                        row.len(),
                        dimension
                    )));
                }
            }
            Ok(())
        }
        MapRule::Coordinatewise { forms } => {
            if forms.len() != dimension {
                return Err(Error::Config(format!(
                    "coordinatewise rule has {} forms for dimension {}",
                    forms.len(),
                    dimension
                )));
            }
            Ok(())
        }
        MapRule::Piecewise { pieces } => {
            if pieces.is_empty() {
                return Err(Error::Config("piecewise rule needs at least one piece".into()));
            }
            for piece in pieces {
                validate_rule(&piece.rule, dimension)?;
            }
            Ok(())
        }
    }
}

fn apply_rule(
    space: &MultiMetricSpace,
    rule: &MapRule,
    x: &AmbientPoint,
) -> Result<AmbientPoint> {
    match rule {
        MapRule::Affine { matrix, offset } => {
            let coords = matrix
                .iter()
                .zip(offset)
                .map(|(row, off)| {
                    row.iter().zip(x.coords()).map(|(m, c)| m * c).sum::<f64>() + off
                })
                .collect();
            AmbientPoint::new(coords)
        }
        MapRule::Coordinatewise { forms } => {
            let coords = forms
                .iter()
                .zip(x.coords())
                .map(|(f, &c)| f.apply(c))
                .collect();
            AmbientPoint::new(coords)
        }
        MapRule::Piecewise { pieces } => {
            let members = space.components_of(x)?;
            let piece = pieces
                .iter()
                .filter(|p| members.contains(&p.component))
                .min_by_key(|p| p.component)
                .ok_or_else(|| Error::MapUndefined {
                    point: x.coords().to_vec(),
                })?;
            apply_rule(space, &piece.rule, x)
        }
    }
}

/// Applies the map at a point. Piecewise guard ties resolve to the lowest
/// component id.
pub fn apply_map(
    space: &MultiMetricSpace,
    map: &ContractionMap,
    x: &AmbientPoint,
) -> Result<AmbientPoint> {
    x.check_dim(space.dimension())?;
    apply_rule(space, &map.rule, x)
}

/// The empirically discovered component routing i -> j of a map.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RoutingTable {
    pub entries: BTreeMap<usize, usize>,
}

/// Sampled evidence about whether a map is a contraction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionEstimate {
    /// Max observed ratio rho_j(Tx, Ty) / rho_i(x, y).
    pub alpha_hat: f64,
    pub routing: RoutingTable,
    pub samples_per_component: usize,
    /// Pairs whose images left every component or scattered across targets.
    pub violations: usize,
}

fn sample_in_region(
    rng: &mut ChaCha8Rng,
    region: &Region,
    dimension: usize,
) -> AmbientPoint {
    match region {
        Region::Box { lower, upper } => {
            let coords = lower
                .coords()
                .iter()
                .zip(upper.coords())
                .map(|(&l, &u)| if l == u { l } else { rng.gen_range(l..u) })
                .collect();
            AmbientPoint::new(coords).expect("finite sample")
        }
        Region::Ball { center, radius, .. } => {
            // rejection sample from the enclosing cube
            loop {
                let coords: Vec<f64> = center
                    .coords()
                    .iter()
                    .map(|&c| rng.gen_range(c - radius..c + radius))
                    .collect();
                let p = AmbientPoint::new(coords).expect("finite sample");
                if region.contains(&p) {
                    return p;
                }
            }
        }
        Region::Whole => {
            let coords = (0..dimension).map(|_| rng.gen_range(-10.0..10.0)).collect();
            AmbientPoint::new(coords).expect("finite sample")
        }
    }
}

/// Estimates the contraction constant and component routing by sampling
/// point pairs from every component region.
pub fn estimate_contraction(
    space: &MultiMetricSpace,
    map: &ContractionMap,
    samples_per_component: usize,
    seed: u64,
) -> Result<ContractionEstimate> {
    if samples_per_component < 2 {
        return Err(Error::Config("samples_per_component must be at least 2".into()));
    }
    map.validate(space.dimension())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alpha_hat = 0.0_f64;
    let mut routing = RoutingTable::default();
    let mut violations = 0usize;

    for comp in space.components() {
        let mut target: Option<usize> = None;
        for _ in 0..samples_per_component {
            let x = sample_in_region(&mut rng, &comp.region, space.dimension());
            let y = sample_in_region(&mut rng, &comp.region, space.dimension());
            let (tx, ty) = match (apply_map(space, map, &x), apply_map(space, map, &y)) {
                (Ok(tx), Ok(ty)) => (tx, ty),
                _ => {
                    violations += 1;
                    continue;
                }
            };
            let tx_members = space.components_of(&tx)?;
            let ty_members = space.components_of(&ty)?;
            let shared: Vec<usize> = tx_members
                .iter()
                .cloned()
                .filter(|id| ty_members.contains(id))
                .collect();
            if shared.is_empty() {
                violations += 1;
                continue;
            }
            let j = match target {
                Some(j) if shared.contains(&j) => j,
                Some(_) => {
                    violations += 1;
                    continue;
                }
                None => {
                    let j = shared[0];
                    target = Some(j);
                    j
                }
            };
            let rho_i = comp.metric.eval(&x, &y)?;
            if rho_i > 1e-12 {
                let rho_j = space
                    .component(j)
                    .expect("target id valid")
                    .metric
                    .eval(&tx, &ty)?;
                alpha_hat = alpha_hat.max(rho_j / rho_i);
            }
        }
        if let Some(j) = target {
            routing.entries.insert(comp.id, j);
        }
    }

    Ok(ContractionEstimate {
        alpha_hat,
        routing,
        samples_per_component,
        violations,
    })
}

/// One fixed point found by the solver.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    /// Lowest component containing the point.
    pub component: usize,
    pub point: AmbientPoint,
    /// Distance between the point and its image under the map.
    pub residual: f64,
    pub iterations: usize,
    /// Component whose seed orbit produced this point.
    pub seed_component: usize,
}

/// Solver output: deduplicated fixed points and the count bound witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub points: Vec<FixedPoint>,
    /// Lower-bound estimate of the number of fixed points; always between 1
    /// and the number of components for an accepted contraction.
    pub count: usize,
    pub estimate: ContractionEstimate,
}

/// Distance between a point and its image under the map; the fixed-point
/// residual.
pub fn verify_fixed_point(
    space: &MultiMetricSpace,
    map: &ContractionMap,
    x: &AmbientPoint,
) -> Result<f64> {
    let image = apply_map(space, map, x)?;
    match space.distance(x, &image)? {
        PartialDistance::Comparable { value, .. } => Ok(value),
        PartialDistance::Incomparable => Err(Error::IncomparableResidual),
    }
}

struct Orbit {
    seed_component: usize,
    limit: AmbientPoint,
    iterations: usize,
}

/// Runs the multi-seed contraction iteration: one orbit per component,
/// seeded at the region center, stopped by the geometric tail bound
/// step <= tolerance * (1 - alpha) / alpha so that the reported tolerance
/// bounds the true distance to the limit.
pub fn solve(
    space: &MultiMetricSpace,
    map: &ContractionMap,
    tolerance: f64,
    max_iterations: usize,
    dedup_tolerance: f64,
) -> Result<FixedPointReport> {
    if !(tolerance > 0.0 && dedup_tolerance > 0.0) {
        return Err(Error::Config("tolerances must be positive".into()));
    }
    let estimate = estimate_contraction(space, map, 64, 0x706f6c79)?;
    if estimate.alpha_hat >= 1.0 || estimate.violations > 0 {
        return Err(Error::NotAContraction {
            alpha_hat: estimate.alpha_hat,
            violations: estimate.violations,
        });
    }
    // a larger claimed alpha only tightens the stopping threshold
    let alpha = match map.claimed_alpha {
        Some(claimed) => estimate.alpha_hat.max(claimed),
        None => estimate.alpha_hat,
    };
    let step_threshold = tolerance * (1.0 - alpha) / alpha.max(1e-6);

    let mut orbits: Vec<Orbit> = Vec::new();
    let mut diagnostics: Vec<(usize, f64)> = Vec::new();
    for comp in space.components() {
        let mut current = comp.region.center(space.dimension());
        let mut converged = false;
        let mut iterations = 0;
        let mut last_step = f64::NAN;
        for n in 1..=max_iterations {
            let next = apply_map(space, map, &current)?;
            let step = space.distance(&current, &next)?;
            current = next;
            iterations = n;
            // steps across a component transition are incomparable; keep going
            if let PartialDistance::Comparable { value, .. } = step {
                last_step = value;
                if value <= step_threshold {
                    converged = true;
                    break;
                }
            }
        }
        if converged {
            orbits.push(Orbit {
                seed_component: comp.id,
                limit: current,
                iterations,
            });
        } else {
            diagnostics.push((comp.id, last_step));
        }
    }
    if orbits.is_empty() {
        return Err(Error::NoConvergence {
            max_iterations,
            diagnostics,
        });
    }

    // dedup: merge limits closer than dedup_tolerance, keeping the better
    // residual as the surviving witness
    let mut survivors: Vec<(Orbit, f64)> = Vec::new();
    for orbit in orbits {
        let residual = verify_fixed_point(space, map, &orbit.limit)?;
        let mut merged = false;
        for (kept, kept_residual) in survivors.iter_mut() {
            if let PartialDistance::Comparable { value, .. } =
                space.distance(&kept.limit, &orbit.limit)?
            {
                if value <= dedup_tolerance {
                    if residual < *kept_residual {
                        kept.limit = orbit.limit.clone();
                        kept.iterations = orbit.iterations;
                        *kept_residual = residual;
                    }
                    merged = true;
                    break;
                }
            }
        }
        if !merged {
            survivors.push((orbit, residual));
        }
    }

    let points: Vec<FixedPoint> = survivors
        .into_iter()
        .map(|(orbit, residual)| {
            let component = *space
                .components_of(&orbit.limit)?
                .first()
                .ok_or_else(|| Error::MapUndefined {
                    point: orbit.limit.coords().to_vec(),
                })?;
            Ok(FixedPoint {
                component,
                point: orbit.limit,
                residual,
                iterations: orbit.iterations,
                seed_component: orbit.seed_component,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let count = points.len();
    assert!(
        count >= 1 && count <= space.components().len(),
        "fixed point count {count} outside [1, {}]",
        space.components().len()
    );
    Ok(FixedPointReport {
        points,
        count,
        estimate,
    })
}

/// The classical single-space case: solve on a one-component space and
/// return the unique fixed point with its residual.
pub fn banach_solve(
    region: Region,
    metric: MetricDescriptor,
    map: &ContractionMap,
    tolerance: f64,
    max_iterations: usize,
) -> Result<(AmbientPoint, f64)> {
    let dimension = match &region {
        Region::Box { lower, .. } => lower.dim(),
        Region::Ball { center, .. } => center.dim(),
        Region::Whole => {
            return Err(Error::Config(
                "banach_solve needs a bounded region to infer the dimension".into(),
            ))
        }
    };
    let space = MultiMetricSpace::new(dimension, vec![(region, metric)])?;
    let report = solve(&space, map, tolerance, max_iterations, tolerance.max(1e-12))?;
    let fp = report.points.into_iter().next().expect("count >= 1");
    Ok((fp.point, fp.residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::point;

    fn interval(lo: f64, hi: f64) -> Region {
        Region::Box {
            lower: point(&[lo]),
            upper: point(&[hi]),
        }
    }

    fn affine1(scale: f64, offset: f64) -> MapRule {
        MapRule::Coordinatewise {
            forms: vec![CoordForm::Affine { scale, offset }],
        }
    }

    fn unit_interval_space() -> MultiMetricSpace {
        MultiMetricSpace::new(1, vec![(interval(0.0, 1.0), MetricDescriptor::Euclidean)]).unwrap()
    }

    fn two_component_space() -> MultiMetricSpace {
        MultiMetricSpace::new(
            1,
            vec![
                (interval(0.0, 1.0), MetricDescriptor::Euclidean),
                (interval(2.0, 3.0), MetricDescriptor::Euclidean),
            ],
        )
        .unwrap()
    }

    fn halving_piecewise() -> ContractionMap {
        ContractionMap::new(MapRule::Piecewise {
            pieces: vec![
                PiecewiseRule {
                    component: 1,
                    rule: affine1(0.5, 0.0),
                },
                PiecewiseRule {
                    component: 2,
                    rule: affine1(0.5, 1.25),
                },
            ],
        })
    }

    #[test]
    fn apply_map_examples() {
        let s = unit_interval_space();
        let halve = ContractionMap::new(affine1(0.5, 0.0));
        assert_eq!(
            apply_map(&s, &halve, &point(&[0.8])).unwrap(),
            point(&[0.4])
        );
        let cos = ContractionMap::new(MapRule::Coordinatewise {
            forms: vec![CoordForm::Cosine],
        });
        assert_eq!(apply_map(&s, &cos, &point(&[0.0])).unwrap(), point(&[1.0]));

        let s2 = two_component_space();
        let pw = halving_piecewise();
        assert_eq!(apply_map(&s2, &pw, &point(&[2.0])).unwrap(), point(&[2.25]));
    }

    #[test]
    fn piecewise_outside_guards_is_undefined() {
        let s2 = two_component_space();
        let pw = halving_piecewise();
        assert!(matches!(
            apply_map(&s2, &pw, &point(&[1.5])),
            Err(Error::MapUndefined { .. })
        ));
    }

    #[test]
    fn estimate_affine_half() {
        let s = unit_interval_space();
        let halve = ContractionMap::new(affine1(0.5, 0.0));
        let est = estimate_contraction(&s, &halve, 64, 42).unwrap();
        assert!((est.alpha_hat - 0.5).abs() <= 1e-12, "{}", est.alpha_hat);
        assert_eq!(est.routing.entries.get(&1), Some(&1));
        assert_eq!(est.violations, 0);
    }

    #[test]
    fn estimate_cosine_bounded_by_sin_one() {
        let s = unit_interval_space();
        let cos = ContractionMap::new(MapRule::Coordinatewise {
            forms: vec![CoordForm::Cosine],
        });
        let est = estimate_contraction(&s, &cos, 64, 42).unwrap();
        assert!(est.alpha_hat <= 1.0_f64.sin() + 1e-12);
        assert_eq!(est.violations, 0);
    }

    #[test]
    fn expansion_is_rejected() {
        let s = unit_interval_space();
        let double = ContractionMap::new(affine1(2.0, 0.0));
        let est = estimate_contraction(&s, &double, 64, 42).unwrap();
        assert!(est.alpha_hat >= 2.0 - 1e-9 || est.violations > 0);
        assert!(matches!(
            solve(&s, &double, 1e-9, 1000, 1e-6),
            Err(Error::NotAContraction { .. })
        ));
    }

    #[test]
    fn identity_is_rejected() {
        let identity = ContractionMap::new(affine1(1.0, 0.0));
        assert!(matches!(
            banach_solve(
                interval(0.0, 4.0),
                MetricDescriptor::Euclidean,
                &identity,
                1e-9,
                1000
            ),
            Err(Error::NotAContraction { .. })
        ));
    }

    #[test]
    fn verify_fixed_point_examples() {
        let s = unit_interval_space();
        let halve = ContractionMap::new(affine1(0.5, 0.0));
        assert_eq!(verify_fixed_point(&s, &halve, &point(&[0.0])).unwrap(), 0.0);
        assert_eq!(
            verify_fixed_point(&s, &halve, &point(&[0.5])).unwrap(),
            0.25
        );
    }

    #[test]
    fn two_component_piecewise_finds_both_fixed_points() {
        let s2 = two_component_space();
        let pw = halving_piecewise();
        let report = solve(&s2, &pw, 1e-10, 10_000, 1e-6).unwrap();
        assert_eq!(report.count, 2);
        assert!((report.points[0].point.coords()[0]).abs() <= 1e-9);
        assert!((report.points[1].point.coords()[0] - 2.5).abs() <= 1e-9);
    }

    #[test]
    fn routed_variant_collapses_to_one_fixed_point() {
        // second component maps into the first: x -> (x - 2) / 2
        let s2 = two_component_space();
        let routed = ContractionMap::new(MapRule::Piecewise {
            pieces: vec![
                PiecewiseRule {
                    component: 1,
                    rule: affine1(0.5, 0.0),
                },
                PiecewiseRule {
                    component: 2,
                    rule: affine1(0.5, -1.0),
                },
            ],
        });
        let report = solve(&s2, &routed, 1e-10, 10_000, 1e-6).unwrap();
        assert_eq!(report.count, 1);
        assert!(report.points[0].point.coords()[0].abs() <= 1e-9);
    }

    #[test]
    fn banach_affine_closed_form() {
        let map = ContractionMap::new(affine1(0.5, 1.0));
        let (fp, residual) = banach_solve(
            interval(0.0, 4.0),
            MetricDescriptor::Euclidean,
            &map,
            1e-10,
            10_000,
        )
        .unwrap();
        assert!((fp.coords()[0] - 2.0).abs() <= 1e-10);
        assert!(residual <= 1e-10);
    }
}
