//! Convergence and Cauchy analysis of finite sequence prefixes in a
//! multi-metric space.
//!
//! All verdicts here are detections over the supplied prefix, never proofs:
//! the quantifiers of the underlying definitions are not decidable from
//! finite data. Every classifier takes an explicit tail window and tolerance
//! ([`DEFAULT_TAIL_WINDOW`], [`DEFAULT_TOLERANCE`] are the shipped defaults).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::AmbientPoint;
use crate::solver::{apply_map, ContractionMap};
use crate::space::{DiskSpec, MultiMetricSpace};

pub const DEFAULT_TAIL_WINDOW: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A finite prefix of a point sequence: explicit, or generated by iterating
/// a map from a start point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SequenceSample {
    Explicit { points: Vec<AmbientPoint> },
    Iterated {
        map: ContractionMap,
        start: AmbientPoint,
        length: usize,
    },
}

impl SequenceSample {
    /// Produces the concrete point list (length >= 2 required).
    pub fn materialize(&self, space: &MultiMetricSpace) -> Result<Vec<AmbientPoint>> {
        let points = match self {
            SequenceSample::Explicit { points } => {
                for p in points {
                    p.check_dim(space.dimension())?;
                }
                points.clone()
            }
            SequenceSample::Iterated { map, start, length } => {
                start.check_dim(space.dimension())?;
                let mut points = Vec::with_capacity(*length);
                let mut current = start.clone();
                for _ in 0..*length {
                    points.push(current.clone());
                    current = apply_map(space, map, &current)?;
                }
                points
            }
        };
        if points.len() < 2 {
            return Err(Error::Config(format!(
                "sequence prefix needs at least 2 points, got {}",
                points.len()
            )));
        }
        Ok(points)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceVerdict {
    Convergent,
    NotDetected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub verdict: ConvergenceVerdict,
    pub limit_estimate: Option<AmbientPoint>,
    pub eventual_component: Option<usize>,
    /// The index N from which the tail stays in one component.
    pub stabilization_index: Option<usize>,
    /// Max distance from the tail-window points to the limit estimate.
    pub final_residual: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CauchyVerdict {
    Cauchy,
    NotDetected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CauchyReport {
    pub verdict: CauchyVerdict,
    pub witness_component: Option<usize>,
    pub stabilization_index: Option<usize>,
    /// Max pairwise distance over the tail window; infinite when no witness
    /// component exists to measure in.
    pub max_tail_gap: f64,
}

/// Finds the smallest N such that one component contains the whole tail
/// {x_n | n >= N}, returning (k, N) with the lowest such component id.
/// The witness tail must hold at least the last two points; `None` when the
/// membership never stabilizes within the prefix.
pub fn eventual_component(
    space: &MultiMetricSpace,
    seq: &SequenceSample,
) -> Result<Option<(usize, usize)>> {
    let points = seq.materialize(space)?;
    eventual_component_of_points(space, &points)
}

fn eventual_component_of_points(
    space: &MultiMetricSpace,
    points: &[AmbientPoint],
) -> Result<Option<(usize, usize)>> {
    let memberships: Vec<Vec<usize>> = points
        .iter()
        .map(|p| space.components_of(p))
        .collect::<Result<Vec<_>>>()?;
    let mut tail: Vec<usize> = memberships[points.len() - 1].clone();
    if tail.is_empty() {
        return Ok(None);
    }
    let mut witness: Option<(usize, usize)> = None;
    for n in (0..points.len() - 1).rev() {
        let next: Vec<usize> = tail
            .iter()
            .cloned()
            .filter(|id| memberships[n].contains(id))
            .collect();
        if next.is_empty() {
            break;
        }
        tail = next;
        witness = Some((tail[0], n));
    }
    Ok(witness)
}

/// Heuristic convergence detector: requires a stabilized tail component and a
/// tail window whose points all sit within `tolerance` of the final point.
pub fn classify_convergence(
    space: &MultiMetricSpace,
    seq: &SequenceSample,
    tail_window: usize,
    tolerance: f64,
) -> Result<ConvergenceReport> {
    if tail_window < 2 {
        return Err(Error::Config("tail_window must be at least 2".into()));
    }
    if tolerance <= 0.0 || tolerance.is_nan() {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    let points = seq.materialize(space)?;
    let not_detected = ConvergenceReport {
        verdict: ConvergenceVerdict::NotDetected,
        limit_estimate: None,
        eventual_component: None,
        stabilization_index: None,
        final_residual: None,
    };
    let (k, n0) = match eventual_component_of_points(space, &points)? {
        Some(w) => w,
        None => return Ok(not_detected),
    };
    let metric = &space.component(k).expect("witness id valid").metric;
    let last = points.last().expect("nonempty");
    let window = tail_window.min(points.len());
    let mut residual = 0.0_f64;
    for p in &points[points.len() - window..] {
        let d = metric.eval(p, last)?;
        if d > tolerance {
            return Ok(not_detected);
        }
        residual = residual.max(d);
    }
    Ok(ConvergenceReport {
        verdict: ConvergenceVerdict::Convergent,
        limit_estimate: Some(last.clone()),
        eventual_component: Some(k),
        stabilization_index: Some(n0),
        final_residual: Some(residual),
    })
}

/// Cauchy detector: max pairwise distance over the tail window, measured in
/// the stabilized component's metric.
pub fn is_cauchy(
    space: &MultiMetricSpace,
    seq: &SequenceSample,
    tail_window: usize,
    tolerance: f64,
) -> Result<CauchyReport> {
    if tail_window < 2 {
        return Err(Error::Config("tail_window must be at least 2".into()));
    }
    if tolerance <= 0.0 || tolerance.is_nan() {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    let points = seq.materialize(space)?;
    let (s, n0) = match eventual_component_of_points(space, &points)? {
        Some(w) => w,
        None => {
            return Ok(CauchyReport {
                verdict: CauchyVerdict::NotDetected,
                witness_component: None,
                stabilization_index: None,
                max_tail_gap: f64::INFINITY,
            })
        }
    };
    let metric = &space.component(s).expect("witness id valid").metric;
    let window = tail_window.min(points.len());
    let tail = &points[points.len() - window..];
    let mut max_gap = 0.0_f64;
    for (i, a) in tail.iter().enumerate() {
        for b in &tail[i + 1..] {
            max_gap = max_gap.max(metric.eval(a, b)?);
        }
    }
    let verdict = if max_gap <= tolerance {
        CauchyVerdict::Cauchy
    } else {
        CauchyVerdict::NotDetected
    };
    Ok(CauchyReport {
        verdict,
        witness_component: Some(s),
        stabilization_index: Some(n0),
        max_tail_gap: max_gap,
    })
}

/// Residual of the limit identity lim rho_p(x_n, y_n) = rho_p(x0, y0):
/// compares the metric at the penultimate terms with the metric at the limit
/// estimates (the final terms). Shrinks with prefix length for convergent
/// sequences.
pub fn limit_metric_consistency(
    space: &MultiMetricSpace,
    seq_x: &SequenceSample,
    seq_y: &SequenceSample,
    p: usize,
) -> Result<f64> {
    let component = space
        .component(p)
        .ok_or_else(|| Error::Config(format!("no component with id {p}")))?;
    let mut limits = Vec::new();
    for (name, seq) in [("x", seq_x), ("y", seq_y)] {
        let report = classify_convergence(space, seq, DEFAULT_TAIL_WINDOW, DEFAULT_TOLERANCE)?;
        let limit = match (report.verdict, report.limit_estimate) {
            (ConvergenceVerdict::Convergent, Some(limit)) => limit,
            _ => {
                return Err(Error::SequencePrecondition {
                    which: name.into(),
                    reason: "sequence does not classify as convergent".into(),
                })
            }
        };
        if !component.region.contains(&limit) {
            return Err(Error::SequencePrecondition {
                which: name.into(),
                reason: format!("limit estimate lies outside component {p}"),
            });
        }
        limits.push(limit);
    }
    let px = seq_x.materialize(space)?;
    let py = seq_y.materialize(space)?;
    let at_tail = component.metric.eval(&px[px.len() - 2], &py[py.len() - 2])?;
    let at_limit = component.metric.eval(&limits[0], &limits[1])?;
    Ok((at_tail - at_limit).abs())
}

/// Intersection estimate for a nested sequence of shrinking disks: validates
/// strict radius decrease and center nesting, returns the last center, and
/// checks it against every disk.
pub fn nested_disk_intersection(
    space: &MultiMetricSpace,
    disks: &[DiskSpec],
) -> Result<AmbientPoint> {
    if disks.len() < 2 {
        return Err(Error::Config("nested_disk_intersection needs at least 2 disks".into()));
    }
    for (index, pair) in disks.windows(2).enumerate() {
        if pair[1].radius >= pair[0].radius {
            return Err(Error::RadiiNotDecreasing {
                index: index + 1,
                previous: pair[0].radius,
                current: pair[1].radius,
            });
        }
        if !space.in_disk(&pair[0], &pair[1].center)? {
            return Err(Error::NestingViolation {
                first: index,
                second: index + 1,
            });
        }
    }
    let estimate = disks.last().expect("nonempty").center.clone();
    for (index, disk) in disks.iter().enumerate() {
        if !space.in_disk(disk, &estimate)? {
            return Err(Error::Validation(format!(
                "intersection estimate escaped disk {index}; the disks are not nested tightly enough"
            )));
        }
    }
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricDescriptor;
    use crate::point::point;
    use crate::solver::{CoordForm, MapRule};
    use crate::space::Region;

    fn interval(lo: f64, hi: f64) -> (Region, MetricDescriptor) {
        (
            Region::Box {
                lower: point(&[lo]),
                upper: point(&[hi]),
            },
            MetricDescriptor::Euclidean,
        )
    }

    fn two_intervals() -> MultiMetricSpace {
        MultiMetricSpace::new(1, vec![interval(0.0, 1.0), interval(2.0, 3.0)]).unwrap()
    }

    fn explicit(coords: &[f64]) -> SequenceSample {
        SequenceSample::Explicit {
            points: coords.iter().map(|&c| point(&[c])).collect(),
        }
    }

    fn halving(start: f64, length: usize) -> SequenceSample {
        SequenceSample::Iterated {
            map: ContractionMap::new(MapRule::Coordinatewise {
                forms: vec![CoordForm::Affine {
                    scale: 0.5,
                    offset: 0.0,
                }],
            }),
            start: point(&[start]),
            length,
        }
    }

    #[test]
    fn eventual_component_settling() {
        let s = two_intervals();
        // alternates between components, then settles in component 2 at index 5
        let seq = explicit(&[0.1, 2.1, 0.2, 2.2, 0.3, 2.5, 2.5, 2.5, 2.5, 2.5]);
        assert_eq!(eventual_component(&s, &seq).unwrap(), Some((2, 5)));
    }

    #[test]
    fn eventual_component_already_stabilized() {
        let s = two_intervals();
        let seq = explicit(&[0.1, 0.2, 0.3]);
        assert_eq!(eventual_component(&s, &seq).unwrap(), Some((1, 0)));
    }

    #[test]
    fn eventual_component_strict_alternation_is_none() {
        let s = two_intervals();
        let seq = explicit(&[0.5, 2.5, 0.5, 2.5, 0.5, 2.5]);
        assert_eq!(eventual_component(&s, &seq).unwrap(), None);
    }

    #[test]
    fn geometric_decay_converges() {
        let s = two_intervals();
        let seq = halving(1.0, 60);
        let report = classify_convergence(&s, &seq, 10, 1e-9).unwrap();
        assert_eq!(report.verdict, ConvergenceVerdict::Convergent);
        assert_eq!(report.eventual_component, Some(1));
        let limit = report.limit_estimate.unwrap();
        assert!(limit.coords()[0].abs() <= 1e-9, "{limit:?}");
        // closed form: x_n = 2^-n
        assert_eq!(limit.coords()[0], (0.5_f64).powi(59));
    }

    #[test]
    fn constant_sequence_converges_exactly() {
        let s = two_intervals();
        let seq = explicit(&[0.5; 12]);
        let report = classify_convergence(&s, &seq, 10, 1e-9).unwrap();
        assert_eq!(report.verdict, ConvergenceVerdict::Convergent);
        assert_eq!(report.limit_estimate, Some(point(&[0.5])));
        assert_eq!(report.final_residual, Some(0.0));
    }

    #[test]
    fn oscillation_not_detected() {
        let s = two_intervals();
        let seq = explicit(&[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
        let report = classify_convergence(&s, &seq, 10, 1e-9).unwrap();
        assert_eq!(report.verdict, ConvergenceVerdict::NotDetected);
    }

    #[test]
    fn contraction_orbit_is_cauchy() {
        let s = two_intervals();
        // x -> x/2 + 0.1, limit 0.2
        let seq = SequenceSample::Iterated {
            map: ContractionMap::new(MapRule::Coordinatewise {
                forms: vec![CoordForm::Affine {
                    scale: 0.5,
                    offset: 0.1,
                }],
            }),
            start: point(&[1.0]),
            length: 60,
        };
        let report = is_cauchy(&s, &seq, 10, 1e-9).unwrap();
        assert_eq!(report.verdict, CauchyVerdict::Cauchy);
        assert_eq!(report.witness_component, Some(1));
        // geometric tail bound: gaps at the window scale like 2^-50
        assert!(report.max_tail_gap <= 2.0_f64.powi(-45));
    }

    #[test]
    fn harmonic_partial_sums_not_cauchy() {
        let s = MultiMetricSpace::new(1, vec![interval(0.0, 10.0)]).unwrap();
        let mut partial = 0.0;
        let sums: Vec<f64> = (1..=30)
            .map(|n| {
                partial += 1.0 / n as f64;
                partial
            })
            .collect();
        // oracle: the largest gap in the last 10 terms
        let mut expected = 0.0_f64;
        for i in 20..30 {
            for j in i + 1..30 {
                expected = expected.max(sums[j] - sums[i]);
            }
        }
        assert!(expected > 1e-6);
        let seq = explicit(&sums);
        let report = is_cauchy(&s, &seq, 10, 1e-6).unwrap();
        assert_eq!(report.verdict, CauchyVerdict::NotDetected);
        assert!((report.max_tail_gap - expected).abs() <= 1e-15);
    }

    #[test]
    fn constant_sequence_is_cauchy_with_zero_gap() {
        let s = two_intervals();
        let report = is_cauchy(&s, &explicit(&[0.5; 12]), 10, 1e-9).unwrap();
        assert_eq!(report.verdict, CauchyVerdict::Cauchy);
        assert_eq!(report.max_tail_gap, 0.0);
    }

    #[test]
    fn limit_consistency_constant_sequences() {
        let s = two_intervals();
        let r =
            limit_metric_consistency(&s, &explicit(&[0.2; 12]), &explicit(&[0.7; 12]), 1).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn limit_consistency_dyadic_sequences() {
        let s = MultiMetricSpace::new(1, vec![interval(0.0, 1.0)]).unwrap();
        let xs: Vec<f64> = (0..50).map(|n| (0.5_f64).powi(n)).collect();
        let ys: Vec<f64> = (0..50).map(|n| 1.0 - (0.5_f64).powi(n)).collect();
        let r = limit_metric_consistency(&s, &explicit(&xs), &explicit(&ys), 1).unwrap();
        assert!(r <= 1e-12, "{r}");
    }

    #[test]
    fn limit_consistency_rejects_divergent_input() {
        let s = two_intervals();
        let err = limit_metric_consistency(
            &s,
            &explicit(&[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]),
            &explicit(&[0.5; 12]),
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::SequencePrecondition { which, .. } if which == "x"));
    }

    #[test]
    fn nested_dyadic_disks_shrink_to_zero() {
        let s = MultiMetricSpace::new(1, vec![interval(0.0, 1.0)]).unwrap();
        let disks: Vec<DiskSpec> = (1..=40)
            .map(|n| DiskSpec {
                center: point(&[(0.5_f64).powi(n)]),
                radius: (0.5_f64).powi(n - 1),
            })
            .collect();
        let estimate = nested_disk_intersection(&s, &disks).unwrap();
        assert!(estimate.coords()[0].abs() <= 1e-9);
        for disk in &disks {
            assert!(s.in_disk(disk, &estimate).unwrap());
        }
    }

    #[test]
    fn concentric_disks_return_common_center() {
        let s = two_intervals();
        let c = point(&[0.4]);
        let disks = vec![
            DiskSpec {
                center: c.clone(),
                radius: 1.0,
            },
            DiskSpec {
                center: c.clone(),
                radius: 0.5,
            },
        ];
        assert_eq!(nested_disk_intersection(&s, &disks).unwrap(), c);
    }

    #[test]
    fn non_decreasing_radii_rejected() {
        let s = two_intervals();
        let disks = vec![
            DiskSpec {
                center: point(&[0.4]),
                radius: 0.5,
            },
            DiskSpec {
                center: point(&[0.4]),
                radius: 0.5,
            },
        ];
        assert!(matches!(
            nested_disk_intersection(&s, &disks),
            Err(Error::RadiiNotDecreasing { index: 1, .. })
        ));
    }

    #[test]
    fn nesting_violation_identified() {
        let s = two_intervals();
        let disks = vec![
            DiskSpec {
                center: point(&[0.1]),
                radius: 0.2,
            },
            DiskSpec {
                center: point(&[0.9]),
                radius: 0.1,
            },
        ];
        assert!(matches!(
            nested_disk_intersection(&s, &disks),
            Err(Error::NestingViolation {
                first: 0,
                second: 1
            })
        ));
    }
}
