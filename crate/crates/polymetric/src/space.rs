//! Multi-metric spaces: unions of component spaces, each carrying its own
//! metric. Distance is partial across components, and disk membership is
//! existential over the components containing both points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricDescriptor;
use crate::point::AmbientPoint;

/// A closed region of the ambient space; makes a component's underlying set
/// concrete. Boundary points are members.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Region {
    Box {
        lower: AmbientPoint,
        upper: AmbientPoint,
    },
    Ball {
        center: AmbientPoint,
        radius: f64,
        under: MetricDescriptor,
    },
    Whole,
}

impl Region {
    pub fn validate(&self, dimension: usize) -> Result<()> {
        match self {
            Region::Box { lower, upper } => {
                lower.check_dim(dimension)?;
                upper.check_dim(dimension)?;
                for (l, u) in lower.coords().iter().zip(upper.coords()) {
                    if l > u {
                        return Err(Error::Config(format!(
                            "box lower bound {l} exceeds upper bound {u}"
                        )));
                    }
                }
                Ok(())
            }
            Region::Ball {
                center,
                radius,
                under,
            } => {
                center.check_dim(dimension)?;
                under.validate(dimension)?;
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::Config(format!(
                        "ball radius {radius} must be positive and finite"
                    )));
                }
                Ok(())
            }
            Region::Whole => Ok(()),
        }
    }

    pub fn contains(&self, p: &AmbientPoint) -> bool {
        match self {
            Region::Box { lower, upper } => p
                .coords()
                .iter()
                .zip(lower.coords().iter().zip(upper.coords()))
                .all(|(c, (l, u))| l <= c && c <= u),
            Region::Ball {
                center,
                radius,
                under,
            } => match under.eval(center, p) {
                Ok(d) => d <= *radius,
                Err(_) => false,
            },
            Region::Whole => true,
        }
    }

    /// A deterministic interior point: box midpoint, ball center, or the
    /// origin for the whole space. Used to seed solver orbits.
    pub fn center(&self, dimension: usize) -> AmbientPoint {
        let coords = match self {
            Region::Box { lower, upper } => lower
                .coords()
                .iter()
                .zip(upper.coords())
                .map(|(l, u)| 0.5 * (l + u))
                .collect(),
            Region::Ball { center, .. } => center.coords().to_vec(),
            Region::Whole => vec![0.0; dimension],
        };
        AmbientPoint::new(coords).expect("finite center")
    }
}

/// One component (M_i, rho_i) of a multi-metric space. Ids are 1-based and
/// equal to the component's position in the space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentSpace {
    pub id: usize,
    pub region: Region,
    pub metric: MetricDescriptor,
}

/// A union of component spaces over a shared ambient real vector space.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiMetricSpace {
    dimension: usize,
    components: Vec<ComponentSpace>,
}

/// Distance in a multi-metric space is partial: defined only when the two
/// points share a component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PartialDistance {
    Comparable { value: f64, via_component: usize },
    Incomparable,
}

impl PartialDistance {
    pub fn value(&self) -> Option<f64> {
        match self {
            PartialDistance::Comparable { value, .. } => Some(*value),
            PartialDistance::Incomparable => None,
        }
    }
}

/// An R-disk B(x, R): the points y sharing some component k with the center
/// such that rho_k(y, x) < R.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskSpec {
    pub center: AmbientPoint,
    pub radius: f64,
}

impl MultiMetricSpace {
    /// Builds a space from components listed in id order (ids are assigned
    /// 1-based from positions).
    pub fn new(dimension: usize, components: Vec<(Region, MetricDescriptor)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Config("a multi-metric space needs at least one component".into()));
        }
        let components = components
            .into_iter()
            .enumerate()
            .map(|(i, (region, metric))| {
                region.validate(dimension)?;
                metric.validate(dimension)?;
                Ok(ComponentSpace {
                    id: i + 1,
                    region,
                    metric,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiMetricSpace {
            dimension,
            components,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn components(&self) -> &[ComponentSpace] {
        &self.components
    }

    pub fn component(&self, id: usize) -> Option<&ComponentSpace> {
        self.components.get(id.checked_sub(1)?)
    }

    /// Ids of every component whose region contains the point, ascending.
    pub fn components_of(&self, x: &AmbientPoint) -> Result<Vec<usize>> {
        x.check_dim(self.dimension)?;
        Ok(self
            .components
            .iter()
            .filter(|c| c.region.contains(x))
            .map(|c| c.id)
            .collect())
    }

    /// Minimum rho_k(x, y) over the components containing both points,
    /// together with the achieving k (lowest id on ties); `Incomparable`
    /// when no component contains both.
    pub fn distance(&self, x: &AmbientPoint, y: &AmbientPoint) -> Result<PartialDistance> {
        x.check_dim(self.dimension)?;
        y.check_dim(self.dimension)?;
        let mut best: Option<(f64, usize)> = None;
        for c in &self.components {
            if c.region.contains(x) && c.region.contains(y) {
                let d = c.metric.eval(x, y)?;
                if best.is_none_or(|(b, _)| d < b) {
                    best = Some((d, c.id));
                }
            }
        }
        Ok(match best {
            Some((value, via_component)) => PartialDistance::Comparable {
                value,
                via_component,
            },
            None => PartialDistance::Incomparable,
        })
    }

    /// R-disk membership: true iff some component k contains both the disk
    /// center and y with rho_k(y, center) strictly less than the radius.
    pub fn in_disk(&self, disk: &DiskSpec, y: &AmbientPoint) -> Result<bool> {
        disk.center.check_dim(self.dimension)?;
        y.check_dim(self.dimension)?;
        for c in &self.components {
            if c.region.contains(&disk.center) && c.region.contains(y) {
                let d = c.metric.eval(y, &disk.center)?;
                if d < disk.radius {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Bounding disk for a point set, centered at the first point: over the
    /// components containing every point, picks the one minimizing the
    /// farthest distance and pads the radius by 1. `None` when no single
    /// component contains them all.
    pub fn bounding_disk(&self, points: &[AmbientPoint]) -> Result<Option<DiskSpec>> {
        let first = match points.first() {
            Some(p) => p,
            None => return Err(Error::Config("bounding_disk needs at least one point".into())),
        };
        let mut best: Option<f64> = None;
        for c in &self.components {
            if !points.iter().all(|p| c.region.contains(p)) {
                continue;
            }
            let mut max_rho = 0.0_f64;
            for p in points {
                max_rho = max_rho.max(c.metric.eval(first, p)?);
            }
            if best.is_none_or(|b| max_rho < b) {
                best = Some(max_rho);
            }
        }
        Ok(best.map(|max_rho| DiskSpec {
            center: first.clone(),
            radius: 1.0 + max_rho,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::point;

    fn box1(lo: f64, hi: f64) -> Region {
        Region::Box {
            lower: point(&[lo]),
            upper: point(&[hi]),
        }
    }

    fn two_intervals() -> MultiMetricSpace {
        MultiMetricSpace::new(
            1,
            vec![
                (box1(0.0, 1.0), MetricDescriptor::Euclidean),
                (box1(2.0, 3.0), MetricDescriptor::Euclidean),
            ],
        )
        .unwrap()
    }

    #[test]
    fn membership_interior_boundary_overlap() {
        let s = two_intervals();
        assert_eq!(s.components_of(&point(&[0.5])).unwrap(), vec![1]);
        assert_eq!(s.components_of(&point(&[1.0])).unwrap(), vec![1]);
        assert_eq!(s.components_of(&point(&[1.5])).unwrap(), Vec::<usize>::new());

        let overlapping = MultiMetricSpace::new(
            1,
            vec![
                (box1(0.0, 2.0), MetricDescriptor::Euclidean),
                (box1(1.0, 3.0), MetricDescriptor::Euclidean),
            ],
        )
        .unwrap();
        assert_eq!(overlapping.components_of(&point(&[1.5])).unwrap(), vec![1, 2]);
    }

    #[test]
    fn distance_shared_and_disjoint() {
        let s = two_intervals();
        match s.distance(&point(&[0.2]), &point(&[0.7])).unwrap() {
            PartialDistance::Comparable {
                value,
                via_component,
            } => {
                assert!((value - 0.5).abs() < 1e-15);
                assert_eq!(via_component, 1);
            }
            PartialDistance::Incomparable => panic!("expected comparable"),
        }
        assert_eq!(
            s.distance(&point(&[0.5]), &point(&[2.5])).unwrap(),
            PartialDistance::Incomparable
        );
    }

    #[test]
    fn distance_minimizes_over_shared_components() {
        // same region twice with different metrics: euclidean wins
        let s = MultiMetricSpace::new(
            2,
            vec![
                (
                    Region::Box {
                        lower: point(&[0.0, 0.0]),
                        upper: point(&[2.0, 2.0]),
                    },
                    MetricDescriptor::Euclidean,
                ),
                (
                    Region::Box {
                        lower: point(&[0.0, 0.0]),
                        upper: point(&[2.0, 2.0]),
                    },
                    MetricDescriptor::Manhattan,
                ),
            ],
        )
        .unwrap();
        let d = s.distance(&point(&[0.0, 0.0]), &point(&[1.0, 1.0])).unwrap();
        match d {
            PartialDistance::Comparable {
                value,
                via_component,
            } => {
                assert!((value - 2.0_f64.sqrt()).abs() < 1e-15);
                assert_eq!(via_component, 1);
            }
            PartialDistance::Incomparable => panic!("expected comparable"),
        }
    }

    #[test]
    fn disk_membership_is_strict() {
        let s = two_intervals();
        let disk = DiskSpec {
            center: point(&[0.5]),
            radius: 0.3,
        };
        assert!(s.in_disk(&disk, &point(&[0.7])).unwrap());
        assert!(!s.in_disk(&disk, &point(&[0.8])).unwrap());
    }

    #[test]
    fn disk_membership_is_existential_over_components() {
        let s = MultiMetricSpace::new(
            1,
            vec![
                (box1(0.0, 2.0), MetricDescriptor::Euclidean),
                (
                    box1(0.0, 2.0),
                    MetricDescriptor::WeightedEuclidean {
                        weights: vec![2.0],
                    },
                ),
            ],
        )
        .unwrap();
        let disk = DiskSpec {
            center: point(&[1.0]),
            radius: 0.5,
        };
        // rho_1 = 0.4 < 0.5 even though rho_2 = 0.8 >= 0.5
        assert!(s.in_disk(&disk, &point(&[1.4])).unwrap());
    }

    #[test]
    fn bounding_disk_cases() {
        let s = two_intervals();
        let pts = vec![point(&[0.1]), point(&[0.2]), point(&[0.9])];
        let disk = s.bounding_disk(&pts).unwrap().unwrap();
        assert_eq!(disk.center, point(&[0.1]));
        assert!((disk.radius - 1.8).abs() < 1e-15);

        let single = s.bounding_disk(&[point(&[0.4])]).unwrap().unwrap();
        assert_eq!(single.center, point(&[0.4]));
        assert_eq!(single.radius, 1.0);

        let straddling = vec![point(&[0.5]), point(&[2.5])];
        assert!(s.bounding_disk(&straddling).unwrap().is_none());
    }
}
