//! Cross-module behavior of orbits, solver seeds, and disk estimates.

use polymetric::{
    eventual_component, nested_disk_intersection, solve, verify_fixed_point, AmbientPoint,
    ContractionMap, CoordForm, DiskSpec, MapRule, MetricDescriptor, MultiMetricSpace,
    PiecewiseRule, Region, SequenceSample,
};

fn pt(coords: &[f64]) -> AmbientPoint {
    AmbientPoint::new(coords.to_vec()).unwrap()
}

fn interval(lo: f64, hi: f64) -> (Region, MetricDescriptor) {
    (
        Region::Box {
            lower: pt(&[lo]),
            upper: pt(&[hi]),
        },
        MetricDescriptor::Euclidean,
    )
}

fn affine1(scale: f64, offset: f64) -> MapRule {
    MapRule::Coordinatewise {
        forms: vec![CoordForm::Affine { scale, offset }],
    }
}

fn split_map() -> ContractionMap {
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
fn seed_position_does_not_change_fixed_points() {
    // shrinking the boxes moves the deterministic seeds (region centers)
    // without changing the map; the reported fixed points must agree
    let wide = MultiMetricSpace::new(1, vec![interval(0.0, 1.0), interval(2.0, 3.0)]).unwrap();
    let narrow =
        MultiMetricSpace::new(1, vec![interval(0.0, 0.8), interval(2.2, 3.0)]).unwrap();
    let map = split_map();
    let a = solve(&wide, &map, 1e-10, 10_000, 1e-6).unwrap();
    let b = solve(&narrow, &map, 1e-10, 10_000, 1e-6).unwrap();
    assert_eq!(a.count, b.count);
    for (fa, fb) in a.points.iter().zip(&b.points) {
        let gap = (fa.point.coords()[0] - fb.point.coords()[0]).abs();
        assert!(gap <= 2e-6, "fixed points moved by {gap}");
    }
}

#[test]
fn orbit_steps_contract_monotonically() {
    let space = MultiMetricSpace::new(1, vec![interval(0.0, 1.0)]).unwrap();
    let map = ContractionMap::new(MapRule::Coordinatewise {
        forms: vec![CoordForm::Cosine],
    });
    let est = polymetric::estimate_contraction(&space, &map, 64, 5).unwrap();
    let mut orbit = vec![0.1_f64];
    for _ in 0..60 {
        orbit.push(orbit.last().unwrap().cos());
    }
    let steps: Vec<f64> = orbit.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    // skip the first few steps: the orbit has not yet settled near the
    // fixed point and the sampled alpha_hat need not dominate them
    for pair in steps[3..].windows(2) {
        assert!(
            pair[1] <= est.alpha_hat * pair[0] + 1e-12,
            "step grew: {} -> {} (alpha_hat {})",
            pair[0],
            pair[1],
            est.alpha_hat
        );
    }
}

#[test]
fn eventual_component_is_prefix_monotone() {
    let space = MultiMetricSpace::new(1, vec![interval(0.0, 1.0), interval(2.0, 3.0)]).unwrap();
    let mut coords = vec![0.1, 2.1, 0.2, 2.4, 2.5, 2.6];
    let base = SequenceSample::Explicit {
        points: coords.iter().map(|&c| pt(&[c])).collect(),
    };
    let witness = eventual_component(&space, &base).unwrap();
    assert_eq!(witness, Some((2, 3)));
    // extending with more points of component 2 keeps the witness
    for extra in [2.7, 2.05, 2.95, 2.5] {
        coords.push(extra);
        let extended = SequenceSample::Explicit {
            points: coords.iter().map(|&c| pt(&[c])).collect(),
        };
        assert_eq!(eventual_component(&space, &extended).unwrap(), witness);
    }
}

#[test]
fn disks_around_contraction_orbit_recover_fixed_point() {
    // cross-module oracle: orbit of x/2 + 0.25 converges to 0.5; disks
    // centered on the orbit with geometrically shrinking radii intersect there
    let space = MultiMetricSpace::new(1, vec![interval(0.0, 1.0)]).unwrap();
    let map = ContractionMap::new(affine1(0.5, 0.25));
    let report = solve(&space, &map, 1e-12, 10_000, 1e-9).unwrap();
    let fixed = report.points[0].point.coords()[0];
    assert!((fixed - 0.5).abs() <= 1e-10);

    let mut x = 1.0_f64;
    let mut disks = Vec::new();
    for n in 0..40 {
        // |x_n - 0.5| = 0.5 * 2^-n, so radius 2^-n+1 encloses the tail
        disks.push(DiskSpec {
            center: pt(&[x]),
            radius: (0.5_f64).powi(n - 1),
        });
        x = 0.5 * x + 0.25;
    }
    let estimate = nested_disk_intersection(&space, &disks).unwrap();
    assert!((estimate.coords()[0] - fixed).abs() <= 1e-9);
    assert!(verify_fixed_point(&space, &map, &estimate).unwrap() <= 1e-9);
}
