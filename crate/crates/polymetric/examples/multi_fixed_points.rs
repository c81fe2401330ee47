//! A piecewise contraction on a two-component space: one orbit per
//! component, between 1 and m fixed points depending on the routing.

use polymetric::{
    estimate_contraction, solve, AmbientPoint, ContractionMap, CoordForm, MapRule,
    MetricDescriptor, MultiMetricSpace, PiecewiseRule, Region, Result,
};

fn interval(lo: f64, hi: f64) -> Result<(Region, MetricDescriptor)> {
    Ok((
        Region::Box {
            lower: AmbientPoint::new(vec![lo])?,
            upper: AmbientPoint::new(vec![hi])?,
        },
        MetricDescriptor::Euclidean,
    ))
}

fn affine(scale: f64, offset: f64) -> MapRule {
    MapRule::Coordinatewise {
        forms: vec![CoordForm::Affine { scale, offset }],
    }
}

fn main() -> Result<()> {
    let space = MultiMetricSpace::new(1, vec![interval(0.0, 1.0)?, interval(2.0, 3.0)?])?;

    // each component contracts into itself: two fixed points
    let split = ContractionMap::new(MapRule::Piecewise {
        pieces: vec![
            PiecewiseRule {
                component: 1,
                rule: affine(0.5, 0.0),
            },
            PiecewiseRule {
                component: 2,
                rule: affine(0.5, 1.25),
            },
        ],
    });
    let estimate = estimate_contraction(&space, &split, 64, 0)?;
    println!("alpha_hat = {}, routing = {:?}", estimate.alpha_hat, estimate.routing.entries);
    let report = solve(&space, &split, 1e-10, 10_000, 1e-6)?;
    println!("self-routed map: count = {}", report.count);
    for fp in &report.points {
        println!(
            "  component {}: x = {:e}, residual = {:e}",
            fp.component,
            fp.point.coords()[0],
            fp.residual
        );
    }

    // rerouting the second component into the first collapses the count
    let routed = ContractionMap::new(MapRule::Piecewise {
        pieces: vec![
            PiecewiseRule {
                component: 1,
                rule: affine(0.5, 0.0),
            },
            PiecewiseRule {
                component: 2,
                rule: affine(0.5, -1.0),
            },
        ],
    });
    let report = solve(&space, &routed, 1e-10, 10_000, 1e-6)?;
    println!("routed map (2 -> 1): count = {}", report.count);
    Ok(())
}
