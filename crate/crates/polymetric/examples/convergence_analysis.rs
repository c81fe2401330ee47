//! Classifies a contraction-generated orbit for convergence and Cauchy
//! behavior, including the eventual-component witness.

use polymetric::{
    classify_convergence, eventual_component, is_cauchy, AmbientPoint, ContractionMap,
    CoordForm, MapRule, MetricDescriptor, MultiMetricSpace, Region, Result, SequenceSample,
};

fn main() -> Result<()> {
    let space = MultiMetricSpace::new(
        1,
        vec![(
            Region::Box {
                lower: AmbientPoint::new(vec![0.0])?,
                upper: AmbientPoint::new(vec![1.0])?,
            },
            MetricDescriptor::Euclidean,
        )],
    )?;

    // x -> x/2 + 0.1, limit 0.2
    let seq = SequenceSample::Iterated {
        map: ContractionMap::new(MapRule::Coordinatewise {
            forms: vec![CoordForm::Affine {
                scale: 0.5,
                offset: 0.1,
            }],
        }),
        start: AmbientPoint::new(vec![1.0])?,
        length: 60,
    };

    println!("eventual component: {:?}", eventual_component(&space, &seq)?);

    let report = classify_convergence(&space, &seq, 10, 1e-9)?;
    println!("convergence verdict: {:?}", report.verdict);
    println!("limit estimate:      {:?}", report.limit_estimate);
    println!("final residual:      {:?}", report.final_residual);

    let cauchy = is_cauchy(&space, &seq, 10, 1e-9)?;
    println!("cauchy verdict:      {:?}", cauchy.verdict);
    println!("max tail gap:        {:e}", cauchy.max_tail_gap);
    Ok(())
}
