//! Builds a combined metric and property-checks the metric axioms on seeded
//! random triples.

use polymetric::{
    check_metric_axioms, combine, CombinatorDescriptor, MetricDescriptor, Result,
};

fn main() -> Result<()> {
    let metric = combine(
        CombinatorDescriptor::Sum,
        vec![
            MetricDescriptor::Euclidean,
            MetricDescriptor::BoundedTransform {
                inner: Box::new(MetricDescriptor::Euclidean),
            },
        ],
    )?;
    let report = check_metric_axioms(&metric, 2, 10_000, 7, 1e-9)?;
    println!("metric: euclidean + euclidean/(1 + euclidean)");
    println!("samples tested:        {}", report.samples_tested);
    println!("definiteness failures: {}", report.definiteness_failures);
    println!("symmetry failures:     {}", report.symmetry_failures);
    println!("triangle failures:     {}", report.triangle_failures);
    println!("worst triangle slack:  {:e}", report.worst_triangle_slack);
    println!("verdict:               {}", if report.passed { "pass" } else { "fail" });
    Ok(())
}
