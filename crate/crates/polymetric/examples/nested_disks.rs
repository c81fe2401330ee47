//! A nested sequence of shrinking disks pins down a single point.

use polymetric::{
    nested_disk_intersection, AmbientPoint, DiskSpec, MetricDescriptor, MultiMetricSpace,
    Region, Result,
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

    // centers 2^-n, radii 2^-n+1: every disk contains all later ones
    let disks: Vec<DiskSpec> = (1..=40)
        .map(|n| {
            Ok(DiskSpec {
                center: AmbientPoint::new(vec![(0.5_f64).powi(n)])?,
                radius: (0.5_f64).powi(n - 1),
            })
        })
        .collect::<Result<_>>()?;

    let estimate = nested_disk_intersection(&space, &disks)?;
    println!("intersection estimate: {:e}", estimate.coords()[0]);
    println!(
        "inside every disk: {}",
        disks
            .iter()
            .all(|d| space.in_disk(d, &estimate).unwrap_or(false))
    );
    Ok(())
}
