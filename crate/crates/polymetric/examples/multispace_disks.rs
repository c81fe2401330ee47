//! A two-component multi-metric space: membership, partial distance, R-disk
//! membership, and bounding disks.

use polymetric::{
    AmbientPoint, DiskSpec, MetricDescriptor, MultiMetricSpace, Region, Result,
};

fn pt(c: f64) -> AmbientPoint {
    AmbientPoint::new(vec![c]).unwrap()
}

fn main() -> Result<()> {
    let space = MultiMetricSpace::new(
        1,
        vec![
            (
                Region::Box {
                    lower: pt(0.0),
                    upper: pt(1.0),
                },
                MetricDescriptor::Euclidean,
            ),
            (
                Region::Box {
                    lower: pt(2.0),
                    upper: pt(3.0),
                },
                MetricDescriptor::Euclidean,
            ),
        ],
    )?;

    for x in [0.5, 1.0, 1.5, 2.5] {
        println!("components of {x}: {:?}", space.components_of(&pt(x))?);
    }

    println!(
        "distance(0.2, 0.7) = {:?}",
        space.distance(&pt(0.2), &pt(0.7))?
    );
    println!(
        "distance(0.5, 2.5) = {:?} (no shared component)",
        space.distance(&pt(0.5), &pt(2.5))?
    );

    let disk = DiskSpec {
        center: pt(0.5),
        radius: 0.3,
    };
    println!("in_disk(B(0.5, 0.3), 0.7) = {}", space.in_disk(&disk, &pt(0.7))?);
    println!(
        "in_disk(B(0.5, 0.3), 0.8) = {} (strict inequality)",
        space.in_disk(&disk, &pt(0.8))?
    );

    let points = vec![pt(0.1), pt(0.2), pt(0.9)];
    println!("bounding disk: {:?}", space.bounding_disk(&points)?);
    Ok(())
}
