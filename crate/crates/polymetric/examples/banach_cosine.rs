//! Classical single-space contraction iteration: the fixed point of cos on
//! [0, 1].

use polymetric::{
    banach_solve, AmbientPoint, ContractionMap, CoordForm, MapRule, MetricDescriptor, Region,
    Result,
};

fn main() -> Result<()> {
    let region = Region::Box {
        lower: AmbientPoint::new(vec![0.0])?,
        upper: AmbientPoint::new(vec![1.0])?,
    };
    let map = ContractionMap::new(MapRule::Coordinatewise {
        forms: vec![CoordForm::Cosine],
    });
    let (fixed_point, residual) =
        banach_solve(region, MetricDescriptor::Euclidean, &map, 1e-10, 10_000)?;
    println!("fixed point of cos: {:.12}", fixed_point.coords()[0]);
    println!("residual:           {residual:e}");
    Ok(())
}
