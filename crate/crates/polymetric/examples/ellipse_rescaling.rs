//! Turning an ellipse into a unit circle by rescaling the metric per axis:
//! under weights (1/a, 1/b) every point of x^2/a^2 + y^2/b^2 = 1 sits at
//! distance 1 from the origin.

use polymetric::cli::ellipse_demo;
use polymetric::Result;

fn main() -> Result<()> {
    let result = ellipse_demo(2.0, 1.0, 360, 1.0)?;
    println!("ellipse a = {}, b = {}, {} samples", result.a, result.b, result.sample_count);
    println!("max |weighted_distance - 1| = {:e}", result.max_deviation);
    for row in result.rows.iter().step_by(45) {
        println!(
            "theta = {:>6.3}  euclidean = {:.6}  weighted = {:.12}",
            row.angle, row.euclidean_distance, row.weighted_distance
        );
    }
    Ok(())
}
