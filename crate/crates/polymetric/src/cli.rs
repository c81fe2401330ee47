//! Scenario-driven front end: parses a JSON scenario file, dispatches to the
//! library, and writes a human-readable `report.txt` plus CSV plot data into
//! an output directory.
//!
//! Exit-code contract: 0 on success, 1 when the scenario fails validation
//! before any computation, 2 when a mathematical failure is detected (axiom
//! violation, not-a-contraction, no convergence).

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metric::{check_metric_axioms, MetricDescriptor};
use crate::point::AmbientPoint;
use crate::sequence::{
    classify_convergence, is_cauchy, nested_disk_intersection, CauchyVerdict,
    ConvergenceVerdict, SequenceSample, DEFAULT_TAIL_WINDOW, DEFAULT_TOLERANCE,
};
use crate::solver::{banach_solve, solve, ContractionMap};
use crate::space::{DiskSpec, MultiMetricSpace, Region};

pub const DEFAULT_SEED: u64 = 0;

/// One component as it appears in a scenario file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub region: Region,
    pub metric: MetricDescriptor,
}

/// The space description of a scenario file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub dimension: usize,
    pub components: Vec<ComponentSpec>,
}

impl SpaceSpec {
    pub fn build(&self) -> Result<MultiMetricSpace> {
        MultiMetricSpace::new(
            self.dimension,
            self.components
                .iter()
                .map(|c| (c.region.clone(), c.metric.clone()))
                .collect(),
        )
    }
}

fn default_sample_count() -> usize {
    10_000
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_tail_window() -> usize {
    DEFAULT_TAIL_WINDOW
}

fn default_max_iterations() -> usize {
    10_000
}

fn default_dedup_tolerance() -> f64 {
    1e-6
}

fn default_radius() -> f64 {
    1.0
}

/// A parsed scenario file, discriminated by its `kind` field.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    Axioms {
        space: SpaceSpec,
        metric: MetricDescriptor,
        #[serde(default = "default_sample_count")]
        sample_count: usize,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "default_tolerance")]
        tolerance: f64,
    },
    Sequence {
        space: SpaceSpec,
        sequence: SequenceSample,
        #[serde(default = "default_tail_window")]
        tail_window: usize,
        #[serde(default = "default_tolerance")]
        tolerance: f64,
    },
    Cauchy {
        space: SpaceSpec,
        sequence: SequenceSample,
        #[serde(default = "default_tail_window")]
        tail_window: usize,
        #[serde(default = "default_tolerance")]
        tolerance: f64,
    },
    Solve {
        space: SpaceSpec,
        map: ContractionMap,
        #[serde(default = "default_tolerance")]
        tolerance: f64,
        #[serde(default = "default_max_iterations")]
        max_iterations: usize,
        #[serde(default = "default_dedup_tolerance")]
        dedup_tolerance: f64,
    },
    Banach {
        space: SpaceSpec,
        map: ContractionMap,
        #[serde(default = "default_tolerance")]
        tolerance: f64,
        #[serde(default = "default_max_iterations")]
        max_iterations: usize,
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default = "default_sample_count")]
        sample_count: usize,
        #[serde(default = "default_radius")]
        radius: f64,
    },
    NestedDisks {
        space: SpaceSpec,
        disks: Vec<DiskSpec>,
    },
}

/// Overrides supplied on the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

impl Scenario {
    fn apply_overrides(&mut self, overrides: &Overrides) {
        match self {
            Scenario::Axioms { seed, tolerance, .. } => {
                if let Some(s) = overrides.seed {
                    *seed = s;
                }
                if let Some(t) = overrides.tolerance {
                    *tolerance = t;
                }
            }
            Scenario::Sequence { tolerance, .. }
            | Scenario::Cauchy { tolerance, .. }
            | Scenario::Solve { tolerance, .. }
            | Scenario::Banach { tolerance, .. } => {
                if let Some(t) = overrides.tolerance {
                    *tolerance = t;
                }
            }
            Scenario::Ellipse { .. } | Scenario::NestedDisks { .. } => {}
        }
    }
}

/// 17-significant-digit decimal rendering; round-trippable doubles, used for
/// both CSV cells and the values echoed in report.txt.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn coord_headers(dimension: usize) -> String {
    (0..dimension)
        .map(|i| format!("x{i}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn coord_cells(p: &AmbientPoint) -> String {
    p.coords()
        .iter()
        .map(|&c| fmt17(c))
        .collect::<Vec<_>>()
        .join(",")
}

struct OutputDir<'a> {
    dir: &'a Path,
}

impl<'a> OutputDir<'a> {
    fn write(&self, name: &str, contents: &str) -> Result<()> {
        fs::create_dir_all(self.dir)?;
        fs::write(self.dir.join(name), contents)?;
        Ok(())
    }
}

/// Result of the ellipse-to-circle metric rescaling demonstration: points of
/// the ellipse x^2/a^2 + y^2/b^2 = 1 all sit at weighted distance `radius`
/// from the origin under the per-axis weights (radius/a, radius/b).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EllipseDemoResult {
    pub a: f64,
    pub b: f64,
    pub radius: f64,
    pub sample_count: usize,
    /// Worst |weighted_distance - radius| over the samples.
    pub max_deviation: f64,
    pub rows: Vec<EllipseRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EllipseRow {
    pub angle: f64,
    pub x: f64,
    pub y: f64,
    pub euclidean_distance: f64,
    pub weighted_distance: f64,
}

/// Samples the ellipse at uniform angles and measures each point's distance
/// from the origin under both the Euclidean and the rescaled metric.
pub fn ellipse_demo(a: f64, b: f64, sample_count: usize, radius: f64) -> Result<EllipseDemoResult> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Validation(format!(
            "semi-axes must be positive, got a = {a}, b = {b}"
        )));
    }
    if radius <= 0.0 || radius.is_nan() {
        return Err(Error::Validation(format!("radius must be positive, got {radius}")));
    }
    if sample_count < 4 {
        return Err(Error::Validation(format!(
            "sample_count must be at least 4, got {sample_count}"
        )));
    }
    let euclidean = MetricDescriptor::Euclidean;
    let weighted = MetricDescriptor::WeightedEuclidean {
        weights: vec![radius / a, radius / b],
    };
    let origin = AmbientPoint::new(vec![0.0, 0.0])?;
    let mut rows = Vec::with_capacity(sample_count);
    let mut max_deviation = 0.0_f64;
    for k in 0..sample_count {
        let angle = 2.0 * std::f64::consts::PI * k as f64 / sample_count as f64;
        let p = AmbientPoint::new(vec![a * angle.cos(), b * angle.sin()])?;
        let euclidean_distance = euclidean.eval(&p, &origin)?;
        let weighted_distance = weighted.eval(&p, &origin)?;
        max_deviation = max_deviation.max((weighted_distance - radius).abs());
        rows.push(EllipseRow {
            angle,
            x: p.coords()[0],
            y: p.coords()[1],
            euclidean_distance,
            weighted_distance,
        });
    }
    Ok(EllipseDemoResult {
        a,
        b,
        radius,
        sample_count,
        max_deviation,
        rows,
    })
}

/// Writes ellipse.csv and report.txt for a demo result.
pub fn write_ellipse_output(result: &EllipseDemoResult, output_dir: &Path) -> Result<()> {
    let out = OutputDir { dir: output_dir };
    out.write("ellipse.csv", &ellipse_csv(result))?;
    let mut txt = String::new();
    let _ = writeln!(txt, "kind: ellipse");
    let _ = writeln!(txt, "a: {}", fmt17(result.a));
    let _ = writeln!(txt, "b: {}", fmt17(result.b));
    let _ = writeln!(txt, "radius: {}", fmt17(result.radius));
    let _ = writeln!(txt, "sample_count: {}", result.sample_count);
    let _ = writeln!(txt, "max_deviation: {}", fmt17(result.max_deviation));
    out.write("report.txt", &txt)
}

fn ellipse_csv(result: &EllipseDemoResult) -> String {
    let mut csv = String::from("angle,x,y,euclidean_distance,weighted_distance\n");
    for row in &result.rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            fmt17(row.angle),
            fmt17(row.x),
            fmt17(row.y),
            fmt17(row.euclidean_distance),
            fmt17(row.weighted_distance)
        );
    }
    csv
}

/// True when the error reports a mathematical failure rather than an invalid
/// scenario; drives the exit-code contract.
pub fn is_mathematical_failure(err: &Error) -> bool {
    matches!(
        err,
        Error::AxiomViolation { .. }
            | Error::NotAContraction { .. }
            | Error::NoConvergence { .. }
            | Error::IncomparableResidual
            | Error::NestingViolation { .. }
            | Error::RadiiNotDecreasing { .. }
    )
}

/// Maps a run outcome to the process exit code.
pub fn exit_code(result: &std::result::Result<(), Error>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if is_mathematical_failure(e) => 2,
        Err(_) => 1,
    }
}

/// Loads a scenario file, executes it, and writes report.txt plus CSV output.
pub fn run(scenario_path: &Path, output_dir: &Path, overrides: &Overrides) -> Result<()> {
    let text = fs::read_to_string(scenario_path).map_err(|e| {
        Error::Validation(format!("cannot read {}: {e}", scenario_path.display()))
    })?;
    let mut scenario: Scenario = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{} line {} column {}", e, e.line(), e.column())))?;
    scenario.apply_overrides(overrides);
    let out = OutputDir { dir: output_dir };

    match scenario {
        Scenario::Axioms {
            space,
            metric,
            sample_count,
            seed,
            tolerance,
        } => {
            let space = space.build()?;
            metric.validate(space.dimension())?;
            let report =
                check_metric_axioms(&metric, space.dimension(), sample_count, seed, tolerance)?;
            let verdict = if report.passed { "pass" } else { "fail" };
            let csv = format!(
                "samples_tested,definiteness_failures,symmetry_failures,triangle_failures,worst_triangle_slack,verdict\n{},{},{},{},{},{}\n",
                report.samples_tested,
                report.definiteness_failures,
                report.symmetry_failures,
                report.triangle_failures,
                fmt17(report.worst_triangle_slack),
                verdict
            );
            out.write("axioms.csv", &csv)?;
            let mut txt = String::new();
            let _ = writeln!(txt, "kind: axioms");
            let _ = writeln!(txt, "samples_tested: {}", report.samples_tested);
            let _ = writeln!(txt, "definiteness_failures: {}", report.definiteness_failures);
            let _ = writeln!(txt, "symmetry_failures: {}", report.symmetry_failures);
            let _ = writeln!(txt, "triangle_failures: {}", report.triangle_failures);
            let _ = writeln!(
                txt,
                "worst_triangle_slack: {}",
                fmt17(report.worst_triangle_slack)
            );
            let _ = writeln!(txt, "verdict: {verdict}");
            out.write("report.txt", &txt)?;
            if !report.passed {
                return Err(Error::AxiomViolation {
                    definiteness: report.definiteness_failures,
                    symmetry: report.symmetry_failures,
                    triangle: report.triangle_failures,
                });
            }
            Ok(())
        }
        Scenario::Sequence {
            space,
            sequence,
            tail_window,
            tolerance,
        } => {
            let space = space.build()?;
            let points = sequence.materialize(&space)?;
            let report = classify_convergence(&space, &sequence, tail_window, tolerance)?;
            let mut csv = format!("index,{}\n", coord_headers(space.dimension()));
            for (i, p) in points.iter().enumerate() {
                let _ = writeln!(csv, "{i},{}", coord_cells(p));
            }
            out.write("sequence.csv", &csv)?;
            let mut txt = String::new();
            let _ = writeln!(txt, "kind: sequence");
            let verdict = match report.verdict {
                ConvergenceVerdict::Convergent => "convergent",
                ConvergenceVerdict::NotDetected => "not-detected",
            };
            let _ = writeln!(txt, "verdict: {verdict}");
            if let Some(k) = report.eventual_component {
                let _ = writeln!(txt, "eventual_component: {k}");
            }
            if let Some(n) = report.stabilization_index {
                let _ = writeln!(txt, "stabilization_index: {n}");
            }
            if let Some(limit) = &report.limit_estimate {
                let _ = writeln!(txt, "limit_estimate: {}", coord_cells(limit));
            }
            if let Some(r) = report.final_residual {
                let _ = writeln!(txt, "final_residual: {}", fmt17(r));
            }
            out.write("report.txt", &txt)?;
            Ok(())
        }
        Scenario::Cauchy {
            space,
            sequence,
            tail_window,
            tolerance,
        } => {
            let space = space.build()?;
            let points = sequence.materialize(&space)?;
            let report = is_cauchy(&space, &sequence, tail_window, tolerance)?;
            let mut csv = format!("index,{}\n", coord_headers(space.dimension()));
            for (i, p) in points.iter().enumerate() {
                let _ = writeln!(csv, "{i},{}", coord_cells(p));
            }
            out.write("sequence.csv", &csv)?;
            let mut txt = String::new();
            let _ = writeln!(txt, "kind: cauchy");
            let verdict = match report.verdict {
                CauchyVerdict::Cauchy => "cauchy",
                CauchyVerdict::NotDetected => "not-detected",
            };
            let _ = writeln!(txt, "verdict: {verdict}");
            if let Some(s) = report.witness_component {
                let _ = writeln!(txt, "witness_component: {s}");
            }
            if let Some(n) = report.stabilization_index {
                let _ = writeln!(txt, "stabilization_index: {n}");
            }
            let _ = writeln!(txt, "max_tail_gap: {}", fmt17(report.max_tail_gap));
            out.write("report.txt", &txt)?;
            Ok(())
        }
        Scenario::Solve {
            space,
            map,
            tolerance,
            max_iterations,
            dedup_tolerance,
        } => {
            let space = space.build()?;
            let report = solve(&space, &map, tolerance, max_iterations, dedup_tolerance)?;
            let mut csv = format!(
                "seed_component,component,iterations,residual,{}\n",
                coord_headers(space.dimension())
            );
            for fp in &report.points {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    fp.seed_component,
                    fp.component,
                    fp.iterations,
                    fmt17(fp.residual),
                    coord_cells(&fp.point)
                );
            }
            out.write("fixed_points.csv", &csv)?;
            let m = space.components().len();
            let mut txt = String::new();
            let _ = writeln!(txt, "kind: solve");
            let _ = writeln!(txt, "alpha_hat: {}", fmt17(report.estimate.alpha_hat));
            let _ = writeln!(txt, "count: {}", report.count);
            let _ = writeln!(
                txt,
                "1 <= count <= m: {}",
                if report.count >= 1 && report.count <= m {
                    "OK"
                } else {
                    "VIOLATED"
                }
            );
            for fp in &report.points {
                let _ = writeln!(
                    txt,
                    "fixed_point: component {} point {} residual {} iterations {}",
                    fp.component,
                    coord_cells(&fp.point),
                    fmt17(fp.residual),
                    fp.iterations
                );
            }
            out.write("report.txt", &txt)?;
            Ok(())
        }
        Scenario::Banach {
            space,
            map,
            tolerance,
            max_iterations,
        } => {
            if space.components.len() != 1 {
                return Err(Error::Validation(format!(
                    "banach scenario needs exactly one component, got {}",
                    space.components.len()
                )));
            }
            let component = &space.components[0];
            let (point, residual) = banach_solve(
                component.region.clone(),
                component.metric.clone(),
                &map,
                tolerance,
                max_iterations,
            )?;
            let csv = format!(
                "residual,{}\n{},{}\n",
                coord_headers(space.dimension),
                fmt17(residual),
                coord_cells(&point)
            );
            out.write("fixed_point.csv", &csv)?;
            let mut txt = String::new();
            let _ = writeln!(txt, "kind: banach");
            let _ = writeln!(txt, "fixed_point: {}", coord_cells(&point));
            let _ = writeln!(txt, "residual: {}", fmt17(residual));
            out.write("report.txt", &txt)?;
            Ok(())
        }
        Scenario::Ellipse {
            a,
            b,
            sample_count,
            radius,
        } => {
            let result = ellipse_demo(a, b, sample_count, radius)?;
            write_ellipse_output(&result, output_dir)
        }
        Scenario::NestedDisks { space, disks } => {
            let space = space.build()?;
            let estimate = nested_disk_intersection(&space, &disks)?;
            let mut csv = format!("index,radius,{}\n", coord_headers(space.dimension()));
            for (i, disk) in disks.iter().enumerate() {
                let _ = writeln!(csv, "{i},{},{}", fmt17(disk.radius), coord_cells(&disk.center));
            }
            out.write("disks.csv", &csv)?;
            let mut txt = String::new();
            let _ = writeln!(txt, "kind: nested-disks");
            let _ = writeln!(txt, "disks: {}", disks.len());
            let _ = writeln!(txt, "intersection_estimate: {}", coord_cells(&estimate));
            out.write("report.txt", &txt)?;
            Ok(())
        }
    }
}
