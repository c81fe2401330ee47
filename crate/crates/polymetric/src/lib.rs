//! Multi-metric spaces: unions of component metric spaces with their own
//! metrics, metric combinators, sequence convergence and Cauchy analysis,
//! and a multi-seed contraction fixed-point solver that finds between 1 and
//! m fixed points.
//!
//! The `examples/` directory of this crate shows one runnable program per
//! capability; the `polymetric` binary runs JSON scenario files.

pub mod cli;
pub mod error;
pub mod metric;
pub mod point;
pub mod sequence;
pub mod solver;
pub mod space;

pub use error::{Error, Result};
pub use metric::{
    check_combinator_conditions, check_combinator_fn, check_metric_axioms, check_metric_fn,
    combine, AxiomReport, CombinatorDescriptor, ConditionReport, MetricDescriptor,
};
pub use point::AmbientPoint;
pub use sequence::{
    classify_convergence, eventual_component, is_cauchy, limit_metric_consistency,
    nested_disk_intersection, CauchyReport, CauchyVerdict, ConvergenceReport,
    ConvergenceVerdict, SequenceSample,
};
pub use solver::{
    apply_map, banach_solve, estimate_contraction, solve, verify_fixed_point, ContractionEstimate,
    ContractionMap, CoordForm, FixedPoint, FixedPointReport, MapRule, PiecewiseRule,
    RoutingTable,
};
pub use space::{ComponentSpace, DiskSpec, MultiMetricSpace, PartialDistance, Region};
