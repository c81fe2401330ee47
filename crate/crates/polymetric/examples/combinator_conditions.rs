//! Verifies the combinator conditions (monotone, zero only at zero,
//! subadditive) for the shipped combinators, and shows min failing them.

use polymetric::{check_combinator_conditions, check_combinator_fn, CombinatorDescriptor};

fn main() {
    for comb in [
        CombinatorDescriptor::Sum,
        CombinatorDescriptor::Max,
        CombinatorDescriptor::WeightedSum {
            weights: vec![1.0, 2.0, 0.5],
        },
    ] {
        let report = check_combinator_conditions(&comb, 3, 5_000, 11, 1e-9).unwrap();
        println!("{comb:?}: passed = {}", report.passed);
    }

    // min vanishes on (0, 1): not a valid combinator
    let report = check_combinator_fn(
        |v| v.iter().cloned().fold(f64::INFINITY, f64::min),
        2,
        5_000,
        11,
        1e-9,
    );
    println!(
        "min: passed = {}, zero failures = {}",
        report.passed, report.zero_failures
    );
}
