//! Runs a JSON scenario file through the same path as the `polymetric`
//! binary and prints the generated report.

use std::fs;

use polymetric::cli::{run, Overrides};

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("polymetric_scenario_example");
    fs::create_dir_all(&dir)?;
    let scenario = dir.join("banach_cos.json");
    fs::write(
        &scenario,
        r#"{
    "kind": "banach",
    "space": {
        "dimension": 1,
        "components": [
            {
                "region": {"type": "box", "lower": [0.0], "upper": [1.0]},
                "metric": {"type": "euclidean"}
            }
        ]
    },
    "map": {"rule": {"type": "coordinatewise", "forms": [{"form": "cosine"}]}},
    "tolerance": 1e-10
}"#,
    )?;

    let out = dir.join("out");
    match run(&scenario, &out, &Overrides::default()) {
        Ok(()) => {
            println!("scenario: {}", scenario.display());
            println!("--- report.txt ---");
            print!("{}", fs::read_to_string(out.join("report.txt"))?);
        }
        Err(e) => eprintln!("scenario failed: {e}"),
    }
    Ok(())
}
