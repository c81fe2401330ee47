use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use polymetric::cli::{ellipse_demo, exit_code, run, write_ellipse_output, Overrides};

#[derive(Parser)]
#[command(name = "polymetric", about = "Multi-metric space scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON scenario file and write report.txt plus CSV output.
    Run {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the scenario's sampling seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the scenario's tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Ellipse-to-circle metric rescaling demonstration.
    Ellipse {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 360)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            scenario,
            out,
            seed,
            tol,
        } => run(
            &scenario,
            &out,
            &Overrides {
                seed,
                tolerance: tol,
            },
        ),
        Command::Ellipse { a, b, samples, out } => ellipse_demo(a, b, samples, 1.0)
            .and_then(|result| write_ellipse_output(&result, &out)),
    };
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result) as u8)
}
