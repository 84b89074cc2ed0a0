use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use unicover::job::{exit_code, parse_job, run_with, EXIT_OTHER, EXIT_VERIFY};

/// Lift an epimorphism from a finitely presented group onto a finite
/// permutation group to larger quotients with elementary abelian p-kernels.
#[derive(Parser, Debug)]
#[command(name = "unicover", version)]
struct Args {
    /// Job file in the line-oriented job format.
    #[arg(long)]
    job: PathBuf,
    /// Write the machine-readable JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Run the oracle checks; any disagreement fails the run.
    #[arg(long)]
    verify: bool,
    /// Print nothing but errors.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<unicover::Error>().map(exit_code).unwrap_or(EXIT_OTHER);
            ExitCode::from(code as u8)
        }
    }
}

fn execute(args: &Args) -> anyhow::Result<i32> {
    let text = std::fs::read_to_string(&args.job).with_context(|| format!("reading {}", args.job.display()))?;
    let mut job = parse_job(&text)?;
    job.task.verify |= args.verify;
    let quiet = args.quiet;
    let report = run_with(&job, |r| {
        if !quiet {
            eprintln!("round {} done: order {}, {} ({:.2}s)", r.round, r.order, r.structure, r.seconds);
        }
    })?;
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&report)?;
        std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if !quiet {
        print!("{}", report.table());
    }
    Ok(if report.verified() { 0 } else { EXIT_VERIFY })
}
