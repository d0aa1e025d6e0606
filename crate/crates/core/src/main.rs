use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use eqcat::cli::{self, Command, Format, Job};
use eqcat::search::Budget;

/// Exact checks on finite linear and DG categories with group actions.
///
/// Exit status: 0 affirmative, 1 negative, 2 budget exceeded, 3 input error.
#[derive(Parser)]
#[command(name = "eqcat", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Instance document (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    job: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Enumeration budget; overrides the document; otherwise EQCAT_BUDGET, then 200000.
    #[arg(long)]
    budget: Option<u64>,
    /// text or json
    #[arg(long, default_value = "text")]
    format: String,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("eqcat: {msg}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let format: Format = match args.format.parse() {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let job = match cli::job_name(args.command, args.job.as_deref()) {
        Ok(j) => j,
        Err(e) => return input_error(e),
    };
    let input = match args.input.as_deref().map(cli::load).transpose() {
        Ok(i) => i,
        Err(e) => return input_error(e),
    };
    let budget = args
        .budget
        .or(input.as_ref().and_then(|i| i.budget))
        .map_or_else(Budget::from_env, Budget);
    let seed = args.seed.or(input.as_ref().and_then(|i| i.seed)).unwrap_or(0);
    let job = Job {
        command: args.command,
        job,
        budget,
        seed,
    };
    match cli::run(input.as_ref(), &job) {
        Ok(report) => {
            print!("{}", cli::emit(&report, format));
            ExitCode::from(report.verdict.exit_code() as u8)
        }
        Err(e) => input_error(e),
    }
}
