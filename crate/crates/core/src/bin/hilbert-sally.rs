use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hilbert_sally::job::{run, FieldSpec, JobSpec};
use hilbert_sally::Error;

/// Hilbert coefficients, reduction numbers and Sally-module lengths of
/// m-primary ideals, driven by a job file.
#[derive(Parser)]
#[command(name = "hilbert-sally", version)]
struct Cli {
    /// job file to run
    #[arg(long)]
    job: PathBuf,
    /// write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// override the task seed
    #[arg(long)]
    seed: Option<u64>,
    /// override the task window
    #[arg(long = "max-n")]
    max_n: Option<usize>,
    /// `fp:<p>` or `q`
    #[arg(long)]
    field: Option<FieldSpec>,
    /// worker threads for length computations
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    verbose: bool,
}

fn load(cli: &Cli) -> Result<JobSpec, Error> {
    let text = std::fs::read_to_string(&cli.job).map_err(|e| Error::Io(format!("{}: {e}", cli.job.display())))?;
    let mut job = JobSpec::parse(&text)?;
    if let Some(s) = cli.seed {
        job.task.seed = s;
    }
    if let Some(n) = cli.max_n {
        job.task.max_n = n;
    }
    if let Some(f) = cli.field {
        job.field = f;
    }
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "debug" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("thread pool: {e}");
        }
    }

    let outcome = load(&cli).and_then(|job| run(&job));
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let json = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    eprint!("{report}");
    ExitCode::from(report.exit_code() as u8)
}
