//! Run a job from text, as the command-line tool does, and print the JSON.

use hilbert_sally::job::{run, JobSpec};

const JOB: &str = "
[ring]
variables = x, y, z

[ideal I]
generators = x^2, y^2, z^2, x*y*z

[filtration]
kind = normal
base = I

[task]
command = classify
seed = 3
";

fn main() -> hilbert_sally::Result<()> {
    let report = run(&JobSpec::parse(JOB)?)?;
    print!("{}", report.to_json());
    eprint!("{report}");
    std::process::exit(report.exit_code());
}
