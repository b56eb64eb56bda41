use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use novikov_cli::{run, JobSpec};

fn main() -> ExitCode {
    let job = JobSpec::parse();
    let outcome = run(&job);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
