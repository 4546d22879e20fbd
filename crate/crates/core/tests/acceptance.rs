//! Runs the nine acceptance criteria and prints one line per criterion.
//! Set `UNIPART_SEED` to change the seed of the randomized criteria.

use std::process::ExitCode;

use unipart::acceptance::{run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = match std::env::var("UNIPART_SEED") {
        Ok(s) => match s.parse() {
            Ok(v) => v,
            Err(_) => {
                eprintln!("UNIPART_SEED must be an unsigned integer, got {s:?}");
                return ExitCode::from(2);
            }
        },
        Err(_) => DEFAULT_SEED,
    };
    println!("acceptance suite, seed {seed}");
    let reports = run_all(seed);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed", reports.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
