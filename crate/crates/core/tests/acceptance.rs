//! Runs the ten acceptance criteria and prints one line per criterion.
//! Custom harness so the lines are shown without `--nocapture`.

use std::process::ExitCode;

use discrete_l::acceptance::run_all;

fn main() -> ExitCode {
    let outcomes = run_all();
    println!();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("\nacceptance: {} passed, {failed} failed\n", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
