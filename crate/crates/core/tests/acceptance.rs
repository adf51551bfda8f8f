//! Runs the acceptance suite and prints one line per criterion.

use std::process::ExitCode;

fn main() -> ExitCode {
    let reports = unifac::acceptance::run_all();
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        reports.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
