//! Runs the thirteen acceptance criteria at their fixed tolerances and
//! prints one verdict line per criterion.

use std::process::ExitCode;

use munorm::suite::{run_suite, SuiteConfig};

fn main() -> ExitCode {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let config = SuiteConfig {
        seed: 0,
        tol: None,
        jobs,
    };
    let report = match run_suite(&config) {
        Ok(r) => r,
        Err(e) => {
            println!("acceptance suite could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    for criterion in &report.criteria {
        println!("{}", criterion.summary());
    }
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    let total = report.criteria.len();
    println!("acceptance: {passed} of {total} criteria pass");
    if report.passed && total == 13 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
