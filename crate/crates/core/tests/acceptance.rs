//! Runs every acceptance suite in sequence at its stated tolerances and time
//! limit, printing one line per criterion.

use std::process::ExitCode;

use planar_series::checks::{run_suite, Suite, SuiteOptions};

fn main() -> ExitCode {
    let options = SuiteOptions::default();
    let mut failed = 0;
    println!("\nacceptance criteria");
    for suite in Suite::ALL {
        match run_suite(suite, &options) {
            Ok(report) => {
                if !report.passed() {
                    failed += 1;
                }
                println!("{}", report.summary());
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {} {} (error: {e})", suite.number(), suite);
            }
        }
    }
    println!("{} of {} criteria passed\n", Suite::ALL.len() - failed, Suite::ALL.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
