//! All ten acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines are always shown.

use std::process::ExitCode;

use lieverma::suite::{run_all, SuiteConfig};

fn main() -> ExitCode {
    let results = run_all(&SuiteConfig::default());
    for r in &results {
        println!("[{}] criterion {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.witness);
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if results.len() == 10 && failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
