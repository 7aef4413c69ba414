//! Runs every check suite and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use coxlift::checks::{run_suite, SUITES};

fn main() -> ExitCode {
    // `cargo test -- --list` and friends pass flags; there is nothing to list
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut failed = 0;
    for info in SUITES {
        let start = Instant::now();
        let report = run_suite(info.name).expect("registered suite");
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {:<12} {} ({:.1}s)",
            info.criterion,
            info.name,
            info.title,
            start.elapsed().as_secs_f64()
        );
        for a in report.failures() {
            println!("    {}: expected {}, actual {}", a.name, a.expected, a.actual);
        }
        if !report.passed() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", SUITES.len() - failed, SUITES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
