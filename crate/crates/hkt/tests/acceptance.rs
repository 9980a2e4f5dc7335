//! The acceptance table, one line per criterion. Runs without the libtest
//! harness so the output is exactly the table.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hkt::verify::{self, Status};

/// Whole-suite budget; each criterion is further held to one second in
/// optimized builds.
const SUITE_BUDGET: Duration = Duration::from_secs(30);
const CASE_BUDGET: Duration = Duration::from_secs(1);

fn main() -> ExitCode {
    let ids = ["AC1", "AC2", "AC3", "AC4", "AC5", "AC6", "AC7", "AC8"];
    let start = Instant::now();
    let mut failed = Vec::new();
    for id in ids {
        let t = Instant::now();
        let results = verify::run(Some(id)).expect("criterion id");
        let took = t.elapsed();
        assert_eq!(results.len(), 1);
        let c = &results[0];
        let slow = !cfg!(debug_assertions) && took > CASE_BUDGET;
        let ok = c.status != Status::Fail && !slow;
        println!("{} [{:.2}s]", c.summary(), took.as_secs_f64());
        for f in c.failures() {
            println!("{f}");
        }
        if slow {
            println!("  over the {CASE_BUDGET:?} budget");
        }
        if !ok {
            failed.push(id);
        }
    }
    let total = start.elapsed();
    let over = total > SUITE_BUDGET;
    println!(
        "acceptance: {} criteria, {} failed{}, {:.2}s",
        ids.len(),
        failed.len(),
        if failed.is_empty() {
            String::new()
        } else {
            format!(" ({})", failed.join(", "))
        },
        total.as_secs_f64()
    );
    if over {
        println!("acceptance: over the {SUITE_BUDGET:?} suite budget");
    }
    if failed.is_empty() && !over {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
