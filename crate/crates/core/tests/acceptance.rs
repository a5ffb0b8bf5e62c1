//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use affine_avoid_core::acceptance;

const SUITE_LIMIT: Duration = Duration::from_secs(300);

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes = acceptance::run(&[], &acceptance::Config::default());
    let total = start.elapsed();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!(
        "{} of {} criteria passed in {total:.2?}",
        outcomes.len() - failed,
        outcomes.len()
    );
    let in_time = total <= SUITE_LIMIT;
    if !in_time {
        println!("FAIL suite exceeded {SUITE_LIMIT:?}");
    }
    if failed == 0 && outcomes.len() == 12 && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
