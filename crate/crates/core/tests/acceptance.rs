//! Acceptance run: one line per criterion, nonzero exit if any fails or
//! exceeds its time budget. Sample counts and tolerances are the library
//! defaults (`Suite::default_samples`, `reduce::RESIDUAL_TOL`, ...).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use jordan3::suites::{Config, Suite};

const BUDGET: Duration = Duration::from_secs(60);

fn main() -> ExitCode {
    let cfg = Config::default();
    let mut all = true;
    for (k, suite) in Suite::ALL.into_iter().enumerate() {
        let start = Instant::now();
        let out = suite.run(&cfg);
        let took = start.elapsed();
        let ok = out.passed() && took < BUDGET;
        all &= ok;
        println!(
            "criterion {}: {} {} ({}): {} checks, {} failed, {:.1} s",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            suite.tag(),
            suite.describe(),
            out.checked,
            out.failed,
            took.as_secs_f64()
        );
        for note in &out.notes {
            println!("    {note}");
        }
        if let Some(f) = &out.first_failure {
            println!("    first failure: {f}");
        }
        if took >= BUDGET {
            println!("    over the {} s budget", BUDGET.as_secs());
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
