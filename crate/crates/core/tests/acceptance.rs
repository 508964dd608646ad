//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use arcsys::verify::{describe, CheckStatus, Verifier, CHECK_COUNT};
use arcsys::Engine;

fn main() -> ExitCode {
    let verifier = Verifier::new(Engine::EXACT);
    let mut failed = 0;
    for id in 1..=CHECK_COUNT {
        let start = Instant::now();
        let entry = verifier.run_check(id);
        let tag = match entry.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Reconciled => "PASS (reconciled)",
            CheckStatus::Fail => {
                failed += 1;
                "FAIL"
            }
        };
        println!("{tag} [{id:>2}] {}: {} ({:.2}s)", describe(id).0, entry.claim, start.elapsed().as_secs_f64());
        if entry.status != CheckStatus::Pass {
            println!("       {}", entry.details);
        }
    }
    println!("{} of {CHECK_COUNT} criteria passed", CHECK_COUNT - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
