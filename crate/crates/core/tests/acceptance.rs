//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use boxlab_core::verify::{run_one, DEFAULT_SEED};

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=16 {
        let t0 = Instant::now();
        let r = run_one(id, DEFAULT_SEED).expect("criterion id in range");
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("{verdict} [{:>2}] {} ({:.2}s): {}", r.id, r.name, t0.elapsed().as_secs_f64(), r.detail);
        failed += (!r.pass) as usize;
    }
    println!("{} of 16 criteria passed", 16 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
