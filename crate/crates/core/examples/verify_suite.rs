// Runs every oracle property suite and prints one line per check.
//
// $ cargo run --release --example verify_suite -- 200

use gapcert::verify::{run_all, VerifyOptions};

fn main() -> gapcert::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let results = run_all(VerifyOptions { trials, seed: 0 })?;
    for r in &results {
        println!("{:<4} {:<32} cases={:<7} violations={}", if r.passed() { "ok" } else { "FAIL" }, r.name, r.cases, r.violations);
    }
    if results.iter().any(|r| !r.passed()) {
        std::process::exit(3);
    }
    Ok(())
}
