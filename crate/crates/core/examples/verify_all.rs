//! Runs the built-in verification suite and prints each check.
//!
//! `cargo run --release --example verify_all -- [seed]`

use crlab::orbifold_metric::DEFAULT_TOL;
use crlab::verify::run_suite;

fn main() -> crlab::Result<()> {
    let seed = std::env::args().nth(1).map(|s| s.parse().expect("seed must be an integer")).unwrap_or(0);
    let report = run_suite(seed, DEFAULT_TOL)?;
    for c in &report.checks {
        println!(
            "{} {:<36} {:>12.3e}  (limit {:.0e})",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.value,
            c.threshold
        );
    }
    if !report.all_pass() {
        std::process::exit(2);
    }
    Ok(())
}
