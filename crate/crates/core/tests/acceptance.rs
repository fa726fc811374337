//! Runs every acceptance criterion and prints one line per criterion.
//!
//! `VG_SEED` overrides the seed of the random samples.

use std::process::ExitCode;

use vgalg::verify::{VerifyConfig, CHECKS, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("VG_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let cfg = VerifyConfig { seed, ..VerifyConfig::default() };
    println!("acceptance suite (seed {seed})");
    let mut failed = Vec::new();
    for check in CHECKS {
        let r = check.run(&cfg);
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>7}: {verdict}  {}: {} ({} ms)", r.key, r.title, r.detail, r.millis);
        if !r.pass {
            failed.push(r.key);
        }
    }
    if failed.is_empty() {
        println!("all {} criteria pass", CHECKS.len());
        ExitCode::SUCCESS
    } else {
        println!("failed: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
