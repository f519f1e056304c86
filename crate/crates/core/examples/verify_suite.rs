//! Runs a few randomized verification suites and prints their tallies.

use tklab::cli::{verify_suite, RunConfig};

fn main() -> tklab::Result<()> {
    let cfg = RunConfig::default();
    for name in [
        "thm-1.3",
        "thm-1.4-1.5",
        "thm-utg2",
        "coburn",
        "final-example",
    ] {
        let s = verify_suite(name, 7, 30, &cfg)?;
        println!(
            "{name:<14} {:>3}/{:<3} branches {:?}",
            s.passed, s.trials, s.branches
        );
    }
    println!("config fingerprint {}", cfg.fingerprint());
    Ok(())
}
