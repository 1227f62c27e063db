//! The ten acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the lines always show up in `cargo test` output.

use fdc_cli::selftest::{seed_from_env, SuiteConfig, SuiteRegistry};

fn main() {
    let cfg = SuiteConfig::new(seed_from_env());
    let reg = SuiteRegistry::builtin();
    println!("acceptance (seed {})", cfg.seed);
    let mut failed = Vec::new();
    for c in 1..=10u8 {
        let suite = reg.by_criterion(c).expect("suite for every criterion");
        let o = suite.run(&cfg);
        println!("{}", o.line());
        for f in o.failures.iter().take(3) {
            println!("    {f}");
        }
        if !o.passed {
            failed.push(c);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria PASS");
    } else {
        println!("acceptance: criteria {failed:?} FAIL");
        std::process::exit(1);
    }
}
