//! Argument parsing and subcommand dispatch for the `fdc` binary.

use crate::chicheck::run_chi_check;
use crate::compare::{run_compare, run_degree, run_gamma, ComparisonReport, EvaluatorRegistry, Verdict};
use crate::error::CliError;
use crate::report::{emit_report, Format};
use crate::scenario::{load_scenario, Scenario};
use crate::selftest::{seed_from_env, SuiteConfig, SuiteRegistry};
use clap::{Parser, Subcommand};
use fdc_core::PrimePower;
use std::io::Write;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEQUAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fdc",
    version,
    about = "Exact formal degree and adjoint gamma-factor comparisons"
)]
pub struct Cli {
    /// Override the residue field size q of every scenario.
    #[arg(long, global = true)]
    pub q: Option<i128>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Treat FLAGGED verdicts as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Include wall-clock timings in reports (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare both sides on each scenario file (or bundled:NAME).
    Verify {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Automorphic side only.
    Degree { file: String },
    /// Galois side only.
    Gamma { file: String },
    /// Base change of r_chi along the scenario's subgroups.
    ChiCheck { file: String },
    /// Run the property suites.
    Selftest {
        /// Instance count for every randomized suite.
        #[arg(long)]
        n: Option<usize>,
        /// Defaults to FDC_SEED, then a fixed seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Run only the named suites.
        #[arg(long)]
        only: Vec<String>,
    },
    /// List bundled scenarios and registered evaluators and suites.
    List,
}

fn load(path: &str, q: Option<PrimePower>, err: &mut dyn Write) -> Option<Scenario> {
    match load_scenario(path, q) {
        Ok(s) => Some(s),
        Err(e) => {
            report_error(&e, path, err);
            None
        }
    }
}

fn report_error(e: &CliError, what: &str, err: &mut dyn Write) {
    let fails = e.failures();
    if fails.is_empty() {
        let _ = writeln!(err, "error: {what}: {e}");
    } else {
        let _ = writeln!(err, "error: {what}: {} validation failure(s)", fails.len());
        for f in fails {
            let _ = writeln!(err, "  {f}");
        }
    }
}

fn timed<T>(timing: bool, f: impl FnOnce() -> T) -> (T, Option<u128>) {
    let start = Instant::now();
    let v = f();
    (v, timing.then(|| start.elapsed().as_micros()))
}

/// Runs one invocation, writing the report to `out` and errors to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let q = match cli.q.map(PrimePower::from_q).transpose() {
        Ok(q) => q,
        Err(e) => {
            let _ = writeln!(err, "error: --q: {e}");
            return EXIT_USAGE;
        }
    };
    let reg = EvaluatorRegistry::builtin();
    match &cli.command {
        Command::Verify { files } => {
            let mut scenarios = Vec::new();
            for f in files {
                match load(f, q, err) {
                    Some(s) => scenarios.push(s),
                    None => return EXIT_USAGE,
                }
            }
            let mut reports = Vec::new();
            for s in &scenarios {
                let (r, t) = timed(cli.timing, || run_compare(s, &reg));
                match r {
                    Ok(mut r) => {
                        r.elapsed_us = t;
                        reports.push(r);
                    }
                    Err(e) => {
                        report_error(&e.into(), &s.file.name, err);
                        return EXIT_USAGE;
                    }
                }
            }
            let _ = out.write_all(emit_report(&reports, cli.format).as_bytes());
            verify_exit(&reports, cli.strict)
        }
        Command::Degree { file } | Command::Gamma { file } => {
            let Some(s) = load(file, q, err) else { return EXIT_USAGE };
            let gamma = matches!(cli.command, Command::Gamma { .. });
            let (r, t) = timed(cli.timing, || {
                if gamma {
                    run_gamma(&s, &reg)
                } else {
                    run_degree(&s, &reg)
                }
            });
            match r {
                Ok(mut r) => {
                    r.elapsed_us = t;
                    let _ = out.write_all(emit_report(&[r], cli.format).as_bytes());
                    EXIT_OK
                }
                Err(e) => {
                    report_error(&e.into(), file, err);
                    EXIT_USAGE
                }
            }
        }
        Command::ChiCheck { file } => {
            let Some(s) = load(file, q, err) else { return EXIT_USAGE };
            match run_chi_check(&s) {
                Ok(r) => {
                    let ok = r.all_hold;
                    let _ = out.write_all(emit_report(&[r], cli.format).as_bytes());
                    if ok {
                        EXIT_OK
                    } else {
                        EXIT_UNEQUAL
                    }
                }
                Err(e) => {
                    report_error(&e.into(), file, err);
                    EXIT_USAGE
                }
            }
        }
        Command::Selftest { n, seed, only } => {
            let cfg = SuiteConfig {
                seed: seed.unwrap_or_else(seed_from_env),
                count: *n,
            };
            let suites = SuiteRegistry::builtin();
            let outcomes = if only.is_empty() {
                suites.run_all(&cfg)
            } else {
                let mut v = Vec::new();
                for name in only {
                    match suites.get(name) {
                        Ok(s) => v.push(s.run(&cfg)),
                        Err(e) => {
                            report_error(&e, name, err);
                            return EXIT_USAGE;
                        }
                    }
                }
                v
            };
            let _ = writeln!(err, "seed {}", cfg.seed);
            let _ = out.write_all(emit_report(&outcomes, cli.format).as_bytes());
            if outcomes.iter().all(|o| o.passed) {
                EXIT_OK
            } else {
                EXIT_UNEQUAL
            }
        }
        Command::List => {
            let _ = writeln!(out, "bundled scenarios:");
            for n in crate::scenario::bundled_names() {
                let _ = writeln!(out, "  bundled:{n}");
            }
            let _ = writeln!(out, "evaluators:");
            for n in reg.names() {
                let _ = writeln!(out, "  {n}");
            }
            let _ = writeln!(out, "suites:");
            for s in SuiteRegistry::builtin().suites() {
                let _ = writeln!(out, "  {:>2} {}", s.criterion(), s.name());
            }
            EXIT_OK
        }
    }
}

/// 0 when every verdict is EQUAL (or FLAGGED without --strict), else 1.
pub fn verify_exit(reports: &[ComparisonReport], strict: bool) -> i32 {
    let bad = reports.iter().any(|r| match r.verdict {
        Some(Verdict::Equal) => false,
        Some(Verdict::Flagged) => strict,
        _ => true,
    });
    if bad {
        EXIT_UNEQUAL
    } else {
        EXIT_OK
    }
}

pub fn parse_and_run(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            }
        }
    }
}
