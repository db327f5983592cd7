//! `verify`: run the self-check suites and print one line per check.
//!
//! The report contains only measured values and the config hash, never
//! wall-clock times, so identical seeds produce byte-identical reports;
//! timings go to stderr.

use std::process::ExitCode;

use ordseq_core::verify::{run_suite, SuiteReport, SUITES};

use crate::config::Config;
use crate::errors::CliError;
use crate::io::write_output;
use crate::VerifyArgs;

pub fn run(config: &Config, args: VerifyArgs) -> Result<ExitCode, CliError> {
    let suites: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };

    let mut reports: Vec<SuiteReport> = Vec::with_capacity(suites.len());
    for name in suites {
        let start = std::time::Instant::now();
        let report = run_suite(name, config.seed)?;
        eprintln!("suite {name} completed in {:?}", start.elapsed());
        reports.push(report);
    }

    let mut out = String::new();
    let mut passed = 0usize;
    let mut total = 0usize;
    for report in &reports {
        for check in &report.checks {
            total += 1;
            passed += usize::from(check.passed);
            out.push_str(&format!(
                "{} {}/{}: {}\n",
                if check.passed { "PASS" } else { "FAIL" },
                report.suite,
                check.name,
                check.detail
            ));
        }
    }
    out.push_str(&format!("summary: {passed}/{total} checks passed\n"));
    out.push_str(&format!("seed: {}\n", config.seed));
    out.push_str(&format!("config-hash: {}\n", config.hash()));

    print!("{out}");
    if args.out.is_some() {
        write_output(args.out.as_deref(), &out)?;
    }
    Ok(if passed == total { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
