use ordseq_core::verify::{run_suite, SUITES};

#[test]
fn all_suites_pass() {
    for suite in SUITES {
        let start = std::time::Instant::now();
        let report = run_suite(suite, 42).unwrap();
        let elapsed = start.elapsed();
        for check in &report.checks {
            println!(
                "[{}] {}/{}: {}",
                if check.passed { "PASS" } else { "FAIL" },
                report.suite,
                check.name,
                check.detail
            );
        }
        println!("suite {suite} took {elapsed:?}");
        assert!(report.passed(), "suite {suite} failed");
    }
}
