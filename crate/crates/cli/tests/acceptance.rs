//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured values. Run with `cargo test -p ordseq-cli --test
//! acceptance -- --nocapture` to see every line.
//!
//! Criteria and budgets:
//! 1. worked-example weight vectors reproduced with exact rational equality (< 1 s)
//! 2. unique response argmax, exhaustive over all N! inputs for N ≤ 7 (< 60 s)
//! 3. Dyck words over all insertion orders count the Catalan numbers for
//!    N = 1..8; stack-sortability matches brute-force 231 search (< 120 s)
//! 4. ordinal-STDP: exact full recall for all permutations N ≤ 7 under both
//!    kernels; exact relative order under every nonempty deletion subset;
//!    noise-margin assertion for 1000 random patterns N ≤ 32 (< 5 min)
//! 5. sequence memory at K = 256, N = 6, fixed seed: 100 distinct-rank
//!    sequences recruit 100 entries, decode reproduces each exactly,
//!    rank-preserving variants score 1.0, all 719 other codes score < 1.0 (< 60 s)
//! 6. Huffman codec: 10^4 roundtrips, exact Kraft equality, H <= L < H+1 on
//!    10^3 random tables (< 60 s)
//! 7. structure tasks: AAB/ABA corpus, occlusion template endings, task-set
//!    agent >= 5/6 rewards in both environments (< 1 s)
//! 8. `verify` reports are byte-identical across runs with the same seed

use std::process::Command;
use std::time::{Duration, Instant};

use ordseq_core::verify::{run_suite, SuiteReport};

const SEED: u64 = 42;

fn run_within(suite: &str, budget: Duration) -> SuiteReport {
    let start = Instant::now();
    let report = run_suite(suite, SEED).expect("known suite");
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "suite {suite} took {elapsed:?}, budget {budget:?}"
    );
    report
}

fn assert_and_print(criterion: &str, report: &SuiteReport, checks: &[&str]) {
    for name in checks {
        let check = report
            .checks
            .iter()
            .find(|c| c.name == *name)
            .unwrap_or_else(|| panic!("suite {} has no check {name}", report.suite));
        println!(
            "[{}] {criterion}: {}: {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
        assert!(check.passed, "{criterion}/{name}: {}", check.detail);
    }
}

#[test]
fn criterion_1_worked_weight_vectors() {
    let report = run_within("fig3f", Duration::from_secs(1));
    assert_and_print(
        "criterion-1",
        &report,
        &["rank-code", "stdp-weights", "rank-order-weights", "tree-order-weights"],
    );

    // Independent spot check of the exact expected strings.
    use ordseq_core::rational::format_ratio;
    let seq = ordseq_core::verify::worked_sequence();
    let stdp = ordseq_core::stdp_weights(6).unwrap();
    let shown: Vec<String> = stdp.weights().iter().map(format_ratio).collect();
    assert_eq!(shown, ["1/6", "1/5", "1/4", "1/3", "1/2", "1"]);
    let code = ordseq_core::rank_code(&seq).unwrap();
    let rank_w = ordseq_core::rank_order_weights(&code).unwrap();
    let shown: Vec<String> = rank_w.weights().iter().map(format_ratio).collect();
    assert_eq!(shown, ["1/2", "1/4", "1/5", "1/3", "1/6", "1"]);
    let tree_w = ordseq_core::tree::tree_order_weights(&seq).unwrap();
    let shown: Vec<String> = tree_w.weights().iter().map(format_ratio).collect();
    assert_eq!(shown, ["1/2", "1/4", "1/8", "3/8", "1/16", "3/4"]);
}

#[test]
fn criterion_2_unique_argmax() {
    let report = run_within("argmax", Duration::from_secs(60));
    let names: Vec<String> = (1..=7).map(|n| format!("unique-argmax-n{n}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    assert_and_print("criterion-2", &report, &names);
}

#[test]
fn criterion_3_catalan_dyck() {
    let report = run_within("catalan", Duration::from_secs(120));
    let mut names: Vec<String> = (1..=8).map(|n| format!("dyck-words-n{n}")).collect();
    names.push("stack-sortable-vs-231".to_string());
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    assert_and_print("criterion-3", &report, &names);
}

#[test]
fn criterion_4_stdp_recall() {
    let report = run_within("stdp-recall", Duration::from_secs(300));
    assert_and_print(
        "criterion-4",
        &report,
        &[
            "full-recall-constant",
            "full-recall-inverse-distance",
            "deletion-subsets-constant",
            "noise-margin",
        ],
    );
}

#[test]
fn criterion_5_memory_roundtrip() {
    let report = run_within("roundtrip", Duration::from_secs(60));
    assert_and_print(
        "criterion-5",
        &report,
        &[
            "distinct-z-recruitment",
            "decode-roundtrip",
            "rank-preserving-invariance",
            "structural-sensitivity",
        ],
    );
}

#[test]
fn criterion_6_huffman_codec() {
    let report = run_within("roundtrip", Duration::from_secs(60));
    assert_and_print(
        "criterion-6",
        &report,
        &["codec-roundtrip", "kraft-equality", "entropy-bound"],
    );
}

#[test]
fn criterion_7_structure_tasks() {
    let report = run_within("tasks", Duration::from_secs(1));
    assert_and_print(
        "criterion-7",
        &report,
        &["proto-word-signatures", "occlusion-template", "harlow-task-set"],
    );
}

#[test]
fn criterion_8_deterministic_reports() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_ordseq"))
            .args(["verify", "all", "--seed", "42"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "verify all failed: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run();
    let second = run();
    let identical = first == second;
    println!(
        "[{}] criterion-8: verify-determinism: {} bytes, reruns identical: {identical}",
        if identical { "PASS" } else { "FAIL" },
        first.len()
    );
    assert!(identical, "verify reports differ between runs");
    // Sanity: the report carries per-check lines and the summary.
    let text = String::from_utf8(first).unwrap();
    assert!(text.contains("summary: 34/34 checks passed"), "unexpected report: {text}");
}
