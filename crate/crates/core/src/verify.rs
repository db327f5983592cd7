//! Self-verification suites.
//!
//! Six named suites re-derive the library's structural claims at desk scale:
//! exact reproduction of the worked weight vectors, exhaustive unique-argmax
//! and Catalan counts, exhaustive STDP recall with deletion and noise
//! margins, seeded memory and codec roundtrips, and the task battery. Each
//! check reports a deterministic measured-value string, so a report is
//! byte-identical across runs with the same seed.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autoencoder::{Codebook, YPopulation, DEFAULT_THETA};
use crate::error::Error;
use crate::huffman::{build_codec, entropy, kraft_sum_is_one, SymbolTable};
use crate::rank::{rank_code, RankCode};
use crate::rational::{format_ratio, ratio, Rational};
use crate::sequence::{Item, Sequence};
use crate::stdp::{Kernel, WeightMatrix};
use crate::tasks::{
    constant_env, harlow_episode, structure_signature, template_match, Door, MatchResult,
    TaskSetAgent, Template,
};
use crate::tree::{dyck_validate, is_stack_sortable, stack_order_tree, tree_to_dyck};
use crate::util::permutations;
use crate::weights::{rank_order_weights, response, stdp_weights};

/// One verified claim.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Measured values; deterministic for a given seed.
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// All checks of one named suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const SUITES: [&str; 6] = ["fig3f", "argmax", "catalan", "stdp-recall", "roundtrip", "tasks"];

/// Run one suite by name. `seed` feeds every randomized check.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport, Error> {
    let checks = match name {
        "fig3f" => fig3f(),
        "argmax" => argmax(),
        "catalan" => catalan(),
        "stdp-recall" => stdp_recall(seed),
        "roundtrip" => roundtrip(seed),
        "tasks" => tasks(),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), checks })
}

/// The worked six-element sequence used across the suites.
pub fn worked_sequence() -> Sequence {
    Sequence::from_numbers([18.0, 13.0, 8.0, 14.0, 5.0, 19.0]).expect("valid")
}

fn format_weights(weights: &[Rational]) -> String {
    let parts: Vec<String> = weights.iter().map(format_ratio).collect();
    format!("[{}]", parts.join(", "))
}

// ---------------------------------------------------------------------------
// Suite: fig3f, exact reproduction of the three weight vectors
// ---------------------------------------------------------------------------

fn fig3f() -> Vec<Check> {
    let seq = worked_sequence();
    let mut checks = Vec::new();

    let code = rank_code(&seq).expect("worked sequence is valid");
    let expected_code: Vec<u32> = vec![5, 3, 2, 4, 1, 6];
    checks.push(Check::new(
        "rank-code",
        code.ranks() == expected_code.as_slice(),
        format!("{:?}", code.ranks()),
    ));

    let stdp = stdp_weights(seq.len()).expect("length in range");
    let expected: Vec<Rational> =
        [(1, 6), (1, 5), (1, 4), (1, 3), (1, 2), (1, 1)].iter().map(|&(n, d)| ratio(n, d)).collect();
    checks.push(Check::new(
        "stdp-weights",
        stdp.weights() == expected.as_slice(),
        format_weights(stdp.weights()),
    ));

    let rank_w = rank_order_weights(&code).expect("length in range");
    let expected: Vec<Rational> =
        [(1, 2), (1, 4), (1, 5), (1, 3), (1, 6), (1, 1)].iter().map(|&(n, d)| ratio(n, d)).collect();
    checks.push(Check::new(
        "rank-order-weights",
        rank_w.weights() == expected.as_slice(),
        format_weights(rank_w.weights()),
    ));

    let tree_w = crate::tree::tree_order_weights(&seq).expect("distinct items");
    let expected_elementwise: Vec<Rational> =
        [(1, 2), (1, 4), (1, 8), (3, 8), (1, 16), (3, 4)].iter().map(|&(n, d)| ratio(n, d)).collect();
    let expected_set: HashSet<Rational> = expected_elementwise.iter().copied().collect();
    let actual_set: HashSet<Rational> = tree_w.weights().iter().copied().collect();
    checks.push(Check::new(
        "tree-order-weights",
        tree_w.weights() == expected_elementwise.as_slice() && actual_set == expected_set,
        format_weights(tree_w.weights()),
    ));

    checks
}

// ---------------------------------------------------------------------------
// Suite: argmax, unique response maximum, exhaustive for N <= 7
// ---------------------------------------------------------------------------

fn argmax() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=7u32 {
        let perms = permutations(n);
        let codes: Vec<RankCode> =
            perms.into_iter().map(|p| RankCode::new(p).expect("permutation")).collect();
        let mut unique = 0usize;
        for stored in &codes {
            let mut max_other = f64::NEG_INFINITY;
            let mut matched = 0.0;
            for input in &codes {
                let s = response(input, stored).expect("same length");
                if input == stored {
                    matched = s;
                } else if s > max_other {
                    max_other = s;
                }
            }
            if matched == 1.0 && (codes.len() == 1 || max_other < matched) {
                unique += 1;
            }
        }
        checks.push(Check::new(
            &format!("unique-argmax-n{n}"),
            unique == codes.len(),
            format!("{unique}/{} unique maxima", codes.len()),
        ));
    }
    checks
}

// ---------------------------------------------------------------------------
// Suite: catalan, Dyck bijection counts and stack-sortability
// ---------------------------------------------------------------------------

fn catalan() -> Vec<Check> {
    const CATALAN: [usize; 8] = [1, 2, 5, 14, 42, 132, 429, 1430];
    let mut checks = Vec::new();

    for n in 1..=8u32 {
        let mut words = HashSet::new();
        let mut all_valid = true;
        for perm in permutations(n) {
            let values: Vec<f64> = perm.iter().map(|&v| f64::from(v)).collect();
            let seq = Sequence::from_numbers(values).expect("valid");
            let tree = stack_order_tree(&seq).expect("distinct items");
            let word = tree_to_dyck(&tree);
            all_valid &= dyck_validate(word.as_str()) == Ok(true) && word.len() == 2 * n as usize;
            words.insert(word);
        }
        let expected = CATALAN[(n - 1) as usize];
        checks.push(Check::new(
            &format!("dyck-words-n{n}"),
            words.len() == expected && all_valid,
            format!("{} distinct valid words (expect {expected})", words.len()),
        ));
    }

    let mut agree = true;
    let mut sortable_counts = Vec::new();
    for n in 1..=8u32 {
        let mut count = 0usize;
        for perm in permutations(n) {
            let fast = is_stack_sortable(&RankCode::new(perm.clone()).expect("permutation"));
            let brute = !contains_231(&perm);
            agree &= fast == brute;
            count += usize::from(fast);
        }
        sortable_counts.push(count);
    }
    let counts_match = sortable_counts == CATALAN.to_vec();
    checks.push(Check::new(
        "stack-sortable-vs-231",
        agree && counts_match,
        format!("sortable counts {sortable_counts:?}"),
    ));

    checks
}

fn contains_231(v: &[u32]) -> bool {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if v[k] < v[i] && v[i] < v[j] {
                    return true;
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Suite: stdp-recall, exhaustive recall, deletion subsets, noise margins
// ---------------------------------------------------------------------------

fn stdp_recall(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();

    // Full recall under both kernels, all permutations N ≤ 7.
    for kernel in [Kernel::Constant, Kernel::InverseDistance] {
        let mut ok = 0usize;
        let mut total = 0usize;
        for n in 1..=7u32 {
            for perm in permutations(n) {
                total += 1;
                let code = RankCode::new(perm.clone()).expect("permutation");
                let w = WeightMatrix::store(&code, kernel);
                let recalled = w.recall_all().order;
                let mut expected: Vec<usize> = (0..perm.len()).collect();
                expected.sort_by_key(|&i| perm[i]);
                let expected: Vec<String> =
                    expected.iter().map(|&i| format!("u{}", i + 1)).collect();
                ok += usize::from(recalled == expected);
            }
        }
        checks.push(Check::new(
            &format!("full-recall-{kernel}"),
            ok == total,
            format!("{ok}/{total} exact recoveries"),
        ));
    }

    // Deletion: every nonempty subset, constant kernel, all permutations N ≤ 7.
    // (The inverse-distance kernel has no subset guarantee; see module docs.)
    let mut ok = 0usize;
    let mut total = 0usize;
    for n in 1..=7u32 {
        for perm in permutations(n) {
            let code = RankCode::new(perm.clone()).expect("permutation");
            let w = WeightMatrix::store(&code, Kernel::Constant);
            for mask in 1u32..(1 << n) {
                total += 1;
                let active: Vec<String> = (0..n as usize)
                    .filter(|&i| mask & (1 << i) != 0)
                    .map(|i| format!("u{}", i + 1))
                    .collect();
                let recalled = w.recall(&active).expect("valid cue").order;
                let mut expected: Vec<usize> = (0..n as usize)
                    .filter(|&i| mask & (1 << i) != 0)
                    .collect();
                expected.sort_by_key(|&i| perm[i]);
                let expected: Vec<String> =
                    expected.iter().map(|&i| format!("u{}", i + 1)).collect();
                ok += usize::from(recalled == expected);
            }
        }
    }
    checks.push(Check::new(
        "deletion-subsets-constant",
        ok == total,
        format!("{ok}/{total} subset recoveries"),
    ));

    // Noise margin: 1000 random patterns, N ≤ 32, both kernels alternating.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0usize;
    let trials = 1000usize;
    for t in 0..trials {
        let n = rng.random_range(2..=32usize);
        let mut ranks: Vec<u32> = (1..=n as u32).collect();
        use rand::seq::SliceRandom;
        ranks.shuffle(&mut rng);
        let code = RankCode::new(ranks).expect("permutation");
        let kernel = if t % 2 == 0 { Kernel::Constant } else { Kernel::InverseDistance };
        let w = WeightMatrix::store(&code, kernel);
        let eps = 0.5 * w.noise_tolerance();
        let noisy = w.perturb(eps, rng.random());
        ok += usize::from(
            eps > 0.0 && noisy.is_antisymmetric() && noisy.recall_all().order == w.recall_all().order,
        );
    }
    checks.push(Check::new(
        "noise-margin",
        ok == trials,
        format!("{ok}/{trials} recalls unchanged below tolerance"),
    ));

    checks
}

// ---------------------------------------------------------------------------
// Suite: roundtrip, sequence memory and ordinal Huffman codec
// ---------------------------------------------------------------------------

fn roundtrip(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.extend(memory_roundtrip(seed));
    checks.extend(huffman_roundtrip(seed));
    checks
}

fn memory_roundtrip(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let k = 256;
    let n = 6;
    let population = YPopulation::generate(seed, k, n).expect("valid parameters");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);

    // 100 random sequences with distinct rank codes.
    let mut sequences: Vec<Sequence> = Vec::new();
    let mut codes_seen = HashSet::new();
    while sequences.len() < 100 {
        let mut values = Vec::with_capacity(n);
        while values.len() < n {
            let v = rng.random_range(-10_000..=10_000) as f64 / 8.0;
            if !values.contains(&v) {
                values.push(v);
            }
        }
        let seq = Sequence::from_numbers(values.iter().copied()).expect("valid");
        let code = rank_code(&seq).expect("in range");
        if codes_seen.insert(code) {
            sequences.push(seq);
        }
    }

    let mut book = Codebook::new(&population, DEFAULT_THETA);
    let mut z_ids = Vec::with_capacity(sequences.len());
    let mut all_novel = true;
    for seq in &sequences {
        let (next, z, novel) = book.learn(seq, &population).expect("learnable");
        all_novel &= novel;
        z_ids.push(z);
        book = next;
    }
    let distinct: HashSet<u32> = z_ids.iter().copied().collect();
    checks.push(Check::new(
        "distinct-z-recruitment",
        all_novel && distinct.len() == sequences.len() && book.len() == sequences.len(),
        format!("{} sequences -> {} entries", sequences.len(), book.len()),
    ));

    let mut decoded_ok = 0usize;
    for (seq, &z) in sequences.iter().zip(&z_ids) {
        let bag: Vec<Item> = seq.items().to_vec();
        if book.decode(z, &bag).as_ref() == Ok(seq) {
            decoded_ok += 1;
        }
    }
    checks.push(Check::new(
        "decode-roundtrip",
        decoded_ok == sequences.len(),
        format!("{decoded_ok}/{} exact reconstructions", sequences.len()),
    ));

    // Rank-preserving perturbations recognize identically with similarity 1.
    let mut invariant_ok = 0usize;
    let mut tested = 0usize;
    for (seq, &z) in sequences.iter().zip(&z_ids) {
        for (scale, shift) in [(10.0, 0.0), (1.0, 500.0), (0.25, -3.0)] {
            tested += 1;
            let values: Vec<f64> = seq
                .items()
                .iter()
                .map(|i| match i {
                    Item::Number(x) => x * scale + shift,
                    Item::Token(_) => unreachable!(),
                })
                .collect();
            let variant = Sequence::from_numbers(values).expect("valid");
            let (got, sim) = book.recognize(&variant, &population).expect("nonempty");
            invariant_ok += usize::from(got == z && (sim - 1.0).abs() < 1e-12);
        }
    }
    checks.push(Check::new(
        "rank-preserving-invariance",
        invariant_ok == tested,
        format!("{invariant_ok}/{tested} variants at similarity 1"),
    ));

    // Structural sensitivity: one stored code against all 720 inputs.
    let stored_seq = worked_sequence();
    let single = Codebook::new(&population, DEFAULT_THETA);
    let (single, _, _) = single.learn(&stored_seq, &population).expect("learnable");
    let stored_code = rank_code(&stored_seq).expect("in range");
    let mut below = 0usize;
    let mut matched = 0usize;
    let mut worst: f64 = 0.0;
    for perm in permutations(n as u32) {
        let code = RankCode::new(perm).expect("permutation");
        let activity = crate::autoencoder::encode_code(&code, &population).expect("same length");
        let sim: f64 = activity
            .iter()
            .zip(&single.entries()[0].activity)
            .map(|(a, b)| a * b)
            .sum();
        if code == stored_code {
            matched += usize::from((sim - 1.0).abs() < 1e-12);
        } else {
            below += usize::from(sim < 1.0 - 1e-9);
            worst = worst.max(sim);
        }
    }
    checks.push(Check::new(
        "structural-sensitivity",
        matched == 1 && below == 719,
        format!("719 expected below 1: {below}, worst non-match {worst:.6}"),
    ));

    checks
}

fn huffman_roundtrip(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0dec);
    let alphabet: Vec<String> = (b'a'..=b'z').map(|c| (c as char).to_string()).collect();

    let mut roundtrips = 0usize;
    let total = 10_000usize;
    for _ in 0..total {
        let n_sym = rng.random_range(1..=26usize);
        let symbols = &alphabet[..n_sym];
        let table = SymbolTable::new(
            symbols
                .iter()
                .map(|s| (s.clone(), ratio(rng.random_range(1..=100), 1)))
                .collect(),
        )
        .expect("valid table");
        let arity = if rng.random_range(0..4u8) == 0 { 3 } else { 2 };
        let codec = build_codec(&table, arity).expect("buildable");
        let len = rng.random_range(0..=64usize);
        let stream: Vec<String> =
            (0..len).map(|_| symbols[rng.random_range(0..n_sym)].clone()).collect();
        let labels = codec.encode(&stream).expect("known symbols");
        roundtrips += usize::from(codec.decode(&labels).as_deref() == Ok(stream.as_slice()));
    }
    checks.push(Check::new(
        "codec-roundtrip",
        roundtrips == total,
        format!("{roundtrips}/{total} streams identical"),
    ));

    let mut kraft_ok = 0usize;
    let mut bound_ok = 0usize;
    let tables = 1000usize;
    for _ in 0..tables {
        let n_sym = rng.random_range(2..=26usize);
        let table = SymbolTable::new(
            alphabet[..n_sym]
                .iter()
                .map(|s| (s.clone(), ratio(rng.random_range(1..=1000), 1)))
                .collect(),
        )
        .expect("valid table");
        let codec = build_codec(&table, 2).expect("buildable");
        kraft_ok += usize::from(kraft_sum_is_one(&codec));
        let h = entropy(&table);
        let l = codec.expected_length(&table).expect("symbols covered");
        bound_ok += usize::from(h <= l + 1e-12 && l < h + 1.0);
    }
    checks.push(Check::new(
        "kraft-equality",
        kraft_ok == tables,
        format!("{kraft_ok}/{tables} exact Kraft sums"),
    ));
    checks.push(Check::new(
        "entropy-bound",
        bound_ok == tables,
        format!("{bound_ok}/{tables} tables with H <= L < H+1"),
    ));

    checks
}

// ---------------------------------------------------------------------------
// Suite: tasks, proto-words, occlusion template, task-set agent
// ---------------------------------------------------------------------------

fn tasks() -> Vec<Check> {
    let mut checks = Vec::new();

    let aab_corpus = [
        ("totobu", vec!["to", "to", "bu"]),
        ("gagari", vec!["ga", "ga", "ri"]),
        ("mimitu", vec!["mi", "mi", "tu"]),
    ];
    let aba_corpus = [("pesipe", vec!["pe", "si", "pe"])];
    let mut classified = 0usize;
    let mut total = 0usize;
    for (_, tokens) in &aab_corpus {
        total += 1;
        let seq = Sequence::from_tokens(tokens.clone()).expect("valid");
        classified +=
            usize::from(structure_signature(&seq).expect("small alphabet").as_str() == "AAB");
    }
    for (_, tokens) in &aba_corpus {
        total += 1;
        let seq = Sequence::from_tokens(tokens.clone()).expect("valid");
        classified +=
            usize::from(structure_signature(&seq).expect("small alphabet").as_str() == "ABA");
    }
    checks.push(Check::new(
        "proto-word-signatures",
        classified == total,
        format!("{classified}/{total} words classified"),
    ));

    let tpl = Template::from_pattern("XYX").expect("valid pattern");
    let coherent = [["obj1", "hide", "obj1"], ["obj2", "hide", "obj2"]];
    let impossible = [["obj1", "hide", "obj2"], ["obj2", "hide", "obj1"]];
    let mut accepted = 0usize;
    for ending in &coherent {
        let seq = Sequence::from_tokens(ending.iter().copied()).expect("valid");
        let (result, _) = template_match(&tpl, &seq).expect("same length");
        accepted += usize::from(result.is_match());
    }
    let mut rejected = 0usize;
    for ending in &impossible {
        let seq = Sequence::from_tokens(ending.iter().copied()).expect("valid");
        let (result, _) = template_match(&tpl, &seq).expect("same length");
        rejected += usize::from(result == MatchResult::Violation { position: 3 });
    }
    checks.push(Check::new(
        "occlusion-template",
        accepted == 2 && rejected == 2,
        format!("{accepted}/2 coherent accepted, {rejected}/2 impossible rejected"),
    ));

    let mut rewards = Vec::new();
    let mut ok = true;
    for baited in [Door::A, Door::B] {
        let mut agent = TaskSetAgent::new(Door::A);
        let log = harlow_episode(&mut agent, constant_env(baited), 6).expect("consistent env");
        ok &= log.rewards() >= 5;
        rewards.push(format!("{}:{}/6", log.choices(), log.rewards()));
    }
    checks.push(Check::new(
        "harlow-task-set",
        ok,
        rewards.join(", "),
    ));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(
            run_suite("nope", 0),
            Err(Error::UnknownSuite("nope".to_string()))
        );
    }

    #[test]
    fn fig3f_suite_passes() {
        let report = run_suite("fig3f", 0).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn tasks_suite_passes() {
        let report = run_suite("tasks", 0).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("stdp-recall", 42).unwrap();
        let b = run_suite("stdp-recall", 42).unwrap();
        assert_eq!(a, b);
    }
}
