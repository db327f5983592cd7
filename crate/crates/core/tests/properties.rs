//! Property tests for the structural invariants.

use std::collections::BTreeMap;

use proptest::prelude::*;

use ordseq_core::huffman::{build_codec, SymbolTable};
use ordseq_core::rank::{rank_code, RankCode};
use ordseq_core::rational::ratio;
use ordseq_core::sequence::Sequence;
use ordseq_core::stdp::{Kernel, WeightMatrix};
use ordseq_core::tasks::{same_structure, structure_signature};
use ordseq_core::tree::{dyck_validate, stack_order_tree, tree_to_dyck};
use ordseq_core::weights::rank_order_weights;

fn number_seq(max_len: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(-1_000_000i64..1_000_000, 1..=max_len)
        .prop_map(|v| Sequence::from_numbers(v.into_iter().map(|x| x as f64)).unwrap())
}

fn token_seq(max_len: usize) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(0u8..8, 1..=max_len).prop_map(|v| {
        Sequence::from_tokens(v.into_iter().map(|t| format!("t{t}"))).unwrap()
    })
}

proptest! {
    /// rank_code always emits a permutation of 1..=N.
    #[test]
    fn rank_code_is_a_permutation(seq in number_seq(64)) {
        let code = rank_code(&seq).unwrap();
        let mut sorted: Vec<u32> = code.ranks().to_vec();
        sorted.sort_unstable();
        let expected: Vec<u32> = (1..=seq.len() as u32).collect();
        prop_assert_eq!(sorted, expected);
    }

    /// Strictly monotone value transforms leave the rank code unchanged.
    #[test]
    fn rank_code_is_value_invariant(seq in number_seq(48), scale in 1u32..500, shift in -1000i64..1000) {
        let transformed = Sequence::from_numbers(
            seq.items().iter().map(|i| match i {
                ordseq_core::sequence::Item::Number(x) => x * f64::from(scale) + shift as f64,
                _ => unreachable!(),
            }),
        ).unwrap();
        prop_assert_eq!(rank_code(&seq).unwrap(), rank_code(&transformed).unwrap());
    }

    /// Tokens rank identically under any order-preserving renaming.
    #[test]
    fn rank_order_weights_bijective_on_permutations(perm in prop::sample::subsequence((1u32..=9).collect::<Vec<_>>(), 1..=9).prop_shuffle()) {
        // A shuffled subsequence of distinct values relabels to a permutation.
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        let relabeled: Vec<u32> = perm.iter()
            .map(|v| (sorted.iter().position(|s| s == v).unwrap() + 1) as u32)
            .collect();
        let a = RankCode::new(relabeled.clone()).unwrap();
        let w = rank_order_weights(&a).unwrap();
        // Weights determine the code: invert by sorting positions by weight.
        let mut positions: Vec<usize> = (0..relabeled.len()).collect();
        positions.sort_by_key(|&i| w.weights()[i]);
        let mut recovered = vec![0u32; relabeled.len()];
        for (rank0, &pos) in positions.iter().enumerate() {
            recovered[pos] = rank0 as u32 + 1;
        }
        prop_assert_eq!(recovered, relabeled);
    }

    /// In-order traversal of the stack-order tree sorts the items; the Dyck
    /// serialization always validates at length 2N.
    #[test]
    fn tree_sorts_and_dyck_validates(perm in Just((1u32..=10).collect::<Vec<_>>()).prop_shuffle()) {
        let seq = Sequence::from_numbers(perm.iter().map(|&v| f64::from(v))).unwrap();
        let tree = stack_order_tree(&seq).unwrap();
        let inorder: Vec<f64> = tree.in_order().iter().map(|i| match i {
            ordseq_core::sequence::Item::Number(x) => *x,
            _ => unreachable!(),
        }).collect();
        let mut sorted = inorder.clone();
        sorted.sort_by(f64::total_cmp);
        prop_assert_eq!(&inorder, &sorted);
        let word = tree_to_dyck(&tree);
        prop_assert_eq!(word.len(), 2 * seq.len());
        prop_assert_eq!(dyck_validate(word.as_str()), Ok(true));
    }

    /// Huffman roundtrip over random tables and streams.
    #[test]
    fn huffman_roundtrip(freqs in prop::collection::btree_map("[a-z]", 1i128..200, 1..20), stream_picks in prop::collection::vec(any::<prop::sample::Index>(), 0..50)) {
        let table = SymbolTable::new(
            freqs.iter().map(|(s, &f)| (s.clone(), ratio(f, 1))).collect(),
        ).unwrap();
        let codec = build_codec(&table, 2).unwrap();
        let symbols: Vec<&String> = freqs.keys().collect();
        let stream: Vec<String> = stream_picks.iter().map(|ix| symbols[ix.index(symbols.len())].clone()).collect();
        let labels = codec.encode(&stream).unwrap();
        prop_assert_eq!(codec.decode(&labels).unwrap(), stream);
    }

    /// Codewords are prefix-free.
    #[test]
    fn huffman_prefix_free(freqs in prop::collection::btree_map("[a-z]", 0i128..50, 2..20)) {
        prop_assume!(freqs.values().any(|&f| f > 0));
        let table = SymbolTable::new(
            freqs.iter().map(|(s, &f)| (s.clone(), ratio(f, 1))).collect(),
        ).unwrap();
        let codec = build_codec(&table, 2).unwrap();
        let words: BTreeMap<&String, &Vec<u8>> = codec.codewords().iter().collect();
        for (s1, w1) in &words {
            for (s2, w2) in &words {
                if s1 != s2 {
                    prop_assert!(!w2.starts_with(w1));
                }
            }
        }
    }

    /// Antisymmetry and zero diagonal after store and perturb.
    #[test]
    fn stdp_antisymmetry(perm in Just((1u32..=12).collect::<Vec<_>>()).prop_shuffle(), eps in 0.0f64..0.5, seed in any::<u64>()) {
        let code = RankCode::new(perm).unwrap();
        for kernel in [Kernel::Constant, Kernel::InverseDistance] {
            let w = WeightMatrix::store(&code, kernel);
            prop_assert!(w.is_antisymmetric());
            let noisy = w.perturb(eps, seed);
            prop_assert!(noisy.is_antisymmetric());
            for i in 0..w.len() {
                prop_assert_eq!(noisy.weight(i, i), 0.0);
            }
        }
    }

    /// Structure signatures are invariant under injective token renaming, and
    /// same_structure is an equivalence relation.
    #[test]
    fn signature_relabeling_invariance(seq in token_seq(12), offset in 0u8..20) {
        let renamed = Sequence::from_tokens(seq.items().iter().map(|i| match i {
            ordseq_core::sequence::Item::Token(t) => format!("{t}_{offset}"),
            _ => unreachable!(),
        })).unwrap();
        prop_assert_eq!(
            structure_signature(&seq).unwrap(),
            structure_signature(&renamed).unwrap()
        );
        prop_assert!(same_structure(&seq, &renamed));
    }

    #[test]
    fn same_structure_is_an_equivalence(a in token_seq(6), b in token_seq(6), c in token_seq(6)) {
        prop_assert!(same_structure(&a, &a));
        prop_assert_eq!(same_structure(&a, &b), same_structure(&b, &a));
        if same_structure(&a, &b) && same_structure(&b, &c) {
            prop_assert!(same_structure(&a, &c));
        }
    }
}
