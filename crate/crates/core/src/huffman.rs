//! Prefix-free coding with ordinal branch labels.
//!
//! A standard Huffman merge builds the code tree, but instead of binary
//! digits each internal node ranks its children `#1..#k` by descending
//! subtree weight, so a codeword is itself an ordinal pattern and `#1`
//! always names the most probable branch.
//!
//! Everything the merge leaves open is pinned for determinism:
//! - queue order: lower total weight first, ties by the smallest symbol id
//!   contained in the subtree (dummy padding sorts last);
//! - child ranks: descending subtree weight, ties by smallest symbol id;
//! - k-ary trees pad with zero-weight dummies so the final merge is full;
//! - a single-symbol alphabet still gets the nonempty codeword `#1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

/// A branch label: rank `#1..=#k` at one internal node.
pub type Label = u8;

/// Alphabet statistics: unique symbol ids with nonnegative frequencies,
/// at least one of them positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolTable {
    entries: Vec<(String, Rational)>,
}

impl SymbolTable {
    pub fn new(entries: Vec<(String, Rational)>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let zero = Rational::new(0, 1);
        let mut seen = std::collections::HashSet::new();
        let mut any_positive = false;
        for (sym, freq) in &entries {
            if !seen.insert(sym.clone()) {
                return Err(Error::DuplicateSymbol(sym.clone()));
            }
            if *freq < zero {
                return Err(Error::DegenerateFrequencies);
            }
            any_positive |= *freq > zero;
        }
        if !any_positive {
            return Err(Error::DegenerateFrequencies);
        }
        Ok(SymbolTable { entries })
    }

    /// Table with all frequencies equal to the symbol's count in `stream`.
    pub fn from_counts<S: AsRef<str>>(stream: &[S]) -> Result<Self, Error> {
        let mut counts: BTreeMap<String, i128> = BTreeMap::new();
        for sym in stream {
            *counts.entry(sym.as_ref().to_string()).or_default() += 1;
        }
        Self::new(
            counts
                .into_iter()
                .map(|(s, c)| (s, Rational::new(c, 1)))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[(String, Rational)] {
        &self.entries
    }

    /// Integer weights on a common denominator, preserving entry order.
    fn integer_weights(&self) -> Result<Vec<u128>, Error> {
        let mut lcm: i128 = 1;
        for (_, freq) in &self.entries {
            let den = *freq.denom();
            let g = gcd(lcm, den);
            lcm = (lcm / g).checked_mul(den).ok_or(Error::FrequencyRange)?;
        }
        self.entries
            .iter()
            .map(|(_, freq)| {
                freq.numer()
                    .checked_mul(lcm / freq.denom())
                    .map(|w| w as u128)
                    .ok_or(Error::FrequencyRange)
            })
            .collect()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Queue identity of a subtree: real subtrees carry their smallest symbol,
/// dummies an index. Ord puts symbols before dummies.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum SubtreeId {
    Symbol(String),
    Dummy(u32),
}

#[derive(Debug)]
enum BuildNode {
    Leaf(Option<String>),
    Internal(Vec<BuildNode>),
}

/// An immutable prefix-free codec over ordinal labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CodecJson", into = "CodecJson")]
pub struct Codec {
    arity: u8,
    codewords: BTreeMap<String, Vec<Label>>,
    trie: Trie,
}

#[derive(Debug, Clone, PartialEq, Default)]
struct Trie {
    symbol: Option<String>,
    children: BTreeMap<Label, Trie>,
}

/// Persisted form: symbol → label list.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct CodecJson {
    version: u32,
    arity: u8,
    codewords: BTreeMap<String, Vec<Label>>,
}

impl From<Codec> for CodecJson {
    fn from(c: Codec) -> CodecJson {
        CodecJson { version: 1, arity: c.arity, codewords: c.codewords }
    }
}

impl TryFrom<CodecJson> for Codec {
    type Error = Error;

    fn try_from(j: CodecJson) -> Result<Codec, Error> {
        Codec::from_codewords(j.arity, j.codewords)
    }
}

impl Codec {
    /// Rebuild a codec from its persisted codeword map, validating labels and
    /// prefix-freeness.
    pub fn from_codewords(
        arity: u8,
        codewords: BTreeMap<String, Vec<Label>>,
    ) -> Result<Self, Error> {
        if arity < 2 {
            return Err(Error::InvalidArity);
        }
        if codewords.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut trie = Trie::default();
        for (sym, word) in &codewords {
            if word.is_empty() {
                return Err(Error::TruncatedCode);
            }
            let mut node = &mut trie;
            for &label in word {
                if label < 1 || label > arity {
                    return Err(Error::TruncatedCode);
                }
                if node.symbol.is_some() {
                    return Err(Error::TruncatedCode); // prefix of another word
                }
                node = node.children.entry(label).or_default();
            }
            if node.symbol.is_some() || !node.children.is_empty() {
                return Err(Error::TruncatedCode);
            }
            node.symbol = Some(sym.clone());
        }
        Ok(Codec { arity, codewords, trie })
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn codewords(&self) -> &BTreeMap<String, Vec<Label>> {
        &self.codewords
    }

    pub fn codeword(&self, symbol: &str) -> Option<&[Label]> {
        self.codewords.get(symbol).map(Vec::as_slice)
    }

    /// Concatenated codewords for a symbol stream.
    pub fn encode<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Vec<Label>, Error> {
        let mut out = Vec::new();
        for sym in symbols {
            let word = self
                .codewords
                .get(sym.as_ref())
                .ok_or_else(|| Error::UnknownSymbol(sym.as_ref().to_string()))?;
            out.extend_from_slice(word);
        }
        Ok(out)
    }

    /// Greedy tree walk over the label stream; the stream must end exactly on
    /// a codeword boundary.
    pub fn decode(&self, labels: &[Label]) -> Result<Vec<String>, Error> {
        let mut out = Vec::new();
        let mut node = &self.trie;
        for label in labels {
            node = node.children.get(label).ok_or(Error::TruncatedCode)?;
            if let Some(sym) = &node.symbol {
                out.push(sym.clone());
                node = &self.trie;
            }
        }
        if !std::ptr::eq(node, &self.trie) {
            return Err(Error::TruncatedCode);
        }
        Ok(out)
    }

    /// Expected codeword length under the table's frequencies (normalized).
    pub fn expected_length(&self, table: &SymbolTable) -> Result<f64, Error> {
        let total: f64 = table
            .entries()
            .iter()
            .map(|(_, f)| *f.numer() as f64 / *f.denom() as f64)
            .sum();
        let mut len = 0.0;
        for (sym, freq) in table.entries() {
            let word = self
                .codewords
                .get(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.clone()))?;
            let p = (*freq.numer() as f64 / *freq.denom() as f64) / total;
            len += p * word.len() as f64;
        }
        Ok(len)
    }
}

/// Build the ordinal Huffman codec for `table` with branching factor `arity`.
pub fn build_codec(table: &SymbolTable, arity: u8) -> Result<Codec, Error> {
    if arity < 2 {
        return Err(Error::InvalidArity);
    }
    let weights = table.integer_weights()?;
    let symbols = table.entries();

    // Degenerate one-symbol alphabet: a single branch labeled #1 keeps the
    // codeword nonempty.
    if symbols.len() == 1 {
        let mut codewords = BTreeMap::new();
        codewords.insert(symbols[0].0.clone(), vec![1]);
        return Codec::from_codewords(arity, codewords);
    }

    #[derive(Debug)]
    struct Entry {
        weight: u128,
        id: SubtreeId,
        node: BuildNode,
    }

    let mut queue: Vec<Entry> = symbols
        .iter()
        .zip(&weights)
        .map(|((sym, _), &w)| Entry {
            weight: w,
            id: SubtreeId::Symbol(sym.clone()),
            node: BuildNode::Leaf(Some(sym.clone())),
        })
        .collect();

    // Pad so that (leaves - 1) divides by (arity - 1) and the tree is full.
    let k = arity as usize;
    let pad = (k - 1 - (queue.len() - 1) % (k - 1)) % (k - 1);
    for i in 0..pad {
        queue.push(Entry {
            weight: 0,
            id: SubtreeId::Dummy(i as u32),
            node: BuildNode::Leaf(None),
        });
    }

    while queue.len() > 1 {
        queue.sort_by(|a, b| a.weight.cmp(&b.weight).then_with(|| a.id.cmp(&b.id)));
        let mut merged: Vec<Entry> = queue.drain(..k).collect();
        let weight = merged.iter().map(|e| e.weight).sum();
        // Children ranked #1..#k by descending weight, ties by smallest id.
        merged.sort_by(|a, b| b.weight.cmp(&a.weight).then_with(|| a.id.cmp(&b.id)));
        let id = merged.iter().map(|e| e.id.clone()).min().expect("nonempty merge");
        let node = BuildNode::Internal(merged.into_iter().map(|e| e.node).collect());
        queue.push(Entry { weight, id, node });
    }

    let mut codewords = BTreeMap::new();
    collect_codewords(&queue[0].node, &mut Vec::new(), &mut codewords);
    Codec::from_codewords(arity, codewords)
}

fn collect_codewords(
    node: &BuildNode,
    path: &mut Vec<Label>,
    out: &mut BTreeMap<String, Vec<Label>>,
) {
    match node {
        BuildNode::Leaf(Some(sym)) => {
            out.insert(sym.clone(), path.clone());
        }
        BuildNode::Leaf(None) => {}
        BuildNode::Internal(children) => {
            for (i, child) in children.iter().enumerate() {
                path.push((i + 1) as Label);
                collect_codewords(child, path, out);
                path.pop();
            }
        }
    }
}

/// Shannon entropy (base 2) of the table's normalized frequencies.
pub fn entropy(table: &SymbolTable) -> f64 {
    let probs: Vec<f64> = table
        .entries()
        .iter()
        .map(|(_, f)| *f.numer() as f64 / *f.denom() as f64)
        .collect();
    let total: f64 = probs.iter().sum();
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| {
            let q = p / total;
            -q * q.log2()
        })
        .sum()
}

/// Exact Kraft sum `Σ 2^(-len)` over all codewords, as (numerator, 2^shift).
/// Only meaningful for binary codecs.
pub fn kraft_sum_is_one(codec: &Codec) -> bool {
    let max_len = codec.codewords.values().map(Vec::len).max().unwrap_or(0) as u32;
    if max_len >= 127 {
        return false;
    }
    let sum: u128 = codec
        .codewords
        .values()
        .map(|w| 1u128 << (max_len - w.len() as u32))
        .sum();
    sum == 1u128 << max_len
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn table(entries: &[(&str, (i128, i128))]) -> SymbolTable {
        SymbolTable::new(
            entries
                .iter()
                .map(|&(s, (n, d))| (s.to_string(), ratio(n, d)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn worked_three_symbol_codec() {
        let t = table(&[("a", (1, 2)), ("b", (1, 4)), ("c", (1, 4))]);
        let codec = build_codec(&t, 2).unwrap();
        assert_eq!(codec.codeword("a"), Some([1].as_slice()));
        assert_eq!(codec.codeword("b"), Some([2, 1].as_slice()));
        assert_eq!(codec.codeword("c"), Some([2, 2].as_slice()));
    }

    #[test]
    fn encode_decode_worked_examples() {
        let t = table(&[("a", (1, 2)), ("b", (1, 4)), ("c", (1, 4))]);
        let codec = build_codec(&t, 2).unwrap();
        assert_eq!(codec.encode(&["a", "a", "b"]).unwrap(), vec![1, 1, 2, 1]);
        assert_eq!(codec.encode::<&str>(&[]).unwrap(), Vec::<Label>::new());
        assert_eq!(codec.decode(&[2, 2]).unwrap(), vec!["c"]);
        assert_eq!(
            codec.encode(&["z"]),
            Err(Error::UnknownSymbol("z".to_string()))
        );
        assert_eq!(codec.decode(&[2]), Err(Error::TruncatedCode));
        assert_eq!(codec.decode(&[3]), Err(Error::TruncatedCode));
    }

    #[test]
    fn single_symbol_gets_one_branch() {
        let t = table(&[("a", (1, 1))]);
        let codec = build_codec(&t, 2).unwrap();
        assert_eq!(codec.codeword("a"), Some([1].as_slice()));
        assert_eq!(codec.decode(&[1, 1]).unwrap(), vec!["a", "a"]);
    }

    #[test]
    fn uniform_four_symbols_make_a_full_tree() {
        let t = table(&[("a", (1, 4)), ("b", (1, 4)), ("c", (1, 4)), ("d", (1, 4))]);
        let codec = build_codec(&t, 2).unwrap();
        for sym in ["a", "b", "c", "d"] {
            assert_eq!(codec.codeword(sym).unwrap().len(), 2);
        }
        assert!(kraft_sum_is_one(&codec));
    }

    #[test]
    fn ternary_codec_pads_with_dummies() {
        // 4 symbols, arity 3: one dummy pad, root still full.
        let t = table(&[("a", (4, 1)), ("b", (2, 1)), ("c", (1, 1)), ("d", (1, 1))]);
        let codec = build_codec(&t, 3).unwrap();
        let round = codec.decode(&codec.encode(&["d", "a", "c", "b"]).unwrap()).unwrap();
        assert_eq!(round, vec!["d", "a", "c", "b"]);
        assert!(codec.codewords().values().all(|w| w.iter().all(|&l| (1..=3).contains(&l))));
    }

    #[test]
    fn empty_and_zero_tables_are_rejected() {
        assert_eq!(SymbolTable::new(vec![]), Err(Error::EmptyAlphabet));
        assert_eq!(
            SymbolTable::new(vec![("a".into(), ratio(0, 1)), ("b".into(), ratio(0, 1))]),
            Err(Error::DegenerateFrequencies)
        );
        assert_eq!(
            SymbolTable::new(vec![("a".into(), ratio(1, 1)), ("a".into(), ratio(1, 1))]),
            Err(Error::DuplicateSymbol("a".into()))
        );
        assert_eq!(build_codec(&table(&[("a", (1, 1))]), 1), Err(Error::InvalidArity));
    }

    #[test]
    fn determinism_across_builds() {
        let t = table(&[("x", (1, 3)), ("y", (1, 3)), ("z", (1, 3)), ("w", (1, 7))]);
        let a = build_codec(&t, 2).unwrap();
        let b = build_codec(&t, 2).unwrap();
        assert_eq!(a, b);
        let json_a = serde_json::to_string(&a).unwrap();
        let json_b = serde_json::to_string(&b).unwrap();
        assert_eq!(json_a, json_b);
        let back: Codec = serde_json::from_str(&json_a).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn entropy_bound_on_dyadic_table() {
        let t = table(&[("a", (1, 2)), ("b", (1, 4)), ("c", (1, 4))]);
        let codec = build_codec(&t, 2).unwrap();
        let h = entropy(&t);
        let l = codec.expected_length(&t).unwrap();
        assert!((h - 1.5).abs() < 1e-12);
        assert!((l - 1.5).abs() < 1e-12); // dyadic frequencies achieve entropy
    }
}
