//! Stack-order trees, dyadic weights, and the Dyck-word bijection.
//!
//! Feeding a sequence item by item into binary-search-tree insertion builds
//! its *stack-order tree*: the first item becomes the root and every later
//! item is compared against the stacked ones until it finds its slot. The
//! tree encodes temporal order (depth) and rank order (left-to-right
//! position) at once.
//!
//! Each node carries a dyadic weight: the root sits at 1/2 and a child of a
//! depth-`d` node with weight `w` sits at `w ∓ 2^-(d+2)` (left/right). This
//! is interval-midpoint encoding, so sorting nodes by weight recovers the
//! BST order exactly.
//!
//! Tree shapes biject with balanced-parenthesis (Dyck) words through
//! `serialize(node) = "(" + serialize(left) + ")" + serialize(right)`;
//! the number of distinct words over all insertion orders of N items is the
//! Catalan number C_N. A rank code arises from some insertion order with the
//! output readable off a single stack iff it avoids the 231 pattern.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::rank::RankCode;
use crate::rational::{format_ratio, ratio, Rational};
use crate::sequence::{Item, Sequence};
use crate::weights::{WeightKind, WeightVector};

/// One node of an ordinal tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub item: Item,
    pub depth: u32,
    pub weight: Rational,
    pub left: Option<Box<TreeNode>>,
    pub right: Option<Box<TreeNode>>,
}

impl Serialize for TreeNode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("TreeNode", 4)?;
        s.serialize_field("item", &self.item)?;
        s.serialize_field("weight", &format_ratio(&self.weight))?;
        s.serialize_field("left", &self.left)?;
        s.serialize_field("right", &self.right)?;
        s.end()
    }
}

/// A binary search tree built by stack-order insertion.
///
/// Serializes as the nested root node object.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct OrdinalTree {
    root: TreeNode,
    #[serde(skip)]
    size: usize,
}

impl OrdinalTree {
    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Items in BST order (sorted ascending).
    pub fn in_order(&self) -> Vec<&Item> {
        fn walk<'a>(node: &'a TreeNode, out: &mut Vec<&'a Item>) {
            if let Some(l) = &node.left {
                walk(l, out);
            }
            out.push(&node.item);
            if let Some(r) = &node.right {
                walk(r, out);
            }
        }
        let mut out = Vec::with_capacity(self.size);
        walk(&self.root, &mut out);
        out
    }
}

/// A balanced-parenthesis word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckWord(String);

impl DyckWord {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for DyckWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Build the stack-order tree of `seq`: standard BST insertion in sequence
/// order, first item at the root. Duplicate items are rejected because the
/// dyadic weight rule has no slot for them.
pub fn stack_order_tree(seq: &Sequence) -> Result<OrdinalTree, Error> {
    crate::check_exact_len(seq.len())?;
    let items = seq.items();
    let mut root = new_node(items[0].clone(), 0, ratio(1, 2));
    for (pos, item) in items.iter().enumerate().skip(1) {
        insert(&mut root, item, pos)?;
    }
    Ok(OrdinalTree { root, size: items.len() })
}

fn new_node(item: Item, depth: u32, weight: Rational) -> TreeNode {
    TreeNode { item, depth, weight, left: None, right: None }
}

fn insert(node: &mut TreeNode, item: &Item, pos: usize) -> Result<(), Error> {
    match item.cmp_same_kind(&node.item) {
        std::cmp::Ordering::Equal => Err(Error::DuplicateItem(pos)),
        std::cmp::Ordering::Less => descend(&mut node.left, node.depth, &node.weight, false, item, pos),
        std::cmp::Ordering::Greater => {
            descend(&mut node.right, node.depth, &node.weight, true, item, pos)
        }
    }
}

fn descend(
    slot: &mut Option<Box<TreeNode>>,
    parent_depth: u32,
    parent_weight: &Rational,
    right: bool,
    item: &Item,
    pos: usize,
) -> Result<(), Error> {
    match slot {
        Some(child) => insert(child, item, pos),
        None => {
            let offset = ratio(1, 1i128 << (parent_depth + 2));
            let weight = if right { parent_weight + offset } else { parent_weight - offset };
            *slot = Some(Box::new(new_node(item.clone(), parent_depth + 1, weight)));
            Ok(())
        }
    }
}

/// Dyadic tree weights in position order: `weights[i]` is the weight of the
/// node holding `items[i]`.
pub fn tree_order_weights(seq: &Sequence) -> Result<WeightVector, Error> {
    let tree = stack_order_tree(seq)?;
    let weights = seq
        .items()
        .iter()
        .map(|item| find_weight(&tree.root, item).expect("inserted item is in the tree"))
        .collect();
    Ok(WeightVector::new(WeightKind::TreeOrder, weights))
}

fn find_weight(node: &TreeNode, item: &Item) -> Option<Rational> {
    match item.cmp_same_kind(&node.item) {
        std::cmp::Ordering::Equal => Some(node.weight),
        std::cmp::Ordering::Less => node.left.as_deref().and_then(|l| find_weight(l, item)),
        std::cmp::Ordering::Greater => node.right.as_deref().and_then(|r| find_weight(r, item)),
    }
}

/// Serialize a tree shape as a Dyck word:
/// `word(node) = "(" + word(left) + ")" + word(right)`, empty subtree → "".
/// Each node contributes one parenthesis pair, so the word has length 2N,
/// and the map is a bijection between binary tree shapes and Dyck words.
pub fn tree_to_dyck(tree: &OrdinalTree) -> DyckWord {
    fn walk(node: &TreeNode, out: &mut String) {
        out.push('(');
        if let Some(l) = &node.left {
            walk(l, out);
        }
        out.push(')');
        if let Some(r) = &node.right {
            walk(r, out);
        }
    }
    let mut out = String::with_capacity(2 * tree.len());
    walk(&tree.root, &mut out);
    DyckWord(out)
}

/// Check balance: every prefix has at least as many `(` as `)` and the totals
/// agree. Characters outside the parenthesis alphabet are an error, not a
/// `false`.
pub fn dyck_validate(word: &str) -> Result<bool, Error> {
    let mut depth: i64 = 0;
    for c in word.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Ok(false);
                }
            }
            other => return Err(Error::InvalidAlphabet(other)),
        }
    }
    Ok(depth == 0)
}

/// True iff one pass through a single stack sorts the permutation:
/// push each value, popping smaller stacked values first; the emitted stream
/// must come out ascending. Equivalently the permutation avoids the pattern
/// 2-3-1.
pub fn is_stack_sortable(rank: &RankCode) -> bool {
    let mut stack: Vec<u32> = Vec::new();
    let mut output: Vec<u32> = Vec::with_capacity(rank.len());
    for &v in rank.ranks() {
        while stack.last().is_some_and(|&top| top < v) {
            output.push(stack.pop().unwrap());
        }
        stack.push(v);
    }
    while let Some(v) = stack.pop() {
        output.push(v);
    }
    output.windows(2).all(|w| w[0] < w[1])
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::util::permutations;

    fn seq(values: &[f64]) -> Sequence {
        Sequence::from_numbers(values.iter().copied()).unwrap()
    }

    const FIG_SEQ: [f64; 6] = [18.0, 13.0, 8.0, 14.0, 5.0, 19.0];

    #[test]
    fn worked_example_tree_shape() {
        let tree = stack_order_tree(&seq(&FIG_SEQ)).unwrap();
        let root = tree.root();
        assert_eq!(root.item, Item::Number(18.0));
        let n13 = root.left.as_deref().unwrap();
        let n19 = root.right.as_deref().unwrap();
        assert_eq!(n13.item, Item::Number(13.0));
        assert_eq!(n19.item, Item::Number(19.0));
        let n8 = n13.left.as_deref().unwrap();
        let n14 = n13.right.as_deref().unwrap();
        assert_eq!(n8.item, Item::Number(8.0));
        assert_eq!(n14.item, Item::Number(14.0));
        let n5 = n8.left.as_deref().unwrap();
        assert_eq!(n5.item, Item::Number(5.0));
        assert!(n5.left.is_none() && n5.right.is_none());
    }

    #[test]
    fn worked_example_weights() {
        let w = tree_order_weights(&seq(&FIG_SEQ)).unwrap();
        // 18→1/2, 13→1/4, 8→1/8, 14→3/8, 5→1/16, 19→3/4
        let expected = [(1, 2), (1, 4), (1, 8), (3, 8), (1, 16), (3, 4)];
        let expected: Vec<Rational> = expected.iter().map(|&(n, d)| ratio(n, d)).collect();
        assert_eq!(w.weights(), expected.as_slice());
        // The published value set.
        let set: HashSet<Rational> = w.weights().iter().copied().collect();
        let published: HashSet<Rational> = [(1, 2), (1, 4), (1, 8), (1, 16), (3, 8), (3, 4)]
            .iter()
            .map(|&(n, d)| ratio(n, d))
            .collect();
        assert_eq!(set, published);
    }

    #[test]
    fn singleton_and_chain() {
        let single = stack_order_tree(&seq(&[7.0])).unwrap();
        assert_eq!(single.root().weight, ratio(1, 2));
        assert_eq!(tree_to_dyck(&single).as_str(), "()");

        let chain = stack_order_tree(&seq(&[5.0, 4.0, 3.0, 2.0])).unwrap();
        let mut node = chain.root();
        let mut depth = 0;
        while let Some(l) = node.left.as_deref() {
            node = l;
            depth += 1;
            assert!(node.right.is_none());
        }
        assert_eq!(depth, 3);
        // Left spine weights halve toward zero: 1/2, 1/4, 1/8, 1/16.
        assert_eq!(node.weight, ratio(1, 16));
    }

    #[test]
    fn duplicates_and_empty_are_rejected() {
        assert_eq!(
            stack_order_tree(&seq(&[1.0, 2.0, 1.0])),
            Err(Error::DuplicateItem(2))
        );
        let long: Vec<f64> = (0..65).map(f64::from).collect();
        assert_eq!(stack_order_tree(&seq(&long)), Err(Error::Unsupported(65)));
    }

    #[test]
    fn dyck_of_worked_examples() {
        let three = stack_order_tree(&seq(&[18.0, 13.0, 19.0])).unwrap();
        assert_eq!(tree_to_dyck(&three).as_str(), "(())()");
        let six = stack_order_tree(&seq(&FIG_SEQ)).unwrap();
        // Hand-unrolled recursion over the tree above, cross-checked by the
        // parser oracle below.
        let word = tree_to_dyck(&six);
        assert_eq!(word.as_str(), "(((()))())()");
        assert_eq!(word.len(), 2 * six.len());
        assert_eq!(parse_dyck(word.as_str()).unwrap(), shape_of(&six));
    }

    #[test]
    fn dyck_validate_basics() {
        assert_eq!(dyck_validate("(())()"), Ok(true));
        assert_eq!(dyck_validate(")("), Ok(false));
        assert_eq!(dyck_validate("(()"), Ok(false));
        assert_eq!(dyck_validate(""), Ok(true));
        assert_eq!(dyck_validate("(a)"), Err(Error::InvalidAlphabet('a')));
    }

    #[test]
    fn in_order_traversal_sorts() {
        let tree = stack_order_tree(&seq(&FIG_SEQ)).unwrap();
        let items: Vec<f64> = tree
            .in_order()
            .iter()
            .map(|i| match i {
                Item::Number(x) => *x,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(items, vec![5.0, 8.0, 13.0, 14.0, 18.0, 19.0]);
    }

    #[test]
    fn weight_order_matches_value_order_exhaustively() {
        // All insertion orders for N ≤ 7: sorting by dyadic weight equals
        // sorting by value.
        for n in 1..=7u32 {
            for perm in permutations(n) {
                let values: Vec<f64> = perm.iter().map(|&v| v as f64).collect();
                let s = seq(&values);
                let w = tree_order_weights(&s).unwrap();
                let mut by_weight: Vec<usize> = (0..s.len()).collect();
                by_weight.sort_by_key(|&i| w.weights()[i]);
                let mut by_value: Vec<usize> = (0..s.len()).collect();
                by_value.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
                assert_eq!(by_weight, by_value);
            }
        }
    }

    #[test]
    fn catalan_counts_for_small_n() {
        let catalan = [1usize, 2, 5, 14, 42];
        for (idx, n) in (1..=5u32).enumerate() {
            let mut words = HashSet::new();
            for perm in permutations(n) {
                let values: Vec<f64> = perm.iter().map(|&v| v as f64).collect();
                let tree = stack_order_tree(&seq(&values)).unwrap();
                let word = tree_to_dyck(&tree);
                assert_eq!(dyck_validate(word.as_str()), Ok(true));
                assert!(parse_dyck(word.as_str()).is_some());
                words.insert(word);
            }
            assert_eq!(words.len(), catalan[idx]);
        }
    }

    #[test]
    fn stack_sortable_matches_pattern_search() {
        let rc = |p: &[u32]| RankCode::new(p.to_vec()).unwrap();
        assert!(is_stack_sortable(&rc(&[1, 2, 3])));
        assert!(!is_stack_sortable(&rc(&[2, 3, 1])));
        for n in 1..=7u32 {
            for perm in permutations(n) {
                assert_eq!(
                    is_stack_sortable(&rc(&perm)),
                    !contains_231(&perm),
                    "disagreement on {perm:?}"
                );
            }
        }
    }

    #[test]
    fn sortable_count_is_catalan() {
        let count = permutations(4)
            .into_iter()
            .filter(|p| is_stack_sortable(&RankCode::new(p.clone()).unwrap()))
            .count();
        assert_eq!(count, 14);
    }

    #[test]
    fn tree_json_shape() {
        let tree = stack_order_tree(&seq(&[2.0, 1.0])).unwrap();
        let json = serde_json::to_value(&tree).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "item": 2.0,
                "weight": "1/2",
                "left": {"item": 1.0, "weight": "1/4", "left": null, "right": null},
                "right": null,
            })
        );
    }

    /// Brute-force 231 pattern search: positions i < j < k with
    /// v[k] < v[i] < v[j].
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

    /// Independent Dyck parser inverting the serialization; returns the tree
    /// shape or None when the word is not parseable.
    #[derive(Debug, PartialEq)]
    struct Shape {
        left: Option<Box<Shape>>,
        right: Option<Box<Shape>>,
    }

    fn shape_of(tree: &OrdinalTree) -> Shape {
        fn walk(node: &TreeNode) -> Shape {
            Shape {
                left: node.left.as_deref().map(|l| Box::new(walk(l))),
                right: node.right.as_deref().map(|r| Box::new(walk(r))),
            }
        }
        walk(&tree.root)
    }

    fn parse_dyck(word: &str) -> Option<Shape> {
        // Parses "(" left ")" right, returning (shape, bytes consumed).
        fn parse(chars: &[u8]) -> Option<(Option<Box<Shape>>, usize)> {
            if chars.first() != Some(&b'(') {
                return Some((None, 0));
            }
            let (left, used_l) = parse(&chars[1..])?;
            let close = 1 + used_l;
            if chars.get(close) != Some(&b')') {
                return None;
            }
            let (right, used_r) = parse(&chars[close + 1..])?;
            Some((Some(Box::new(Shape { left, right })), close + 1 + used_r))
        }
        let bytes = word.as_bytes();
        let (shape, used) = parse(bytes)?;
        if used != bytes.len() {
            return None;
        }
        shape.map(|b| *b)
    }
}
