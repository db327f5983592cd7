//! Small crate-internal helpers.

/// All permutations of `1..=n` in lexicographic order.
///
/// Intended for the exhaustive desk-scale checks (n ≤ 8); the output has n!
/// entries.
pub(crate) fn permutations(n: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, remaining: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            prefix.push(v);
            rec(prefix, remaining, out);
            prefix.pop();
            remaining.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_are_factorials() {
        assert_eq!(permutations(1).len(), 1);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(4)[0], vec![1, 2, 3, 4]);
    }
}
