//! Rank codes: the ordinal representation of a sequence.
//!
//! The rank code of `[18, 13, 8, 14, 5, 19]` is `[5, 3, 2, 4, 1, 6]`: each
//! position holds the rank of its item among all items. Values are discarded,
//! only relative order survives, so any strictly monotone rescaling of the
//! items leaves the code unchanged.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::sequence::Sequence;

/// A permutation of `1..=N`, one rank per sequence position.
///
/// Length is capped at [`crate::MAX_EXACT_N`] so that every downstream
/// encoding stays exactly representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct RankCode {
    ranks: Vec<u32>,
}

impl RankCode {
    /// Validate that `ranks` is a permutation of `1..=N`.
    pub fn new(ranks: Vec<u32>) -> Result<Self, Error> {
        if ranks.is_empty() {
            return Err(Error::EmptySequence);
        }
        crate::check_exact_len(ranks.len())?;
        let n = ranks.len() as u32;
        let mut seen = vec![false; ranks.len()];
        for &r in &ranks {
            if r < 1 || r > n || seen[(r - 1) as usize] {
                return Err(Error::InvalidRankCode);
            }
            seen[(r - 1) as usize] = true;
        }
        Ok(RankCode { ranks })
    }

    pub fn identity(n: usize) -> Result<Self, Error> {
        Self::new((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// Rank at `position` (0-based position, 1-based rank).
    pub fn rank_at(&self, position: usize) -> u32 {
        self.ranks[position]
    }
}

impl TryFrom<Vec<u32>> for RankCode {
    type Error = Error;

    fn try_from(ranks: Vec<u32>) -> Result<Self, Error> {
        RankCode::new(ranks)
    }
}

impl From<RankCode> for Vec<u32> {
    fn from(code: RankCode) -> Vec<u32> {
        code.ranks
    }
}

/// Compute the rank code of a sequence.
///
/// `ranks[i] = 1 + #{j : items[j] < items[i]} + #{j < i : items[j] = items[i]}`.
/// Ties resolve by position (earlier occurrence gets the lower rank), which
/// keeps token sequences with repeats well-defined.
pub fn rank_code(seq: &Sequence) -> Result<RankCode, Error> {
    crate::check_exact_len(seq.len())?;
    let items = seq.items();
    let mut ranks = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let mut below = 0u32;
        for (j, other) in items.iter().enumerate() {
            match other.cmp_same_kind(item) {
                std::cmp::Ordering::Less => below += 1,
                std::cmp::Ordering::Equal if j < i => below += 1,
                _ => {}
            }
        }
        ranks.push(below + 1);
    }
    Ok(RankCode { ranks })
}
