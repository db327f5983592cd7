//! Synaptic weight encodings of a sequence and the rank-order readout.
//!
//! Three exact-rational encodings of a length-N sequence:
//!
//! - temporal weights `1/(N+1-t)` per position `t`: sensitivity decays with
//!   recency of arrival, so late items dominate;
//! - rank-order weights `1/(N+1-rank)`: the same profile applied through the
//!   rank code, so the weight follows an item's rank instead of its slot;
//! - tree-order weights (see [`crate::tree`]): dyadic weights mixing temporal
//!   and rank order.
//!
//! For `[18, 13, 8, 14, 5, 19]` these are `[1/6, 1/5, 1/4, 1/3, 1/2, 1]`,
//! `[1/2, 1/4, 1/5, 1/3, 1/6, 1]` and `[1/2, 1/4, 1/8, 3/8, 1/16, 3/4]`.
//!
//! [`response`] is the readout of a neuron tuned to one stored rank code: a
//! normalized inner product of the two codes' rank-order weight profiles. By
//! the rearrangement inequality it attains 1 exactly when the input matches
//! the stored code, and its unique maximizer is that match.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rank::RankCode;
use crate::rational::{ratio, ratio_vec, Rational};

/// Which encoding produced a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    TemporalStdp,
    RankOrder,
    TreeOrder,
}

/// Per-position weights, exact rationals in `(0, 1]`.
///
/// Temporal and rank-order vectors contain exactly one weight equal to 1;
/// tree-order vectors lie strictly inside `(0, 1)`. All weights are distinct
/// for N > 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector {
    kind: WeightKind,
    #[serde(with = "ratio_vec")]
    weights: Vec<Rational>,
}

impl WeightVector {
    pub(crate) fn new(kind: WeightKind, weights: Vec<Rational>) -> Self {
        debug_assert!(Self::invariants_hold(kind, &weights));
        WeightVector { kind, weights }
    }

    fn invariants_hold(kind: WeightKind, weights: &[Rational]) -> bool {
        let zero = ratio(0, 1);
        let one = Rational::one();
        let in_range = weights.iter().all(|w| *w > zero && *w <= one);
        let ones = weights.iter().filter(|w| **w == one).count();
        let mut sorted = weights.to_vec();
        sorted.sort();
        sorted.dedup();
        let distinct = sorted.len() == weights.len();
        match kind {
            WeightKind::TemporalStdp | WeightKind::RankOrder => in_range && ones == 1 && distinct,
            WeightKind::TreeOrder => in_range && ones == 0 && distinct,
        }
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights
            .iter()
            .map(|w| *w.numer() as f64 / *w.denom() as f64)
            .collect()
    }
}

/// Temporal (STDP-like) weights: `weights[t] = 1/(N+1-t)` for positions
/// `t = 1..=N`. Depends only on N, not on the items.
pub fn stdp_weights(n: usize) -> Result<WeightVector, Error> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    crate::check_exact_len(n)?;
    let weights = (1..=n).map(|t| ratio(1, (n + 1 - t) as i128)).collect();
    Ok(WeightVector::new(WeightKind::TemporalStdp, weights))
}

/// Rank-order weights: `weights[i] = 1/(N+1-ranks[i])`, the inverse ordinal
/// ranking of the sequence. Injective on rank codes.
pub fn rank_order_weights(rank: &RankCode) -> Result<WeightVector, Error> {
    let n = rank.len();
    let weights = rank
        .ranks()
        .iter()
        .map(|&r| ratio(1, (n as u32 + 1 - r) as i128))
        .collect();
    Ok(WeightVector::new(WeightKind::RankOrder, weights))
}

/// Rank sensitivity `u(k) = 1/(N+1-k)` as a float.
#[inline]
pub(crate) fn rank_sensitivity(n: usize, rank: u32) -> f64 {
    1.0 / (n as u32 + 1 - rank) as f64
}

/// Activity of a neuron storing `stored` when driven by `input`:
///
/// `score = Σ_i u(input_i)·u(stored_i) / Σ_i u(stored_i)²` with
/// `u(k) = 1/(N+1-k)`.
///
/// The score lies in `(0, 1]` and equals 1 iff `input == stored` (matched
/// inputs reuse the denominator's summation path, so the maximum is exactly
/// 1.0 in floating point too). Over all N! inputs the maximum is attained
/// only at the match; the reversed code is the minimizer.
pub fn response(input: &RankCode, stored: &RankCode) -> Result<f64, Error> {
    if input.len() != stored.len() {
        return Err(Error::LengthMismatch { left: input.len(), right: stored.len() });
    }
    let n = input.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for (&ri, &si) in input.ranks().iter().zip(stored.ranks()) {
        num += rank_sensitivity(n, ri) * rank_sensitivity(n, si);
        den += rank_sensitivity(n, si) * rank_sensitivity(n, si);
    }
    Ok(num / den)
}
