//! Ordinal and serial-order codes for sequences.
//!
//! A sequence such as `[18, 13, 8, 14, 5, 19]` carries two separable kinds of
//! information: *which* items occur (content) and *in what relative order*
//! (structure). This crate works on the structure side only. It provides:
//!
//! - [`rank_code`]: the ordinal code of a sequence, a permutation giving each
//!   position's rank among all items;
//! - [`weights`]: three exact-rational synaptic weight encodings of a sequence
//!   (temporal, rank-order, tree-order) and the rank-order neuron [`response`]
//!   kernel;
//! - [`tree`]: stack-order insertion into binary search trees with dyadic node
//!   weights, the tree ↔ Dyck-word bijection, and stack-sortable permutation
//!   checks;
//! - [`huffman`]: a prefix-free codec whose branch labels are ordinal ranks
//!   rather than binary digits;
//! - [`stdp`]: an antisymmetric associative network storing a rank code in
//!   pairwise weights signed by rank difference, with recall robust to unit
//!   deletion and bounded noise;
//! - [`autoencoder`]: a gain-modulated encode/decode memory that projects rank
//!   codes onto a population of randomly tuned order-sensitive neurons,
//!   recruits category neurons by novelty, and reconstructs sequences from a
//!   bag of items;
//! - [`tasks`]: executable structure-cognition tasks (repetition-pattern
//!   signatures, variable-binding templates, the two-door task-set agent);
//! - [`verify`]: the self-check suites driven by the CLI and the acceptance
//!   tests.
//!
//! All operations are pure functions of their inputs (plus an explicit seed
//! where randomness is involved); every type is immutable after construction
//! and safe to share across threads.

pub mod autoencoder;
pub mod error;
pub mod huffman;
pub mod rank;
pub mod rational;
pub mod sequence;
pub mod stdp;
pub mod tasks;
pub mod tree;
pub(crate) mod util;
pub mod verify;
pub mod weights;

pub use error::Error;
pub use rank::{rank_code, RankCode};
pub use rational::Rational;
pub use sequence::{Item, Sequence};
pub use weights::{rank_order_weights, response, stdp_weights, WeightKind, WeightVector};

/// Largest sequence length for which the exact-rational encodings are
/// supported. Dyadic tree weights at depth `d` need denominator `2^(d+2)`,
/// so 64 keeps every weight representable in an `i128` ratio. Longer rank
/// codes are rejected with [`Error::Unsupported`].
pub const MAX_EXACT_N: usize = 64;

pub(crate) fn check_exact_len(n: usize) -> Result<(), Error> {
    if n > MAX_EXACT_N {
        Err(Error::Unsupported(n))
    } else {
        Ok(())
    }
}
