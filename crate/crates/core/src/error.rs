//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sequence must contain at least one item")]
    EmptySequence,
    #[error("sequence items must all be numbers or all be tokens")]
    MixedItemKinds,
    #[error("numeric items must be finite")]
    NonFiniteValue,
    #[error("sequences of length {0} exceed the exact-arithmetic bound of 64")]
    Unsupported(usize),
    #[error("ranks must form a permutation of 1..=N")]
    InvalidRankCode,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("duplicate item at position {0}")]
    DuplicateItem(usize),
    #[error("dyck words may only contain '(' and ')', found {0:?}")]
    InvalidAlphabet(char),
    #[error("symbol table must contain at least one symbol")]
    EmptyAlphabet,
    #[error("symbol table frequencies are all zero")]
    DegenerateFrequencies,
    #[error("frequency magnitudes exceed the exact-arithmetic range")]
    FrequencyRange,
    #[error("duplicate symbol {0:?} in table")]
    DuplicateSymbol(String),
    #[error("codec arity must be at least 2")]
    InvalidArity,
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("label stream does not describe a whole codeword sequence")]
    TruncatedCode,
    #[error("recall cue must name at least one unit")]
    EmptyCue,
    #[error("unknown unit {0:?}")]
    UnknownUnit(String),
    #[error("duplicate unit label {0:?}")]
    DuplicateUnit(String),
    #[error("codebook has no entries")]
    EmptyCodebook,
    #[error("codebook has no entry with id {0}")]
    UnknownZ(u32),
    #[error("structure signatures support at most 26 distinct tokens, got {0}")]
    AlphabetTooLarge(usize),
    #[error("template is degenerate: no repeated variable and no fixed slot")]
    DegenerateTemplate,
    #[error("template pattern may only use variables A-Z, found {0:?}")]
    InvalidTemplate(char),
    #[error("reward environment is not constant within the episode")]
    InconsistentRewards,
    #[error("population needs at least one neuron")]
    EmptyPopulation,
    #[error("cannot parse {0:?} as a rational p/q")]
    InvalidRational(String),
    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
}
