//! Raw input sequences.
//!
//! A [`Sequence`] is an ordered list of items that all live under one total
//! order: either numeric values or opaque tokens. Everything downstream
//! (rank codes, trees, the sequence memory) consumes this type.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// One element of a sequence: a comparable scalar or an opaque token.
///
/// Tokens are ordered by their symbol string; numbers by IEEE total order
/// (NaN is rejected at construction, so the order is total in practice).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Item {
    Number(f64),
    Token(String),
}

impl Item {
    pub fn is_number(&self) -> bool {
        matches!(self, Item::Number(_))
    }

    /// Total order among items of the same kind. Mixed kinds are ruled out
    /// by [`Sequence`] construction.
    pub fn cmp_same_kind(&self, other: &Item) -> Ordering {
        match (self, other) {
            (Item::Number(a), Item::Number(b)) => a.total_cmp(b),
            (Item::Token(a), Item::Token(b)) => a.cmp(b),
            _ => panic!("comparing items of different kinds"),
        }
    }
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Item::Number(a), Item::Number(b)) => a.total_cmp(b) == Ordering::Equal,
            (Item::Token(a), Item::Token(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Item {}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Number(x) => write!(f, "{x}"),
            Item::Token(t) => write!(f, "{t}"),
        }
    }
}

impl From<f64> for Item {
    fn from(x: f64) -> Self {
        Item::Number(x)
    }
}

impl From<&str> for Item {
    fn from(s: &str) -> Self {
        Item::Token(s.to_string())
    }
}

/// An ordered, nonempty, homogeneous list of items.
///
/// `repertoire` optionally records the size M of the symbol repertoire a
/// token sequence was drawn from; it is carried as metadata only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sequence {
    items: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    repertoire: Option<usize>,
}

impl Sequence {
    pub fn new(items: Vec<Item>) -> Result<Self, Error> {
        if items.is_empty() {
            return Err(Error::EmptySequence);
        }
        let numeric = items[0].is_number();
        for item in &items {
            match item {
                Item::Number(x) => {
                    if !numeric {
                        return Err(Error::MixedItemKinds);
                    }
                    if !x.is_finite() {
                        return Err(Error::NonFiniteValue);
                    }
                }
                Item::Token(_) => {
                    if numeric {
                        return Err(Error::MixedItemKinds);
                    }
                }
            }
        }
        Ok(Sequence { items, repertoire: None })
    }

    pub fn from_numbers(values: impl IntoIterator<Item = f64>) -> Result<Self, Error> {
        Self::new(values.into_iter().map(Item::Number).collect())
    }

    pub fn from_tokens<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> Result<Self, Error> {
        Self::new(tokens.into_iter().map(|t| Item::Token(t.into())).collect())
    }

    /// Attach the repertoire size M.
    pub fn with_repertoire(mut self, m: usize) -> Self {
        self.repertoire = Some(m);
        self
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn repertoire(&self) -> Option<usize> {
        self.repertoire
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_mixed() {
        assert_eq!(Sequence::new(vec![]), Err(Error::EmptySequence));
        let mixed = vec![Item::Number(1.0), Item::Token("a".into())];
        assert_eq!(Sequence::new(mixed), Err(Error::MixedItemKinds));
    }

    #[test]
    fn rejects_nan() {
        assert_eq!(
            Sequence::from_numbers([1.0, f64::NAN]),
            Err(Error::NonFiniteValue)
        );
    }

    #[test]
    fn json_shape_is_plain_values() {
        let seq = Sequence::from_tokens(["to", "to", "bu"]).unwrap();
        let json = serde_json::to_string(&seq).unwrap();
        assert_eq!(json, r#"{"items":["to","to","bu"]}"#);
        let back: Sequence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, seq);
    }
}
