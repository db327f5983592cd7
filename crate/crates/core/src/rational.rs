//! Exact rational weights.
//!
//! Every weight vector in this crate is stored as machine-integer rationals
//! and compared exactly; floating point only appears at the network readout
//! boundary. `i128` covers the full range needed under [`crate::MAX_EXACT_N`]
//! (dyadic denominators up to `2^66`).

use num_rational::Ratio;

use crate::error::Error;

pub type Rational = Ratio<i128>;

/// Shorthand for a reduced `num/den` ratio.
pub fn ratio(num: i128, den: i128) -> Rational {
    Ratio::new(num, den)
}

/// Render as `"p/q"`, or bare `"p"` for integers.
pub fn format_ratio(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p/q"` or `"p"`. Denominator must be nonzero.
pub fn parse_ratio(s: &str) -> Result<Rational, Error> {
    let bad = || Error::InvalidRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: i128 = num.parse().map_err(|_| bad())?;
    let den: i128 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

/// Serde adapter: a `Vec<Rational>` as a JSON array of `"p/q"` strings.
pub mod ratio_vec {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_ratio, parse_ratio, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_ratio))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_ratio(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_roundtrip() {
        for r in [ratio(1, 6), ratio(3, 8), ratio(1, 1), ratio(-2, 5)] {
            assert_eq!(parse_ratio(&format_ratio(&r)).unwrap(), r);
        }
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x/2").is_err());
    }

    #[test]
    fn integers_format_bare() {
        assert_eq!(format_ratio(&ratio(2, 2)), "1");
        assert_eq!(format_ratio(&ratio(1, 2)), "1/2");
    }
}
