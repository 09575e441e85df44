//! The ghost chain M = {e, c, c², …} ∪ {0}.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of M. The derived order is the chain order `0 < e < c < c² < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GhostValue {
    Zero,
    /// `c^k`; `Power(0)` is the idempotent `e`.
    Power(u32),
}

impl GhostValue {
    pub const E: GhostValue = GhostValue::Power(0);
    pub const C: GhostValue = GhostValue::Power(1);

    pub fn exponent(self) -> Option<u32> {
        match self {
            GhostValue::Zero => None,
            GhostValue::Power(k) => Some(k),
        }
    }

    pub fn is_zero(self) -> bool {
        self == GhostValue::Zero
    }

    /// `self^n`, with `x^0 = e` for every x (including 0, matching `e·0 = 0` only for n ≥ 1).
    pub fn pow(self, n: u32) -> GhostValue {
        match self {
            GhostValue::Zero if n > 0 => GhostValue::Zero,
            GhostValue::Zero => GhostValue::E,
            GhostValue::Power(k) => GhostValue::Power(k * n),
        }
    }

    /// Formats with a chosen chain letter (`c` for the source chain, `d` for a target chain).
    pub fn display_with(self, letter: char) -> String {
        match self {
            GhostValue::Zero => "0".to_string(),
            GhostValue::Power(0) => "e".to_string(),
            GhostValue::Power(1) => letter.to_string(),
            GhostValue::Power(k) => format!("{letter}^{k}"),
        }
    }

    /// Parses `e`, `0`, `L` or `L^k` where `L` is the chain letter.
    pub fn parse_with(text: &str, letter: char) -> Result<GhostValue> {
        let trimmed = text.trim();
        let offset = text.len() - text.trim_start().len();
        match trimmed {
            "0" => return Ok(GhostValue::Zero),
            "e" => return Ok(GhostValue::E),
            _ => {}
        }
        let mut chars = trimmed.chars();
        if chars.next() != Some(letter) {
            return Err(Error::Syntax {
                position: offset,
                message: format!("expected `e`, `0` or `{letter}^k`"),
            });
        }
        let rest = chars.as_str();
        if rest.is_empty() {
            return Ok(GhostValue::C);
        }
        let digits = rest.strip_prefix('^').ok_or(Error::Syntax {
            position: offset + 1,
            message: "expected `^`".into(),
        })?;
        digits.parse::<u32>().map(GhostValue::Power).map_err(|_| Error::Syntax {
            position: offset + 2,
            message: format!("invalid exponent `{digits}`"),
        })
    }
}

impl Mul for GhostValue {
    type Output = GhostValue;

    fn mul(self, rhs: GhostValue) -> GhostValue {
        match (self, rhs) {
            (GhostValue::Power(a), GhostValue::Power(b)) => GhostValue::Power(a + b),
            _ => GhostValue::Zero,
        }
    }
}

impl fmt::Display for GhostValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('c'))
    }
}

impl FromStr for GhostValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GhostValue::parse_with(s, 'c')
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn chain_order() {
        assert!(GhostValue::Zero < GhostValue::E);
        assert!(GhostValue::E < GhostValue::C);
        assert!(GhostValue::C < GhostValue::Power(2));
    }

    #[test]
    fn parse_examples() {
        assert_eq!("c^4".parse::<GhostValue>().unwrap(), GhostValue::Power(4));
        assert_eq!("e".parse::<GhostValue>().unwrap(), GhostValue::E);
        assert_eq!("0".parse::<GhostValue>().unwrap(), GhostValue::Zero);
        assert_eq!("c".parse::<GhostValue>().unwrap(), GhostValue::C);
        assert!("c^".parse::<GhostValue>().is_err());
        assert!("x".parse::<GhostValue>().is_err());
        assert_eq!(GhostValue::parse_with("d^2", 'd').unwrap(), GhostValue::Power(2));
    }

    proptest! {
        #[test]
        fn round_trip(k in proptest::option::of(0u32..1000)) {
            let g = k.map_or(GhostValue::Zero, GhostValue::Power);
            prop_assert_eq!(g.to_string().parse::<GhostValue>().unwrap(), g);
        }

        #[test]
        fn multiplication_is_monotone(a in 0u32..50, b in 0u32..50, k in 0u32..50) {
            let (a, b, k) = (GhostValue::Power(a), GhostValue::Power(b), GhostValue::Power(k));
            prop_assert_eq!(a <= b, a * k <= b * k);
            prop_assert_eq!(GhostValue::Zero * a, GhostValue::Zero);
        }
    }
}
