//! Membership of a level pattern in the Borda range for odd `n`.
//!
//! The rules are applied in a fixed order and the first one that fires is
//! reported:
//!
//! 1. some level is odd: in range ([`Rule::OddLevel`]);
//! 2. all levels even, `m_i = 2^k s_i` with `sum(s_i)` odd: not in range
//!    ([`Rule::Theorem3`]);
//! 3. all even, `sum(s_i)` even and every `s_i` odd: in range ([`Rule::Lemma4`]);
//! 4. only 2s and 4s, both present, an even number (>= 2) of 2s: in range
//!    ([`Rule::NewLemma`] for the four single-block shapes, [`Rule::NewTheorem`]
//!    otherwise);
//! 5. anything else is [`Verdict::Unknown`].

use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use serde::Serialize;
use std::fmt;

/// `m_i = 2^k * s_i` with `k` maximal. Only defined when every level is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerDecomposition {
    pub k: u32,
    pub s: Vec<usize>,
    pub s_sum: usize,
}

pub fn power_decomposition(p: &LevelPattern) -> Result<PowerDecomposition> {
    if p.sizes().iter().any(|&m| m % 2 == 1) {
        return Err(Error::OddLevelPresent(p.clone()));
    }
    let k = p
        .sizes()
        .iter()
        .map(|m| m.trailing_zeros())
        .min()
        .expect("patterns are non-empty");
    let s: Vec<usize> = p.sizes().iter().map(|m| m >> k).collect();
    let s_sum = s.iter().sum();
    Ok(PowerDecomposition { k, s, s_sum })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    InRange,
    NotInRange,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    OddLevel,
    Lemma4,
    NewLemma,
    NewTheorem,
    Theorem3,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: Rule,
}

impl Classification {
    fn new(verdict: Verdict, rule: Rule) -> Self {
        debug_assert_eq!(rule == Rule::Theorem3, verdict == Verdict::NotInRange);
        debug_assert_eq!(rule == Rule::None, verdict == Verdict::Unknown);
        Self { verdict, rule }
    }

    pub fn applicable_n(&self) -> &'static str {
        match self.verdict {
            Verdict::InRange => "all odd n ≥ 3",
            Verdict::NotInRange => "no odd n",
            Verdict::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::InRange => "IN_RANGE",
            Verdict::NotInRange => "NOT_IN_RANGE",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn classify(p: &LevelPattern) -> Result<Classification> {
    if p.total() < 2 {
        return Err(Error::InvalidPattern(format!(
            "pattern {p} has fewer than two alternatives"
        )));
    }
    let decomposition = match power_decomposition(p) {
        Err(_) => return Ok(Classification::new(Verdict::InRange, Rule::OddLevel)),
        Ok(d) => d,
    };
    if decomposition.s_sum % 2 == 1 {
        return Ok(Classification::new(Verdict::NotInRange, Rule::Theorem3));
    }
    if decomposition.s.iter().all(|s| s % 2 == 1) {
        // an even sum of odd terms needs an even number of terms
        debug_assert_eq!(p.len() % 2, 0);
        return Ok(Classification::new(Verdict::InRange, Rule::Lemma4));
    }
    if is_two_four_pattern(p) {
        let rule = if is_lemma_shape(p) {
            Rule::NewLemma
        } else {
            Rule::NewTheorem
        };
        return Ok(Classification::new(Verdict::InRange, rule));
    }
    Ok(Classification::new(Verdict::Unknown, Rule::None))
}

/// Sizes in {2, 4}, both present, with an even number (>= 2) of 2s.
pub(crate) fn is_two_four_pattern(p: &LevelPattern) -> bool {
    let twos = p.count_of(2);
    let fours = p.count_of(4);
    twos + fours == p.len() && fours > 0 && twos >= 2 && twos.is_multiple_of(2)
}

/// `(2,4..4,2)`, `(4,2,4..4,2)`, `(2,4..4,2,4)` or `(4,2,4..4,2,4)`: exactly
/// two 2s, at most one 4 outside them on each side, at least one 4 overall.
pub(crate) fn is_lemma_shape(p: &LevelPattern) -> bool {
    let sizes = p.sizes();
    if p.count_of(2) != 2 || p.count_of(4) == 0 || p.count_of(2) + p.count_of(4) != p.len() {
        return false;
    }
    let first = sizes.iter().position(|&s| s == 2).unwrap();
    let last = sizes.iter().rposition(|&s| s == 2).unwrap();
    first <= 1 && sizes.len() - 1 - last <= 1
}
