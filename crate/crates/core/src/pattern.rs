//! Level patterns: the sequence of level cardinalities of a Borda weak order.

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// `(m_1, ..., m_T)`, best level first. Every size is at least 1 and `T >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelPattern(Vec<usize>);

impl LevelPattern {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPattern(
                "a pattern needs at least one level".into(),
            ));
        }
        if let Some(pos) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidPattern(format!(
                "level {} has size 0",
                pos + 1
            )));
        }
        Ok(Self(sizes))
    }

    pub(crate) fn from_sizes_unchecked(sizes: Vec<usize>) -> Self {
        debug_assert!(!sizes.is_empty() && sizes.iter().all(|&s| s > 0));
        Self(sizes)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }

    /// Number of levels `T`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of alternatives `m`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn count_of(&self, size: usize) -> usize {
        self.0.iter().filter(|&&s| s == size).count()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut sizes = self.0.clone();
        sizes.extend_from_slice(&other.0);
        Self(sizes)
    }

    /// Every composition of `m` (ordered partitions into positive parts), in
    /// lexicographic order.
    pub fn compositions(m: usize) -> Vec<LevelPattern> {
        fn rec(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<LevelPattern>) {
            if rest == 0 {
                out.push(LevelPattern(prefix.clone()));
                return;
            }
            for first in 1..=rest {
                prefix.push(first);
                rec(rest - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if m > 0 {
            rec(m, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl FromStr for LevelPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<usize>().map_err(|_| {
                    Error::InvalidPattern(format!("`{part}` is not a positive integer"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sizes)
    }
}

impl fmt::Display for LevelPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for LevelPattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LevelPattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
