//! Strict rankings of alternatives `0..m`.

use crate::error::{Error, Result};
use std::fmt;

/// A strict ranking, listed from rank 1 (best) to rank `m` (worst).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking {
    order: Vec<usize>,
    // positions[x] = 0-based index of x in `order`
    positions: Vec<usize>,
}

impl Ranking {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        let mut positions = vec![usize::MAX; m];
        for (idx, &x) in order.iter().enumerate() {
            if x >= m {
                return Err(Error::InvalidRanking(format!(
                    "alternative {x} out of range for m={m}"
                )));
            }
            if positions[x] != usize::MAX {
                return Err(Error::InvalidRanking(format!(
                    "alternative {x} appears twice"
                )));
            }
            positions[x] = idx;
        }
        Ok(Self { order, positions })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            order: (0..m).collect(),
            positions: (0..m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The alternative at 1-based rank `k`.
    pub fn at(&self, k: usize) -> Option<usize> {
        k.checked_sub(1).and_then(|i| self.order.get(i).copied())
    }

    /// 1-based rank of `x`.
    pub fn rank_of(&self, x: usize) -> usize {
        self.positions[x] + 1
    }

    pub fn reversed(&self) -> Self {
        let m = self.len();
        Self {
            order: self.order.iter().rev().copied().collect(),
            positions: self.positions.iter().map(|p| m - 1 - p).collect(),
        }
    }

    /// The order with every alternative renamed `x -> x + offset`.
    pub(crate) fn embed(&self, offset: usize) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().map(move |x| x + offset)
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }
}

impl TryFrom<Vec<usize>> for Ranking {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        Self::new(order)
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.order {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}
