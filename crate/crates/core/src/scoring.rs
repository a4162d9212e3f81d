//! Borda scores and the weak order they induce.
//!
//! An alternative's score is the sum of its 1-based rank positions over all
//! voters, so a *lower* score is *better*. The induced weak order groups
//! alternatives with equal scores into levels, best level first.

use crate::pattern::LevelPattern;
use crate::profile::Profile;
use std::collections::BTreeMap;

/// Borda score per alternative, indexed by alternative id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScoreVector(Vec<u64>);

impl ScoreVector {
    pub fn get(&self, x: usize) -> u64 {
        self.0[x]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> Option<u64> {
        self.0.iter().copied().min()
    }

    pub fn max(&self) -> Option<u64> {
        self.0.iter().copied().max()
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

/// Levels of equal score, best (lowest score) first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakOrder {
    levels: Vec<Vec<usize>>,
    level_scores: Vec<u64>,
}

impl WeakOrder {
    pub fn from_scores(scores: &ScoreVector) -> Self {
        let mut by_score: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (x, &s) in scores.as_slice().iter().enumerate() {
            by_score.entry(s).or_default().push(x);
        }
        let (level_scores, levels) = by_score.into_iter().unzip();
        Self {
            levels,
            level_scores,
        }
    }

    /// Level sets, each sorted by alternative id.
    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    pub fn level_scores(&self) -> &[u64] {
        &self.level_scores
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The level cardinalities. `None` for an empty order (no alternatives).
    pub fn pattern(&self) -> Option<LevelPattern> {
        if self.levels.is_empty() {
            return None;
        }
        Some(LevelPattern::from_sizes_unchecked(
            self.levels.iter().map(Vec::len).collect(),
        ))
    }
}

pub fn borda_scores(profile: &Profile) -> ScoreVector {
    let mut scores = vec![0u64; profile.m()];
    for ranking in profile.rankings() {
        for (pos, &x) in ranking.order().iter().enumerate() {
            scores[x] += pos as u64 + 1;
        }
    }
    ScoreVector(scores)
}

pub fn weak_order_of(profile: &Profile) -> WeakOrder {
    WeakOrder::from_scores(&borda_scores(profile))
}

/// Level pattern of `profile`. Panics on a profile without alternatives.
pub fn pattern_of(profile: &Profile) -> LevelPattern {
    weak_order_of(profile)
        .pattern()
        .expect("pattern of a profile with no alternatives")
}

/// Level sizes of a raw score slice, by a plain scan.
#[cfg(test)]
pub(crate) fn pattern_sizes(scores: &[u64]) -> Vec<usize> {
    let mut sorted = scores.to_vec();
    sorted.sort_unstable();
    let mut sizes = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        sizes.push(j - i);
        i = j;
    }
    sizes
}
