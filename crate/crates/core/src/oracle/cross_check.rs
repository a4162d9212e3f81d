use super::enumerate::{enumerate_range_with_budget, EnumerationMode, DEFAULT_CANDIDATE_BUDGET};
use crate::classify::{classify, Classification, Verdict};
use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckRow {
    pub pattern: LevelPattern,
    pub classification: Classification,
    /// Whether exhaustive enumeration found a witness at this `n`.
    pub achieved: bool,
}

impl CrossCheckRow {
    /// A definite verdict that the enumeration disagrees with.
    pub fn is_contradiction(&self) -> bool {
        match self.classification.verdict {
            Verdict::InRange => !self.achieved,
            Verdict::NotInRange => self.achieved,
            Verdict::Unknown => false,
        }
    }
}

/// Classifier verdicts against exhaustive enumeration, for every composition
/// of every `m` in `2..=max_m`.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub max_m: usize,
    pub n: usize,
    pub rows: Vec<CrossCheckRow>,
}

impl CrossCheckReport {
    pub fn contradictions(&self) -> impl Iterator<Item = &CrossCheckRow> {
        self.rows.iter().filter(|r| r.is_contradiction())
    }

    pub fn unknown(&self) -> impl Iterator<Item = &CrossCheckRow> {
        self.rows
            .iter()
            .filter(|r| r.classification.verdict == Verdict::Unknown)
    }

    pub fn achieved(&self) -> impl Iterator<Item = &LevelPattern> {
        self.rows.iter().filter(|r| r.achieved).map(|r| &r.pattern)
    }

    pub fn is_consistent(&self) -> bool {
        self.contradictions().next().is_none()
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let achieved = self.rows.iter().filter(|r| r.achieved).count();
        writeln!(
            f,
            "cross-check n={} m=2..={}: {} patterns, {} achieved",
            self.n,
            self.max_m,
            self.rows.len(),
            achieved
        )?;
        let contradictions: Vec<_> = self.contradictions().collect();
        writeln!(f, "contradictions: {}", contradictions.len())?;
        for r in contradictions {
            writeln!(
                f,
                "  {} classified {} ({}) but achieved={}",
                r.pattern, r.classification.verdict, r.classification.rule, r.achieved
            )?;
        }
        let unknown: Vec<_> = self.unknown().collect();
        writeln!(f, "unknown: {}", unknown.len())?;
        for r in unknown {
            writeln!(
                f,
                "  {} {}",
                r.pattern,
                if r.achieved { "achieved" } else { "absent" }
            )?;
        }
        Ok(())
    }
}

pub fn cross_check(max_m: usize, n: usize) -> Result<CrossCheckReport> {
    cross_check_with_budget(max_m, n, DEFAULT_CANDIDATE_BUDGET)
}

pub fn cross_check_with_budget(max_m: usize, n: usize, budget: u128) -> Result<CrossCheckReport> {
    if max_m < 2 {
        return Err(Error::InvalidParameter(format!(
            "need max_m >= 2, got {max_m}"
        )));
    }
    let mut rows = Vec::new();
    for m in 2..=max_m {
        let atlas = enumerate_range_with_budget(m, n, EnumerationMode::Exhaustive, budget)?;
        for pattern in LevelPattern::compositions(m) {
            let classification = classify(&pattern)?;
            let achieved = atlas.contains(&pattern);
            rows.push(CrossCheckRow {
                pattern,
                classification,
                achieved,
            });
        }
    }
    Ok(CrossCheckReport { max_m, n, rows })
}
