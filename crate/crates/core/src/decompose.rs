//! Splitting an in-range pattern into independently realizable blocks.
//!
//! A `{2,4}`-pattern `Λ` is cut as `Λ₀ ≻ Λ₁* ≻ Λ₂`: `Λ₀` is the longest even
//! run of leading 4s, `Λ₁*` runs through the second 2 (picking up a leftover
//! leading 4), and `Λ₂` is handled recursively. When `Λ₂` is an odd run of 4s,
//! one of them moves into `Λ₁*`. Blocks are built at `n = 3`, catenated and
//! padded to the requested `n`.

use crate::classify::{classify, Rule};
use crate::construct::{construct_base, BaseWitness};
use crate::error::{Error, Result};
use crate::oracle::{SearchConfig, WitnessCache};
use crate::pattern::LevelPattern;
use crate::profile::Profile;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Block {
    Base(BaseWitness),
    /// `2 * pairs` levels of size 4, realized by repeating a `(4,4)` witness.
    FourBlock {
        pairs: usize,
    },
}

impl Block {
    pub fn target(&self) -> Result<LevelPattern> {
        match self {
            Block::Base(req) => req.target(),
            Block::FourBlock { pairs } => {
                if *pairs == 0 {
                    return Err(Error::InvalidParameter("FourBlock needs pairs >= 1".into()));
                }
                Ok(LevelPattern::from_sizes_unchecked(vec![4; 2 * pairs]))
            }
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Base(req) => req.fmt(f),
            Block::FourBlock { pairs } => write!(f, "FourBlock{{pairs={pairs}}}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionPlan {
    pub blocks: Vec<Block>,
}

impl DecompositionPlan {
    /// Concatenation of the block targets.
    pub fn target(&self) -> Result<LevelPattern> {
        let mut sizes = Vec::new();
        for b in &self.blocks {
            sizes.extend_from_slice(b.target()?.sizes());
        }
        LevelPattern::new(sizes)
    }

    fn push(&mut self, block: Block) {
        if let (Some(Block::FourBlock { pairs }), Block::FourBlock { pairs: more }) =
            (self.blocks.last_mut(), &block)
        {
            *pairs += more;
            return;
        }
        self.blocks.push(block);
    }
}

impl fmt::Display for DecompositionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            b.fmt(f)?;
        }
        f.write_str("]")
    }
}

/// Plans a pattern with sizes in `{2, 4}` and an even, nonzero number of 2s.
pub fn plan_decomposition(p: &LevelPattern) -> Result<DecompositionPlan> {
    let twos = p.count_of(2);
    if twos + p.count_of(4) != p.len() || twos == 0 || twos % 2 == 1 {
        return Err(Error::NotDecomposable(p.clone()));
    }
    let mut plan = DecompositionPlan::default();
    plan_rest(p.sizes(), &mut plan);
    debug_assert_eq!(plan.target().ok().as_ref(), Some(p));
    Ok(plan)
}

fn plan_rest(sizes: &[usize], plan: &mut DecompositionPlan) {
    let lead = sizes.iter().take_while(|&&s| s == 4).count();
    if lead == sizes.len() {
        if lead > 0 {
            debug_assert!(lead % 2 == 0);
            plan.push(Block::FourBlock { pairs: lead / 2 });
        }
        return;
    }
    if lead >= 2 {
        plan.push(Block::FourBlock { pairs: lead / 2 });
    }
    let four_first = lead % 2 == 1;
    let first_two = lead;
    let second_two = first_two
        + 1
        + sizes[first_two + 1..]
            .iter()
            .position(|&s| s == 2)
            .expect("2s come in pairs");
    let inner = second_two - first_two - 1;
    let rest = &sizes[second_two + 1..];

    let trailing_odd = !rest.is_empty() && rest.iter().all(|&s| s == 4) && rest.len() % 2 == 1;
    let head = match (four_first, trailing_odd) {
        (false, false) if inner == 0 => BaseWitness::TwoLevel { s1: 1, s2: 1 },
        (false, false) => BaseWitness::SeqI { fours: inner },
        (true, false) => BaseWitness::SeqII { fours: inner + 1 },
        (false, true) => BaseWitness::SeqIII { fours: inner + 1 },
        (true, true) => BaseWitness::SeqIV { fours: inner + 2 },
    };
    plan.push(Block::Base(head));
    let rest = if trailing_odd { &rest[1..] } else { rest };
    plan_rest(rest, plan);
}

/// Pairs consecutive levels `(2a, 2b)` with `a, b` odd into two-level blocks
/// and `(4, 4)` into four-blocks. Anything else is out of reach.
pub fn plan_lemma4(p: &LevelPattern) -> Result<DecompositionPlan> {
    let unsupported = |reason: String| Error::UnsupportedConstruction {
        pattern: p.clone(),
        reason,
    };
    if p.len() % 2 == 1 {
        return Err(unsupported("odd number of levels".into()));
    }
    let mut plan = DecompositionPlan::default();
    for pair in p.sizes().chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        let block = if a % 2 == 0 && b % 2 == 0 && (a / 2) % 2 == 1 && (b / 2) % 2 == 1 {
            Block::Base(BaseWitness::TwoLevel {
                s1: a / 2,
                s2: b / 2,
            })
        } else if (a, b) == (4, 4) {
            Block::FourBlock { pairs: 1 }
        } else {
            return Err(unsupported(format!(
                "no construction for the level pair ({a},{b})"
            )));
        };
        plan.push(block);
    }
    Ok(plan)
}

/// The plan `realize` would use, after classification.
pub fn plan_for(p: &LevelPattern) -> Result<DecompositionPlan> {
    let c = classify(p)?;
    match c.rule {
        Rule::NewLemma | Rule::NewTheorem => plan_decomposition(p),
        Rule::Lemma4 => plan_lemma4(p),
        Rule::Theorem3 => Err(Error::NotInRange(p.clone())),
        Rule::OddLevel => Err(Error::UnsupportedConstruction {
            pattern: p.clone(),
            reason: "patterns with an odd level are classified but not constructed".into(),
        }),
        Rule::None => Err(Error::UnsupportedConstruction {
            pattern: p.clone(),
            reason: "pattern is not classified".into(),
        }),
    }
}

/// A verified `n`-voter profile with pattern `p`, using the process-wide
/// witness cache for `(4,4)`.
pub fn realize(p: &LevelPattern, n: usize) -> Result<Profile> {
    realize_with(p, n, WitnessCache::global())
}

pub fn realize_with(p: &LevelPattern, n: usize, cache: &WitnessCache) -> Result<Profile> {
    if n.is_multiple_of(2) {
        return Err(Error::Parity(format!("realize needs odd n, got {n}")));
    }
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "realize needs n >= 3, got {n}"
        )));
    }
    let plan = plan_for(p)?;
    let four_four = if plan
        .blocks
        .iter()
        .any(|b| matches!(b, Block::FourBlock { .. }))
    {
        Some(cache.get_or_search(&four_four_pattern(), 3, &SearchConfig::default())?)
    } else {
        None
    };
    let built = plan
        .blocks
        .par_iter()
        .map(|block| match block {
            Block::Base(req) => construct_base(req),
            Block::FourBlock { pairs } => {
                let unit = four_four.as_ref().expect("fetched above");
                let mut u = Profile::empty(3)?;
                for _ in 0..*pairs {
                    u = u.catenate(unit)?;
                }
                Ok(u)
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut u = Profile::empty(3)?;
    for b in &built {
        u = u.catenate(b)?;
    }
    check_separation(&u, &built, p)?;
    let u = u.extend_to_odd_n(n)?;
    let produced = u.pattern();
    if &produced != p {
        return Err(Error::Construction {
            target: p.clone(),
            produced,
        });
    }
    Ok(u)
}

fn four_four_pattern() -> LevelPattern {
    LevelPattern::from_sizes_unchecked(vec![4, 4])
}

/// Every score of block `i` must sit strictly below every score of block `i+1`.
fn check_separation(u: &Profile, blocks: &[Profile], target: &LevelPattern) -> Result<()> {
    let scores = u.scores();
    let mut offset = 0;
    let mut prev_max = None;
    for b in blocks {
        let range = &scores.as_slice()[offset..offset + b.m()];
        let (lo, hi) = (*range.iter().min().unwrap(), *range.iter().max().unwrap());
        if prev_max.is_some_and(|p| p >= lo) {
            return Err(Error::Construction {
                target: target.clone(),
                produced: u.pattern(),
            });
        }
        prev_max = Some(hi);
        offset += b.m();
    }
    Ok(())
}
