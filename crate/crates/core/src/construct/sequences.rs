//! Witnesses for the four single-block shapes with exactly two levels of size 2:
//!
//! * I   `(2, 4, .., 4, 2)`
//! * II  `(4, 2, 4, .., 4, 2)`
//! * III `(2, 4, .., 4, 2, 4)`, the inversion of II
//! * IV  `(4, 2, 4, .., 4, 2, 4)`
//!
//! Each family starts from the two-level base profile for the merged pattern
//! and rewrites only voter 1. Voter 1's ranking consists of two identical
//! halves; within a half the better-level block and the worse-level block are
//! each re-ordered so that pairs of alternatives split off into separate
//! levels. The per-half pattern is then doubled across halves, turning 1s
//! into 2s and 2s into 4s.
//!
//! With an odd number of 4s the better block is two longer than the worse
//! one and the bottom pair `{x_1, x_2}` can tie with a worse-block pair. That
//! collision is resolved by sliding `{x_1, x_2}` into the worse block.

use super::appendix::appendix_witness;
use super::two_level::{base_voters, construct_two_level, from_one_based};
use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::profile::Profile;

pub fn seq_i_target(fours: usize) -> LevelPattern {
    let mut sizes = vec![2];
    sizes.extend(std::iter::repeat_n(4, fours));
    sizes.push(2);
    LevelPattern::from_sizes_unchecked(sizes)
}

pub fn seq_ii_target(fours: usize) -> LevelPattern {
    assert!(fours >= 1);
    let mut sizes = vec![4, 2];
    sizes.extend(std::iter::repeat_n(4, fours - 1));
    sizes.push(2);
    LevelPattern::from_sizes_unchecked(sizes)
}

pub fn seq_iii_target(fours: usize) -> LevelPattern {
    seq_ii_target(fours).reversed()
}

pub fn seq_iv_target(fours: usize) -> LevelPattern {
    assert!(fours >= 2);
    let mut sizes = vec![4, 2];
    sizes.extend(std::iter::repeat_n(4, fours - 2));
    sizes.extend([2, 4]);
    LevelPattern::from_sizes_unchecked(sizes)
}

// Block orders below use 1-based offsets within the block.

/// `x_n`, then pairs `(x_{n-2}, x_{n-1}), .., (x_1, x_2)`.
fn singleton_on_top(n: usize) -> Vec<usize> {
    debug_assert!(n % 2 == 1);
    let mut out = vec![n];
    for a in (1..n.saturating_sub(1)).rev().step_by(2) {
        out.extend([a, a + 1]);
    }
    out
}

/// `(x_{n-1}, x_n)`, `x_{n-2}`, then pairs down to `(x_1, x_2)`.
fn pair_then_singleton_on_top(n: usize) -> Vec<usize> {
    debug_assert!(n % 2 == 1 && n >= 3);
    let mut out = vec![n - 1, n, n - 2];
    for a in (1..n - 3).rev().step_by(2) {
        out.extend([a, a + 1]);
    }
    out
}

/// Pairs `(x_{n-1}, x_n), .., (x_2, x_3)`, then `x_1` at the bottom.
fn singleton_at_bottom(n: usize) -> Vec<usize> {
    debug_assert!(n % 2 == 1);
    let mut out = Vec::with_capacity(n);
    for a in (2..n).rev().step_by(2) {
        out.extend([a, a + 1]);
    }
    out.push(1);
    out
}

/// Pairs `(x_{n-1}, x_n), .., (x_4, x_5)`, then `x_3`, then `x_1, x_2`.
fn singleton_and_pair_at_bottom(n: usize) -> Vec<usize> {
    debug_assert!(n % 2 == 1 && n >= 5);
    let mut out = Vec::with_capacity(n);
    for a in (4..n).rev().step_by(2) {
        out.extend([a, a + 1]);
    }
    out.extend([3, 1, 2]);
    out
}

#[derive(Clone, Copy)]
struct Rewrite {
    better: fn(usize) -> Vec<usize>,
    worse: fn(usize) -> Vec<usize>,
}

const SEQ_I: Rewrite = Rewrite {
    better: singleton_on_top,
    worse: singleton_at_bottom,
};
const SEQ_II: Rewrite = Rewrite {
    better: pair_then_singleton_on_top,
    worse: singleton_at_bottom,
};
const SEQ_IV: Rewrite = Rewrite {
    better: pair_then_singleton_on_top,
    worse: singleton_and_pair_at_bottom,
};

struct Rewriter {
    s1: usize,
    s2: usize,
    rest: [Vec<usize>; 2],
    target: LevelPattern,
}

impl Rewriter {
    fn new(s1: usize, s2: usize, target: LevelPattern) -> Self {
        Self {
            s1,
            s2,
            rest: base_voters(s1, s2),
            target,
        }
    }

    fn half(&self) -> usize {
        self.s1 + self.s2
    }

    /// Profile whose voter 1 repeats `half_order` in both halves.
    fn profile(&self, half_order: &[usize]) -> Profile {
        let s = self.half();
        let voter1: Vec<usize> = half_order
            .iter()
            .copied()
            .chain(half_order.iter().map(|x| x + s))
            .collect();
        from_one_based(&voter1, &self.rest)
    }

    fn verify(&self, profile: Profile) -> Result<Profile> {
        let produced = profile.pattern();
        if produced != self.target {
            return Err(Error::Construction {
                target: self.target.clone(),
                produced,
            });
        }
        Ok(profile)
    }

    fn build(&self, rewrite: Rewrite, resolve_collision: bool) -> Result<Profile> {
        let mut half_order = (rewrite.better)(self.s1);
        half_order.extend((rewrite.worse)(self.s2).into_iter().map(|x| x + self.s1));
        if resolve_collision {
            return self.slide_bottom_pair(half_order);
        }
        self.verify(self.profile(&half_order))
    }

    /// Finds the worse-block level whose score improved by exactly one against
    /// the base profile; that level ties with `{x_1, x_2}`. The pair is placed
    /// directly below it and moved down two places at a time until the level
    /// structure is the target. If no downward slot works, the slot directly
    /// above the level is tried last.
    fn slide_bottom_pair(&self, half_order: Vec<usize>) -> Result<Profile> {
        let s = self.half();
        let identity: Vec<usize> = (1..=s).collect();
        let before = self.profile(&identity).scores();
        let rewritten = self.profile(&half_order);
        let after = rewritten.scores();

        let tied: Vec<usize> = (self.s1 + 1..=s)
            .filter(|&x| before.get(x - 1) == after.get(x - 1) + 1)
            .collect();
        if tied.is_empty() {
            return self.verify(rewritten);
        }

        let mut order: Vec<usize> = half_order.into_iter().filter(|&x| x > 2).collect();
        let position = |x: usize, order: &[usize]| order.iter().position(|&y| y == x).unwrap();
        let top_of_level = tied.iter().map(|&x| position(x, &order)).min().unwrap();
        let below_level = tied.iter().map(|&x| position(x, &order)).max().unwrap() + 1;

        let slots = (below_level..=order.len())
            .step_by(2)
            .chain(std::iter::once(top_of_level));
        let mut last = None;
        for slot in slots {
            order.splice(slot..slot, [1, 2]);
            let candidate = self.profile(&order);
            order.drain(slot..slot + 2);
            match self.verify(candidate) {
                Ok(profile) => return Ok(profile),
                Err(e) => last = Some(e),
            }
        }
        Err(last.expect("at least one slot is tried"))
    }
}

/// `(2, 4 x fours, 2)`. Zero fours is the `(2,2)` base profile.
pub fn construct_seq_i(fours: usize) -> Result<Profile> {
    if fours == 0 {
        return construct_two_level(1, 1);
    }
    let k = fours / 2;
    let target = seq_i_target(fours);
    if fours.is_multiple_of(2) {
        Rewriter::new(2 * k + 1, 2 * k + 1, target).build(SEQ_I, false)
    } else {
        Rewriter::new(2 * k + 3, 2 * k + 1, target).build(SEQ_I, true)
    }
}

/// `(4, 2, 4 x (fours - 1), 2)`.
pub fn construct_seq_ii(fours: usize) -> Result<Profile> {
    if fours == 0 {
        return Err(Error::InvalidParameter(
            "sequence II needs at least one 4".into(),
        ));
    }
    let target = seq_ii_target(fours);
    let k = fours / 2;
    match fours {
        1 | 2 => appendix_witness(&target),
        _ if fours.is_multiple_of(2) => {
            Rewriter::new(2 * k + 1, 2 * k + 1, target).build(SEQ_II, false)
        }
        _ => Rewriter::new(2 * k + 3, 2 * k + 1, target).build(SEQ_II, true),
    }
}

/// `(2, 4 x (fours - 1), 2, 4)`: every ballot of the sequence II witness reversed.
pub fn construct_seq_iii(fours: usize) -> Result<Profile> {
    let profile = construct_seq_ii(fours)?.inverted();
    let target = seq_iii_target(fours);
    let produced = profile.pattern();
    if produced != target {
        return Err(Error::Construction { target, produced });
    }
    Ok(profile)
}

/// `(4, 2, 4 x (fours - 2), 2, 4)`.
pub fn construct_seq_iv(fours: usize) -> Result<Profile> {
    if fours < 2 {
        return Err(Error::InvalidParameter(
            "sequence IV needs at least two 4s".into(),
        ));
    }
    let target = seq_iv_target(fours);
    let k = fours / 2;
    match fours {
        2 | 3 => appendix_witness(&target),
        _ if fours.is_multiple_of(2) => {
            Rewriter::new(2 * k + 1, 2 * k + 1, target).build(SEQ_IV, false)
        }
        _ => Rewriter::new(2 * k + 3, 2 * k + 1, target).build(SEQ_IV, true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_orders() {
        assert_eq!(singleton_on_top(1), vec![1]);
        assert_eq!(singleton_on_top(5), vec![5, 3, 4, 1, 2]);
        assert_eq!(pair_then_singleton_on_top(3), vec![2, 3, 1]);
        assert_eq!(pair_then_singleton_on_top(7), vec![6, 7, 5, 3, 4, 1, 2]);
        assert_eq!(singleton_at_bottom(1), vec![1]);
        assert_eq!(singleton_at_bottom(5), vec![4, 5, 2, 3, 1]);
        assert_eq!(singleton_and_pair_at_bottom(7), vec![6, 7, 4, 5, 3, 1, 2]);
    }

    #[test]
    fn targets() {
        assert_eq!(seq_i_target(0).to_string(), "2,2");
        assert_eq!(seq_i_target(3).to_string(), "2,4,4,4,2");
        assert_eq!(seq_ii_target(1).to_string(), "4,2,2");
        assert_eq!(seq_ii_target(4).to_string(), "4,2,4,4,4,2");
        assert_eq!(seq_iii_target(3).to_string(), "2,4,4,2,4");
        assert_eq!(seq_iv_target(2).to_string(), "4,2,2,4");
        assert_eq!(seq_iv_target(4).to_string(), "4,2,4,4,2,4");
    }

    #[test]
    fn sequence_i_small_cases() {
        assert_eq!(construct_seq_i(0).unwrap().pattern().to_string(), "2,2");
        let u = construct_seq_i(2).unwrap();
        assert_eq!((u.m(), u.pattern().to_string()), (12, "2,4,4,2".into()));
        let u = construct_seq_i(3).unwrap();
        assert_eq!((u.m(), u.pattern().to_string()), (16, "2,4,4,4,2".into()));
    }

    #[test]
    fn sequence_i_even_top_and_bottom_levels() {
        // the singleton at the top of each better block, the singleton at the
        // bottom of each worse block
        for k in 1..=3 {
            let u = construct_seq_i(2 * k).unwrap();
            let s = 4 * k + 2;
            let levels = u.weak_order();
            let top = 2 * k; // x_{2k+1}
            let bottom = 2 * k + 1; // x_{(2k+1)+1}
            assert_eq!(levels.levels()[0], vec![top, top + s]);
            assert_eq!(levels.levels().last().unwrap(), &vec![bottom, bottom + s]);
        }
    }

    #[test]
    fn sequence_ii_and_iii() {
        let u = construct_seq_ii(2).unwrap();
        assert_eq!(u, appendix_witness(&"4,2,4,2".parse().unwrap()).unwrap());
        let u = construct_seq_ii(3).unwrap();
        assert_eq!((u.m(), u.pattern().to_string()), (16, "4,2,4,4,2".into()));
        let u = construct_seq_ii(4).unwrap();
        assert_eq!((u.m(), u.pattern().to_string()), (20, "4,2,4,4,4,2".into()));
        assert_eq!(construct_seq_iii(1).unwrap().pattern().to_string(), "2,2,4");
        assert_eq!(
            construct_seq_iii(2).unwrap().pattern().to_string(),
            "2,4,2,4"
        );
        assert_eq!(
            construct_seq_iii(3).unwrap().pattern().to_string(),
            "2,4,4,2,4"
        );
    }

    #[test]
    fn sequence_iii_is_alternative_wise_inversion() {
        for fours in 1..=6 {
            assert_eq!(
                construct_seq_iii(fours).unwrap(),
                construct_seq_ii(fours).unwrap().inverted()
            );
        }
    }

    #[test]
    fn sequence_iv() {
        assert_eq!(
            construct_seq_iv(2).unwrap().pattern().to_string(),
            "4,2,2,4"
        );
        assert_eq!(
            construct_seq_iv(3).unwrap().pattern().to_string(),
            "4,2,4,2,4"
        );
        let u = construct_seq_iv(4).unwrap();
        assert_eq!((u.m(), u.pattern().to_string()), (20, "4,2,4,4,2,4".into()));
    }

    #[test]
    fn sequence_iv_seven_needs_the_upper_slot() {
        // sliding the pair below the tied level pushes it past the worse
        // block's singleton; only the slot above the level works
        let u = construct_seq_iv(7).unwrap();
        assert_eq!(u.pattern(), seq_iv_target(7));
    }

    #[test]
    fn rewrites_touch_only_voter_one() {
        for fours in 3..=8 {
            for (u, odd_extra) in [
                (construct_seq_i(fours).unwrap(), fours % 2),
                (construct_seq_ii(fours).unwrap(), fours % 2),
                (construct_seq_iv(fours + 1).unwrap(), (fours + 1) % 2),
            ] {
                // recover (s1, s2) from m and the parity of the 4 count
                let s = u.m() / 2;
                let s2 = if odd_extra == 1 { (s - 2) / 2 } else { s / 2 };
                let s1 = s - s2;
                let v = construct_two_level(s1, s2).unwrap();
                assert_eq!(&u.rankings()[1..], &v.rankings()[1..]);
            }
        }
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(
            construct_seq_ii(0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            construct_seq_iii(0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            construct_seq_iv(1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn larger_families_verify() {
        for fours in 0..=15 {
            assert_eq!(
                construct_seq_i(fours).unwrap().pattern(),
                seq_i_target(fours)
            );
        }
        for fours in 1..=15 {
            assert_eq!(
                construct_seq_ii(fours).unwrap().pattern(),
                seq_ii_target(fours)
            );
            assert_eq!(
                construct_seq_iii(fours).unwrap().pattern(),
                seq_iii_target(fours)
            );
        }
        for fours in 2..=15 {
            assert_eq!(
                construct_seq_iv(fours).unwrap().pattern(),
                seq_iv_target(fours)
            );
        }
    }
}
