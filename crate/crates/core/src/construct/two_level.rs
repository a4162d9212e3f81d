//! The three-voter base profile for two-level patterns `(2 s1, 2 s2)` with
//! `s1`, `s2` odd.
//!
//! With `S = s1 + s2` the alternatives (1-based, `x_1..x_2S`) split into two
//! halves of `S`. In each half the first `s1` form the better level and the
//! remaining `s2` the worse one. Voter 1 ranks `x_1` through `x_2S` in order.
//! Voters 2 and 3 list runs of same-parity alternatives in descending order:
//!
//! ```text
//! voter 2: even (S+2 ..= S+s1-1), even (S+s1+1 ..= 2S), even (2 ..= s1-1),
//!          even (s1+1 ..= S), then every odd alternative
//! voter 3: odd (S+1 ..= S+s1), odd (S+s1+2 ..= 2S-1), odd (1 ..= s1),
//!          odd (s1+2 ..= S-1), then every even alternative
//! ```
//!
//! The two levels end up exactly `(s1 + s2) / 2` apart.

use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::profile::Profile;

/// Descending run of `lo..=hi` restricted to one parity, 1-based.
fn descending(lo: usize, hi: usize, odd: bool) -> impl Iterator<Item = usize> {
    (lo.max(1)..=hi).rev().filter(move |i| (i % 2 == 1) == odd)
}

/// 1-based orders of voters 2 and 3.
pub(crate) fn base_voters(s1: usize, s2: usize) -> [Vec<usize>; 2] {
    let s = s1 + s2;
    let voter2 = descending(s + 2, s + s1 - 1, false)
        .chain(descending(s + s1 + 1, 2 * s, false))
        .chain(descending(2, s1 - 1, false))
        .chain(descending(s1 + 1, s, false))
        .chain(descending(1, 2 * s, true))
        .collect();
    let voter3 = descending(s + 1, s + s1, true)
        .chain(descending(s + s1 + 2, 2 * s - 1, true))
        .chain(descending(1, s1, true))
        .chain(descending(s1 + 2, s - 1, true))
        .chain(descending(1, 2 * s, false))
        .collect();
    [voter2, voter3]
}

/// Builds a 3-voter profile from 1-based orders.
pub(crate) fn from_one_based(voter1: &[usize], rest: &[Vec<usize>; 2]) -> Profile {
    let m = voter1.len();
    let orders = std::iter::once(voter1)
        .chain(rest.iter().map(Vec::as_slice))
        .map(|o| o.iter().map(|x| x - 1).collect())
        .collect();
    Profile::from_orders(m, orders).expect("base voters are permutations")
}

pub(crate) fn check_odd(name: &str, value: usize) -> Result<()> {
    if value == 0 || value.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "{name} must be an odd positive integer, got {value}"
        )));
    }
    Ok(())
}

pub fn construct_two_level(s1: usize, s2: usize) -> Result<Profile> {
    check_odd("s1", s1)?;
    check_odd("s2", s2)?;
    let voter1: Vec<usize> = (1..=2 * (s1 + s2)).collect();
    let profile = from_one_based(&voter1, &base_voters(s1, s2));

    let target = LevelPattern::from_sizes_unchecked(vec![2 * s1, 2 * s2]);
    let wo = profile.weak_order();
    let gap_ok = wo.level_scores().len() == 2
        && wo.level_scores()[1] - wo.level_scores()[0] == ((s1 + s2) / 2) as u64;
    let produced = profile.pattern();
    if produced != target || !gap_ok {
        return Err(Error::Construction { target, produced });
    }
    Ok(profile)
}
