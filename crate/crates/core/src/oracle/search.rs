//! Witness search for a single pattern.
//!
//! Small spaces are walked exhaustively (so failure proves absence). Larger
//! ones fall back to randomized restarts of a local search that swaps
//! adjacent alternatives in the ballots of voters `2..=n`.

use super::enumerate::{candidate_count, random_profile, DEFAULT_CANDIDATE_BUDGET};
use super::space::{pack_sizes, packed_pattern, ProfileSpace};
use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::profile::Profile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::ops::ControlFlow;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Walk the space exhaustively when `(m!)^(n-1)` is at most this.
    pub exhaustive_limit: u128,
    pub restarts: u64,
    /// Moves per restart; `0` picks a size-dependent default.
    pub steps_per_restart: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            exhaustive_limit: DEFAULT_CANDIDATE_BUDGET,
            restarts: 1_000_000,
            steps_per_restart: 0,
            seed: 0,
        }
    }
}

/// Probability of taking a move that makes the objective worse.
const UPHILL_PROBABILITY: f64 = 0.02;

/// Necessary condition: integers `S_1 < .. < S_T` in `[n, n m]` with
/// `sum(m_i S_i) = n m (m + 1) / 2`.
///
/// Writing `S_i = n + (i - 1) + d_i` with `0 <= d_1 <= .. <= d_T <= slack`,
/// the reachable sums are `base + sum(e_j M_j)` where `M_j` are suffix sums of
/// the level sizes, `e_j >= 0` and `sum(e_j) <= slack`. A coin-change table
/// with fewest coins decides it.
pub fn score_multiset_feasible(p: &LevelPattern, n: usize) -> bool {
    let (m, t) = (p.total(), p.len());
    let total = n * m * (m + 1) / 2;
    if t > n * m - n + 1 {
        return false;
    }
    let slack = n * m - n - (t - 1);
    let base: usize = p
        .sizes()
        .iter()
        .enumerate()
        .map(|(i, &mi)| mi * (n + i))
        .sum();
    let Some(target) = total.checked_sub(base) else {
        return false;
    };
    let coins: Vec<usize> = (0..t).map(|j| p.sizes()[j..].iter().sum()).collect();
    let mut fewest = vec![usize::MAX; target + 1];
    fewest[0] = 0;
    for v in 1..=target {
        for &c in &coins {
            if c <= v && fewest[v - c] != usize::MAX {
                fewest[v] = fewest[v].min(fewest[v - c] + 1);
            }
        }
    }
    fewest[target] <= slack
}

pub fn search_witness(p: &LevelPattern, n: usize, config: &SearchConfig) -> Result<Profile> {
    let m = p.total();
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one voter".into()));
    }
    let exhaustive = candidate_count(m, n) <= config.exhaustive_limit;
    let not_found = || Error::NotFound {
        pattern: p.clone(),
        n,
        exhaustive,
    };
    if !score_multiset_feasible(p, n) {
        return Err(Error::NotFound {
            pattern: p.clone(),
            n,
            exhaustive: true,
        });
    }
    let found = if exhaustive {
        exhaustive_search(p, n)?
    } else {
        local_search(p, n, config)
    };
    let profile = found.ok_or_else(not_found)?;
    debug_assert_eq!(&profile.pattern(), p);
    Ok(profile)
}

fn exhaustive_search(p: &LevelPattern, n: usize) -> Result<Option<Profile>> {
    let Some(key) = pack_sizes(p.sizes()) else {
        return Ok(None);
    };
    let space = ProfileSpace::new(p.total(), n)?;
    Ok(space.roots().into_par_iter().find_map_first(|root| {
        let mut hit = None;
        let _ = space.walk_root(root, &mut |scores, idx| {
            if packed_pattern(scores) == key {
                hit = Some(space.profile(idx));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        hit
    }))
}

/// Zero exactly when the scores realize `sizes`: after sorting, each group of
/// `m_i` consecutive scores must be constant (`m_i * sum(s^2) - (sum s)^2`
/// measures the spread) and neighbouring groups must differ.
fn objective(scores: &[i64], sizes: &[usize], sorted: &mut Vec<i64>) -> i64 {
    sorted.clear();
    sorted.extend_from_slice(scores);
    sorted.sort_unstable();
    let mut cost = 0;
    let mut start = 0;
    for (g, &len) in sizes.iter().enumerate() {
        let group = &sorted[start..start + len];
        let sum: i64 = group.iter().sum();
        let sq: i64 = group.iter().map(|s| s * s).sum();
        cost += len as i64 * sq - sum * sum;
        if g + 1 < sizes.len() && group[len - 1] == sorted[start + len] {
            cost += 1;
        }
        start += len;
    }
    cost
}

fn local_search(p: &LevelPattern, n: usize, config: &SearchConfig) -> Option<Profile> {
    let m = p.total();
    let steps = match config.steps_per_restart {
        0 => (200 * m * m * n) as u64,
        s => s,
    };
    let mut sorted = Vec::with_capacity(m);
    for restart in 0..config.restarts {
        let mut rng =
            ChaCha8Rng::seed_from_u64(config.seed ^ restart.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let start = random_profile(m, n, &mut rng);
        if n == 1 || m < 2 {
            return (&start.pattern() == p).then_some(start);
        }
        let mut orders: Vec<Vec<usize>> = start
            .rankings()
            .iter()
            .map(|r| r.order().to_vec())
            .collect();
        let mut scores: Vec<i64> = start
            .scores()
            .as_slice()
            .iter()
            .map(|&s| s as i64)
            .collect();
        let mut cost = objective(&scores, p.sizes(), &mut sorted);
        for _ in 0..steps {
            if cost == 0 {
                break;
            }
            let voter = rng.random_range(1..n);
            let pos = rng.random_range(0..m - 1);
            let (down, up) = (orders[voter][pos], orders[voter][pos + 1]);
            scores[down] += 1;
            scores[up] -= 1;
            let next = objective(&scores, p.sizes(), &mut sorted);
            if next <= cost || rng.random_bool(UPHILL_PROBABILITY) {
                orders[voter].swap(pos, pos + 1);
                cost = next;
            } else {
                scores[down] -= 1;
                scores[up] += 1;
            }
        }
        if cost == 0 {
            log::debug!("found {p} at n={n} after {} restarts", restart + 1);
            return Some(Profile::from_orders(m, orders).expect("swaps keep permutations"));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> LevelPattern {
        s.parse().unwrap()
    }

    #[test]
    fn objective_is_zero_only_on_target() {
        let mut buf = Vec::new();
        assert_eq!(objective(&[7, 7, 8, 8], &[2, 2], &mut buf), 0);
        assert!(objective(&[7, 7, 8, 8], &[1, 3], &mut buf) > 0);
        // one level of four: adjacent groups must not merge
        assert!(objective(&[7, 7, 7, 7], &[2, 2], &mut buf) > 0);
        assert_eq!(objective(&[7, 7, 7, 7], &[4], &mut buf), 0);
    }

    #[test]
    fn feasibility_prefilter() {
        // 2 S_1 = 9 has no solution
        assert!(!score_multiset_feasible(&pat("2"), 3));
        assert!(!score_multiset_feasible(&pat("4"), 3));
        assert!(score_multiset_feasible(&pat("1,1"), 3));
        assert!(score_multiset_feasible(&pat("4,4"), 3));
        assert!(score_multiset_feasible(&pat("3"), 3));
        // too many levels for the score interval [1, 2] at n = 1, m = 2: fine
        assert!(score_multiset_feasible(&pat("1,1"), 1));
        assert!(!score_multiset_feasible(&pat("2"), 1));
    }

    #[test]
    fn feasibility_matches_brute_force() {
        // enumerate strictly increasing score tuples directly
        fn brute(p: &LevelPattern, n: usize) -> bool {
            let m = p.total();
            let total = n * m * (m + 1) / 2;
            fn rec(sizes: &[usize], lo: usize, hi: usize, left: usize) -> bool {
                match sizes.split_first() {
                    None => left == 0,
                    Some((&mi, rest)) => {
                        (lo..=hi).any(|s| mi * s <= left && rec(rest, s + 1, hi, left - mi * s))
                    }
                }
            }
            rec(p.sizes(), n, n * m, total)
        }
        for m in 1..=7 {
            for p in LevelPattern::compositions(m) {
                for n in [1, 3, 5] {
                    assert_eq!(score_multiset_feasible(&p, n), brute(&p, n), "{p} n={n}");
                }
            }
        }
    }

    #[test]
    fn exhaustive_small_cases() {
        let u = search_witness(&pat("1,1"), 3, &SearchConfig::default()).unwrap();
        assert_eq!(u.pattern(), pat("1,1"));
        let u = search_witness(&pat("2,2"), 3, &SearchConfig::default()).unwrap();
        assert_eq!(u.pattern(), pat("2,2"));
        assert!(matches!(
            search_witness(&pat("2,4"), 3, &SearchConfig::default()),
            Err(Error::NotFound {
                exhaustive: true,
                ..
            })
        ));
    }

    #[test]
    fn local_search_finds_small_patterns() {
        let config = SearchConfig {
            exhaustive_limit: 0,
            restarts: 50,
            ..SearchConfig::default()
        };
        for s in ["2,2", "1,2,1", "3,3", "2,2,2,2"] {
            let u = search_witness(&pat(s), 3, &config).unwrap();
            assert_eq!(u.pattern(), pat(s));
        }
    }

    #[test]
    fn local_search_is_deterministic() {
        let config = SearchConfig {
            exhaustive_limit: 0,
            restarts: 50,
            seed: 11,
            ..SearchConfig::default()
        };
        let a = search_witness(&pat("2,3,2"), 3, &config).unwrap();
        let b = search_witness(&pat("2,3,2"), 3, &config).unwrap();
        assert_eq!(a, b);
    }
}
