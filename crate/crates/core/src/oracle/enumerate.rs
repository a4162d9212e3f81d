use super::space::{packed_pattern, unpack_sizes, ProfileSpace};
use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::profile::Profile;
use crate::ranking::Ranking;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::ops::ControlFlow;

pub use super::space::candidate_count;

/// Exhaustive runs are refused above this many `(m!)^(n-1)` candidates.
pub const DEFAULT_CANDIDATE_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasEntry {
    /// Number of visited profiles realizing the pattern.
    pub count: u64,
    /// Lexicographically smallest such profile.
    pub witness: Profile,
}

/// Every pattern reached at a fixed `(m, n)`, with one witness each.
#[derive(Clone, Debug, Serialize)]
pub struct RangeAtlas {
    pub m: usize,
    pub n: usize,
    pub mode: EnumerationMode,
    pub entries: BTreeMap<LevelPattern, AtlasEntry>,
}

impl RangeAtlas {
    pub fn contains(&self, p: &LevelPattern) -> bool {
        self.entries.contains_key(p)
    }

    pub fn get(&self, p: &LevelPattern) -> Option<&AtlasEntry> {
        self.entries.get(p)
    }

    pub fn patterns(&self) -> impl Iterator<Item = &LevelPattern> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == EnumerationMode::Exhaustive
    }

    /// `pattern,count_of_witnesses,min_witness_json`, one row per pattern.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["pattern", "count_of_witnesses", "min_witness_json"])?;
        for (p, e) in &self.entries {
            w.write_record([p.to_string(), e.count.to_string(), e.witness.to_json()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("atlas serialization is infallible")
    }
}

pub fn enumerate_range(m: usize, n: usize, mode: EnumerationMode) -> Result<RangeAtlas> {
    enumerate_range_with_budget(m, n, mode, DEFAULT_CANDIDATE_BUDGET)
}

pub fn enumerate_range_with_budget(
    m: usize,
    n: usize,
    mode: EnumerationMode,
    budget: u128,
) -> Result<RangeAtlas> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("need m >= 2, got {m}")));
    }
    if n.is_multiple_of(2) {
        return Err(Error::Parity(format!("enumeration needs odd n, got {n}")));
    }
    let entries = match mode {
        EnumerationMode::Exhaustive => {
            let needed = candidate_count(m, n);
            if needed > budget {
                return Err(Error::BudgetExceeded {
                    needed,
                    limit: budget,
                });
            }
            exhaustive(m, n)?
        }
        EnumerationMode::Sampled { trials, seed } => sampled(m, n, trials, seed),
    };
    let atlas = RangeAtlas {
        m,
        n,
        mode,
        entries,
    };
    debug_assert!(atlas
        .entries
        .iter()
        .all(|(p, e)| &e.witness.pattern() == p && e.witness.m() == m && e.witness.n() == n));
    Ok(atlas)
}

type Tally = HashMap<u64, (u64, Vec<u32>)>;

fn merge(mut a: Tally, b: Tally) -> Tally {
    for (key, (count, idx)) in b {
        a.entry(key)
            .and_modify(|(c, best)| {
                *c += count;
                if idx < *best {
                    *best = idx.clone();
                }
            })
            .or_insert((count, idx));
    }
    a
}

fn exhaustive(m: usize, n: usize) -> Result<BTreeMap<LevelPattern, AtlasEntry>> {
    let space = ProfileSpace::new(m, n)?;
    let tally = space
        .roots()
        .into_par_iter()
        .map(|root| {
            let mut local = Tally::new();
            let _ = space.walk_root(root, &mut |scores, idx| {
                local
                    .entry(packed_pattern(scores))
                    .and_modify(|(c, _)| *c += 1)
                    .or_insert_with(|| (1, idx.to_vec()));
                ControlFlow::Continue(())
            });
            local
        })
        .reduce(Tally::new, merge);
    Ok(tally
        .into_iter()
        .map(|(key, (count, idx))| {
            let pattern = LevelPattern::from_sizes_unchecked(unpack_sizes(key));
            let witness = space.profile(&idx);
            (pattern, AtlasEntry { count, witness })
        })
        .collect())
}

/// Uniform random ballots for voters `2..=n`; voter 1 stays the identity.
pub(crate) fn random_profile(m: usize, n: usize, rng: &mut ChaCha8Rng) -> Profile {
    let mut rankings = vec![Ranking::identity(m)];
    for _ in 1..n {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        rankings.push(Ranking::new(order).expect("shuffled identity"));
    }
    Profile::new(m, rankings).expect("consistent sizes")
}

fn sampled(m: usize, n: usize, trials: u64, seed: u64) -> BTreeMap<LevelPattern, AtlasEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries: BTreeMap<LevelPattern, AtlasEntry> = BTreeMap::new();
    for _ in 0..trials {
        let u = random_profile(m, n, &mut rng);
        let p = u.pattern();
        match entries.get_mut(&p) {
            Some(e) => {
                e.count += 1;
                if u < e.witness {
                    e.witness = u;
                }
            }
            None => {
                entries.insert(
                    p,
                    AtlasEntry {
                        count: 1,
                        witness: u,
                    },
                );
            }
        }
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use std::collections::BTreeSet;

    fn pats(list: &[&str]) -> BTreeSet<LevelPattern> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn achieved(atlas: &RangeAtlas) -> BTreeSet<LevelPattern> {
        atlas.patterns().cloned().collect()
    }

    /// Every profile, no symmetry reduction at all.
    fn brute_force_patterns(m: usize, n: usize) -> BTreeSet<LevelPattern> {
        let perms: Vec<Vec<usize>> = (0..m).permutations(m).collect();
        (0..n)
            .map(|_| perms.iter())
            .multi_cartesian_product()
            .map(|ballots| {
                let mut scores = vec![0u64; m];
                for b in ballots {
                    for (pos, &x) in b.iter().enumerate() {
                        scores[x] += pos as u64 + 1;
                    }
                }
                let mut sorted = scores.clone();
                sorted.sort_unstable();
                let sizes = sorted.chunk_by(|a, b| a == b).map(<[u64]>::len).collect();
                LevelPattern::new(sizes).unwrap()
            })
            .collect()
    }

    #[test]
    fn three_alternatives_three_voters() {
        let atlas = enumerate_range(3, 3, EnumerationMode::Exhaustive).unwrap();
        assert_eq!(achieved(&atlas), pats(&["3", "1,2", "2,1", "1,1,1"]));
        assert_eq!(atlas.entries.values().map(|e| e.count).sum::<u64>(), 36);
        let cyclic = &atlas.get(&"3".parse().unwrap()).unwrap().witness;
        assert_eq!(cyclic.scores().as_slice(), &[6, 6, 6]);
    }

    #[test]
    fn four_alternatives_miss_only_the_single_level() {
        let atlas = enumerate_range(4, 3, EnumerationMode::Exhaustive).unwrap();
        let all: BTreeSet<_> = LevelPattern::compositions(4).into_iter().collect();
        let got = achieved(&atlas);
        let missing: Vec<_> = all.difference(&got).collect();
        assert_eq!(missing, vec![&"4".parse::<LevelPattern>().unwrap()]);
    }

    #[test]
    fn two_alternatives() {
        let atlas = enumerate_range(2, 3, EnumerationMode::Exhaustive).unwrap();
        assert_eq!(achieved(&atlas), pats(&["1,1"]));
    }

    #[test]
    fn neutrality_reduction_loses_nothing() {
        for m in 2..=4 {
            let atlas = enumerate_range(m, 3, EnumerationMode::Exhaustive).unwrap();
            assert_eq!(achieved(&atlas), brute_force_patterns(m, 3), "m={m}");
        }
    }

    #[test]
    fn anonymity_reduction_loses_nothing() {
        for m in 2..=3 {
            let atlas = enumerate_range(m, 5, EnumerationMode::Exhaustive).unwrap();
            assert_eq!(achieved(&atlas), brute_force_patterns(m, 5), "m={m}");
        }
    }

    #[test]
    fn witnesses_are_minimal_and_verified() {
        let atlas = enumerate_range(4, 3, EnumerationMode::Exhaustive).unwrap();
        let space = ProfileSpace::new(4, 3).unwrap();
        // first leaf in lexicographic order per pattern
        let mut first: BTreeMap<LevelPattern, Profile> = BTreeMap::new();
        for root in space.roots() {
            let _ = space.walk_root(root, &mut |_, idx| {
                let u = space.profile(idx);
                first.entry(u.pattern()).or_insert(u);
                ControlFlow::Continue(())
            });
        }
        for (p, e) in &atlas.entries {
            assert_eq!(&e.witness.pattern(), p);
            assert_eq!(e.witness.voter(1).unwrap(), &Ranking::identity(4));
            assert_eq!(&e.witness, &first[p]);
        }
    }

    #[test]
    fn sampled_is_a_subset_of_exhaustive() {
        for m in 3..=5 {
            let full = achieved(&enumerate_range(m, 3, EnumerationMode::Exhaustive).unwrap());
            let mode = EnumerationMode::Sampled {
                trials: 2000,
                seed: 7,
            };
            let sample = enumerate_range(m, 3, mode).unwrap();
            assert!(achieved(&sample).is_subset(&full));
            let again = enumerate_range(m, 3, mode).unwrap();
            assert_eq!(sample.to_json(), again.to_json());
        }
    }

    #[test]
    fn budget_and_parity() {
        assert!(matches!(
            enumerate_range_with_budget(6, 3, EnumerationMode::Exhaustive, 1000),
            Err(Error::BudgetExceeded {
                needed: 518_400,
                limit: 1000
            })
        ));
        assert!(matches!(
            enumerate_range(3, 2, EnumerationMode::Exhaustive),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn csv_export() {
        let atlas = enumerate_range(2, 3, EnumerationMode::Exhaustive).unwrap();
        let mut buf = Vec::new();
        atlas.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("pattern,count_of_witnesses,min_witness_json")
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("\"1,1\",4,"), "{row}");
        assert!(lines.next().is_none());
    }
}
