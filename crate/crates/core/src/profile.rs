//! Preference profiles and the three combinators used to assemble witnesses:
//! inversion, catenation and odd-n padding.

use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::ranking::Ranking;
use crate::scoring::{self, ScoreVector, WeakOrder};
use serde::{Deserialize, Serialize};

/// `n` strict rankings over the alternatives `0..m`.
///
/// Profiles are immutable; every combinator returns a new value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ProfileJson", into = "ProfileJson")]
pub struct Profile {
    m: usize,
    rankings: Vec<Ranking>,
}

/// Wire form: `{"m": .., "n": .., "rankings": [[top, .., bottom], ..]}`.
/// Field order is alphabetical so serialized output is canonical.
#[derive(Serialize, Deserialize)]
struct ProfileJson {
    m: usize,
    n: usize,
    rankings: Vec<Vec<usize>>,
}

impl TryFrom<ProfileJson> for Profile {
    type Error = Error;

    fn try_from(raw: ProfileJson) -> Result<Self> {
        if raw.rankings.len() != raw.n {
            return Err(Error::InvalidProfile(format!(
                "n={} but {} rankings given",
                raw.n,
                raw.rankings.len()
            )));
        }
        Profile::from_orders(raw.m, raw.rankings)
    }
}

impl From<Profile> for ProfileJson {
    fn from(p: Profile) -> Self {
        ProfileJson {
            m: p.m,
            n: p.rankings.len(),
            rankings: p.rankings.into_iter().map(Ranking::into_order).collect(),
        }
    }
}

impl Profile {
    pub fn new(m: usize, rankings: Vec<Ranking>) -> Result<Self> {
        if rankings.is_empty() {
            return Err(Error::InvalidProfile(
                "a profile needs at least one voter".into(),
            ));
        }
        if let Some((i, r)) = rankings.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::InvalidProfile(format!(
                "voter {} ranks {} alternatives, expected {m}",
                i + 1,
                r.len()
            )));
        }
        Ok(Self { m, rankings })
    }

    pub fn from_orders(m: usize, orders: Vec<Vec<usize>>) -> Result<Self> {
        let rankings = orders
            .into_iter()
            .map(Ranking::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, rankings)
    }

    /// `n` voters over zero alternatives; the neutral element of [`Profile::catenate`].
    pub fn empty(n: usize) -> Result<Self> {
        Self::new(0, vec![Ranking::identity(0); n])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    /// Ranking of 1-based voter `i`.
    pub fn voter(&self, i: usize) -> Option<&Ranking> {
        i.checked_sub(1).and_then(|i| self.rankings.get(i))
    }

    pub fn scores(&self) -> ScoreVector {
        scoring::borda_scores(self)
    }

    pub fn weak_order(&self) -> WeakOrder {
        scoring::weak_order_of(self)
    }

    pub fn pattern(&self) -> LevelPattern {
        scoring::pattern_of(self)
    }

    /// Every voter's ranking reversed. Scores become `n(m+1) - S(x)`.
    pub fn inverted(&self) -> Self {
        Self {
            m: self.m,
            rankings: self.rankings.iter().map(Ranking::reversed).collect(),
        }
    }

    /// Stacks `bottom` beneath `self` in every ballot. Bottom alternatives are
    /// renumbered `x -> x + self.m()`.
    ///
    /// Every bottom score exceeds every top score by construction: a top
    /// alternative scores at most `n * top.m`, a shifted bottom one at least
    /// `n * top.m + n`. So the pattern of the result is the concatenation.
    pub fn catenate(&self, bottom: &Profile) -> Result<Self> {
        if self.n() != bottom.n() {
            return Err(Error::VoterCountMismatch {
                top: self.n(),
                bottom: bottom.n(),
            });
        }
        let m = self.m + bottom.m;
        let rankings = self
            .rankings
            .iter()
            .zip(&bottom.rankings)
            .map(|(t, b)| Ranking::new(t.order().iter().copied().chain(b.embed(self.m)).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, rankings)
    }

    /// Pads an odd-voter profile up to `target_n` voters by appending pairs of
    /// mutually inverse rankings. Each pair adds `m + 1` to every score, so the
    /// sequence of level sets is unchanged.
    pub fn extend_to_odd_n(&self, target_n: usize) -> Result<Self> {
        if self.n().is_multiple_of(2) {
            return Err(Error::Parity(format!("profile has even n={}", self.n())));
        }
        if target_n.is_multiple_of(2) {
            return Err(Error::Parity(format!("target n={target_n} is even")));
        }
        if target_n < self.n() {
            return Err(Error::InvalidParameter(format!(
                "target n={target_n} is below the current n={}",
                self.n()
            )));
        }
        let forward = Ranking::identity(self.m);
        let backward = forward.reversed();
        let mut rankings = self.rankings.clone();
        for _ in 0..(target_n - self.n()) / 2 {
            rankings.push(forward.clone());
            rankings.push(backward.clone());
        }
        let extended = Self::new(self.m, rankings)?;
        debug_assert_eq!(extended.weak_order().levels(), self.weak_order().levels());
        Ok(extended)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn invert_profile(u: &Profile) -> Profile {
    u.inverted()
}

pub fn catenate(top: &Profile, bottom: &Profile) -> Result<Profile> {
    top.catenate(bottom)
}

pub fn extend_to_odd_n(u: &Profile, target_n: usize) -> Result<Profile> {
    u.extend_to_odd_n(target_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn two_two() -> Profile {
        Profile::from_orders(
            4,
            vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1], vec![1, 3, 0, 2]],
        )
        .unwrap()
    }

    fn arb_profile(max_m: usize, max_n: usize) -> impl Strategy<Value = Profile> {
        (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
            let perm = Just((0..m).collect::<Vec<_>>()).prop_shuffle();
            prop::collection::vec(perm, n)
                .prop_map(move |orders| Profile::from_orders(m, orders).unwrap())
        })
    }

    #[test]
    fn json_wire_format_is_canonical() {
        let u = two_two();
        let text = u.to_json();
        assert_eq!(
            text,
            r#"{"m":4,"n":3,"rankings":[[0,1,2,3],[2,3,0,1],[1,3,0,2]]}"#
        );
        assert_eq!(Profile::from_json(&text).unwrap(), u);
    }

    #[test]
    fn json_rejects_inconsistent_counts() {
        assert!(Profile::from_json(r#"{"m":3,"n":2,"rankings":[[0,1,2]]}"#).is_err());
        assert!(Profile::from_json(r#"{"m":3,"n":1,"rankings":[[0,1]]}"#).is_err());
        assert!(Profile::from_json(r#"{"m":3,"n":1,"rankings":[[0,1,1]]}"#).is_err());
        assert!(Profile::from_json(r#"{"m":2,"n":0,"rankings":[]}"#).is_err());
    }

    #[test]
    fn catenate_two_two_blocks() {
        let u = two_two();
        let c = u.catenate(&u).unwrap();
        assert_eq!(c.m(), 8);
        assert_eq!(c.pattern().sizes(), &[2, 2, 2, 2]);
        assert_eq!(c.scores().as_slice(), &[7, 7, 8, 8, 19, 19, 20, 20]);
    }

    #[test]
    fn catenate_rejects_voter_mismatch() {
        let u = two_two();
        let five = u.extend_to_odd_n(5).unwrap();
        assert!(matches!(
            u.catenate(&five),
            Err(Error::VoterCountMismatch { top: 3, bottom: 5 })
        ));
    }

    #[test]
    fn catenate_with_empty_is_identity() {
        let u = two_two();
        let e = Profile::empty(3).unwrap();
        assert_eq!(u.catenate(&e).unwrap(), u);
        assert_eq!(e.catenate(&u).unwrap(), u);
    }

    #[test]
    fn extend_two_two_to_five() {
        let u = two_two();
        assert_eq!(u.extend_to_odd_n(3).unwrap(), u);
        let five = u.extend_to_odd_n(5).unwrap();
        assert_eq!(five.n(), 5);
        assert_eq!(five.scores().as_slice(), &[12, 12, 13, 13]);
        assert_eq!(five.pattern().sizes(), &[2, 2]);
    }

    #[test]
    fn extend_rejects_bad_targets() {
        let u = two_two();
        assert!(matches!(u.extend_to_odd_n(4), Err(Error::Parity(_))));
        assert!(matches!(
            u.extend_to_odd_n(1),
            Err(Error::InvalidParameter(_))
        ));
        let even = Profile::from_orders(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(even.extend_to_odd_n(5), Err(Error::Parity(_))));
    }

    #[test]
    fn voter_lookup_is_one_based() {
        let u = two_two();
        assert_eq!(u.voter(1).unwrap().order(), &[0, 1, 2, 3]);
        assert!(u.voter(0).is_none());
        assert!(u.voter(4).is_none());
    }

    proptest! {
        #[test]
        fn score_conservation_and_bounds(u in arb_profile(9, 7)) {
            let (m, n) = (u.m() as u64, u.n() as u64);
            let s = u.scores();
            prop_assert_eq!(s.total(), n * m * (m + 1) / 2);
            for &x in s.as_slice() {
                prop_assert!(n <= x && x <= n * m);
            }
        }

        #[test]
        fn inversion_reflects_scores(u in arb_profile(9, 7)) {
            let (m, n) = (u.m() as u64, u.n() as u64);
            let inv = u.inverted();
            let (s, t) = (u.scores(), inv.scores());
            for x in 0..u.m() {
                prop_assert_eq!(t.get(x), n * (m + 1) - s.get(x));
            }
            prop_assert_eq!(inv.pattern(), u.pattern().reversed());
            prop_assert_eq!(inv.inverted(), u);
        }

        #[test]
        fn catenation_concatenates_patterns(a in arb_profile(6, 3), b in arb_profile(6, 3)) {
            prop_assume!(a.n() == b.n());
            let c = a.catenate(&b).unwrap();
            prop_assert_eq!(c.pattern(), a.pattern().concat(&b.pattern()));
        }

        #[test]
        fn padding_preserves_level_sets(u in arb_profile(8, 5), extra in 0usize..4) {
            prop_assume!(u.n() % 2 == 1);
            let target = u.n() + 2 * extra;
            let v = u.extend_to_odd_n(target).unwrap();
            let (wv, wu) = (v.weak_order(), u.weak_order());
            prop_assert_eq!(wv.levels(), wu.levels());
            let shift = extra as u64 * (u.m() as u64 + 1);
            for x in 0..u.m() {
                prop_assert_eq!(v.scores().get(x), u.scores().get(x) + shift);
            }
        }

        #[test]
        fn relabeling_alternatives_relabels_levels(
            u in arb_profile(8, 5),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut relabel: Vec<usize> = (0..u.m()).collect();
            relabel.shuffle(&mut rng);
            let orders = u
                .rankings()
                .iter()
                .map(|r| r.order().iter().map(|&x| relabel[x]).collect())
                .collect();
            let w = Profile::from_orders(u.m(), orders).unwrap();
            let expected: Vec<Vec<usize>> = u
                .weak_order()
                .levels()
                .iter()
                .map(|level| {
                    let mut l: Vec<usize> = level.iter().map(|&x| relabel[x]).collect();
                    l.sort_unstable();
                    l
                })
                .collect();
            let ww = w.weak_order();
            prop_assert_eq!(ww.levels(), expected.as_slice());
        }

        #[test]
        fn json_round_trip(u in arb_profile(8, 5)) {
            let text = u.to_json();
            let back = Profile::from_json(&text).unwrap();
            prop_assert_eq!(back.to_json(), text);
            prop_assert_eq!(back, u);
        }
    }
}
