//! Walks the profile space with voter 1 fixed to the identity ranking.
//!
//! Relabeling alternatives maps any profile onto one whose first ballot is the
//! identity without changing its level pattern, so fixing voter 1 loses no
//! pattern. With more than three voters the remaining ballots are also taken
//! as a multiset (non-decreasing permutation indices), since Borda ignores
//! voter order.

use crate::error::{Error, Result};
use crate::profile::Profile;
use itertools::Itertools;
use std::ops::ControlFlow;

/// Largest `m` whose patterns fit a packed 64-bit key.
pub(crate) const MAX_PACKED_M: usize = 15;

pub(crate) struct ProfileSpace {
    pub m: usize,
    pub n: usize,
    perms: Vec<Vec<usize>>,
    // ranks[p][x] = 1-based rank of x under permutation p
    ranks: Vec<Vec<u64>>,
    anonymous: bool,
}

impl ProfileSpace {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m > MAX_PACKED_M {
            return Err(Error::InvalidParameter(format!(
                "enumeration supports at most {MAX_PACKED_M} alternatives"
            )));
        }
        let free = n.saturating_sub(1);
        let perms: Vec<Vec<usize>> = if free == 0 {
            Vec::new()
        } else {
            (0..m).permutations(m).collect()
        };
        let ranks = perms
            .iter()
            .map(|p| {
                let mut r = vec![0u64; m];
                for (pos, &x) in p.iter().enumerate() {
                    r[x] = pos as u64 + 1;
                }
                r
            })
            .collect();
        Ok(Self {
            m,
            n,
            perms,
            ranks,
            anonymous: n > 3,
        })
    }

    pub fn free_voters(&self) -> usize {
        self.n.saturating_sub(1)
    }

    /// Indices a first free voter can take; each is an independent subtree.
    pub fn roots(&self) -> std::ops::Range<usize> {
        if self.free_voters() == 0 {
            0..1
        } else {
            0..self.perms.len()
        }
    }

    /// Visits, in lexicographic order, every leaf below `root`. The callback
    /// gets the score vector and the permutation indices of voters `2..=n`.
    pub fn walk_root<F>(&self, root: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[u64], &[u32]) -> ControlFlow<()>,
    {
        let mut scores: Vec<u64> = (1..=self.m as u64).collect();
        let mut stack = Vec::with_capacity(self.free_voters());
        if self.free_voters() == 0 {
            return visit(&scores, &stack);
        }
        self.push(root, &mut scores, &mut stack);
        let flow = self.walk(1, &mut scores, &mut stack, visit);
        self.pop(&mut scores, &mut stack);
        flow
    }

    fn walk<F>(
        &self,
        depth: usize,
        scores: &mut [u64],
        stack: &mut Vec<u32>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u64], &[u32]) -> ControlFlow<()>,
    {
        if depth == self.free_voters() {
            return visit(scores, stack);
        }
        let start = if self.anonymous {
            stack[depth - 1] as usize
        } else {
            0
        };
        for idx in start..self.perms.len() {
            self.push(idx, scores, stack);
            let flow = self.walk(depth + 1, scores, stack, visit);
            self.pop(scores, stack);
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn push(&self, idx: usize, scores: &mut [u64], stack: &mut Vec<u32>) {
        for (s, r) in scores.iter_mut().zip(&self.ranks[idx]) {
            *s += r;
        }
        stack.push(idx as u32);
    }

    fn pop(&self, scores: &mut [u64], stack: &mut Vec<u32>) {
        let idx = stack.pop().expect("balanced push/pop") as usize;
        for (s, r) in scores.iter_mut().zip(&self.ranks[idx]) {
            *s -= r;
        }
    }

    pub fn profile(&self, indices: &[u32]) -> Profile {
        let orders = std::iter::once((0..self.m).collect())
            .chain(indices.iter().map(|&i| self.perms[i as usize].clone()))
            .collect();
        Profile::from_orders(self.m, orders).expect("enumerated ballots are permutations")
    }
}

/// Packs level sizes (each <= 15, at most 16 levels) into nibbles.
pub(crate) fn packed_pattern(scores: &[u64]) -> u64 {
    let mut sorted = [0u64; MAX_PACKED_M];
    let sorted = &mut sorted[..scores.len()];
    sorted.copy_from_slice(scores);
    sorted.sort_unstable();
    let mut key = 0u64;
    let mut shift = 0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        key |= ((j - i) as u64) << shift;
        shift += 4;
        i = j;
    }
    key
}

pub(crate) fn pack_sizes(sizes: &[usize]) -> Option<u64> {
    if sizes.len() > 16 || sizes.iter().any(|&s| s > MAX_PACKED_M) {
        return None;
    }
    Some(
        sizes
            .iter()
            .enumerate()
            .fold(0u64, |key, (i, &s)| key | (s as u64) << (4 * i)),
    )
}

pub(crate) fn unpack_sizes(mut key: u64) -> Vec<usize> {
    let mut sizes = Vec::new();
    while key != 0 {
        sizes.push((key & 0xf) as usize);
        key >>= 4;
    }
    sizes
}

/// `(m!)^(n-1)`, saturating.
pub fn candidate_count(m: usize, n: usize) -> u128 {
    let fact = (1..=m as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
    let Some(fact) = fact else { return u128::MAX };
    (1..n)
        .try_fold(1u128, |acc, _| acc.checked_mul(fact))
        .unwrap_or(u128::MAX)
}
