//! Explicit three-voter witness builders. Every builder scores its output and
//! returns [`Error::Construction`] instead of an unverified profile.

mod appendix;
mod sequences;
mod two_level;

pub use appendix::{appendix_patterns, appendix_witness, fixtures, Fixture, FIXTURE_VERSION};
pub use sequences::{
    construct_seq_i, construct_seq_ii, construct_seq_iii, construct_seq_iv, seq_i_target,
    seq_ii_target, seq_iii_target, seq_iv_target,
};
pub use two_level::construct_two_level;

use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::profile::Profile;
use serde::Serialize;
use std::fmt;

/// A request for one of the base constructions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BaseWitness {
    /// `(2 s1, 2 s2)` with both odd.
    TwoLevel {
        s1: usize,
        s2: usize,
    },
    /// `(2, 4 x fours, 2)`.
    SeqI {
        fours: usize,
    },
    /// `(4, 2, 4 x (fours - 1), 2)`.
    SeqII {
        fours: usize,
    },
    /// Reverse of `SeqII`.
    SeqIII {
        fours: usize,
    },
    /// `(4, 2, 4 x (fours - 2), 2, 4)`.
    SeqIV {
        fours: usize,
    },
    Appendix(LevelPattern),
}

impl BaseWitness {
    /// The pattern this request realizes. Errors on out-of-range parameters.
    pub fn target(&self) -> Result<LevelPattern> {
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("{self}: {msg}")));
        match *self {
            BaseWitness::TwoLevel { s1, s2 } => {
                if s1 % 2 == 0 || s2 % 2 == 0 {
                    return bad("both halves must be odd");
                }
                Ok(LevelPattern::from_sizes_unchecked(vec![2 * s1, 2 * s2]))
            }
            BaseWitness::SeqI { fours } => Ok(seq_i_target(fours)),
            BaseWitness::SeqII { fours } | BaseWitness::SeqIII { fours } if fours == 0 => {
                bad("needs at least one 4")
            }
            BaseWitness::SeqII { fours } => Ok(seq_ii_target(fours)),
            BaseWitness::SeqIII { fours } => Ok(seq_iii_target(fours)),
            BaseWitness::SeqIV { fours } if fours < 2 => bad("needs at least two 4s"),
            BaseWitness::SeqIV { fours } => Ok(seq_iv_target(fours)),
            BaseWitness::Appendix(ref p) => Ok(p.clone()),
        }
    }
}

impl fmt::Display for BaseWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseWitness::TwoLevel { s1, s2 } => write!(f, "TwoLevel{{{s1},{s2}}}"),
            BaseWitness::SeqI { fours } => write!(f, "SeqI{{fours={fours}}}"),
            BaseWitness::SeqII { fours } => write!(f, "SeqII{{fours={fours}}}"),
            BaseWitness::SeqIII { fours } => write!(f, "SeqIII{{fours={fours}}}"),
            BaseWitness::SeqIV { fours } => write!(f, "SeqIV{{fours={fours}}}"),
            BaseWitness::Appendix(p) => write!(f, "Appendix{{({p})}}"),
        }
    }
}

pub fn construct_base(req: &BaseWitness) -> Result<Profile> {
    let target = req.target()?;
    let profile = match *req {
        BaseWitness::TwoLevel { s1, s2 } => construct_two_level(s1, s2)?,
        BaseWitness::SeqI { fours } => construct_seq_i(fours)?,
        BaseWitness::SeqII { fours } => construct_seq_ii(fours)?,
        BaseWitness::SeqIII { fours } => construct_seq_iii(fours)?,
        BaseWitness::SeqIV { fours } => construct_seq_iv(fours)?,
        BaseWitness::Appendix(ref p) => appendix_witness(p)?,
    };
    let produced = profile.pattern();
    if produced != target || profile.n() != 3 {
        return Err(Error::Construction { target, produced });
    }
    Ok(profile)
}
