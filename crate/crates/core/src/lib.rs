//! Which weak orders can Borda's rule produce from an odd number of voters?
//!
//! A weak order on `m` alternatives is summarized by its level pattern, the
//! sizes of its indifference classes from best to worst. This crate scores
//! profiles, classifies patterns, builds explicit three-voter witnesses for
//! the `{2,4}` families, plans block decompositions for longer patterns and
//! checks all of it against brute-force enumeration.
//!
//! ```
//! use borda_range::{classify, realize, LevelPattern, Verdict};
//!
//! let p: LevelPattern = "2,4,4,2".parse().unwrap();
//! assert_eq!(classify(&p).unwrap().verdict, Verdict::InRange);
//! let u = realize(&p, 5).unwrap();
//! assert_eq!(u.pattern(), p);
//! ```

pub mod classify;
pub mod construct;
pub mod decompose;
mod error;
pub mod oracle;
mod pattern;
mod profile;
mod ranking;
mod scoring;

pub use classify::{
    classify, power_decomposition, Classification, PowerDecomposition, Rule, Verdict,
};
pub use decompose::{
    plan_decomposition, plan_for, realize, realize_with, Block, DecompositionPlan,
};
pub use error::{Error, Result};
pub use pattern::LevelPattern;
pub use profile::{catenate, extend_to_odd_n, invert_profile, Profile};
pub use ranking::Ranking;
pub use scoring::{borda_scores, pattern_of, weak_order_of, ScoreVector, WeakOrder};
