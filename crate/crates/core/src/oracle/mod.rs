//! Brute-force ground truth: exhaustive enumeration of the Borda range at
//! small `(m, n)`, single-pattern witness search, classifier cross-checks and
//! a persistent witness cache.

mod cache;
mod cross_check;
mod enumerate;
mod search;
mod space;

pub use cache::{CachedWitness, Provenance, WitnessCache, CACHE_ENV_VAR};
pub use cross_check::{cross_check, cross_check_with_budget, CrossCheckReport, CrossCheckRow};
pub use enumerate::{
    candidate_count, enumerate_range, enumerate_range_with_budget, AtlasEntry, EnumerationMode,
    RangeAtlas, DEFAULT_CANDIDATE_BUDGET,
};
pub use search::{score_multiset_feasible, search_witness, SearchConfig};
