//! Hand-made witnesses for the short patterns the sequence families do not
//! cover: (4,2,4,2), (4,2,2,4), (4,2,2), (2,2,4) and (4,2,4,2,4).

use crate::error::{Error, Result};
use crate::pattern::LevelPattern;
use crate::profile::Profile;
use serde::Deserialize;
use std::sync::OnceLock;

const FIXTURES: &str = include_str!("../../fixtures/appendix.json");

/// Bumped whenever a transcription changes.
pub const FIXTURE_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
struct FixtureFile {
    version: u32,
    profiles: Vec<Fixture>,
}

/// One transcribed table together with the level sets it is known to produce.
#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub pattern: LevelPattern,
    pub levels: Vec<Vec<usize>>,
    pub profile: Profile,
}

pub fn fixtures() -> &'static [Fixture] {
    static PARSED: OnceLock<Vec<Fixture>> = OnceLock::new();
    PARSED.get_or_init(|| {
        let file: FixtureFile =
            serde_json::from_str(FIXTURES).expect("bundled appendix fixtures are valid JSON");
        assert_eq!(file.version, FIXTURE_VERSION, "fixture version mismatch");
        file.profiles
    })
}

/// Patterns with a stored or derived appendix witness.
pub fn appendix_patterns() -> Vec<LevelPattern> {
    let mut out: Vec<LevelPattern> = fixtures().iter().map(|f| f.pattern.clone()).collect();
    out.push(inverted_pattern());
    out
}

// (2,2,4) is the inversion of the (4,2,2) table
fn inverted_pattern() -> LevelPattern {
    LevelPattern::from_sizes_unchecked(vec![2, 2, 4])
}

pub fn appendix_witness(p: &LevelPattern) -> Result<Profile> {
    if let Some(f) = fixtures().iter().find(|f| &f.pattern == p) {
        return Ok(f.profile.clone());
    }
    if p == &inverted_pattern() {
        let source = fixtures()
            .iter()
            .find(|f| f.pattern == p.reversed())
            .expect("the (4,2,2) fixture is bundled");
        return Ok(source.profile.inverted());
    }
    Err(Error::NotInTable(p.clone()))
}
