//! Parsing of marked-set specifications.
//!
//! - `all`: every item;
//! - `random:K`: `K` distinct items placed with a seeded RNG;
//! - `i,j,k`: an explicit index list.

use std::str::FromStr;

use pdsearch_core::MarkedSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};

/// Mixed into the user seed so placement draws differ from driver draws.
const PLACEMENT_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MarkedSpec {
    All,
    Random(usize),
    List(Vec<usize>),
}

impl FromStr for MarkedSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(MarkedSpec::All);
        }
        if let Some(count) = s.strip_prefix("random:") {
            return count
                .trim()
                .parse()
                .map(MarkedSpec::Random)
                .map_err(|_| CliError::Usage(format!("bad marked count in {s:?}")));
        }
        if s.is_empty() {
            return Ok(MarkedSpec::List(Vec::new()));
        }
        s.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad marked index {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MarkedSpec::List)
    }
}

impl MarkedSpec {
    pub fn resolve(&self, n: usize, seed: u64) -> Result<MarkedSet> {
        let set = match self {
            MarkedSpec::All => MarkedSet::all(n)?,
            MarkedSpec::List(items) => MarkedSet::new(n, items.iter().copied())?,
            MarkedSpec::Random(count) => random_marked(n, *count, seed)?,
        };
        Ok(set)
    }
}

/// `count` distinct items of `2^n`, placed deterministically from `seed`.
pub fn random_marked(n: usize, count: usize, seed: u64) -> Result<MarkedSet> {
    // validates n before 1 << n
    let empty = MarkedSet::empty(n)?;
    let items = empty.items();
    if count > items {
        return Err(CliError::Domain(format!(
            "cannot mark {count} of {items} items"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ PLACEMENT_SALT);
    let chosen = rand::seq::index::sample(&mut rng, items, count);
    Ok(MarkedSet::new(n, chosen)?)
}
