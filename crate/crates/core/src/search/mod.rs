//! Enumeration of F-squares, extension search and greedy growth of MOFS sets.
//!
//! Squares are produced in lexicographic order of their row-major cell
//! sequence. Two engines implement the same stream: a cell-by-cell
//! backtracker for any `m`, and for `m = 2` a row-at-a-time backtracker over
//! bitmask rows. Extension search runs the same engines while tracking, for
//! every member of the set, the running superposition counts of the partial
//! candidate, and abandons a branch once any count exceeds `λ²`.

use alloc::vec::Vec;
use core::fmt;

use crate::square::Params;
use crate::verify::VerifyError;

mod enumerate;
mod estimate;
mod extend;
mod sample;

pub use enumerate::{enumerate_fsquares, enumerate_with, first_rows, EngineKind, FSquareStream};
pub use estimate::{estimate_count, exact_count_binary};
pub use extend::{
    exhaustive_maximality, extensions, extensions_with, grow_maximal, grow_maximal_from_empty,
};
pub use sample::random_fsquare;

/// Default ceiling on the estimated number of squares a full enumeration
/// may visit.
pub const DEFAULT_ENUMERATION_CEILING: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Seed for greedy growth.
    pub seed: u64,
    /// Stop after this many squares. A capped stream skips the size guard.
    pub max_results: Option<usize>,
    /// Leading cells (row-major, symbols `1..=m`) every result must start with.
    pub prefix: Vec<u8>,
    /// Worker count hint for callers that partition work by prefix; the
    /// engines here are single-threaded.
    pub parallelism: usize,
    /// Largest estimated enumeration size accepted without `force`.
    pub ceiling: u128,
    pub force: bool,
    pub greedy: GreedyOrder,
}

/// How greedy growth picks the next square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GreedyOrder {
    /// Shuffle the admissible first rows, then take the lexicographically
    /// first extension under the first row in that order that has one.
    #[default]
    FirstRowShuffle,
    /// Collect every extension and pick one uniformly at random.
    UniformExtension,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_results: None,
            prefix: Vec::new(),
            parallelism: 1,
            ceiling: DEFAULT_ENUMERATION_CEILING,
            force: false,
            greedy: GreedyOrder::default(),
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig {
            seed,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError {
    InfeasibleSizeGuard { estimate: u128, ceiling: u128 },
    InvalidPrefix,
    Verify(VerifyError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::InfeasibleSizeGuard { estimate, ceiling } => write!(
                f,
                "estimated {estimate} squares exceeds the enumeration ceiling {ceiling}"
            ),
            SearchError::InvalidPrefix => {
                f.write_str("prefix is longer than the grid or uses invalid symbols")
            }
            SearchError::Verify(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SearchError {}

impl From<VerifyError> for SearchError {
    fn from(e: VerifyError) -> Self {
        SearchError::Verify(e)
    }
}

/// Refuses uncapped, unforced enumerations whose estimated size exceeds the
/// ceiling.
pub fn check_feasible(params: Params, config: &SearchConfig) -> Result<(), SearchError> {
    if config.force || config.max_results.is_some() {
        return Ok(());
    }
    let estimate = estimate_count(params);
    if estimate > config.ceiling {
        return Err(SearchError::InfeasibleSizeGuard {
            estimate,
            ceiling: config.ceiling,
        });
    }
    Ok(())
}
