use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::{first_rows, EngineKind, FSquareStream};
use super::{check_feasible, GreedyOrder, SearchConfig, SearchError};
use crate::square::{FSquare, Params};
use crate::verify::MofsSet;

/// Streams, in lexicographic order, every F-square orthogonal to all members.
pub fn extensions(set: &MofsSet, config: &SearchConfig) -> Result<FSquareStream, SearchError> {
    check_feasible(set.params(), config)?;
    FSquareStream::new(set.params(), set.squares(), config, EngineKind::Auto)
}

/// As [`extensions`] with an explicit engine and no size guard.
pub fn extensions_with(
    set: &MofsSet,
    config: &SearchConfig,
    engine: EngineKind,
) -> Result<FSquareStream, SearchError> {
    FSquareStream::new(set.params(), set.squares(), config, engine)
}

/// True when no F-square extends the set. Ignores `max_results` so the cap
/// cannot bypass the size guard.
pub fn exhaustive_maximality(set: &MofsSet, config: &SearchConfig) -> Result<bool, SearchError> {
    let config = SearchConfig {
        max_results: None,
        ..config.clone()
    };
    Ok(extensions(set, &config)?.next().is_none())
}

/// Adds extensions until none is left, choosing each one as described by
/// `config.greedy` with a generator seeded from `config.seed`.
/// `config.prefix` is ignored.
pub fn grow_maximal(seed_set: MofsSet, config: &SearchConfig) -> Result<MofsSet, SearchError> {
    check_feasible(seed_set.params(), config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    grow(seed_set, config.greedy, &mut rng)
}

/// Greedy growth starting from no squares; the first square is chosen the
/// same way as every later one.
pub fn grow_maximal_from_empty(
    params: Params,
    config: &SearchConfig,
) -> Result<MofsSet, SearchError> {
    check_feasible(params, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let first =
        next_greedy(params, &[], config.greedy, &mut rng)?.ok_or(SearchError::InvalidPrefix)?;
    grow(MofsSet::singleton(first), config.greedy, &mut rng)
}

fn grow(
    mut set: MofsSet,
    order: GreedyOrder,
    rng: &mut ChaCha8Rng,
) -> Result<MofsSet, SearchError> {
    while let Some(square) = next_greedy(set.params(), set.squares(), order, rng)? {
        set.push(square)?;
    }
    Ok(set)
}

fn next_greedy(
    params: Params,
    members: &[FSquare],
    order: GreedyOrder,
    rng: &mut ChaCha8Rng,
) -> Result<Option<FSquare>, SearchError> {
    if order == GreedyOrder::UniformExtension {
        let mut all: Vec<FSquare> =
            FSquareStream::new(params, members, &SearchConfig::default(), EngineKind::Auto)?
                .collect();
        if all.is_empty() {
            return Ok(None);
        }
        let pick = rng.random_range(0..all.len());
        return Ok(Some(all.swap_remove(pick)));
    }
    let mut rows = first_rows(params);
    rows.shuffle(rng);
    for row in rows {
        let config = SearchConfig {
            prefix: row,
            max_results: Some(1),
            ..SearchConfig::default()
        };
        if let Some(s) = FSquareStream::new(params, members, &config, EngineKind::Auto)?.next() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
