//! Multi-threaded enumeration and extension search.
//!
//! Work is split by admissible first row. Each partition is searched on its
//! own and results are merged in first-row order, which is the lexicographic
//! order of the sequential engines, so output does not depend on scheduling.

use mofs_core::search::{
    check_feasible, enumerate_fsquares, extensions, first_rows, SearchConfig, SearchError,
};
use mofs_core::{FSquare, MofsSet, Params};
use rayon::prelude::*;

fn partitions(params: Params, config: &SearchConfig) -> Vec<SearchConfig> {
    first_rows(params)
        .into_iter()
        .map(|prefix| SearchConfig {
            prefix,
            force: true,
            max_results: None,
            ..config.clone()
        })
        .collect()
}

fn pool(config: &SearchConfig) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .expect("thread pool")
}

/// Number of F-squares of the given type. `config.parallelism == 0` uses
/// one thread per core.
pub fn count_fsquares(params: Params, config: &SearchConfig) -> Result<u64, SearchError> {
    check_feasible(params, config)?;
    let parts = partitions(params, config);
    pool(config).install(|| {
        parts
            .par_iter()
            .map(|c| enumerate_fsquares(params, c).map(|s| s.count() as u64))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    })
}

/// Every extension of `set`, in lexicographic order, truncated to
/// `config.max_results`.
pub fn collect_extensions(
    set: &MofsSet,
    config: &SearchConfig,
) -> Result<Vec<FSquare>, SearchError> {
    check_feasible(set.params(), config)?;
    let parts = partitions(set.params(), config);
    let chunks: Vec<Vec<FSquare>> = pool(config).install(|| {
        parts
            .par_iter()
            .map(|c| {
                let c = SearchConfig {
                    max_results: config.max_results,
                    ..c.clone()
                };
                extensions(set, &c).map(Iterator::collect)
            })
            .collect::<Result<_, _>>()
    })?;
    let mut out: Vec<FSquare> = chunks.into_iter().flatten().collect();
    if let Some(cap) = config.max_results {
        out.truncate(cap);
    }
    Ok(out)
}

/// The lexicographically first extension of `set`, if any.
pub fn first_extension(
    set: &MofsSet,
    config: &SearchConfig,
) -> Result<Option<FSquare>, SearchError> {
    let config = SearchConfig {
        max_results: Some(1),
        ..config.clone()
    };
    check_feasible(
        set.params(),
        &SearchConfig {
            max_results: None,
            ..config.clone()
        },
    )?;
    Ok(collect_extensions(set, &config)?.into_iter().next())
}

/// True when no F-square is orthogonal to every member of `set`.
pub fn exhaustive_maximality(set: &MofsSet, config: &SearchConfig) -> Result<bool, SearchError> {
    Ok(first_extension(set, config)?.is_none())
}
