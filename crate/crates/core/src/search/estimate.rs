//! Size estimates for the enumeration guard.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::square::Params;

/// Largest side for which the exact two-symbol count is computed.
const EXACT_BINARY_MAX_SIDE: usize = 16;
/// Largest side for which the heuristic is evaluated at all.
const HEURISTIC_MAX_SIDE: usize = 64;

/// Estimated number of F-squares of type `params`, saturating at `u128::MAX`.
///
/// Exact for `m ≤ 2` up to side 16. Otherwise uses the independence
/// heuristic `M^{2n} / multinomial(n²; nλ, …, nλ)` with
/// `M = n! / (λ!)^m` the number of admissible rows.
pub fn estimate_count(params: Params) -> u128 {
    let n = params.n();
    if params.m() == 1 {
        return 1;
    }
    if params.m() == 2 && n <= EXACT_BINARY_MAX_SIDE {
        return saturate(&exact_count_binary(n, params.lambda()));
    }
    if n > HEURISTIC_MAX_SIDE {
        return u128::MAX;
    }
    let m = params.m();
    let lambda = params.lambda();
    let rows = factorial(n) / factorial(lambda).pow(m as u32);
    let numerator = rows.pow(2 * n as u32) * factorial(n * lambda).pow(m as u32);
    let est = numerator / factorial(n * n);
    saturate(&est).max(1)
}

fn saturate(v: &BigUint) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Exact number of `n × n` {0,1} matrices whose rows and columns all sum to
/// `λ`, by dynamic programming over the multiset of column sums.
pub fn exact_count_binary(n: usize, lambda: usize) -> BigUint {
    if lambda > n {
        return BigUint::zero();
    }
    // state[c] = number of columns holding c ones so far
    let mut states: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
    let mut start = vec![0usize; lambda + 1];
    start[0] = n;
    states.insert(start, BigUint::one());
    for r in 0..n {
        let mut next: BTreeMap<Vec<usize>, BigUint> = BTreeMap::new();
        for (state, ways) in &states {
            let mut take = vec![0usize; lambda + 1];
            distribute(state, &mut take, 0, lambda, &mut |take| {
                let mut new = state.clone();
                let mut weight = ways.clone();
                for c in 0..lambda {
                    if take[c] > 0 {
                        weight *= binomial(state[c], take[c]);
                        new[c] -= take[c];
                        new[c + 1] += take[c];
                    }
                }
                // A column with c ones after r + 1 rows has r + 1 - c zeros.
                let feasible = new
                    .iter()
                    .enumerate()
                    .all(|(c, &cnt)| cnt == 0 || r < c + lambda);
                if feasible {
                    *next.entry(new).or_insert_with(BigUint::zero) += weight;
                }
            });
        }
        states = next;
    }
    let mut done = vec![0usize; lambda + 1];
    done[lambda] = n;
    states.remove(&done).unwrap_or_else(BigUint::zero)
}

/// Calls `f` for each way of taking `left` columns from levels `level..λ`.
fn distribute(
    state: &[usize],
    take: &mut Vec<usize>,
    level: usize,
    left: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    let top = state.len() - 1;
    if left == 0 {
        f(take);
        return;
    }
    if level >= top {
        return;
    }
    for k in (0..=left.min(state[level])).rev() {
        take[level] = k;
        distribute(state, take, level + 1, left - k, f);
    }
    take[level] = 0;
}
