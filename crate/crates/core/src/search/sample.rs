use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::square::{FSquare, Params};

/// A random F-square: the cyclic square under random row, column and symbol
/// permutations, followed by `switches` attempted 2×2 interchanges
/// `[a b; b a] → [b a; a b]`, each of which preserves every line count.
pub fn random_fsquare<R: Rng + ?Sized>(params: Params, rng: &mut R, switches: usize) -> FSquare {
    let n = params.n();
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut syms: Vec<u8> = params.symbols().collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    syms.shuffle(rng);
    let base = FSquare::cyclic(params);
    let mut cells: Vec<u8> = Vec::with_capacity(n * n);
    for &r in &rows {
        for &c in &cols {
            cells.push(syms[usize::from(base.get(r, c)) - 1]);
        }
    }
    if n >= 2 {
        for _ in 0..switches {
            let (i, k) = (rng.random_range(0..n), rng.random_range(0..n));
            let (j, l) = (rng.random_range(0..n), rng.random_range(0..n));
            let (a, b) = (cells[i * n + j], cells[i * n + l]);
            if a != b && cells[k * n + j] == b && cells[k * n + l] == a {
                cells[i * n + j] = b;
                cells[i * n + l] = a;
                cells[k * n + j] = a;
                cells[k * n + l] = b;
            }
        }
    }
    FSquare::from_cells_trusted(params, cells)
}
