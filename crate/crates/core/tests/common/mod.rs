#![allow(dead_code)]

use mofs_core::{BitMatrix, FSquare, Params};

pub fn params(m: usize, lambda: usize) -> Params {
    Params::new(m, lambda).unwrap()
}

/// The F(6;2) square of the worked indicator-square example.
pub fn example_f62() -> FSquare {
    FSquare::new(
        params(3, 2),
        &[
            [1u8, 2, 3, 1, 2, 3],
            [3, 1, 2, 3, 2, 1],
            [2, 3, 1, 2, 1, 3],
            [1, 1, 2, 3, 3, 2],
            [3, 3, 1, 2, 1, 2],
            [2, 2, 3, 1, 3, 1],
        ],
    )
    .unwrap()
}

pub const EXAMPLE_I1: [[u8; 6]; 6] = [
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 1],
    [0, 0, 1, 0, 1, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
];

pub const EXAMPLE_I2: [[u8; 6]; 6] = [
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 1, 0],
    [1, 0, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 1],
    [0, 0, 0, 1, 0, 1],
    [1, 1, 0, 0, 0, 0],
];

pub const EXAMPLE_I3: [[u8; 6]; 6] = [
    [0, 0, 1, 0, 0, 1],
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 1],
    [0, 0, 0, 1, 1, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 0],
];

/// The three F(3;1) squares whose symbol-1 indicators sum to J.
pub fn latin_triple() -> Vec<FSquare> {
    let p = params(3, 1);
    [
        [[1u8, 2, 3], [3, 1, 2], [2, 3, 1]],
        [[2, 3, 1], [1, 2, 3], [3, 1, 2]],
        [[3, 1, 2], [2, 3, 1], [1, 2, 3]],
    ]
    .iter()
    .map(|g| FSquare::new(p, g).unwrap())
    .collect()
}

/// Every grid over `1..=m` of side `n` that validates, in lexicographic order.
pub fn naive_fsquares(p: Params) -> Vec<FSquare> {
    let n = p.n();
    let cells = n * n;
    let total = (p.m() as u64).pow(cells as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut grid = vec![0u8; cells];
        for slot in grid.iter_mut().rev() {
            *slot = (c % p.m() as u64) as u8 + 1;
            c /= p.m() as u64;
        }
        if let Ok(s) = FSquare::from_cells(p, grid) {
            out.push(s);
        }
    }
    out
}

/// Cell-by-cell superposition count, independent of indicator squares.
pub fn naive_orthogonal(a: &FSquare, b: &FSquare) -> bool {
    let p = a.params();
    let m = p.m();
    let mut counts = vec![0usize; m * m];
    for (x, y) in a.cells().iter().zip(b.cells()) {
        counts[(*x as usize - 1) * m + (*y as usize - 1)] += 1;
    }
    counts.iter().all(|&c| c == p.lambda() * p.lambda())
}

/// All canonical `(x, y)` for which some choice of top rows and left columns
/// puts `bits` into the non-constant 0/J block form.
pub fn brute_block_shapes(bits: &BitMatrix) -> Vec<(usize, usize)> {
    let n = bits.n();
    if bits.is_zero() || bits.is_ones() {
        return Vec::new();
    }
    let mut found = Vec::new();
    for rows in 0u32..(1 << n) {
        for cols in 0u32..(1 << n) {
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let top = rows >> i & 1 == 1;
                    let left = cols >> j & 1 == 1;
                    bits.get(i, j) == (top != left)
                })
            });
            if ok {
                let (x, y) = (rows.count_ones() as usize, cols.count_ones() as usize);
                let canon = if x < n - x || (x == n - x && y <= n - y) {
                    (x, y)
                } else {
                    (n - x, n - y)
                };
                if !found.contains(&canon) {
                    found.push(canon);
                }
            }
        }
    }
    found
}

/// Literal search over row and column permutations for the displayed block
/// form with block sizes `(x, y)`. Only practical for `n ≤ 3`.
pub fn permutation_block_shapes(bits: &BitMatrix) -> Vec<(usize, usize)> {
    let n = bits.n();
    if bits.is_zero() || bits.is_ones() {
        return Vec::new();
    }
    let perms = permutations(n);
    let mut found = Vec::new();
    for rp in &perms {
        for cp in &perms {
            let q = bits.permuted(rp, cp);
            for x in 0..=n {
                for y in 0..=n {
                    let ok = (0..n).all(|i| (0..n).all(|j| q.get(i, j) == ((i < x) != (j < y))));
                    if ok {
                        let canon = if x < n - x || (x == n - x && y <= n - y) {
                            (x, y)
                        } else {
                            (n - x, n - y)
                        };
                        if !found.contains(&canon) {
                            found.push(canon);
                        }
                    }
                }
            }
        }
    }
    found
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
