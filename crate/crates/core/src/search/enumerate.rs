use alloc::vec;
use alloc::vec::Vec;

use super::{check_feasible, SearchConfig, SearchError};
use crate::square::{FSquare, Params};

/// Above this many candidate rows the bitmask engine is not used.
const ROW_CANDIDATE_LIMIT: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineKind {
    /// Bitmask rows for `m = 2` when the row table is small, cells otherwise.
    #[default]
    Auto,
    Cells,
    /// Falls back to cells unless `m = 2`.
    Rows,
}

/// Streams every F-square of type `params` in lexicographic order.
pub fn enumerate_fsquares(
    params: Params,
    config: &SearchConfig,
) -> Result<FSquareStream, SearchError> {
    check_feasible(params, config)?;
    FSquareStream::new(params, &[], config, EngineKind::Auto)
}

/// As [`enumerate_fsquares`] with an explicit engine and no size guard.
pub fn enumerate_with(
    params: Params,
    config: &SearchConfig,
    engine: EngineKind,
) -> Result<FSquareStream, SearchError> {
    FSquareStream::new(params, &[], config, engine)
}

/// Every admissible first row (each symbol `λ` times), in lexicographic order.
pub fn first_rows(params: Params) -> Vec<Vec<u8>> {
    let n = params.n();
    let mut out = Vec::new();
    let mut row = Vec::with_capacity(n);
    let mut left = vec![params.lambda(); params.m()];
    fn rec(row: &mut Vec<u8>, left: &mut [usize], n: usize, out: &mut Vec<Vec<u8>>) {
        if row.len() == n {
            out.push(row.clone());
            return;
        }
        for a in 0..left.len() {
            if left[a] > 0 {
                left[a] -= 1;
                row.push((a + 1) as u8);
                rec(row, left, n, out);
                row.pop();
                left[a] += 1;
            }
        }
    }
    rec(&mut row, &mut left, n, &mut out);
    out
}

pub struct FSquareStream {
    engine: Engine,
    remaining: Option<usize>,
}

enum Engine {
    Cells(CellSearch),
    Rows(RowSearch),
}

impl FSquareStream {
    pub(crate) fn new(
        params: Params,
        members: &[FSquare],
        config: &SearchConfig,
        kind: EngineKind,
    ) -> Result<Self, SearchError> {
        let n = params.n();
        if config.prefix.len() > n * n
            || config
                .prefix
                .iter()
                .any(|&s| s == 0 || usize::from(s) > params.m())
        {
            return Err(SearchError::InvalidPrefix);
        }
        let use_rows = match kind {
            EngineKind::Cells => false,
            EngineKind::Rows => params.m() == 2 && n <= 64,
            EngineKind::Auto => {
                params.m() == 2
                    && n <= 64
                    && binomial_at_most(n, params.lambda(), ROW_CANDIDATE_LIMIT)
            }
        };
        let engine = if use_rows {
            Engine::Rows(RowSearch::new(params, members, &config.prefix))
        } else {
            Engine::Cells(CellSearch::new(params, members, &config.prefix))
        };
        Ok(FSquareStream {
            engine,
            remaining: config.max_results,
        })
    }

    pub fn uses_row_engine(&self) -> bool {
        matches!(self.engine, Engine::Rows(_))
    }
}

impl Iterator for FSquareStream {
    type Item = FSquare;

    fn next(&mut self) -> Option<FSquare> {
        if self.remaining == Some(0) {
            return None;
        }
        let out = match &mut self.engine {
            Engine::Cells(e) => e.next_square(),
            Engine::Rows(e) => e.next_square(),
        }?;
        if let Some(r) = &mut self.remaining {
            *r -= 1;
        }
        Some(out)
    }
}

fn binomial_at_most(n: usize, k: usize, limit: usize) -> bool {
    let mut c: u128 = 1;
    for i in 0..k.min(n - k) {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > limit as u128 {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    Start,
    Yielded,
    Done,
}

/// Cell-by-cell backtracking. Cells `[0, pos)` are placed; `grid[pos]` holds
/// the symbol currently tried there, or 0.
struct CellSearch {
    params: Params,
    members: Vec<Vec<u8>>,
    prefix: Vec<u8>,
    grid: Vec<u8>,
    row_count: Vec<u16>,
    col_count: Vec<u16>,
    /// `pair[(k * m + a) * m + b]`: cells where the candidate has `a + 1` and
    /// member `k` has `b + 1`.
    pair: Vec<u16>,
    pos: usize,
    phase: Phase,
}

impl CellSearch {
    fn new(params: Params, members: &[FSquare], prefix: &[u8]) -> Self {
        let (n, m) = (params.n(), params.m());
        CellSearch {
            params,
            members: members.iter().map(|s| s.cells().to_vec()).collect(),
            prefix: prefix.to_vec(),
            grid: vec![0; n * n],
            row_count: vec![0; n * m],
            col_count: vec![0; n * m],
            pair: vec![0; members.len() * m * m],
            pos: 0,
            phase: Phase::Start,
        }
    }

    fn can_place(&self, pos: usize, a: u8) -> bool {
        let (n, m, lambda) = (
            self.params.n(),
            self.params.m(),
            self.params.lambda() as u16,
        );
        let (i, j) = (pos / n, pos % n);
        let ai = usize::from(a) - 1;
        if self.row_count[i * m + ai] >= lambda || self.col_count[j * m + ai] >= lambda {
            return false;
        }
        let cap = lambda * lambda;
        self.members.iter().enumerate().all(|(k, cells)| {
            let b = usize::from(cells[pos]) - 1;
            self.pair[(k * m + ai) * m + b] < cap
        })
    }

    fn apply(&mut self, pos: usize, a: u8, delta: i16) {
        let (n, m) = (self.params.n(), self.params.m());
        let (i, j) = (pos / n, pos % n);
        let ai = usize::from(a) - 1;
        let upd = |v: &mut u16| *v = v.wrapping_add_signed(delta);
        upd(&mut self.row_count[i * m + ai]);
        upd(&mut self.col_count[j * m + ai]);
        for (k, cells) in self.members.iter().enumerate() {
            let b = usize::from(cells[pos]) - 1;
            upd(&mut self.pair[(k * m + ai) * m + b]);
        }
    }

    /// Moves the symbol at `pos` to the next feasible one.
    fn try_next(&mut self, pos: usize) -> bool {
        let cur = self.grid[pos];
        if cur != 0 {
            self.apply(pos, cur, -1);
        }
        let from = if pos < self.prefix.len() {
            if cur != 0 {
                self.grid[pos] = 0;
                return false;
            }
            self.prefix[pos]..=self.prefix[pos]
        } else {
            cur + 1..=self.params.m() as u8
        };
        for a in from {
            if self.can_place(pos, a) {
                self.apply(pos, a, 1);
                self.grid[pos] = a;
                return true;
            }
        }
        self.grid[pos] = 0;
        false
    }

    fn next_square(&mut self) -> Option<FSquare> {
        let cells = self.grid.len();
        match self.phase {
            Phase::Done => return None,
            Phase::Start => self.pos = 0,
            Phase::Yielded => self.pos = cells - 1,
        }
        if cells == 0 {
            self.phase = Phase::Done;
            return None;
        }
        loop {
            if self.try_next(self.pos) {
                self.pos += 1;
                if self.pos == cells {
                    self.phase = Phase::Yielded;
                    return Some(FSquare::from_cells_trusted(self.params, self.grid.clone()));
                }
            } else if self.pos == 0 {
                self.phase = Phase::Done;
                return None;
            } else {
                self.pos -= 1;
            }
        }
    }
}

/// Row-at-a-time backtracking for two symbols. A row is a mask with bit `j`
/// set when column `j` holds symbol 2.
struct RowSearch {
    params: Params,
    n: usize,
    all: u64,
    /// Rows in lexicographic order of their symbol sequences.
    candidates: Vec<u64>,
    /// Per member, per row: the mask of that member's row.
    members: Vec<Vec<u64>>,
    /// `(care, want)` per row from the prefix.
    fixed: Vec<(u64, u64)>,
    rows: Vec<u64>,
    next: Vec<usize>,
    ones: Vec<u16>,
    /// `pairs[r]` holds the counts `[11, 12, 21, 22]` per member after rows `0..r`.
    pairs: Vec<Vec<[u16; 4]>>,
    level: usize,
    phase: Phase,
}

impl RowSearch {
    fn new(params: Params, members: &[FSquare], prefix: &[u8]) -> Self {
        let n = params.n();
        let lambda = params.lambda();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut candidates = Vec::new();
        // Keys read column 0 as the most significant bit, so ascending keys are
        // ascending sequences. Gosper's hack walks keys of weight λ in order.
        let mut key: u64 = if lambda == 64 {
            u64::MAX
        } else {
            (1u64 << lambda) - 1
        };
        loop {
            let mask = (0..n).fold(0u64, |acc, j| acc | (((key >> (n - 1 - j)) & 1) << j));
            candidates.push(mask);
            let c = key & key.wrapping_neg();
            let (r, overflow) = key.overflowing_add(c);
            if overflow || c == 0 {
                break;
            }
            key = (((r ^ key) >> 2) / c) | r;
            if key & !all != 0 {
                break;
            }
        }
        let row_mask = |row: &[u8]| {
            row.iter()
                .enumerate()
                .fold(0u64, |acc, (j, &s)| acc | (u64::from(s == 2) << j))
        };
        let members: Vec<Vec<u64>> = members
            .iter()
            .map(|s| s.rows().map(row_mask).collect())
            .collect();
        let mut fixed = vec![(0u64, 0u64); n];
        for (idx, &s) in prefix.iter().enumerate() {
            let (r, j) = (idx / n, idx % n);
            fixed[r].0 |= 1 << j;
            if s == 2 {
                fixed[r].1 |= 1 << j;
            }
        }
        let t = members.len();
        RowSearch {
            params,
            n,
            all,
            candidates,
            members,
            fixed,
            rows: vec![0; n],
            next: vec![0; n],
            ones: vec![0; n],
            pairs: vec![vec![[0; 4]; t]; n + 1],
            level: 0,
            phase: Phase::Start,
        }
    }

    fn place(&mut self, r: usize, row: u64) {
        self.rows[r] = row;
        for j in 0..self.n {
            self.ones[j] += ((row >> j) & 1) as u16;
        }
    }

    fn unplace(&mut self, r: usize) {
        let row = self.rows[r];
        for j in 0..self.n {
            self.ones[j] -= ((row >> j) & 1) as u16;
        }
    }

    /// Index of the first feasible candidate at level `r` from `start`, and
    /// the resulting pair counts written into `pairs[r + 1]`.
    fn find(&mut self, r: usize, start: usize) -> Option<usize> {
        let lambda = self.params.lambda() as u16;
        let cap = lambda * lambda;
        let mut full_ones = 0u64;
        let mut full_zeros = 0u64;
        for j in 0..self.n {
            if self.ones[j] >= lambda {
                full_ones |= 1 << j;
            }
            if r as u16 - self.ones[j] >= lambda {
                full_zeros |= 1 << j;
            }
        }
        let (care, want) = self.fixed[r];
        let n = self.n as u16;
        'cand: for ci in start..self.candidates.len() {
            let c = self.candidates[ci];
            if c & full_ones != 0 || !c & self.all & full_zeros != 0 || c & care != want {
                continue;
            }
            for k in 0..self.members.len() {
                let s = self.members[k][r];
                let c22 = (c & s).count_ones() as u16;
                let c21 = (c & !s & self.all).count_ones() as u16;
                let c12 = (!c & s & self.all).count_ones() as u16;
                let c11 = n - c22 - c21 - c12;
                let prev = self.pairs[r][k];
                let new = [prev[0] + c11, prev[1] + c12, prev[2] + c21, prev[3] + c22];
                if new.iter().any(|&v| v > cap) {
                    continue 'cand;
                }
                self.pairs[r + 1][k] = new;
            }
            return Some(ci);
        }
        None
    }

    fn next_square(&mut self) -> Option<FSquare> {
        let n = self.n;
        match self.phase {
            Phase::Done => return None,
            Phase::Start => {
                self.level = 0;
                self.next[0] = 0;
            }
            Phase::Yielded => {
                self.level = n - 1;
                self.unplace(n - 1);
            }
        }
        loop {
            let r = self.level;
            match self.find(r, self.next[r]) {
                Some(ci) => {
                    self.next[r] = ci + 1;
                    self.place(r, self.candidates[ci]);
                    if r + 1 == n {
                        self.phase = Phase::Yielded;
                        return Some(self.square());
                    }
                    self.level += 1;
                    self.next[r + 1] = 0;
                }
                None => {
                    if r == 0 {
                        self.phase = Phase::Done;
                        return None;
                    }
                    self.level -= 1;
                    self.unplace(r - 1);
                }
            }
        }
    }

    fn square(&self) -> FSquare {
        let n = self.n;
        let mut cells = Vec::with_capacity(n * n);
        for &row in &self.rows {
            cells.extend((0..n).map(|j| 1 + ((row >> j) & 1) as u8));
        }
        FSquare::from_cells_trusted(self.params, cells)
    }
}
