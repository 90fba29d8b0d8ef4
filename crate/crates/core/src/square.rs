//! Parameters, frequency squares and indicator squares.
//!
//! Symbols are `1..=m` at every public boundary. Row and column indices
//! passed to accessors are 0-based; positions carried inside errors are
//! 1-based so they read the same way as the printed grids.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitMatrix;

/// Largest supported side length `mλ`.
pub const MAX_SIDE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareError {
    InvalidParams {
        m: usize,
        lambda: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: u8,
    },
    UnknownSymbol {
        symbol: u8,
        m: usize,
    },
    RowRegularityViolation {
        row: usize,
        symbol: u8,
        count: usize,
    },
    ColumnRegularityViolation {
        col: usize,
        symbol: u8,
        count: usize,
    },
    OverlappingSupports {
        row: usize,
        col: usize,
    },
    UncoveredCell {
        row: usize,
        col: usize,
    },
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    ParamMismatch,
}

impl fmt::Display for SquareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SquareError::InvalidParams { m, lambda } => write!(
                f,
                "invalid parameters m={m} lambda={lambda} (need m, lambda >= 1, m <= 255, m*lambda <= {MAX_SIDE})"
            ),
            SquareError::DimensionMismatch { expected, found } => {
                write!(f, "expected dimension {expected}, found {found}")
            }
            SquareError::SymbolOutOfRange { row, col, symbol } => {
                write!(f, "symbol {symbol} at row {row}, column {col} is out of range")
            }
            SquareError::UnknownSymbol { symbol, m } => {
                write!(f, "symbol {symbol} is not in 1..={m}")
            }
            SquareError::RowRegularityViolation { row, symbol, count } => write!(
                f,
                "row {row} contains symbol {symbol} {count} times"
            ),
            SquareError::ColumnRegularityViolation { col, symbol, count } => write!(
                f,
                "column {col} contains symbol {symbol} {count} times"
            ),
            SquareError::OverlappingSupports { row, col } => {
                write!(f, "indicator supports overlap at row {row}, column {col}")
            }
            SquareError::UncoveredCell { row, col } => {
                write!(f, "no indicator covers row {row}, column {col}")
            }
            SquareError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} items, found {found}")
            }
            SquareError::ParamMismatch => f.write_str("squares have different parameters"),
        }
    }
}

impl core::error::Error for SquareError {}

/// The type `F(mλ; λ)`: `m` symbols, each repeated `λ` times per line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    m: usize,
    lambda: usize,
}

impl Params {
    pub fn new(m: usize, lambda: usize) -> Result<Self, SquareError> {
        if m == 0 || lambda == 0 || m > 255 || m.saturating_mul(lambda) > MAX_SIDE {
            return Err(SquareError::InvalidParams { m, lambda });
        }
        Ok(Params { m, lambda })
    }

    /// Number of symbols.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// Repetition number.
    #[inline]
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Side length `mλ`.
    #[inline]
    pub fn n(&self) -> usize {
        self.m * self.lambda
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + Clone {
        1..=self.m as u8
    }

    fn check_symbol(&self, symbol: u8) -> Result<(), SquareError> {
        if symbol == 0 || usize::from(symbol) > self.m {
            Err(SquareError::UnknownSymbol { symbol, m: self.m })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({};{})", self.n(), self.lambda)
    }
}

/// A validated frequency square, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FSquare {
    params: Params,
    cells: Vec<u8>,
}

impl FSquare {
    /// Validates `grid` as an F-square of type `params`.
    pub fn new<R: AsRef<[u8]>>(params: Params, grid: &[R]) -> Result<Self, SquareError> {
        let n = params.n();
        if grid.len() != n {
            return Err(SquareError::DimensionMismatch {
                expected: n,
                found: grid.len(),
            });
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in grid {
            let row = row.as_ref();
            if row.len() != n {
                return Err(SquareError::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(params, cells)
    }

    /// Validates a row-major cell vector of length `n²`.
    pub fn from_cells(params: Params, cells: Vec<u8>) -> Result<Self, SquareError> {
        validate(params, &cells)?;
        Ok(FSquare { params, cells })
    }

    /// For producers that enforce the regularity constraints themselves.
    pub(crate) fn from_cells_trusted(params: Params, cells: Vec<u8>) -> Self {
        debug_assert!(validate(params, &cells).is_ok());
        FSquare { params, cells }
    }

    /// The square with `S[i][j] = ⌊((i + j) mod n) / λ⌋ + 1`.
    pub fn cyclic(params: Params) -> Self {
        let n = params.n();
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                cells.push(((i + j) % n / params.lambda() + 1) as u8);
            }
        }
        Self::from_cells_trusted(params, cells)
    }

    #[inline]
    pub fn params(&self) -> Params {
        self.params
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.params.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.cells[i * self.n() + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        let n = self.n();
        &self.cells[i * n..(i + 1) * n]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.n())
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(<[u8]>::to_vec).collect()
    }

    /// The indicator square `I_a(S)`.
    pub fn indicator(&self, a: u8) -> Result<IndicatorSquare, SquareError> {
        self.params.check_symbol(a)?;
        let n = self.n();
        let mut bits = BitMatrix::zeros(n);
        for (idx, &s) in self.cells.iter().enumerate() {
            if s == a {
                bits.set(idx / n, idx % n, true);
            }
        }
        Ok(IndicatorSquare {
            params: self.params,
            bits,
        })
    }

    /// All indicator squares, index `a - 1` holding `I_a(S)`.
    pub fn indicators(&self) -> Vec<IndicatorSquare> {
        let n = self.n();
        let mut out: Vec<BitMatrix> = (0..self.params.m()).map(|_| BitMatrix::zeros(n)).collect();
        for (idx, &s) in self.cells.iter().enumerate() {
            out[usize::from(s) - 1].set(idx / n, idx % n, true);
        }
        out.into_iter()
            .map(|bits| IndicatorSquare {
                params: self.params,
                bits,
            })
            .collect()
    }

    /// Applies the symbol map `a ↦ perm[a - 1]`; `perm` must be a
    /// permutation of `1..=m`.
    pub fn relabel(&self, perm: &[u8]) -> Result<FSquare, SquareError> {
        let m = self.params.m();
        if perm.len() != m {
            return Err(SquareError::LengthMismatch {
                expected: m,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; m];
        for &p in perm {
            self.params.check_symbol(p)?;
            if core::mem::replace(&mut seen[usize::from(p) - 1], true) {
                return Err(SquareError::UnknownSymbol { symbol: p, m });
            }
        }
        let cells = self
            .cells
            .iter()
            .map(|&s| perm[usize::from(s) - 1])
            .collect();
        Ok(Self::from_cells_trusted(self.params, cells))
    }

    /// Exchanges symbols `a` and `b`.
    pub fn swap_symbols(&self, a: u8, b: u8) -> Result<FSquare, SquareError> {
        self.params.check_symbol(a)?;
        self.params.check_symbol(b)?;
        let cells = self
            .cells
            .iter()
            .map(|&s| {
                if s == a {
                    b
                } else if s == b {
                    a
                } else {
                    s
                }
            })
            .collect();
        Ok(Self::from_cells_trusted(self.params, cells))
    }

    pub fn transpose(&self) -> FSquare {
        let n = self.n();
        let mut cells = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[j * n + i] = self.get(i, j);
            }
        }
        Self::from_cells_trusted(self.params, cells)
    }

    /// Entry `(i, j)` of the result is `S[row_perm[i]][col_perm[j]]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<FSquare, SquareError> {
        let n = self.n();
        for perm in [row_perm, col_perm] {
            if perm.len() != n {
                return Err(SquareError::LengthMismatch {
                    expected: n,
                    found: perm.len(),
                });
            }
            let mut seen = vec![false; n];
            for &p in perm {
                if p >= n || core::mem::replace(&mut seen[p], true) {
                    return Err(SquareError::DimensionMismatch {
                        expected: n,
                        found: p,
                    });
                }
            }
        }
        let mut cells = Vec::with_capacity(n * n);
        for &ri in row_perm {
            for &cj in col_perm {
                cells.push(self.get(ri, cj));
            }
        }
        Ok(Self::from_cells_trusted(self.params, cells))
    }
}

fn validate(params: Params, cells: &[u8]) -> Result<(), SquareError> {
    let n = params.n();
    let m = params.m();
    let lambda = params.lambda();
    if cells.len() != n * n {
        return Err(SquareError::DimensionMismatch {
            expected: n * n,
            found: cells.len(),
        });
    }
    for (idx, &s) in cells.iter().enumerate() {
        if s == 0 || usize::from(s) > m {
            return Err(SquareError::SymbolOutOfRange {
                row: idx / n + 1,
                col: idx % n + 1,
                symbol: s,
            });
        }
    }
    let mut counts = vec![0usize; m];
    for i in 0..n {
        counts.fill(0);
        for &s in &cells[i * n..(i + 1) * n] {
            counts[usize::from(s) - 1] += 1;
        }
        if let Some(a) = counts.iter().position(|&c| c != lambda) {
            return Err(SquareError::RowRegularityViolation {
                row: i + 1,
                symbol: (a + 1) as u8,
                count: counts[a],
            });
        }
    }
    for j in 0..n {
        counts.fill(0);
        for i in 0..n {
            counts[usize::from(cells[i * n + j]) - 1] += 1;
        }
        if let Some(a) = counts.iter().position(|&c| c != lambda) {
            return Err(SquareError::ColumnRegularityViolation {
                col: j + 1,
                symbol: (a + 1) as u8,
                count: counts[a],
            });
        }
    }
    Ok(())
}

impl fmt::Debug for FSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FSquare {} ", self.params)?;
        f.debug_list().entries(self.rows()).finish()
    }
}

impl fmt::Display for FSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A {0,1} array of side `mλ`. When produced by [`FSquare::indicator`]
/// every row and column sums to `λ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndicatorSquare {
    params: Params,
    bits: BitMatrix,
}

impl IndicatorSquare {
    /// Wraps an arbitrary bit matrix of the right size, e.g. one read from
    /// a printed table. No regularity is implied.
    pub fn from_bits(params: Params, bits: BitMatrix) -> Result<Self, SquareError> {
        if bits.n() != params.n() {
            return Err(SquareError::DimensionMismatch {
                expected: params.n(),
                found: bits.n(),
            });
        }
        Ok(IndicatorSquare { params, bits })
    }

    #[inline]
    pub fn params(&self) -> Params {
        self.params
    }

    #[inline]
    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }

    pub fn into_bits(self) -> BitMatrix {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits.get(i, j)
    }

    pub fn inner(&self, other: &IndicatorSquare) -> Result<u64, SquareError> {
        inner(&self.bits, &other.bits)
    }
}

impl fmt::Debug for IndicatorSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndicatorSquare {} ", self.params)?;
        self.bits.fmt(f)
    }
}

/// `A ∘ B` for binary matrices.
pub fn inner(a: &BitMatrix, b: &BitMatrix) -> Result<u64, SquareError> {
    a.inner(b).ok_or(SquareError::DimensionMismatch {
        expected: a.n(),
        found: b.n(),
    })
}

/// Rebuilds `S = Σ_a a·I_a` from the `m` indicator squares, given in symbol
/// order.
pub fn reconstruct(inds: &[IndicatorSquare]) -> Result<FSquare, SquareError> {
    let first = inds.first().ok_or(SquareError::LengthMismatch {
        expected: 1,
        found: 0,
    })?;
    let params = first.params;
    if inds.iter().any(|ind| ind.params != params) {
        return Err(SquareError::ParamMismatch);
    }
    if inds.len() != params.m() {
        return Err(SquareError::LengthMismatch {
            expected: params.m(),
            found: inds.len(),
        });
    }
    let n = params.n();
    let mut cells = vec![0u8; n * n];
    for (a, ind) in inds.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if ind.get(i, j) {
                    let cell = &mut cells[i * n + j];
                    if *cell != 0 {
                        return Err(SquareError::OverlappingSupports {
                            row: i + 1,
                            col: j + 1,
                        });
                    }
                    *cell = (a + 1) as u8;
                }
            }
        }
    }
    if let Some(idx) = cells.iter().position(|&c| c == 0) {
        return Err(SquareError::UncoveredCell {
            row: idx / n + 1,
            col: idx % n + 1,
        });
    }
    FSquare::from_cells(params, cells)
}
