//! Builders for complete sets of MOFS.
//!
//! Both builders re-verify their output (pairwise orthogonality, set size
//! against the bound, and the structure of `T`) before returning it.

use alloc::vec::Vec;
use core::fmt;

use crate::square::{FSquare, Params};
use crate::verify::{completeness_structure, verify_mofs_with, MofsSet, OrthogonalityCheck};

pub mod field;
pub mod hadamard;

pub use field::{field_build, field_build_with_max, FieldTable, DEFAULT_MAX_FIELD};
pub use hadamard::{hadamard, hadamard_with_max, HadamardMatrix, DEFAULT_MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructError {
    NotPrime(usize),
    NotPrimePower(usize),
    UnsupportedSize(usize),
    UnsupportedOrder(usize),
    NotHadamard,
    NotNormalized,
    FieldSelfCheckFailed(usize),
    ConstructionSelfCheckFailed(&'static str),
}

impl fmt::Display for ConstructError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConstructError::NotPrime(p) => write!(f, "{p} is not prime"),
            ConstructError::NotPrimePower(m) => write!(f, "{m} is not a prime power"),
            ConstructError::UnsupportedSize(q) => {
                write!(f, "field or square size {q} is not supported")
            }
            ConstructError::UnsupportedOrder(n) => {
                write!(f, "no Hadamard matrix of order {n} is available")
            }
            ConstructError::NotHadamard => f.write_str("matrix is not a Hadamard matrix"),
            ConstructError::NotNormalized => f.write_str("Hadamard matrix is not normalized"),
            ConstructError::FieldSelfCheckFailed(q) => write!(f, "field axioms failed for GF({q})"),
            ConstructError::ConstructionSelfCheckFailed(what) => {
                write!(f, "constructed set failed its self-check: {what}")
            }
        }
    }
}

impl core::error::Error for ConstructError {}

pub fn construct_prime_power(m: usize, h: usize) -> Result<MofsSet, ConstructError> {
    construct_prime_power_with_max(m, h, DEFAULT_MAX_FIELD)
}

/// A complete set of `(m^h - 1)² / (m - 1)` MOFS of type `F(m^h; m^{h-1})`.
///
/// Rows and columns are indexed by GF(m^h). With `Tr` the trace onto
/// GF(m), the square for a pair `(a, b)` of nonzero elements is
/// `S[x][y] = Tr(a·x + b·y)`, one pair per class under scaling by GF(m)*
/// (the lexicographically smallest pair of element indices). Element `z` of
/// GF(m) becomes symbol `r + 1` where `r` is its rank in index order, so
/// zero maps to 1 and one maps to 2.
pub fn construct_prime_power_with_max(
    m: usize,
    h: usize,
    max: usize,
) -> Result<MofsSet, ConstructError> {
    let (p, e) = field::prime_power(m).ok_or(ConstructError::NotPrimePower(m))?;
    let q = m
        .checked_pow(h as u32)
        .filter(|&q| h >= 1 && q <= max)
        .ok_or(ConstructError::UnsupportedSize(m.saturating_pow(h as u32)))?;
    let f = field_build_with_max(p, e * h, max)?;
    let params = Params::new(m, q / m).map_err(|_| ConstructError::UnsupportedSize(q))?;

    let sub = f.subfield(m);
    let mut symbol = [0u8; 256];
    for (rank, &z) in sub.iter().enumerate() {
        symbol[usize::from(z)] = (rank + 1) as u8;
    }
    let trace_symbol: Vec<u8> = f
        .elements()
        .map(|z| symbol[usize::from(f.trace(z, m, h))])
        .collect();
    let scalars: Vec<u8> = sub.iter().copied().filter(|&c| c != 0).collect();

    let mut squares = Vec::new();
    for a in 1..q as u8 {
        for b in 1..q as u8 {
            let canonical = scalars
                .iter()
                .all(|&c| (f.mul(c, a), f.mul(c, b)) >= (a, b));
            if !canonical {
                continue;
            }
            let mut cells = Vec::with_capacity(q * q);
            for x in f.elements() {
                let ax = f.mul(a, x);
                for y in f.elements() {
                    cells.push(trace_symbol[usize::from(f.add(ax, f.mul(b, y)))]);
                }
            }
            let square = FSquare::from_cells(params, cells)
                .map_err(|_| ConstructError::ConstructionSelfCheckFailed("square regularity"))?;
            squares.push(square);
        }
    }
    self_check(squares)
}

/// `(4n - 1)²` MOFS of type `F(4n; 2n)` from a normalized Hadamard matrix
/// of order `4n`: for non-initial rows `r`, `c`, the square has symbol 1
/// where `H[r][x]·H[c][y] = +1` and symbol 2 elsewhere.
pub fn construct_federer(h: &HadamardMatrix) -> Result<MofsSet, ConstructError> {
    let order = h.order();
    if order < 4 || !order.is_multiple_of(4) {
        return Err(ConstructError::UnsupportedOrder(order));
    }
    if !h.is_normalized() {
        return Err(ConstructError::NotNormalized);
    }
    let params = Params::new(2, order / 2).map_err(|_| ConstructError::UnsupportedOrder(order))?;
    let mut squares = Vec::with_capacity((order - 1) * (order - 1));
    for r in 1..order {
        for c in 1..order {
            let mut cells = Vec::with_capacity(order * order);
            for x in 0..order {
                for y in 0..order {
                    cells.push(if h.get(r, x) * h.get(c, y) == 1 { 1 } else { 2 });
                }
            }
            let square = FSquare::from_cells(params, cells)
                .map_err(|_| ConstructError::ConstructionSelfCheckFailed("square regularity"))?;
            squares.push(square);
        }
    }
    self_check(squares)
}

fn self_check(squares: Vec<FSquare>) -> Result<MofsSet, ConstructError> {
    // Squares are validated, so the reduced pair check is exact.
    let set = verify_mofs_with(squares, OrthogonalityCheck::Reduced)
        .map_err(|_| ConstructError::ConstructionSelfCheckFailed("pairwise orthogonality"))?;
    let report = completeness_structure(&set)
        .map_err(|_| ConstructError::ConstructionSelfCheckFailed("completeness report"))?;
    if !report.is_complete {
        return Err(ConstructError::ConstructionSelfCheckFailed(
            "set size differs from the bound",
        ));
    }
    if !report.structure_matches {
        return Err(ConstructError::ConstructionSelfCheckFailed(
            "structure of T",
        ));
    }
    Ok(set)
}
