//! Parity certificates of maximality.
//!
//! For a chosen symbol `a_k` in each square, the parity matrix is
//! `V mod 2` with `V = Σ_k I_{a_k}(S_k)`. A *non-constant full relation*
//! holds when, after permuting rows and columns, `V mod 2` splits into
//!
//! ```text
//!            y       n - y
//!   x     [  0    |   J   ]
//!   n - x [  J    |   0   ]
//! ```
//!
//! and is neither all zeros nor all ones. When `λ` is odd such a relation
//! rules out any further orthogonal square, so the set is maximal.

use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitMatrix;
use crate::square::{FSquare, Params};
use crate::verify::MofsSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaximalityError {
    /// Symbol chosen for the square at this 1-based position is not in `1..=m`.
    SymbolOutOfRange {
        index: usize,
        symbol: u8,
    },
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    /// The square at this 1-based position has different parameters from the first.
    ParamMismatch {
        index: usize,
    },
}

impl fmt::Display for MaximalityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MaximalityError::SymbolOutOfRange { index, symbol } => {
                write!(
                    f,
                    "symbol {symbol} chosen for square {index} is out of range"
                )
            }
            MaximalityError::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} symbol choices, found {found}")
            }
            MaximalityError::ParamMismatch { index } => {
                write!(f, "square {index} has different parameters from square 1")
            }
        }
    }
}

impl core::error::Error for MaximalityError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityMatrix {
    params: Params,
    t: usize,
    symbol_choice: Vec<u8>,
    bits: BitMatrix,
}

impl ParityMatrix {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn set_size(&self) -> usize {
        self.t
    }

    pub fn symbol_choice(&self) -> &[u8] {
        &self.symbol_choice
    }

    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }
}

/// `(Σ_k I_{choice[k]}(S_k)) mod 2`.
pub fn parity_matrix(set: &MofsSet, symbol_choice: &[u8]) -> Result<ParityMatrix, MaximalityError> {
    parity_matrix_of_squares(set.squares(), symbol_choice)
}

/// As [`parity_matrix`] for any nonempty list of F-squares of one type,
/// orthogonal or not.
pub fn parity_matrix_of_squares(
    squares: &[FSquare],
    symbol_choice: &[u8],
) -> Result<ParityMatrix, MaximalityError> {
    if symbol_choice.len() != squares.len() || squares.is_empty() {
        return Err(MaximalityError::LengthMismatch {
            expected: squares.len(),
            found: symbol_choice.len(),
        });
    }
    let params = squares[0].params();
    if let Some(k) = squares.iter().position(|s| s.params() != params) {
        return Err(MaximalityError::ParamMismatch { index: k + 1 });
    }
    let n = params.n();
    let mut bits = BitMatrix::zeros(n);
    for (k, (square, &a)) in squares.iter().zip(symbol_choice).enumerate() {
        if a == 0 || usize::from(a) > params.m() {
            return Err(MaximalityError::SymbolOutOfRange {
                index: k + 1,
                symbol: a,
            });
        }
        for (idx, &s) in square.cells().iter().enumerate() {
            if s == a {
                bits.toggle(idx / n, idx % n);
            }
        }
    }
    Ok(ParityMatrix {
        params,
        t: squares.len(),
        symbol_choice: symbol_choice.to_vec(),
        bits,
    })
}

/// The same symbol `a` in every square.
pub fn parity_matrix_uniform(set: &MofsSet, a: u8) -> Result<ParityMatrix, MaximalityError> {
    parity_matrix(set, &alloc::vec![a; set.len()])
}

/// Sizes and partitions of the block form, in canonical orientation:
/// `x ≤ n - x`, and `y ≤ n - y` when `x = n - x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockShape {
    /// `x`: rows in the top block.
    pub top_block_rows: usize,
    /// `y`: columns in the left block.
    pub left_block_cols: usize,
    /// 0-based rows of the top block, ascending.
    pub row_partition: Vec<usize>,
    /// 0-based columns of the left block, ascending.
    pub col_partition: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FullRelationCertificate {
    pub shape: BlockShape,
    pub symbol_choice: Vec<u8>,
}

impl FullRelationCertificate {
    pub fn x(&self) -> usize {
        self.shape.top_block_rows
    }

    pub fn y(&self) -> usize {
        self.shape.left_block_cols
    }
}

impl fmt::Display for FullRelationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) = ({}, {})", self.x(), self.y())
    }
}

/// Detects the block form on a raw bit matrix.
///
/// Every row must equal the first row `p` or its complement, and the matrix
/// must not be constant. Rows equal to one of those two patterns form the
/// top block; its left block is the set of columns where that pattern is 0.
pub fn detect_block_shape(bits: &BitMatrix) -> Option<BlockShape> {
    let n = bits.n();
    if n == 0 || bits.is_zero() || bits.is_ones() {
        return None;
    }
    let mut same = Vec::new();
    let mut flipped = Vec::new();
    for i in 0..n {
        if bits.rows_equal(i, 0) {
            same.push(i);
        } else if bits.rows_complementary(i, 0) {
            flipped.push(i);
        } else {
            return None;
        }
    }
    let zeros_of_first: Vec<usize> = (0..n).filter(|&j| !bits.get(0, j)).collect();
    let ones_of_first: Vec<usize> = (0..n).filter(|&j| bits.get(0, j)).collect();
    // Orientation A: rows equal to row 0 on top, left block = zeros of row 0.
    // Orientation B: complementary rows on top, left block = ones of row 0.
    let (x_a, y_a) = (same.len(), zeros_of_first.len());
    let use_a = x_a < n - x_a || (x_a == n - x_a && y_a <= n - y_a);
    let (row_partition, col_partition) = if use_a {
        (same, zeros_of_first)
    } else {
        (flipped, ones_of_first)
    };
    Some(BlockShape {
        top_block_rows: row_partition.len(),
        left_block_cols: col_partition.len(),
        row_partition,
        col_partition,
    })
}

pub fn detect_full_relation(pm: &ParityMatrix) -> Option<FullRelationCertificate> {
    detect_block_shape(&pm.bits).map(|shape| FullRelationCertificate {
        shape,
        symbol_choice: pm.symbol_choice.clone(),
    })
}

/// The parity congruences a full relation from a genuine MOFS set with odd
/// `λ` must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityReport {
    /// `x ≡ y ≡ tλ (mod 2)`.
    pub lemma6_i: bool,
    /// `mλ ≡ 0 (mod 2)`.
    pub lemma6_ii: bool,
    /// `t` odd.
    pub lemma7_t_odd: bool,
    /// `t ≡ m(x + y) - (m + 1) (mod 8)`.
    pub prop9: bool,
    /// `t ≡ m - 1 (mod 4)`.
    pub cor10: bool,
}

impl ParityReport {
    pub fn all_hold(&self) -> bool {
        self.lemma6_i && self.lemma6_ii && self.lemma7_t_odd && self.prop9 && self.cor10
    }

    /// `(label, holds)` in a fixed order, for reports.
    pub fn checklist(&self) -> [(&'static str, bool); 5] {
        [
            ("x = y = t*lambda (mod 2)", self.lemma6_i),
            ("m*lambda = 0 (mod 2)", self.lemma6_ii),
            ("t odd", self.lemma7_t_odd),
            ("t = m(x+y) - (m+1) (mod 8)", self.prop9),
            ("t = m - 1 (mod 4)", self.cor10),
        ]
    }
}

pub fn parity_report(cert: &FullRelationCertificate, params: Params, t: usize) -> ParityReport {
    congruences(params, t, cert.x(), cert.y())
}

/// The congruences evaluated on raw numbers.
pub fn congruences(params: Params, t: usize, x: usize, y: usize) -> ParityReport {
    let m = params.m() as i64;
    let lambda = params.lambda() as i64;
    let (t, x, y) = (t as i64, x as i64, y as i64);
    let tl = (t * lambda).rem_euclid(2);
    ParityReport {
        lemma6_i: x.rem_euclid(2) == tl && y.rem_euclid(2) == tl,
        lemma6_ii: (m * lambda).rem_euclid(2) == 0,
        lemma7_t_odd: t.rem_euclid(2) == 1,
        prop9: t.rem_euclid(8) == (m * (x + y) - (m + 1)).rem_euclid(8),
        cor10: t.rem_euclid(4) == (m - 1).rem_euclid(4),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    CertifiedMaximal {
        certificate: FullRelationCertificate,
        report: ParityReport,
    },
    NoCertificate,
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::CertifiedMaximal { .. })
    }
}

/// Tries the `m` uniform symbol choices in increasing symbol order.
pub fn maximality_verdict(set: &MofsSet) -> Verdict {
    maximality_verdict_with(set, &[]).expect("uniform choices are always valid")
}

/// As [`maximality_verdict`], then tries each of `extra_choices` in order.
///
/// Always [`Verdict::NoCertificate`] when `λ` is even.
pub fn maximality_verdict_with(
    set: &MofsSet,
    extra_choices: &[Vec<u8>],
) -> Result<Verdict, MaximalityError> {
    let params = set.params();
    let mut pms = Vec::new();
    for choice in extra_choices {
        pms.push(parity_matrix(set, choice)?);
    }
    if params.lambda().is_multiple_of(2) {
        return Ok(Verdict::NoCertificate);
    }
    let uniform = params
        .symbols()
        .map(|a| parity_matrix_uniform(set, a).expect("valid symbol"));
    for pm in uniform.chain(pms) {
        if let Some(certificate) = detect_full_relation(&pm) {
            let report = parity_report(&certificate, params, set.len());
            return Ok(Verdict::CertifiedMaximal {
                certificate,
                report,
            });
        }
    }
    Ok(Verdict::NoCertificate)
}
