//! Orthogonality, MOFS sets, the size bound and the structure of complete sets.

use alloc::vec::Vec;
use core::fmt;

use crate::matrix::IntMatrix;
use crate::square::{FSquare, IndicatorSquare, Params};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    Empty,
    /// The square at this 1-based position has different parameters from the first.
    ParamMismatch {
        index: usize,
    },
    /// Squares `first` and `second` (1-based) superpose the pair `(a, b)`
    /// `count` times instead of `λ²`.
    NotOrthogonal {
        first: usize,
        second: usize,
        a: u8,
        b: u8,
        count: u64,
    },
    UndefinedForMOne,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VerifyError::Empty => f.write_str("a MOFS set needs at least one square"),
            VerifyError::ParamMismatch { index } => {
                write!(f, "square {index} has different parameters from square 1")
            }
            VerifyError::NotOrthogonal {
                first,
                second,
                a,
                b,
                count,
            } => write!(
                f,
                "squares {first} and {second} are not orthogonal: pair ({a},{b}) appears {count} times"
            ),
            VerifyError::UndefinedForMOne => f.write_str("the bound is undefined for m = 1"),
        }
    }
}

impl core::error::Error for VerifyError {}

/// How many of the `m²` symbol pairs [`orthogonal_with`] inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrthogonalityCheck {
    /// All `m²` pairs.
    #[default]
    Full,
    /// Only pairs with both symbols below `m`; line regularity of the two
    /// squares forces the remaining `2m - 1` counts.
    Reduced,
}

/// Entry `(j - 1, j' - 1)` counts the cells holding `j` in `s` and `j'` in `s2`.
pub fn superposition_counts(s: &FSquare, s2: &FSquare) -> Result<IntMatrix, VerifyError> {
    if s.params() != s2.params() {
        return Err(VerifyError::ParamMismatch { index: 2 });
    }
    let mut counts = IntMatrix::zeros(s.params().m());
    for (&a, &b) in s.cells().iter().zip(s2.cells()) {
        counts.add_at(usize::from(a) - 1, usize::from(b) - 1, 1);
    }
    Ok(counts)
}

pub fn orthogonal(s: &FSquare, s2: &FSquare) -> Result<bool, VerifyError> {
    orthogonal_with(s, s2, OrthogonalityCheck::Full)
}

/// Orthogonality through indicator inner products: `I_a(s) ∘ I_b(s2) = λ²`.
pub fn orthogonal_with(
    s: &FSquare,
    s2: &FSquare,
    check: OrthogonalityCheck,
) -> Result<bool, VerifyError> {
    if s.params() != s2.params() {
        return Err(VerifyError::ParamMismatch { index: 2 });
    }
    let lambda2 = lambda_squared(s.params());
    Ok(pair_defect(&s.indicators(), &s2.indicators(), lambda2, check).is_none())
}

fn lambda_squared(params: Params) -> u64 {
    (params.lambda() * params.lambda()) as u64
}

/// First `(a, b, count)` in symbol order with `count ≠ λ²`.
fn pair_defect(
    left: &[IndicatorSquare],
    right: &[IndicatorSquare],
    lambda2: u64,
    check: OrthogonalityCheck,
) -> Option<(u8, u8, u64)> {
    let limit = match check {
        OrthogonalityCheck::Full => left.len(),
        OrthogonalityCheck::Reduced => left.len().saturating_sub(1).max(1),
    };
    for (a, ia) in left.iter().take(limit).enumerate() {
        for (b, ib) in right.iter().take(limit).enumerate() {
            let count = ia.bits().inner(ib.bits()).expect("shared params");
            if count != lambda2 {
                return Some(((a + 1) as u8, (b + 1) as u8, count));
            }
        }
    }
    None
}

/// A nonempty list of pairwise orthogonal F-squares of one type.
#[derive(Clone, PartialEq, Eq)]
pub struct MofsSet {
    params: Params,
    squares: Vec<FSquare>,
}

impl MofsSet {
    pub fn singleton(square: FSquare) -> Self {
        MofsSet {
            params: square.params(),
            squares: alloc::vec![square],
        }
    }

    #[inline]
    pub fn params(&self) -> Params {
        self.params
    }

    /// Set size `t`.
    #[inline]
    pub fn len(&self) -> usize {
        self.squares.len()
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn squares(&self) -> &[FSquare] {
        &self.squares
    }

    pub fn iter(&self) -> core::slice::Iter<'_, FSquare> {
        self.squares.iter()
    }

    pub fn into_squares(self) -> Vec<FSquare> {
        self.squares
    }

    /// Appends `square` after checking it against every member.
    pub fn push(&mut self, square: FSquare) -> Result<(), VerifyError> {
        let index = self.len() + 1;
        if square.params() != self.params {
            return Err(VerifyError::ParamMismatch { index });
        }
        let lambda2 = lambda_squared(self.params);
        let new = square.indicators();
        for (k, member) in self.squares.iter().enumerate() {
            if let Some((a, b, count)) = pair_defect(
                &member.indicators(),
                &new,
                lambda2,
                OrthogonalityCheck::Full,
            ) {
                return Err(VerifyError::NotOrthogonal {
                    first: k + 1,
                    second: index,
                    a,
                    b,
                    count,
                });
            }
        }
        self.squares.push(square);
        Ok(())
    }
}

impl fmt::Debug for MofsSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MofsSet {} t={}", self.params, self.len())
    }
}

impl<'a> IntoIterator for &'a MofsSet {
    type Item = &'a FSquare;
    type IntoIter = core::slice::Iter<'a, FSquare>;
    fn into_iter(self) -> Self::IntoIter {
        self.squares.iter()
    }
}

/// Checks every pair, in the order `(1,2), (1,3), …, (2,3), …`, and reports
/// the first failure.
pub fn verify_mofs(squares: Vec<FSquare>) -> Result<MofsSet, VerifyError> {
    verify_mofs_with(squares, OrthogonalityCheck::Full)
}

pub fn verify_mofs_with(
    squares: Vec<FSquare>,
    check: OrthogonalityCheck,
) -> Result<MofsSet, VerifyError> {
    let params = squares.first().ok_or(VerifyError::Empty)?.params();
    if let Some(k) = squares.iter().position(|s| s.params() != params) {
        return Err(VerifyError::ParamMismatch { index: k + 1 });
    }
    let lambda2 = lambda_squared(params);
    let inds: Vec<Vec<IndicatorSquare>> = squares.iter().map(FSquare::indicators).collect();
    for k in 0..inds.len() {
        for l in k + 1..inds.len() {
            if let Some((a, b, count)) = pair_defect(&inds[k], &inds[l], lambda2, check) {
                return Err(VerifyError::NotOrthogonal {
                    first: k + 1,
                    second: l + 1,
                    a,
                    b,
                    count,
                });
            }
        }
    }
    if let Ok(bound) = upper_bound(params) {
        debug_assert!(
            squares.len() as u64 <= bound.value,
            "set exceeds the upper bound"
        );
    }
    Ok(MofsSet { params, squares })
}

/// `⌊(mλ - 1)² / (m - 1)⌋` together with whether the division is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bound {
    pub value: u64,
    pub exact: bool,
}

pub fn upper_bound(params: Params) -> Result<Bound, VerifyError> {
    let m = params.m() as u64;
    if m < 2 {
        return Err(VerifyError::UndefinedForMOne);
    }
    let top = (params.n() as u64 - 1).pow(2);
    Ok(Bound {
        value: top / (m - 1),
        exact: top.is_multiple_of(m - 1),
    })
}

/// The array `T = Σ_k Σ_{a>1} I_a(S_k)` after relabeling every square so its
/// top-left symbol is 1, and the comparison with the shape forced on a
/// complete set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    pub t: usize,
    pub bound: Bound,
    pub is_complete: bool,
    pub t_matrix: IntMatrix,
    /// Corner 0, rest of first row and column `λ(mλ-1)`, interior `λ(mλ-2)`.
    pub structure_matches: bool,
    /// `T ∘ J`.
    pub sum_entries: i64,
    /// `T ∘ T`.
    pub sum_squares: i64,
    /// First column without the corner.
    pub first_col_sum: i64,
    /// First row without the corner.
    pub first_row_sum: i64,
}

pub fn completeness_structure(set: &MofsSet) -> Result<CompletenessReport, VerifyError> {
    let params = set.params();
    let bound = upper_bound(params)?;
    let n = params.n();
    let lambda = params.lambda() as i64;
    let mut t_matrix = IntMatrix::zeros(n);
    for (k, square) in set.iter().enumerate() {
        if square.params() != params {
            return Err(VerifyError::ParamMismatch { index: k + 1 });
        }
        let relabeled = square
            .swap_symbols(1, square.get(0, 0))
            .expect("symbols of a valid square");
        for ind in relabeled.indicators().iter().skip(1) {
            t_matrix.add_bits(ind.bits(), 1);
        }
    }
    let border = lambda * (n as i64 - 1);
    let interior = lambda * (n as i64 - 2);
    let mut structure_matches = t_matrix.get(0, 0) == 0;
    for i in 0..n {
        for j in 0..n {
            if (i, j) == (0, 0) {
                continue;
            }
            let want = if i == 0 || j == 0 { border } else { interior };
            structure_matches &= t_matrix.get(i, j) == want;
        }
    }
    let first_col_sum = (1..n).map(|i| t_matrix.get(i, 0)).sum();
    let first_row_sum = (1..n).map(|j| t_matrix.get(0, j)).sum();
    Ok(CompletenessReport {
        t: set.len(),
        bound,
        is_complete: bound.exact && set.len() as u64 == bound.value,
        sum_entries: t_matrix.sum(),
        sum_squares: t_matrix.sum_squares(),
        first_col_sum,
        first_row_sum,
        t_matrix,
        structure_matches,
    })
}
