//! Square bit matrices with rows packed into 64-bit words.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD: usize = 64;

/// An `n × n` binary matrix. Each row occupies `ceil(n / 64)` words and the
/// unused high bits of the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        BitMatrix {
            n,
            words,
            data: vec![0; words * n],
        }
    }

    /// The all-ones matrix `J`.
    pub fn ones(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.fill_row(i);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. Any nonzero entry counts as 1.
    ///
    /// Returns `None` when the rows do not form a square.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Option<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return None;
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, true);
                }
            }
        }
        Some(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        (self.data[i * self.words + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        let w = &mut self.data[i * self.words + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / WORD] ^= 1u64 << (j % WORD);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn fill_row(&mut self, i: usize) {
        let n = self.n;
        let words = self.words;
        let row = &mut self.data[i * words..(i + 1) * words];
        for (w, word) in row.iter_mut().enumerate() {
            let lo = w * WORD;
            let hi = (lo + WORD).min(n);
            *word = if hi <= lo { 0 } else { low_mask(hi - lo) };
        }
    }

    /// Mask of the valid bits in word `w` of a row.
    fn word_mask(&self, w: usize) -> u64 {
        let lo = w * WORD;
        let hi = (lo + WORD).min(self.n);
        if hi <= lo {
            0
        } else {
            low_mask(hi - lo)
        }
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_sum(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.get(i, j)).count()
    }

    pub fn count_ones(&self) -> u64 {
        self.data.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_ones(&self) -> bool {
        self.count_ones() == (self.n * self.n) as u64
    }

    /// `A ∘ B`: the number of positions where both matrices hold a 1,
    /// computed as a popcount of the word-wise AND.
    ///
    /// Returns `None` when the sizes differ.
    pub fn inner(&self, other: &BitMatrix) -> Option<u64> {
        if self.n != other.n {
            return None;
        }
        Some(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| u64::from((a & b).count_ones()))
                .sum(),
        )
    }

    /// Elementwise XOR in place. Panics on size mismatch.
    pub fn xor_assign(&mut self, other: &BitMatrix) {
        assert_eq!(self.n, other.n, "bit matrix size mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    /// Elementwise OR in place. Panics on size mismatch.
    pub fn or_assign(&mut self, other: &BitMatrix) {
        assert_eq!(self.n, other.n, "bit matrix size mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a |= b;
        }
    }

    pub fn complement(&self) -> BitMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for w in 0..self.words {
                out.data[i * self.words + w] ^= self.word_mask(w);
            }
        }
        out
    }

    /// True when row `i` equals row `k`.
    pub fn rows_equal(&self, i: usize, k: usize) -> bool {
        self.row(i) == self.row(k)
    }

    /// True when row `i` is the bitwise complement of row `k`.
    pub fn rows_complementary(&self, i: usize, k: usize) -> bool {
        let (a, b) = (self.row(i), self.row(k));
        (0..self.words).all(|w| a[w] ^ b[w] == self.word_mask(w))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Returns the matrix with entry `(i, j)` taken from
    /// `(row_perm[i], col_perm[j])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> BitMatrix {
        assert!(row_perm.len() == self.n && col_perm.len() == self.n);
        let mut out = Self::zeros(self.n);
        for (i, &ri) in row_perm.iter().enumerate() {
            for (j, &cj) in col_perm.iter().enumerate() {
                if self.get(ri, cj) {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }
}

#[inline]
fn low_mask(bits: usize) -> u64 {
    if bits >= WORD {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
