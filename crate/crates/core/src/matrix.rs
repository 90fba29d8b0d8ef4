//! Dense square integer matrices used for sums of indicator squares and
//! superposition tables.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Option<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return None;
            }
            data.extend_from_slice(row);
        }
        Some(IntMatrix { n, data })
    }

    pub fn from_bits(bits: &BitMatrix) -> Self {
        let mut m = Self::zeros(bits.n());
        m.add_bits(bits, 1);
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] += v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Adds `coeff · bits` elementwise. Panics on size mismatch.
    pub fn add_bits(&mut self, bits: &BitMatrix, coeff: i64) {
        assert_eq!(self.n, bits.n(), "matrix size mismatch");
        for i in 0..self.n {
            for j in 0..self.n {
                if bits.get(i, j) {
                    self.data[i * self.n + j] += coeff;
                }
            }
        }
    }

    /// Sum of the entries of the elementwise product.
    pub fn inner(&self, other: &IntMatrix) -> Option<i64> {
        (self.n == other.n).then(|| self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum())
    }

    pub fn inner_bits(&self, bits: &BitMatrix) -> Option<i64> {
        if self.n != bits.n() {
            return None;
        }
        let mut acc = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if bits.get(i, j) {
                    acc += self.get(i, j);
                }
            }
        }
        Some(acc)
    }

    /// `A ∘ J`.
    pub fn sum(&self) -> i64 {
        self.data.iter().sum()
    }

    /// `A ∘ A`.
    pub fn sum_squares(&self) -> i64 {
        self.data.iter().map(|v| v * v).sum()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Elementwise reduction modulo 2.
    pub fn mod2(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j).rem_euclid(2) == 1 {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.data.iter().copied()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[i64]>::to_vec)
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.n.max(1)))
            .finish()
    }
}
