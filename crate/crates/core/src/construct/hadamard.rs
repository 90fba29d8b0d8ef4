//! Hadamard matrices from Sylvester doubling, Paley's first construction and
//! Kronecker products.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::{field_build_with_max, prime_power};
use super::ConstructError;

pub const DEFAULT_MAX_ORDER: usize = 64;

/// A `±1` matrix with `H·Hᵀ = N·I`.
#[derive(Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
    normalized: bool,
}

impl HadamardMatrix {
    /// Checks entries and row orthogonality.
    pub fn new(order: usize, entries: Vec<i8>) -> Result<Self, ConstructError> {
        if order == 0
            || entries.len() != order * order
            || entries.iter().any(|&e| e != 1 && e != -1)
        {
            return Err(ConstructError::NotHadamard);
        }
        let h = HadamardMatrix {
            order,
            normalized: is_normalized(order, &entries),
            entries,
        };
        if !h.rows_orthogonal() {
            return Err(ConstructError::NotHadamard);
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Negates columns, then rows, so the first row and column are all `+1`.
    pub fn normalize(&self) -> HadamardMatrix {
        let n = self.order;
        let mut e = self.entries.clone();
        for j in 0..n {
            if e[j] < 0 {
                for i in 0..n {
                    e[i * n + j] = -e[i * n + j];
                }
            }
        }
        for i in 0..n {
            if e[i * n] < 0 {
                for j in 0..n {
                    e[i * n + j] = -e[i * n + j];
                }
            }
        }
        HadamardMatrix {
            order: n,
            entries: e,
            normalized: true,
        }
    }

    /// Dot products of all distinct row pairs vanish.
    pub fn rows_orthogonal(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| {
            (i + 1..n).all(|k| {
                self.row(i)
                    .iter()
                    .zip(self.row(k))
                    .map(|(&a, &b)| i32::from(a) * i32::from(b))
                    .sum::<i32>()
                    == 0
            })
        })
    }
}

fn is_normalized(n: usize, e: &[i8]) -> bool {
    (0..n).all(|j| e[j] == 1) && (0..n).all(|i| e[i * n] == 1)
}

impl fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "HadamardMatrix({})", self.order)?;
        for i in 0..self.order {
            for &v in self.row(i) {
                f.write_str(if v > 0 { "+" } else { "-" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn hadamard(order: usize) -> Result<HadamardMatrix, ConstructError> {
    hadamard_with_max(order, DEFAULT_MAX_ORDER)
}

/// A normalized Hadamard matrix of the given order. Powers of two use
/// Sylvester doubling; otherwise Paley I when `order - 1 ≡ 3 (mod 4)` is a
/// prime power, then doubling, then Kronecker products of smaller orders.
pub fn hadamard_with_max(order: usize, max: usize) -> Result<HadamardMatrix, ConstructError> {
    if order == 0 || order > max {
        return Err(ConstructError::UnsupportedOrder(order));
    }
    let entries = build(order).ok_or(ConstructError::UnsupportedOrder(order))?;
    let h = HadamardMatrix::new(order, entries)
        .map_err(|_| ConstructError::ConstructionSelfCheckFailed("Hadamard row orthogonality"))?;
    Ok(h.normalize())
}

fn build(order: usize) -> Option<Vec<i8>> {
    match order {
        1 => return Some(vec![1]),
        2 => return Some(vec![1, 1, 1, -1]),
        _ if !order.is_multiple_of(4) => return None,
        _ => {}
    }
    if order.is_power_of_two() {
        return build(order / 2).map(|h| kronecker(&[1, 1, 1, -1], 2, &h, order / 2));
    }
    if let Some(h) = paley_i(order - 1) {
        return Some(h);
    }
    if let Some(h) = build(order / 2) {
        return Some(kronecker(&[1, 1, 1, -1], 2, &h, order / 2));
    }
    (2..order)
        .take_while(|a| a * a <= order)
        .filter(|a| order.is_multiple_of(*a))
        .find_map(|a| Some(kronecker(&build(a)?, a, &build(order / a)?, order / a)))
}

fn kronecker(a: &[i8], na: usize, b: &[i8], nb: usize) -> Vec<i8> {
    let n = na * nb;
    let mut out = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = a[(i / nb) * na + j / nb] * b[(i % nb) * nb + j % nb];
        }
    }
    out
}

/// `H = I + [[0, 1ᵀ], [-1, Q]]` with `Q` the Jacobsthal matrix of GF(q).
fn paley_i(q: usize) -> Option<Vec<i8>> {
    if q % 4 != 3 {
        return None;
    }
    let (p, k) = prime_power(q)?;
    let field = field_build_with_max(p, k, q).ok()?;
    let chi: Vec<i8> = field
        .elements()
        .map(|a| field.quadratic_character(a))
        .collect();
    let n = q + 1;
    let mut h = vec![0i8; n * n];
    for j in 1..n {
        h[j] = 1;
        h[j * n] = -1;
    }
    for a in field.elements() {
        for b in field.elements() {
            let (i, j) = (usize::from(a) + 1, usize::from(b) + 1);
            h[i * n + j] = chi[usize::from(field.sub(a, b))];
        }
    }
    for i in 0..n {
        h[i * n + i] += 1;
    }
    Some(h)
}
