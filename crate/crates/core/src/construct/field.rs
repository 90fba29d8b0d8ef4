//! Table-driven arithmetic in GF(p^k).
//!
//! Elements are indexed by their coefficient vectors in the polynomial basis,
//! read as base-`p` numbers with the constant coefficient least significant.
//! Index 0 is zero and index 1 is one.

use alloc::vec;
use alloc::vec::Vec;

use super::ConstructError;

pub const DEFAULT_MAX_FIELD: usize = 32;

/// Monic irreducible polynomials, coefficients from the constant term up.
fn irreducible(p: usize, k: usize) -> Option<&'static [u8]> {
    Some(match (p, k) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (3, 2) => &[1, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[1, 1, 1],
        _ => return None,
    })
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `(p, e)` with `n = p^e`, or `None` when `n` is not a prime power.
pub fn prime_power(n: usize) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut rest, mut e) = (n, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldTable {
    p: usize,
    k: usize,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl core::fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

pub fn field_build(p: usize, k: usize) -> Result<FieldTable, ConstructError> {
    field_build_with_max(p, k, DEFAULT_MAX_FIELD)
}

pub fn field_build_with_max(p: usize, k: usize, max: usize) -> Result<FieldTable, ConstructError> {
    if !is_prime(p) {
        return Err(ConstructError::NotPrime(p));
    }
    let q = p
        .checked_pow(k as u32)
        .filter(|&q| k >= 1 && q <= max.min(256));
    let Some(q) = q else {
        return Err(ConstructError::UnsupportedSize(p.saturating_pow(k as u32)));
    };
    let poly = if k == 1 {
        None
    } else {
        Some(irreducible(p, k).ok_or(ConstructError::UnsupportedSize(q))?)
    };

    let digits = |x: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        let mut x = x;
        for slot in d.iter_mut() {
            *slot = x % p;
            x /= p;
        }
        d
    };
    let undigits = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = undigits(&sum) as u8;
            mul[a * q + b] = match poly {
                None => (a * b % p) as u8,
                Some(poly) => undigits(&poly_mul_mod(&da, &db, poly, p)) as u8,
            };
        }
    }
    let mut neg = vec![0u8; q];
    let mut inv = vec![0u8; q];
    for a in 0..q {
        neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap_or(0) as u8;
        if a != 0 {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u8;
        }
    }
    let field = FieldTable {
        p,
        k,
        q,
        add,
        mul,
        neg,
        inv,
    };
    field.self_check()?;
    Ok(field)
}

fn poly_mul_mod(a: &[usize], b: &[usize], poly: &[u8], p: usize) -> Vec<usize> {
    let k = a.len();
    let mut prod = vec![0usize; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^k = -(poly[0] + poly[1] x + … + poly[k-1] x^{k-1})
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &pc) in poly[..k].iter().enumerate() {
            let sub = c * usize::from(pc) % p;
            let slot = &mut prod[d - k + i];
            *slot = (*slot + p - sub) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl FieldTable {
    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> + Clone {
        0..self.q as u8
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[usize::from(a) * self.q + usize::from(b)]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[usize::from(a) * self.q + usize::from(b)]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[usize::from(a)]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[usize::from(a)])
    }

    pub fn pow(&self, a: u8, mut e: usize) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Elements of the subfield of order `r`, ascending by index.
    pub fn subfield(&self, r: usize) -> Vec<u8> {
        self.elements().filter(|&z| self.pow(z, r) == z).collect()
    }

    /// `Σ_{i<h} z^{r^i}` where `r^h = q`: the trace onto the subfield of order `r`.
    pub fn trace(&self, z: u8, r: usize, h: usize) -> u8 {
        let mut acc = 0;
        let mut term = z;
        for _ in 0..h {
            acc = self.add(acc, term);
            term = self.pow(term, r);
        }
        acc
    }

    /// Quadratic character: 0 for zero, 1 for nonzero squares, -1 otherwise.
    pub fn quadratic_character(&self, a: u8) -> i8 {
        if a == 0 {
            0
        } else if self.elements().any(|b| self.mul(b, b) == a) {
            1
        } else {
            -1
        }
    }

    fn self_check(&self) -> Result<(), ConstructError> {
        let fail = || Err(ConstructError::FieldSelfCheckFailed(self.q));
        for a in self.elements() {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.add(a, self.neg(a)) != 0 {
                return fail();
            }
            if a != 0 && self.mul(a, self.inv[usize::from(a)]) != 1 {
                return fail();
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return fail();
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return fail();
                    }
                }
            }
        }
        Ok(())
    }
}
