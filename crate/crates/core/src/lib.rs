//! Mutually orthogonal frequency squares.
//!
//! An F-square of type `F(mλ; λ)` is an `mλ × mλ` array over the symbols
//! `1..=m` in which every symbol occurs exactly `λ` times in every row and
//! every column. This crate represents such squares through their {0,1}
//! indicator squares and builds everything else on the resulting integer
//! inner-product algebra:
//!
//! * [`square`]: parameters, validated squares, indicator squares, reconstruction.
//! * [`verify`]: superposition counts, orthogonality, MOFS sets, the upper
//!   bound on set size and the structural test for complete sets.
//! * [`maximality`]: parity matrices, full-relation detection, the parity
//!   congruences and maximality certificates.
//! * [`construct`]: finite fields, Hadamard matrices and builders for
//!   complete sets.
//! * [`search`]: enumeration, extension search, greedy growth and the
//!   exhaustive maximality check.
//!
//! The crate is `no_std` and only needs `alloc`. All arithmetic is exact.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bits;
pub mod construct;
pub mod matrix;
pub mod maximality;
pub mod search;
pub mod square;
pub mod verify;

pub use bits::BitMatrix;
pub use matrix::IntMatrix;
pub use square::{reconstruct, FSquare, IndicatorSquare, Params, SquareError};
pub use verify::{verify_mofs, MofsSet, VerifyError};
