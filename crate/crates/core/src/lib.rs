//! Exact arithmetic for circulant determinants over the integers, the
//! permutation-orbit structure of their Leibniz expansion, and arithmetic in
//! `Z[ζ_p]` for prime `p`.
//!
//! Nothing in this crate touches floating point. `ζ` is a residue class
//! modulo the cyclotomic polynomial `Φ_p(t) = 1 + t + ... + t^(p-1)`, and every
//! determinant is an unbounded integer.

pub mod circulant;
pub mod cyclotomic;
mod error;
pub mod orbits;
pub mod ring;
mod serde_big;

pub use error::{Error, Result};

/// Seed used by every randomized check unless the caller supplies one.
pub const DEFAULT_SEED: u64 = 1729;
