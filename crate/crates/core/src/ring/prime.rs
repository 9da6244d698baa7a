use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Deterministic trial division up to `sqrt(n)`.
pub fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    // candidates of the form 6k ± 1
    let mut d = 5u64;
    while d <= n / d {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// The `count` smallest primes strictly greater than `lower`.
pub fn primes_above(lower: u64, count: usize) -> Vec<u64> {
    (lower.saturating_add(1)..)
        .filter(|&n| is_prime(n))
        .take(count)
        .collect()
}

/// A modulus whose primality was checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p` as a length or index bound.
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeModulus::new(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(91));
        assert!(!is_prime(25));
        assert!(!is_prime(49));
        assert!(is_prime(101));
    }

    #[test]
    fn large_word_sized() {
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_291 * 3));
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn primes_above_two_to_the_fifteen() {
        assert_eq!(primes_above(1 << 15, 3), vec![32771, 32779, 32783]);
    }

    #[test]
    fn prime_modulus_rejects_composites() {
        assert_eq!(PrimeModulus::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeModulus::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeModulus::new(13).unwrap().get(), 13);
    }
}
