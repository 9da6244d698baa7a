//! Exact arithmetic foundations: unbounded integers and rationals, residues
//! modulo a machine-word modulus, dense integer polynomials, CRT
//! reconstruction, and primality.

mod modular;
mod poly;
mod prime;

pub use modular::{crt_combine, ModInt};
pub use poly::IntPoly;
pub use prime::{is_prime, primes_above, PrimeModulus};

/// Unbounded signed integer.
pub type ExactInt = num_bigint::BigInt;

/// Reduced fraction with a positive denominator.
pub type Rational = num_rational::BigRational;
