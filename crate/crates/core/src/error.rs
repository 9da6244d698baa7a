use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("moduli {0} and {1} do not match")]
    ModulusMismatch(u64, u64),
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("no residues to combine")]
    EmptyResidues,
    #[error("divisor must be monic and nonzero")]
    NotMonic,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("expected length {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("vector must be non-empty")]
    EmptyVector,
    #[error("size {size} exceeds the limit of {limit}")]
    SizeLimit { size: usize, limit: usize },
    #[error("degree {degree} exceeds the limit of {limit}")]
    DegreeLimit { degree: usize, limit: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}
