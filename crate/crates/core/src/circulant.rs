//! Circulant matrices and four independent ways to get their determinant.
//!
//! A [`CirculantVector`] `(a_0, ..., a_{n-1})` stands for the matrix
//! `A[i][j] = a[(j - i) mod n]`: row `i` is row `0` rotated right by `i`.
//!
//! * [`det_leibniz`] sums over all `n!` permutations and is the oracle.
//! * [`det_bareiss`] is fraction-free elimination over `Z`.
//! * [`det_multimodular`] reduces modulo word-sized primes and rebuilds the
//!   integer from the Hadamard bound and CRT.
//! * [`det_powersum_mod_p`] only knows the determinant modulo a prime `p = n`,
//!   as the power sum `a_0^p + ... + a_{p-1}^p`.

use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::ring::{crt_combine, is_prime, IntPoly, ModInt, PrimeModulus};
use crate::{Error, Result};

/// Largest size accepted by [`det_leibniz`].
pub const LEIBNIZ_LIMIT: usize = 9;

/// Multi-modular primes are taken from just above this value.
pub const MULTIMODULAR_PRIME_FLOOR: u64 = 1 << 15;

/// First row of a circulant matrix. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CirculantVector(#[serde(serialize_with = "crate::serde_big::bigint_vec")] Vec<BigInt>);

impl CirculantVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(CirculantVector(entries))
    }

    pub fn from_i64(entries: &[i64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| BigInt::from(a)).collect())
    }

    /// The unit vector `e_0`, whose matrix is the identity.
    pub fn identity(n: usize) -> Result<Self> {
        let mut entries = vec![BigInt::zero(); n];
        *entries.first_mut().ok_or(Error::EmptyVector)? = BigInt::one();
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    /// `A[i][j] = a[(j - i) mod n]`
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        let n = self.len();
        &self.0[(j + n - i % n) % n]
    }

    pub fn matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j).clone()).collect())
            .collect()
    }

    /// `(a_k, a_{k+1}, ..., a_{k-1})`
    pub fn rotate_left(&self, k: usize) -> CirculantVector {
        let mut entries = self.0.clone();
        entries.rotate_left(k % self.len());
        CirculantVector(entries)
    }

    /// `f(t) = Σ a_j t^j`
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.0.clone())
    }

    /// Sum of squares of a row, the squared Euclidean norm shared by every row.
    pub fn row_norm_squared(&self) -> BigInt {
        self.0.iter().map(|a| a * a).sum()
    }
}

/// Cyclic convolution: `(u ⊛ w)_k = Σ_{i + j ≡ k} u_i w_j`, so that
/// `circ(u) · circ(w) = circ(u ⊛ w)`.
pub fn cyclic_convolve(u: &CirculantVector, w: &CirculantVector) -> Result<CirculantVector> {
    let n = u.len();
    if w.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    let mut out = vec![BigInt::zero(); n];
    for (i, ui) in u.0.iter().enumerate() {
        for (j, wj) in w.0.iter().enumerate() {
            out[(i + j) % n] += ui * wj;
        }
    }
    CirculantVector::new(out)
}

/// Leibniz expansion with the default size limit.
pub fn det_leibniz(v: &CirculantVector) -> Result<BigInt> {
    det_leibniz_with_limit(v, LEIBNIZ_LIMIT)
}

pub fn det_leibniz_with_limit(v: &CirculantVector, limit: usize) -> Result<BigInt> {
    let n = v.len();
    if n > limit {
        return Err(Error::SizeLimit { size: n, limit });
    }
    let matrix = v.matrix();

    // n! · max|a|^n bounds every partial sum; stay in i128 when it fits.
    let max = v.0.iter().map(|a| a.abs()).max().unwrap_or_default();
    let factorial: BigInt = (1..=n).product::<usize>().into();
    let bound = factorial * num_traits::pow(max, n);
    if bound.bits() < 126 {
        let small: Vec<Vec<i128>> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|a| a.to_i128().expect("bounded entry"))
                    .collect()
            })
            .collect();
        return Ok(BigInt::from(leibniz_sum(&small)));
    }
    Ok(leibniz_sum(&matrix))
}

/// `Σ_σ sgn(σ) Π_i m[i][σ(i)]`, enumerated row by row. Zero entries prune
/// their whole subtree.
fn leibniz_sum<T>(m: &[Vec<T>]) -> T
where
    T: Clone + Zero + One + Neg<Output = T> + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    fn walk<T>(m: &[Vec<T>], row: usize, used: u32, odd: bool, prefix: T, acc: &mut T)
    where
        T: Clone + Zero + One + Neg<Output = T> + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
    {
        let n = m.len();
        if row == n {
            let term = if odd { -prefix } else { prefix };
            *acc = std::mem::replace(acc, T::zero()) + term;
            return;
        }
        for col in 0..n {
            if used & (1 << col) != 0 || m[row][col].is_zero() {
                continue;
            }
            // earlier rows mapped to larger columns are inversions
            let flips = (used >> (col + 1)).count_ones() % 2 == 1;
            walk(
                m,
                row + 1,
                used | (1 << col),
                odd ^ flips,
                prefix.clone() * &m[row][col],
                acc,
            );
        }
    }

    let mut acc = T::zero();
    walk(m, 0, 0, false, T::one(), &mut acc);
    acc
}

/// Fraction-free Gaussian elimination (Bareiss). Every division is exact.
pub fn det_bareiss(v: &CirculantVector) -> BigInt {
    bareiss(v.matrix())
}

pub(crate) fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultimodularOptions {
    /// Use the product of `f(ω^k)` over `n`-th roots of unity `ω` modulo `q`
    /// whenever `q ≡ 1 (mod n)`.
    pub root_of_unity_fast_path: bool,
}

impl Default for MultimodularOptions {
    fn default() -> Self {
        MultimodularOptions {
            root_of_unity_fast_path: true,
        }
    }
}

/// Everything [`det_multimodular_with`] computed along the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultimodularTrace {
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub determinant: BigInt,
    /// `(Σ a_j²)^n`, the square of the Hadamard bound.
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub hadamard_bound_squared: BigInt,
    pub residues: Vec<ModInt>,
    /// Primes where the root-of-unity path was taken.
    pub fast_path_primes: Vec<u64>,
}

pub fn det_multimodular(v: &CirculantVector) -> BigInt {
    det_multimodular_with(v, MultimodularOptions::default()).determinant
}

pub fn det_multimodular_with(v: &CirculantVector, opts: MultimodularOptions) -> MultimodularTrace {
    let n = v.len();
    // |det| ≤ B = S^(n/2); pick primes until M > 2B, i.e. M² > 4·S^n.
    let bound_sq = num_traits::pow(v.row_norm_squared(), n);
    let target = &bound_sq * 4u32;

    let mut residues = Vec::new();
    let mut fast_path_primes = Vec::new();
    let mut product = BigInt::one();
    let mut q = MULTIMODULAR_PRIME_FLOOR;
    while residues.is_empty() || &product * &product <= target {
        q += 1;
        if !is_prime(q) {
            continue;
        }
        let r = if opts.root_of_unity_fast_path && (q - 1).is_multiple_of(n as u64) {
            fast_path_primes.push(q);
            det_mod_prime_roots(v, q)
        } else {
            det_mod_prime_gauss(v, q)
        };
        residues.push(r);
        product *= q;
    }

    let determinant = crt_combine(&residues).expect("distinct primes are coprime");
    MultimodularTrace {
        determinant,
        hadamard_bound_squared: bound_sq,
        residues,
        fast_path_primes,
    }
}

/// `det A mod q` by Gaussian elimination over `GF(q)`. `q` must be prime.
pub fn det_mod_prime_gauss(v: &CirculantVector, q: u64) -> ModInt {
    let n = v.len();
    let mut m: Vec<Vec<ModInt>> = (0..n)
        .map(|i| (0..n).map(|j| residue(v.entry(i, j), q)).collect())
        .collect();
    let mut det = ModInt::new(1, q).expect("q ≥ 2");
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return ModInt::new(0, q).expect("q ≥ 2");
        };
        if pivot != k {
            m.swap(k, pivot);
            det = det.neg();
        }
        let pk = m[k][k];
        det = det.try_mul(pk).expect("same modulus");
        let inv = pk.inverse().expect("nonzero residue modulo a prime");
        let (upper, lower) = m.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower {
            let factor = row[k].try_mul(inv).expect("same modulus");
            if factor.is_zero() {
                continue;
            }
            for (x, &pj) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                let t = factor.try_mul(pj).expect("same modulus");
                *x = x.try_sub(t).expect("same modulus");
            }
        }
    }
    det
}

/// `det A mod q` as `Π_k f(ω^k)` for a primitive `n`-th root of unity `ω`
/// modulo `q`. The vectors `(1, ω^k, ..., ω^{k(n-1)})` are eigenvectors of
/// the circulant. Requires `q` prime with `q ≡ 1 (mod n)`.
pub fn det_mod_prime_roots(v: &CirculantVector, q: u64) -> ModInt {
    let n = v.len() as u64;
    assert!(
        is_prime(q) && (q - 1).is_multiple_of(n),
        "need a prime q ≡ 1 mod {n}"
    );
    let omega = ModInt::new(primitive_root(q) as i64, q)
        .expect("q ≥ 2")
        .pow((q - 1) / n);
    let coeffs: Vec<ModInt> = v.entries().iter().map(|a| residue(a, q)).collect();
    let mut det = ModInt::new(1, q).expect("q ≥ 2");
    let mut point = ModInt::new(1, q).expect("q ≥ 2");
    for _ in 0..n {
        let value = coeffs
            .iter()
            .rev()
            .fold(ModInt::new(0, q).expect("q ≥ 2"), |acc, &c| {
                acc.try_mul(point)
                    .and_then(|x| x.try_add(c))
                    .expect("same modulus")
            });
        det = det.try_mul(value).expect("same modulus");
        point = point.try_mul(omega).expect("same modulus");
    }
    det
}

fn residue(a: &BigInt, q: u64) -> ModInt {
    ModInt::from_bigint(a, q).expect("q ≥ 2")
}

/// Smallest generator of the multiplicative group modulo the prime `q`.
fn primitive_root(q: u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let order = q - 1;
    let mut factors = Vec::new();
    let mut rest = order;
    let mut d = 2;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            factors.push(d);
            while rest.is_multiple_of(d) {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    (2..q)
        .find(|&g| {
            let g = ModInt::new(g as i64, q).expect("q ≥ 2");
            factors.iter().all(|&f| g.pow(order / f).residue() != 1)
        })
        .expect("every prime has a primitive root")
}

/// `Σ_j a_j^p mod p`, which is `det A mod p` when `n = p`.
pub fn det_powersum_mod_p(v: &CirculantVector, p: PrimeModulus) -> Result<ModInt> {
    if v.len() != p.as_usize() {
        return Err(Error::LengthMismatch {
            expected: p.as_usize(),
            actual: v.len(),
        });
    }
    let zero = ModInt::new(0, p.get())?;
    v.entries()
        .iter()
        .try_fold(zero, |acc, a| acc.try_add(residue(a, p.get()).pow(p.get())))
}
