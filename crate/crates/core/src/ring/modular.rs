use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Result};

/// A residue modulo a machine-word modulus `m ≥ 2`, always held in `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModInt {
    residue: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: i64, modulus: u64) -> Result<Self> {
        Self::check_modulus(modulus)?;
        let r = i128::from(value).rem_euclid(i128::from(modulus));
        Ok(ModInt {
            residue: r as u64,
            modulus,
        })
    }

    pub fn from_bigint(value: &BigInt, modulus: u64) -> Result<Self> {
        Self::check_modulus(modulus)?;
        let r = value.mod_floor(&BigInt::from(modulus));
        Ok(ModInt {
            residue: r.to_u64().expect("residue below a u64 modulus"),
            modulus,
        })
    }

    fn check_modulus(modulus: u64) -> Result<()> {
        if modulus < 2 {
            Err(Error::InvalidModulus(modulus))
        } else {
            Ok(())
        }
    }

    pub fn residue(self) -> u64 {
        self.residue
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    fn same_modulus(self, other: ModInt) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(self, other: ModInt) -> Result<ModInt> {
        self.same_modulus(other)?;
        let s = (u128::from(self.residue) + u128::from(other.residue)) % u128::from(self.modulus);
        Ok(ModInt {
            residue: s as u64,
            ..self
        })
    }

    pub fn try_sub(self, other: ModInt) -> Result<ModInt> {
        self.same_modulus(other)?;
        self.try_add(other.neg())
    }

    pub fn try_mul(self, other: ModInt) -> Result<ModInt> {
        self.same_modulus(other)?;
        let p = u128::from(self.residue) * u128::from(other.residue) % u128::from(self.modulus);
        Ok(ModInt {
            residue: p as u64,
            ..self
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> ModInt {
        if self.residue == 0 {
            self
        } else {
            ModInt {
                residue: self.modulus - self.residue,
                ..self
            }
        }
    }

    pub fn pow(self, mut exp: u64) -> ModInt {
        let m = u128::from(self.modulus);
        let mut base = u128::from(self.residue);
        let mut acc = 1u128 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        ModInt {
            residue: acc as u64,
            ..self
        }
    }

    /// Multiplicative inverse, if the residue is a unit.
    pub fn inverse(self) -> Option<ModInt> {
        let ext = i128::from(self.residue).extended_gcd(&i128::from(self.modulus));
        if ext.gcd != 1 {
            return None;
        }
        let r = ext.x.rem_euclid(i128::from(self.modulus));
        Some(ModInt {
            residue: r as u64,
            ..self
        })
    }

    /// Symmetric lift into `(-m/2, m/2]`.
    pub fn to_symmetric(self) -> BigInt {
        let r = BigInt::from(self.residue);
        if 2 * self.residue > self.modulus {
            r - BigInt::from(self.modulus)
        } else {
            r
        }
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.residue, self.modulus)
    }
}

/// Reconstructs the unique integer in `(-M/2, M/2]`, `M` the product of the
/// moduli, that matches every residue. The moduli must be pairwise coprime.
pub fn crt_combine(residues: &[ModInt]) -> Result<BigInt> {
    if residues.is_empty() {
        return Err(Error::EmptyResidues);
    }
    for (i, a) in residues.iter().enumerate() {
        for b in &residues[i + 1..] {
            if a.modulus.gcd(&b.modulus) != 1 {
                return Err(Error::NotCoprime(a.modulus, b.modulus));
            }
        }
    }

    // Garner-style incremental lifting: x ≡ r_k mod m_k for all k seen so far.
    let mut x = BigInt::zero();
    let mut m = BigInt::from(1u8);
    for r in residues {
        let mk = BigInt::from(r.modulus);
        let m_mod = ModInt::from_bigint(&m, r.modulus)?;
        let x_mod = ModInt::from_bigint(&x, r.modulus)?;
        let inv = m_mod.inverse().expect("coprime moduli");
        let delta = ModInt {
            residue: r.residue,
            modulus: r.modulus,
        }
        .try_sub(x_mod)?
        .try_mul(inv)?;
        x += &m * BigInt::from(delta.residue);
        m *= mk;
    }

    if &x * 2 > m {
        x -= &m;
    }
    Ok(x)
}
