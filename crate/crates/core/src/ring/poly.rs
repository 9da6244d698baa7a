use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Dense integer polynomial. `coeffs[j]` is the coefficient of `t^j`.
///
/// The trailing coefficient is never zero, so the zero polynomial is the
/// empty sequence and its degree is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Splits `f = c · fp` where `fp` has content one and a positive leading
    /// coefficient. The sign of `f` travels with `c`. Zero maps to `(0, 0)`.
    pub fn content_and_primitive(&self) -> (BigInt, IntPoly) {
        let Some(lead) = self.leading_coefficient() else {
            return (BigInt::zero(), IntPoly::zero());
        };
        let mut c = self.content();
        if lead.is_negative() {
            c = -c;
        }
        let fp = IntPoly::new(self.coeffs.iter().map(|a| a / &c).collect());
        (c, fp)
    }

    /// Division by a monic divisor: `self = q·g + r` with `deg r < deg g`.
    pub fn divmod_monic(&self, g: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        let dg = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + dg]);
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs[..dg].iter().enumerate() {
                rem[k + j] -= &c * gj;
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// `self / g` when `g` divides `self` in `Z[t]`, `None` otherwise
    /// (including when `g` is zero).
    pub fn exact_div(&self, g: &IntPoly) -> Option<IntPoly> {
        let lead = g.leading_coefficient()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let top = std::mem::take(&mut rem[k + dg]);
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, gj) in g.coeffs[..dg].iter().enumerate() {
                rem[k + j] -= &c * gj;
            }
            quot[k] = c;
        }
        if rem[..dg].iter().all(Zero::is_zero) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// The substitution `t ↦ t + shift`, computed by Horner's rule in `Z[t]`.
    pub fn taylor_shift(&self, shift: &BigInt) -> IntPoly {
        let linear = IntPoly::new(vec![shift.clone(), BigInt::one()]);
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| {
            &(&acc * &linear) + &IntPoly::constant(c.clone())
        })
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        IntPoly::new(coeffs)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if j == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{j}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_big::bigint_vec(&self.coeffs, s)
    }
}
