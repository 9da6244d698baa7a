//! Arithmetic in `Z[ζ_p]` for prime `p`, and the checks built on it.
//!
//! `ζ` is the class of `t` in `Z[t] / (Φ_p)`, with
//! `Φ_p(t) = 1 + t + ... + t^(p-1)`. Every element is stored as its remainder
//! modulo `Φ_p`, a polynomial of degree below `p - 1`. Whether `f(ζ) = 0` is
//! then exact divisibility `Φ_p | f`.
//!
//! That is only a faithful test of "vanishes at a primitive `p`-th root" if
//! `Φ_p` is irreducible, which is exactly what [`irreducibility_report`]
//! checks with two oracles that never use the residue representation:
//! Kronecker's interpolation factorization ([`kronecker_factor`]) and the
//! Eisenstein criterion after `t ↦ t + 1` ([`eisenstein_shift_check`]).

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circulant::CirculantVector;
use crate::ring::{IntPoly, PrimeModulus, Rational};
use crate::{Error, Result};

/// Largest degree [`kronecker_factor`] accepts.
pub const KRONECKER_DEGREE_LIMIT: usize = 8;

/// Random multiples of `Φ_p` drawn by [`irreducibility_report`].
pub const LEMMA_SAMPLES: usize = 50;

/// `Φ_p(t) = 1 + t + ... + t^(p-1)`
pub fn phi(p: PrimeModulus) -> IntPoly {
    IntPoly::new(vec![BigInt::one(); p.as_usize()])
}

/// An element of `Z[ζ_p]`, held as its canonical residue modulo `Φ_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CyclotomicInt {
    residue: IntPoly,
    p: PrimeModulus,
}

impl CyclotomicInt {
    pub fn from_poly(f: &IntPoly, p: PrimeModulus) -> Self {
        let (_, residue) = f.divmod_monic(&phi(p)).expect("Φ_p is monic");
        CyclotomicInt { residue, p }
    }

    pub fn zero(p: PrimeModulus) -> Self {
        CyclotomicInt {
            residue: IntPoly::zero(),
            p,
        }
    }

    /// `ζ^k`, reduced.
    pub fn zeta_pow(k: usize, p: PrimeModulus) -> Self {
        Self::from_poly(&IntPoly::monomial(BigInt::one(), k % p.as_usize()), p)
    }

    pub fn residue(&self) -> &IntPoly {
        &self.residue
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p.get(), other.p.get()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(CyclotomicInt {
            residue: &self.residue + &other.residue,
            p: self.p,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_poly(&(&self.residue * &other.residue), self.p))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CyclotomicInt {
            residue: self.residue.scale(c),
            p: self.p,
        }
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue.to_string().replace('t', "ζ"))
    }
}

/// `f(ζ) = 0` in `Z[ζ_p]`, i.e. `Φ_p` divides `f`.
pub fn vanishes_at_zeta(f: &IntPoly, p: PrimeModulus) -> bool {
    CyclotomicInt::from_poly(f, p).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub p: PrimeModulus,
    pub poly: IntPoly,
    pub vanishes: bool,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub value_at_one: BigInt,
    pub p_divides_value: bool,
    /// `vanishes ⇒ p | f(1)`
    pub consistent: bool,
}

/// One instance of the implication "`f(ζ) = 0` ⇒ `p | f(1)`".
pub fn kronecker_lemma_check(f: &IntPoly, p: PrimeModulus) -> LemmaReport {
    let vanishes = vanishes_at_zeta(f, p);
    let value_at_one = f.eval(&BigInt::one());
    let p_divides_value = value_at_one.is_multiple_of(&BigInt::from(p.get()));
    LemmaReport {
        p,
        poly: f.clone(),
        vanishes,
        value_at_one,
        p_divides_value,
        consistent: !vanishes || p_divides_value,
    }
}

/// Whether the circulant of `v` kills `(1, ζ, ..., ζ^{p-1})`, row by row.
pub fn circulant_zeta_identity(v: &CirculantVector, p: PrimeModulus) -> Result<bool> {
    let n = p.as_usize();
    if v.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: v.len(),
        });
    }
    let powers: Vec<CyclotomicInt> = (0..n).map(|j| CyclotomicInt::zeta_pow(j, p)).collect();
    for i in 0..n {
        let mut row = CyclotomicInt::zero(p);
        for (j, zj) in powers.iter().enumerate() {
            row = row.try_add(&zj.scale(v.entry(i, j)))?;
        }
        if !row.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `unit · content · Π factor^multiplicity`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: i8,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub content: BigInt,
    /// Primitive, positive leading coefficient, ascending degree then
    /// lexicographic on coefficients.
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let scalar = IntPoly::constant(&self.content * self.unit);
        self.factors
            .iter()
            .fold(scalar, |acc, (f, m)| (0..*m).fold(acc, |acc, _| &acc * f))
    }

    /// Exactly one factor, multiplicity one, and no content to split off.
    pub fn is_irreducible(&self) -> bool {
        self.content.is_one() && self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lead = &self.content * self.unit;
        write!(f, "{lead}")?;
        for (g, m) in &self.factors {
            write!(f, " · ({g})")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

pub fn kronecker_factor(f: &IntPoly) -> Result<Factorization> {
    kronecker_factor_with_limit(f, KRONECKER_DEGREE_LIMIT)
}

/// Factorization over `Z` by Kronecker's method: for each candidate degree
/// `d`, evaluate at `d + 1` integer points, try every tuple of divisors of the
/// values, interpolate, and keep the first candidate that divides exactly.
pub fn kronecker_factor_with_limit(f: &IntPoly, limit: usize) -> Result<Factorization> {
    let degree = f.degree().ok_or(Error::ZeroPolynomial)?;
    if degree > limit {
        return Err(Error::DegreeLimit { degree, limit });
    }
    let (c, mut rest) = f.content_and_primitive();
    let unit = if c.is_negative() { -1 } else { 1 };

    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    // no factor of degree below `min_degree` remains in `rest`
    let mut min_degree = 1;
    while rest.degree().is_some_and(|d| d > 0) {
        match find_factor(&rest, min_degree) {
            Some(h) => {
                let mut mult = 0;
                while let Some(q) = rest.exact_div(&h) {
                    rest = q;
                    mult += 1;
                }
                min_degree = h.degree().expect("nonconstant factor");
                factors.push((h, mult));
            }
            None => {
                factors.push((rest, 1));
                break;
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(Factorization {
        unit,
        content: c.abs(),
        factors,
    })
}

/// Evaluation points `0, 1, -1, 2, -2, ...`
fn evaluation_points() -> impl Iterator<Item = BigInt> {
    (0i64..)
        .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
        .map(BigInt::from)
}

/// Smallest-degree nonconstant divisor of the primitive polynomial `g` with
/// degree at least `min_degree` and at most half of `deg g`.
fn find_factor(g: &IntPoly, min_degree: usize) -> Option<IntPoly> {
    let n = g.degree()?;
    for d in min_degree..=n / 2 {
        let mut points = Vec::with_capacity(d + 1);
        let mut values = Vec::with_capacity(d + 1);
        for x in evaluation_points() {
            if points.len() == d + 1 {
                break;
            }
            let y = g.eval(&x);
            if y.is_zero() {
                // integer root: t - x divides g
                return Some(IntPoly::new(vec![-x, BigInt::one()]));
            }
            points.push(x);
            values.push(y);
        }
        let interp = Interpolator::new(&points);
        let choices: Vec<Vec<BigInt>> = values.iter().map(signed_divisors).collect();
        let mut search = DivisorSearch {
            g,
            degree: d,
            points: &points,
            choices: &choices,
            interp: &interp,
        };
        if let Some(h) = search.run(&mut Vec::with_capacity(d + 1)) {
            return Some(h);
        }
    }
    None
}

/// Depth-first walk over divisor tuples `(y_0, ..., y_d)` in lexicographic
/// order of the divisor lists. `y_0` is taken positive only, since `h` and
/// `-h` are the same factor up to a unit. A partial tuple is dropped as soon
/// as `x_i - x_j` fails to divide `y_i - y_j`, which every integer polynomial
/// satisfies.
struct DivisorSearch<'a> {
    g: &'a IntPoly,
    degree: usize,
    points: &'a [BigInt],
    choices: &'a [Vec<BigInt>],
    interp: &'a Interpolator,
}

impl DivisorSearch<'_> {
    fn run(&mut self, chosen: &mut Vec<BigInt>) -> Option<IntPoly> {
        let k = chosen.len();
        if k == self.points.len() {
            let refs: Vec<&BigInt> = chosen.iter().collect();
            let h = self.interp.integer_poly(&refs)?;
            if h.degree() != Some(self.degree) {
                return None;
            }
            let h = if h.leading_coefficient().is_some_and(Signed::is_negative) {
                -&h
            } else {
                h
            };
            return self.g.exact_div(&h).map(|_| h);
        }
        for y in &self.choices[k] {
            if k == 0 && y.is_negative() {
                continue;
            }
            let compatible = chosen
                .iter()
                .zip(self.points)
                .all(|(yj, xj)| (y - yj).is_multiple_of(&(&self.points[k] - xj)));
            if !compatible {
                continue;
            }
            chosen.push(y.clone());
            let found = self.run(chosen);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// All divisors of `v ≠ 0`, both signs: `1, -1, d2, -d2, ...` ascending in size.
fn signed_divisors(v: &BigInt) -> Vec<BigInt> {
    let m = v.magnitude();
    let mut small = Vec::new();
    let mut large = Vec::new();
    match m.to_u64() {
        Some(m) => {
            let mut d = 1u64;
            while d <= m / d {
                if m % d == 0 {
                    small.push(BigInt::from(d));
                    if d != m / d {
                        large.push(BigInt::from(m / d));
                    }
                }
                d += 1;
            }
        }
        None => {
            let m = BigInt::from(m.clone());
            let mut d = BigInt::one();
            while &d * &d <= m {
                if m.is_multiple_of(&d) {
                    let co = &m / &d;
                    if co != d {
                        large.push(co);
                    }
                    small.push(d.clone());
                }
                d += 1;
            }
        }
    }
    small
        .into_iter()
        .chain(large.into_iter().rev())
        .flat_map(|d| [d.clone(), -d])
        .collect()
}

/// Lagrange interpolation through fixed integer nodes, scaled to a common
/// denominator so candidates stay in `Z[t]`.
struct Interpolator {
    /// `(D / den_k) · Π_{m≠k} (t - x_m)`
    scaled_basis: Vec<IntPoly>,
    denominator: BigInt,
}

impl Interpolator {
    fn new(points: &[BigInt]) -> Self {
        let mut numerators = Vec::with_capacity(points.len());
        let mut dens = Vec::with_capacity(points.len());
        for (k, xk) in points.iter().enumerate() {
            let mut num = IntPoly::one();
            let mut den = BigInt::one();
            for (m, xm) in points.iter().enumerate() {
                if m != k {
                    num = &num * &IntPoly::new(vec![-xm, BigInt::one()]);
                    den *= xk - xm;
                }
            }
            numerators.push(num);
            dens.push(den);
        }
        let denominator = dens.iter().fold(BigInt::one(), |l, d| l.lcm(d));
        let scaled_basis = numerators
            .iter()
            .zip(&dens)
            .map(|(num, den)| num.scale(&(&denominator / den)))
            .collect();
        Interpolator {
            scaled_basis,
            denominator,
        }
    }

    /// The interpolant through `values`, when its coefficients are integers.
    fn integer_poly(&self, values: &[&BigInt]) -> Option<IntPoly> {
        let mut acc = IntPoly::zero();
        for (basis, y) in self.scaled_basis.iter().zip(values) {
            acc = &acc + &basis.scale(y);
        }
        let mut coeffs = acc.into_coeffs();
        for c in &mut coeffs {
            let (q, r) = c.div_rem(&self.denominator);
            if !r.is_zero() {
                return None;
            }
            *c = q;
        }
        Some(IntPoly::new(coeffs))
    }
}

/// `Φ_p(t + 1)`
pub fn eisenstein_shift(p: PrimeModulus) -> IntPoly {
    phi(p).taylor_shift(&BigInt::one())
}

/// Eisenstein's criterion at `p` applied to `Φ_p(t + 1)`.
pub fn eisenstein_shift_check(p: PrimeModulus) -> bool {
    eisenstein_holds(&eisenstein_shift(p), p)
}

fn eisenstein_holds(f: &IntPoly, p: PrimeModulus) -> bool {
    let Some((lead, lower)) = f.coeffs().split_last() else {
        return false;
    };
    let p = BigInt::from(p.get());
    let p2 = &p * &p;
    !lead.is_multiple_of(&p)
        && !lower.is_empty()
        && lower.iter().all(|c| c.is_multiple_of(&p))
        && !lower[0].is_multiple_of(&p2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub p: PrimeModulus,
    pub seed: u64,
    pub phi: IntPoly,
    #[serde(serialize_with = "crate::serde_big::bigint")]
    pub phi_at_one: BigInt,
    pub phi_at_one_is_p: bool,
    /// `p² ∤ Φ_p(1)`: a split `Φ_p = f·g` would force `p | f(1)` and
    /// `p | g(1)`, hence `p² | Φ_p(1)`.
    pub p_squared_does_not_divide: bool,
    pub factorization: Factorization,
    pub single_irreducible_factor: bool,
    pub lemma_samples: usize,
    /// Every sampled `f = Φ_p · g` vanishes at `ζ` and has `p | f(1)`.
    pub lemma_instances_hold: bool,
    pub eisenstein: bool,
    pub oracles_agree: bool,
    pub holds: bool,
}

/// Irreducibility of `Φ_p` over `Z`, argued through `Φ_p(1) = p` and
/// confirmed by factorization and by Eisenstein.
pub fn irreducibility_report(p: PrimeModulus, seed: u64) -> Result<IrreducibilityReport> {
    let phi_p = phi(p);
    let factorization = kronecker_factor(&phi_p)?;
    let single_irreducible_factor =
        factorization.is_irreducible() && factorization.factors[0].0 == phi_p;

    let pb = BigInt::from(p.get());
    let phi_at_one = phi_p.eval(&BigInt::one());
    let phi_at_one_is_p = phi_at_one == pb;
    let p_squared_does_not_divide = !phi_at_one.is_multiple_of(&(&pb * &pb));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lemma_instances_hold = (0..LEMMA_SAMPLES).all(|_| {
        let g = random_nonzero_poly(&mut rng, 6, 50);
        let r = kronecker_lemma_check(&(&phi_p * &g), p);
        r.vanishes && r.p_divides_value
    });

    let eisenstein = eisenstein_shift_check(p);
    let oracles_agree = eisenstein == single_irreducible_factor;
    let holds = phi_at_one_is_p
        && p_squared_does_not_divide
        && single_irreducible_factor
        && lemma_instances_hold
        && eisenstein
        && oracles_agree;

    Ok(IrreducibilityReport {
        p,
        seed,
        phi: phi_p,
        phi_at_one,
        phi_at_one_is_p,
        p_squared_does_not_divide,
        factorization,
        single_irreducible_factor,
        lemma_samples: LEMMA_SAMPLES,
        lemma_instances_hold,
        eisenstein,
        oracles_agree,
        holds,
    })
}

/// Degree at most `max_degree`, coefficients in `[-bound, bound]`, never zero.
pub fn random_nonzero_poly<R: Rng>(rng: &mut R, max_degree: usize, bound: i64) -> IntPoly {
    loop {
        let deg = rng.gen_range(0..=max_degree);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
        let f = IntPoly::from_i64(&coeffs);
        if !f.is_zero() {
            return f;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub p: PrimeModulus,
    /// The coefficients times the lcm of their denominators.
    #[serde(serialize_with = "crate::serde_big::bigint_vec")]
    pub cleared: Vec<BigInt>,
    /// `Σ a_j ζ^j = 0`
    pub is_relation: bool,
    pub is_constant: bool,
    /// `is_relation ⇒ is_constant`
    pub theorem_consistent: bool,
}

/// Whether rational coefficients give a linear relation among
/// `1, ζ, ..., ζ^{p-1}`, and whether that relation is the trivial constant one.
pub fn rational_relation_check(a: &[Rational], p: PrimeModulus) -> Result<RelationReport> {
    let n = p.as_usize();
    if a.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: a.len(),
        });
    }
    let lcm = a.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let cleared: Vec<BigInt> = a.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let is_relation = vanishes_at_zeta(&IntPoly::new(cleared.clone()), p);
    let is_constant = a.iter().all_equal();
    Ok(RelationReport {
        p,
        cleared,
        is_relation,
        is_constant,
        theorem_consistent: !is_relation || is_constant,
    })
}
