//! The rook-translation action `T` on permutations of `Z/p`, its orbits, and
//! the symbolic Leibniz expansion of a `p × p` circulant.
//!
//! `T.σ = (σ_{p-1} + 1, σ_0 + 1, ..., σ_{p-2} + 1)` moves the rook placement
//! `{(i, σ_i)}` one step down and to the right, wrapping around. Each
//! placement picks the entries `A[i][σ_i] = a_{(σ_i - i) mod p}`, and `T`
//! leaves that multiset of offsets alone, so every orbit contributes a single
//! monomial. With `p` prime an orbit is either a fixed point (a cyclic
//! permutation, contributing a pure power `a_c^p`) or has exactly `p`
//! members, and since `T` preserves the sign the orbit's coefficient is a
//! multiple of `p`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::ring::PrimeModulus;
use crate::{Error, Result};

/// Largest `p` for which `S_p` is enumerated.
pub const ORBIT_LIMIT: usize = 8;

/// A bijection of `{0, ..., n-1}`, stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &s in &images {
            if s >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {s} out of range 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidPermutation(format!("image {s} repeated")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `i ↦ i + shift (mod n)`
    pub fn cyclic(n: usize, shift: usize) -> Self {
        Permutation((0..n).map(|i| (i + shift) % n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Shift the images one slot right (wrapping) and add one to each, mod n.
    pub fn t_action(&self) -> Permutation {
        let n = self.len();
        let mut images = Vec::with_capacity(n);
        images.push((self.0[n - 1] + 1) % n);
        images.extend(self.0[..n - 1].iter().map(|&s| (s + 1) % n));
        Permutation(images)
    }

    /// Pairs `i < j` with `σ_i > σ_j`.
    pub fn inversions(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &a)| self.0[i + 1..].iter().filter(|&&b| a > b).count())
            .sum()
    }

    /// `(-1)^inversions`
    pub fn sign(&self) -> i8 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Sign from the cycle type: each cycle of length `l` contributes `l - 1`
    /// transpositions.
    pub fn sign_by_cycles(&self) -> i8 {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            let mut len = 0usize;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            transpositions += len.saturating_sub(1);
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.len();
        let shift = self.0[0];
        self.0
            .iter()
            .enumerate()
            .all(|(i, &s)| s == (i + shift) % n)
    }

    /// The monomial `Π_i a_{(σ_i - i) mod n}` picked out of the circulant.
    pub fn monomial(&self) -> Monomial {
        let n = self.len();
        let mut exps = vec![0u32; n];
        for (i, &s) in self.0.iter().enumerate() {
            exps[(s + n - i) % n] += 1;
        }
        Monomial(exps)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Exponent vector of `Π a_j^{e_j}`.
///
/// Ordered by the sorted exponent profile first (pure powers before mixed
/// terms), then lexicographically from `a_0` downward, so `a0^3` comes before
/// `a1^3` and both come before `a0·a1·a2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// `a_j^n` in `n` variables.
    pub fn pure_power(n: usize, j: usize) -> Self {
        let mut exps = vec![0; n];
        exps[j] = n as u32;
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn profile(&self) -> Vec<u32> {
        let mut p = self.0.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        self.0
            .iter()
            .zip(values)
            .map(|(&e, v)| num_traits::pow(v.clone(), e as usize))
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .profile()
            .cmp(&self.profile())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| {
                if e == 1 {
                    format!("a{j}")
                } else {
                    format!("a{j}^{e}")
                }
            });
        let s = factors.collect::<Vec<_>>().join("·");
        if s.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&s)
        }
    }
}

/// A homogeneous polynomial of degree `n` in `a_0, ..., a_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicDet {
    vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SymbolicDet {
    pub fn new(vars: usize) -> Self {
        SymbolicDet {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        assert_eq!(m.0.len(), self.vars, "monomial arity");
        assert_eq!(
            m.degree() as usize,
            self.vars,
            "Leibniz terms have degree n"
        );
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn evaluate(&self, values: &[BigInt]) -> Result<BigInt> {
        if values.len() != self.vars {
            return Err(Error::LengthMismatch {
                expected: self.vars,
                actual: values.len(),
            });
        }
        Ok(self.terms.iter().map(|(m, c)| c * m.eval(values)).sum())
    }

    /// Coefficients reduced into `[0, m)`, vanishing terms dropped.
    pub fn reduce_mod(&self, m: u64) -> SymbolicDet {
        let modulus = BigInt::from(m);
        let terms = self
            .terms
            .iter()
            .map(|(mono, c)| (mono.clone(), c.mod_floor(&modulus)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SymbolicDet {
            vars: self.vars,
            terms,
        }
    }
}

impl fmt::Display for SymbolicDet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts = self.terms.iter().map(|(m, c)| {
            let sign = if c.is_negative() { '-' } else { '+' };
            format!("{sign}{}·{m}", c.abs())
        });
        f.write_str(&parts.collect::<Vec<_>>().join(" "))
    }
}

impl Serialize for SymbolicDet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            exponents: &'a [u32],
            #[serde(serialize_with = "crate::serde_big::bigint")]
            coefficient: &'a BigInt,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                exponents: &m.0,
                coefficient: c,
            })
            .collect();
        let mut st = s.serialize_struct("SymbolicDet", 3)?;
        st.serialize_field("variables", &self.vars)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}

/// One orbit of `T`, listed as `σ, Tσ, T²σ, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Orbit(Vec<Permutation>);

impl Orbit {
    pub fn members(&self) -> &[Permutation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_fixed_point(&self) -> bool {
        self.0.len() == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub permutations: usize,
    pub fixed_points: usize,
    /// Orbits of size exactly `p`.
    pub full_orbits: usize,
    /// Orbits of any other size. Zero whenever `p` is prime.
    pub other_orbits: usize,
}

impl OrbitCensus {
    pub fn of(p: usize, orbits: &[Orbit]) -> Self {
        let mut census = OrbitCensus {
            permutations: 0,
            fixed_points: 0,
            full_orbits: 0,
            other_orbits: 0,
        };
        for o in orbits {
            census.permutations += o.len();
            match o.len() {
                1 => census.fixed_points += 1,
                l if l == p => census.full_orbits += 1,
                _ => census.other_orbits += 1,
            }
        }
        census
    }
}

fn check_limit(n: usize) -> Result<()> {
    if n > ORBIT_LIMIT {
        Err(Error::SizeLimit {
            size: n,
            limit: ORBIT_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// All permutations of `{0, ..., n-1}` in lexicographic order.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    check_limit(n)?;
    Ok((0..n).permutations(n).map(Permutation).collect())
}

/// Partitions `S_p` into `T`-orbits. Orbits appear in lexicographic order of
/// their first member, which is the smallest one.
pub fn orbit_decompose(p: PrimeModulus) -> Result<Vec<Orbit>> {
    orbits_of(p.as_usize())
}

pub(crate) fn orbits_of(n: usize) -> Result<Vec<Orbit>> {
    let mut seen = HashSet::new();
    let mut orbits = Vec::new();
    for sigma in all_permutations(n)? {
        if seen.contains(&sigma) {
            continue;
        }
        let mut members = vec![sigma.clone()];
        let mut next = sigma.t_action();
        while next != sigma {
            members.push(next.clone());
            next = next.t_action();
        }
        seen.extend(members.iter().cloned());
        orbits.push(Orbit(members));
    }
    Ok(orbits)
}

/// The determinant of the symbolic `p × p` circulant in `a_0, ..., a_{p-1}`.
pub fn leibniz_symbolic(p: PrimeModulus) -> Result<SymbolicDet> {
    let n = p.as_usize();
    let mut det = SymbolicDet::new(n);
    for sigma in all_permutations(n)? {
        det.add_term(sigma.monomial(), BigInt::from(sigma.sign()));
    }
    Ok(det)
}

/// Outcome of checking the power-sum congruence through the orbit structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub p: PrimeModulus,
    pub census: OrbitCensus,
    pub expansion: SymbolicDet,
    pub reduced: SymbolicDet,
    /// Reducing mod `p` leaves exactly `a_0^p + ... + a_{p-1}^p`.
    pub reduces_to_power_sum: bool,
    /// Every member of each orbit picks the same monomial.
    pub orbit_monomials_agree: bool,
    /// Every member of each orbit has the same sign.
    pub orbit_signs_agree: bool,
    /// The fixed points are the cyclic permutations and give the pure powers.
    pub fixed_points_are_pure_powers: bool,
    pub holds: bool,
}

pub fn verify_claim(p: PrimeModulus) -> Result<ClaimReport> {
    let n = p.as_usize();
    let orbits = orbit_decompose(p)?;
    let census = OrbitCensus::of(n, &orbits);
    let expansion = leibniz_symbolic(p)?;
    let reduced = expansion.reduce_mod(p.get());

    let power_sum: BTreeMap<Monomial, BigInt> = (0..n)
        .map(|j| (Monomial::pure_power(n, j), BigInt::one()))
        .collect();
    let reduces_to_power_sum = reduced.terms == power_sum;

    let orbit_monomials_agree = orbits
        .iter()
        .all(|o| o.members().iter().map(Permutation::monomial).all_equal());
    let orbit_signs_agree = orbits
        .iter()
        .all(|o| o.members().iter().map(Permutation::sign).all_equal());

    let fixed: Vec<&Permutation> = orbits
        .iter()
        .filter(|o| o.is_fixed_point())
        .map(|o| &o.0[0])
        .collect();
    let cyclic: HashSet<Permutation> = (0..n).map(|c| Permutation::cyclic(n, c)).collect();
    let fixed_monomials: HashSet<Monomial> = fixed.iter().map(|s| s.monomial()).collect();
    let fixed_points_are_pure_powers = fixed.len() == n
        && fixed.iter().all(|s| cyclic.contains(*s))
        && fixed_monomials == power_sum.keys().cloned().collect();

    let holds = reduces_to_power_sum
        && orbit_monomials_agree
        && orbit_signs_agree
        && fixed_points_are_pure_powers
        && census.fixed_points == n
        && census.other_orbits == 0;

    Ok(ClaimReport {
        p,
        census,
        expansion,
        reduced,
        reduces_to_power_sum,
        orbit_monomials_agree,
        orbit_signs_agree,
        fixed_points_are_pure_powers,
        holds,
    })
}
