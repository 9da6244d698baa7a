use cyclokron_core::circulant::CirculantVector;
use cyclokron_core::cyclotomic::{
    circulant_zeta_identity, eisenstein_shift_check, kronecker_factor, kronecker_lemma_check, phi,
    random_nonzero_poly, rational_relation_check, vanishes_at_zeta,
};
use cyclokron_core::ring::{is_prime, IntPoly, PrimeModulus, Rational};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn primes_up_to(n: u64) -> impl Iterator<Item = PrimeModulus> {
    (2..=n)
        .filter(|&p| is_prime(p))
        .map(|p| PrimeModulus::new(p).unwrap())
}

#[test]
fn phi_at_one_and_telescoping() {
    for p in primes_up_to(101) {
        let phi_p = phi(p);
        assert_eq!(phi_p.eval(&BigInt::one()), BigInt::from(p.get()));
        let t_minus_one = IntPoly::from_i64(&[-1, 1]);
        let mut expected = vec![BigInt::from(0); p.as_usize() + 1];
        expected[0] = BigInt::from(-1);
        expected[p.as_usize()] = BigInt::one();
        assert_eq!(&t_minus_one * &phi_p, IntPoly::new(expected));
    }
}

#[test]
fn lemma_on_multiples_of_phi() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in primes_up_to(13) {
        for _ in 0..100 {
            let g = random_nonzero_poly(&mut rng, 10, 50);
            let r = kronecker_lemma_check(&(&phi(p) * &g), p);
            assert!(r.vanishes && r.p_divides_value && r.consistent);
        }
    }
}

#[test]
fn lemma_never_violated_on_random_polys() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for p in primes_up_to(13) {
        for _ in 0..200 {
            let f = random_nonzero_poly(&mut rng, 14, 3);
            assert!(kronecker_lemma_check(&f, p).consistent);
        }
    }
}

#[test]
fn eisenstein_agrees_with_factorization() {
    for p in [2, 3, 5, 7] {
        let p = PrimeModulus::new(p).unwrap();
        assert_eq!(
            eisenstein_shift_check(p),
            kronecker_factor(&phi(p)).unwrap().is_irreducible()
        );
        assert!(eisenstein_shift_check(p));
    }
}

fn random_primitive(rng: &mut ChaCha8Rng) -> IntPoly {
    loop {
        let deg = rng.gen_range(1..=3);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4..=4)).collect();
        let f = IntPoly::from_i64(&coeffs);
        if f.degree() == Some(deg) {
            return f.content_and_primitive().1;
        }
    }
}

#[test]
fn factorization_reconstructs_random_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let mut f = IntPoly::constant(BigInt::from(
            rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 },
        ));
        let mut deg = 0;
        while deg < 5 {
            let g = random_primitive(&mut rng);
            deg += g.degree().unwrap();
            f = &f * &g;
        }
        let fact = kronecker_factor(&f).unwrap();
        assert_eq!(fact.expand(), f);
        for (h, _) in &fact.factors {
            assert!(h.content().is_one());
            assert!(h.leading_coefficient().unwrap() > &BigInt::from(0));
            // each reported factor is itself irreducible
            if h.degree().unwrap() > 1 {
                assert!(kronecker_factor(h).unwrap().is_irreducible(), "{h}");
            }
        }
    }
}

fn vector_of_len(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-30i64..=30, n)
}

fn prime_len() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_map(|p| PrimeModulus::new(p).unwrap())
}

proptest! {
    #[test]
    fn zeta_identity_matches_divisibility((p, a) in prime_len().prop_flat_map(|p| (Just(p), vector_of_len(p.as_usize())))) {
        let v = CirculantVector::from_i64(&a).unwrap();
        prop_assert_eq!(circulant_zeta_identity(&v, p).unwrap(), vanishes_at_zeta(&v.to_poly(), p));
    }

    #[test]
    fn zeta_identity_on_constant_vectors(p in prime_len(), c in -30i64..=30) {
        let v = CirculantVector::from_i64(&vec![c; p.as_usize()]).unwrap();
        prop_assert!(circulant_zeta_identity(&v, p).unwrap());
    }

    #[test]
    fn only_constant_vectors_are_relations((p, a) in prime_len().prop_flat_map(|p| (Just(p), vector_of_len(p.as_usize())))) {
        let rats: Vec<Rational> = a.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
        let r = rational_relation_check(&rats, p).unwrap();
        prop_assert!(r.theorem_consistent);
        prop_assert_eq!(r.is_relation, r.is_constant);
    }

    #[test]
    fn scaled_constant_rationals_are_relations(p in prime_len(), n in -20i64..=20, d in 1i64..=20) {
        let q = Rational::new(BigInt::from(n), BigInt::from(d));
        let r = rational_relation_check(&vec![q; p.as_usize()], p).unwrap();
        prop_assert!(r.is_relation && r.is_constant && r.theorem_consistent);
    }
}
