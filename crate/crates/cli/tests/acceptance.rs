//! Exit criteria. Each criterion prints one PASS/FAIL line; any failure makes
//! the target exit nonzero.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use cyclokron_cli::run;
use cyclokron_core::circulant::{
    cyclic_convolve, det_bareiss, det_leibniz, det_multimodular, det_powersum_mod_p,
    CirculantVector,
};
use cyclokron_core::cyclotomic::{
    kronecker_lemma_check, phi, random_nonzero_poly, vanishes_at_zeta,
};
use cyclokron_core::orbits::{all_permutations, Permutation};
use cyclokron_core::ring::{is_prime, IntPoly, ModInt, PrimeModulus};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn prime(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn cli(args: &str) -> (u8, String, String) {
    let argv = std::iter::once("cyclokron").chain(args.split_whitespace());
    let out = run(argv);
    (out.code, out.stdout, out.stderr)
}

fn cli_json(args: &str) -> Result<(u8, Value), String> {
    let (code, stdout, stderr) = cli(&format!("{args} --json"));
    let v: Value = serde_json::from_str(&stdout)
        .map_err(|e| format!("`{args} --json` is not JSON ({e}); stderr: {stderr}"))?;
    ensure!(v.is_object(), "`{args} --json` is not an object");
    Ok((code, v))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> CirculantVector {
    let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    CirculantVector::from_i64(&a).unwrap()
}

fn primes_up_to(n: u64) -> Vec<PrimeModulus> {
    (2..=n).filter(|&p| is_prime(p)).map(prime).collect()
}

fn within(start: Instant, limit: Duration) -> Check {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

/// 1: `claim verify -p P` for P in {2,3,5,7}, under 5 s.
fn symbolic_claim() -> Check {
    let start = Instant::now();
    for p in [2, 3, 5, 7] {
        let (code, v) = cli_json(&format!("claim verify -p {p}"))?;
        ensure!(code == 0, "p={p}: exit {code}");
        for field in [
            "reduces_to_power_sum",
            "orbit_monomials_agree",
            "orbit_signs_agree",
            "fixed_points_are_pure_powers",
            "holds",
        ] {
            ensure!(
                v[field] == Value::Bool(true),
                "p={p}: {field} is {}",
                v[field]
            );
        }
        let reduced = v["reduced"]["terms"]
            .as_array()
            .ok_or("missing reduced terms")?;
        ensure!(reduced.len() == p, "p={p}: {} reduced terms", reduced.len());
        for term in reduced {
            ensure!(
                term["coefficient"] == "1",
                "p={p}: coefficient {}",
                term["coefficient"]
            );
            let exps = term["exponents"].as_array().ok_or("missing exponents")?;
            let nonzero: Vec<&Value> = exps.iter().filter(|e| *e != 0).collect();
            ensure!(
                nonzero.len() == 1 && nonzero[0] == p,
                "p={p}: non power-sum monomial {exps:?}"
            );
        }
        let census = &v["census"];
        ensure!(
            census["fixed_points"] == p,
            "p={p}: fixed {}",
            census["fixed_points"]
        );
        let fact: usize = (1..=p).product();
        ensure!(
            census["full_orbits"] == (fact - p) / p,
            "p={p}: orbits {}",
            census["full_orbits"]
        );
    }
    within(start, Duration::from_secs(5))
}

/// 2: Leibniz = Bareiss = multi-modular on 200 circulants with n ≤ 8, and
/// Bareiss = multi-modular on 50 with 9 ≤ n ≤ 12; under 10 s.
fn cross_algorithm() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let v = random_vector(&mut rng, n, 100);
        let l = det_leibniz(&v).map_err(|e| e.to_string())?;
        let b = det_bareiss(&v);
        let m = det_multimodular(&v);
        ensure!(
            l == b && b == m,
            "{v:?}: leibniz {l}, bareiss {b}, multimodular {m}"
        );
    }
    for _ in 0..50 {
        let n = rng.gen_range(9..=12);
        let v = random_vector(&mut rng, n, 100);
        let (b, m) = (det_bareiss(&v), det_multimodular(&v));
        ensure!(b == m, "{v:?}: bareiss {b}, multimodular {m}");
    }
    within(start, Duration::from_secs(10))
}

/// 3: det ≡ Σ a_j^p ≡ Σ a_j (mod p), 100 vectors per prime.
fn claim_congruence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [2u64, 3, 5, 7, 11, 13] {
        for _ in 0..100 {
            let v = random_vector(&mut rng, p as usize, 1000);
            let det = ModInt::from_bigint(&det_bareiss(&v), p).unwrap();
            let power = det_powersum_mod_p(&v, prime(p)).map_err(|e| e.to_string())?;
            let sum: BigInt = v.entries().iter().sum();
            let sum = ModInt::from_bigint(&sum, p).unwrap();
            ensure!(det == power, "p={p} {v:?}: det {det} vs power sum {power}");
            ensure!(det == sum, "p={p} {v:?}: det {det} vs sum {sum}");
        }
    }
    Ok(())
}

/// 4: f = Φ_p·g ⇒ p | f(1) and f(ζ) = 0; Φ_p(1) = p for p ≤ 101.
fn lemma_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [2u64, 3, 5, 7, 11, 13] {
        let p = prime(p);
        for _ in 0..50 {
            let g = random_nonzero_poly(&mut rng, 10, 50);
            let f = &phi(p) * &g;
            let r = kronecker_lemma_check(&f, p);
            ensure!(r.p_divides_value, "p={p}: {p} ∤ f(1) = {}", r.value_at_one);
            ensure!(
                vanishes_at_zeta(&f, p) && r.vanishes,
                "p={p}: Φ_p·g does not vanish at ζ"
            );
        }
    }
    for p in primes_up_to(101) {
        let v = phi(p).eval(&BigInt::one());
        ensure!(v == BigInt::from(p.get()), "Φ_{p}(1) = {v}");
    }
    Ok(())
}

/// 5: `irreducible -p P` for P in {2,3,5,7}, under 30 s.
fn theorem_suite() -> Check {
    let start = Instant::now();
    for p in [2u64, 3, 5, 7] {
        let (code, v) = cli_json(&format!("irreducible -p {p}"))?;
        ensure!(code == 0, "p={p}: exit {code}");
        for field in [
            "phi_at_one_is_p",
            "p_squared_does_not_divide",
            "single_irreducible_factor",
            "eisenstein",
            "oracles_agree",
            "lemma_instances_hold",
            "holds",
        ] {
            ensure!(
                v[field] == Value::Bool(true),
                "p={p}: {field} is {}",
                v[field]
            );
        }
        let factors = v["factorization"]["factors"]
            .as_array()
            .ok_or("missing factors")?;
        ensure!(factors.len() == 1, "p={p}: {} factors", factors.len());
        ensure!(
            factors[0][0] == serde_json::to_value(phi(prime(p))).unwrap(),
            "p={p}: factor is not Φ_p"
        );
        ensure!(factors[0][1] == 1, "p={p}: multiplicity {}", factors[0][1]);
    }
    within(start, Duration::from_secs(30))
}

/// 6: sign(T.σ) = sign(σ) on all of S_p for p in {3,5,7}, and the fixed points
/// of T are the cyclic permutations; under 5 s.
fn sign_preservation() -> Check {
    let start = Instant::now();
    for (p, count) in [(3usize, 6usize), (5, 120), (7, 5040)] {
        let perms = all_permutations(p).map_err(|e| e.to_string())?;
        ensure!(perms.len() == count, "|S_{p}| = {}", perms.len());
        let mut fixed = Vec::new();
        for s in &perms {
            let t = s.t_action();
            ensure!(t.sign() == s.sign(), "sign changes at {s}");
            if t == *s {
                fixed.push(s.clone());
            }
        }
        let cyclic: Vec<Permutation> = (0..p).map(|c| Permutation::cyclic(p, c)).collect();
        fixed.sort();
        let mut expected = cyclic;
        expected.sort();
        ensure!(fixed == expected, "p={p}: fixed points {fixed:?}");
    }
    within(start, Duration::from_secs(5))
}

/// 7: (t - 1)Φ_p = t^p - 1, and det(u ⊛ w) = det u · det w on 50 pairs.
fn structural_identities() -> Check {
    for p in primes_up_to(101) {
        let lhs = &IntPoly::from_i64(&[-1, 1]) * &phi(p);
        let mut rhs = vec![BigInt::zero(); p.as_usize() + 1];
        rhs[0] = BigInt::from(-1);
        rhs[p.as_usize()] = BigInt::one();
        ensure!(lhs == IntPoly::new(rhs), "telescoping fails at p={p}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(1..=8);
        let u = random_vector(&mut rng, n, 100);
        let w = random_vector(&mut rng, n, 100);
        let uw = cyclic_convolve(&u, &w).map_err(|e| e.to_string())?;
        let lhs = det_bareiss(&uw);
        let rhs = det_bareiss(&u) * det_bareiss(&w);
        ensure!(lhs == rhs, "{u:?} ⊛ {w:?}: {lhs} vs {rhs}");
    }
    Ok(())
}

/// README examples: `$ cyclokron <args>  # exit N`
fn readme_examples() -> Vec<(String, u8)> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../README.md");
    let text = std::fs::read_to_string(&path).expect("README.md is readable");
    text.lines()
        .filter_map(|line| {
            let rest = line.trim().strip_prefix("$ cyclokron ")?;
            let (args, comment) = rest.split_once('#')?;
            let code = comment.trim().strip_prefix("exit ")?.trim().parse().ok()?;
            Some((args.trim().to_string(), code))
        })
        .collect()
}

/// 8: README invocations exit as documented; `--json` is one well-formed
/// object for every subcommand.
fn cli_contract() -> Check {
    let examples = readme_examples();
    ensure!(
        examples.len() >= 20,
        "only {} README examples found",
        examples.len()
    );
    for (args, expected) in &examples {
        let (code, _, stderr) = cli(args);
        ensure!(
            code == *expected,
            "`{args}` exited {code}, documented {expected}; {stderr}"
        );
        if *expected == 2 {
            ensure!(
                stderr.lines().count() == 1,
                "`{args}` diagnostic is not one line: {stderr:?}"
            );
        }
    }
    let per_subcommand = [
        "det --vector 1,2,3",
        "det --vector 1,2,3 --modulus 5",
        "det-congruence --vector 1,2,3 -p 3",
        "claim verify -p 3",
        "claim expand -p 3",
        "perm orbits -p 3",
        "perm sign --perm 1,2,0",
        "phi -p 5",
        "lemma check --poly 1,1,1,1,1 -p 5",
        "zeta-identity --vector 1,1,1 -p 3",
        "factor --poly 4,2",
        "irreducible -p 3",
        "eisenstein -p 3",
        "relation --rationals 1/2,1/2,1/2 -p 3",
    ];
    for args in per_subcommand {
        let (code, v) = cli_json(args)?;
        ensure!(code == 0, "`{args} --json` exited {code}");
        ensure!(v.get("holds").is_some(), "`{args} --json` lacks `holds`");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("symbolic claim verification", symbolic_claim),
        ("cross-algorithm determinant agreement", cross_algorithm),
        ("claim congruence on random vectors", claim_congruence),
        ("lemma suite", lemma_suite),
        ("theorem suite", theorem_suite),
        ("exhaustive sign preservation", sign_preservation),
        ("structural identities", structural_identities),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(()) => println!("PASS  {}. {name} ({:.2?})", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
