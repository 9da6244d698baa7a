//! Command-line front end for `cyclokron-core`.
//!
//! [`run`] is the whole program minus process plumbing, so tests drive it
//! in-process. Exit codes: 0 when the computation succeeded and every checked
//! property holds, 1 when a checked property fails, 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use cyclokron_core::circulant::{
    det_bareiss, det_leibniz, det_multimodular, det_powersum_mod_p, CirculantVector,
};
use cyclokron_core::cyclotomic::{
    circulant_zeta_identity, eisenstein_shift, eisenstein_shift_check, irreducibility_report,
    kronecker_factor, kronecker_lemma_check, phi, rational_relation_check, vanishes_at_zeta,
};
use cyclokron_core::orbits::{
    leibniz_symbolic, orbit_decompose, verify_claim, OrbitCensus, Permutation,
};
use cyclokron_core::ring::{IntPoly, ModInt, PrimeModulus, Rational};
use cyclokron_core::DEFAULT_SEED;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclokron",
    version,
    about = "Exact circulant determinants and prime cyclotomic checks"
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Determinant of the circulant with first row `a0,a1,...`.
    Det {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        vector: IntList,
        #[arg(long, value_enum, default_value_t = Algorithm::Bareiss)]
        algorithm: Algorithm,
        /// Reduce the determinant modulo this integer (≥ 2).
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Check det ≡ Σ a_j^p ≡ Σ a_j (mod p) for a length-p vector.
    DetCongruence {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        vector: IntList,
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
    /// The symbolic p × p circulant determinant.
    #[command(subcommand)]
    Claim(ClaimCommand),
    /// Permutations and the rook-translation action.
    #[command(subcommand)]
    Perm(PermCommand),
    /// The cyclotomic polynomial 1 + t + ... + t^(p-1).
    Phi {
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
    /// f(ζ) = 0 implies p | f(1).
    #[command(subcommand)]
    Lemma(LemmaCommand),
    /// Check A·(1, ζ, ..., ζ^(p-1)) = 0 for the circulant of the vector.
    ZetaIdentity {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        vector: IntList,
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
    /// Factor an integer polynomial (coefficients little-endian) by Kronecker's method.
    Factor {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        poly: IntList,
    },
    /// Irreducibility of Φ_p over Z, with its supporting checks.
    Irreducible {
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
        #[arg(long, env = "CYCLOKRON_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Eisenstein's criterion on Φ_p(t + 1).
    Eisenstein {
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
    /// Whether rationals a_j satisfy Σ a_j ζ^j = 0, and whether they are all equal.
    Relation {
        #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
        rationals: RationalList,
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
}

#[derive(Debug, Subcommand)]
enum ClaimCommand {
    /// Check the power-sum congruence through the orbit structure.
    Verify {
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
    /// Print the symbolic determinant.
    Expand {
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
}

#[derive(Debug, Subcommand)]
enum PermCommand {
    /// List the orbits of S_p.
    Orbits {
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
    /// Sign of a permutation given by its images.
    Sign {
        #[arg(long, value_parser = parse_indices)]
        perm: IndexList,
    },
}

#[derive(Debug, Subcommand)]
enum LemmaCommand {
    Check {
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        poly: IntList,
        #[arg(short = 'p', long = "prime", value_parser = parse_prime)]
        p: PrimeModulus,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Leibniz,
    Bareiss,
    Multimodular,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Leibniz => "leibniz",
            Algorithm::Bareiss => "bareiss",
            Algorithm::Multimodular => "multimodular",
        }
    }
}

#[derive(Debug, Clone)]
struct IntList(Vec<BigInt>);

#[derive(Debug, Clone)]
struct IndexList(Vec<usize>);

#[derive(Debug, Clone)]
struct RationalList(Vec<Rational>);

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse()
                .map_err(|_| format!("malformed {what} `{item}`"))
        })
        .collect()
}

fn parse_ints(s: &str) -> Result<IntList, String> {
    parse_list(s, "integer").map(IntList)
}

fn parse_indices(s: &str) -> Result<IndexList, String> {
    parse_list(s, "index").map(IndexList)
}

fn parse_rationals(s: &str) -> Result<RationalList, String> {
    parse_list(s, "rational").map(RationalList)
}

fn parse_prime(s: &str) -> Result<PrimeModulus, String> {
    let n: u64 = s
        .trim()
        .parse()
        .map_err(|_| format!("malformed integer `{s}`"))?;
    PrimeModulus::new(n).map_err(|e| e.to_string())
}

/// What a command produced: text, JSON, and whether its property held.
struct Report {
    text: String,
    json: Value,
    holds: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            holds: true,
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Parses `args` (program name first) and runs the selected command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let rendered = e.render().to_string();
                    let line = rendered.lines().next().unwrap_or("error: invalid usage");
                    usage_error(line.to_string())
                }
            };
        }
    };

    match execute(cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut v = report.json;
                if let Value::Object(map) = &mut v {
                    map.insert("holds".into(), Value::Bool(report.holds));
                }
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&v).expect("JSON values serialize")
                )
            } else {
                report.text
            };
            Outcome {
                code: if report.holds { EXIT_OK } else { EXIT_VIOLATED },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => usage_error(format!("error: {e}")),
    }
}

fn usage_error(line: String) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("{line}\n"),
    }
}

fn execute(command: Command) -> cyclokron_core::Result<Report> {
    match command {
        Command::Det {
            vector,
            algorithm,
            modulus,
        } => det(vector, algorithm, modulus),
        Command::DetCongruence { vector, p } => det_congruence(vector, p),
        Command::Claim(ClaimCommand::Verify { p }) => claim_verify(p),
        Command::Claim(ClaimCommand::Expand { p }) => {
            let sym = leibniz_symbolic(p)?;
            Ok(Report::ok(
                format!("{sym}\n"),
                json!({ "p": p, "expansion": sym }),
            ))
        }
        Command::Perm(PermCommand::Orbits { p }) => perm_orbits(p),
        Command::Perm(PermCommand::Sign { perm }) => perm_sign(perm),
        Command::Phi { p } => {
            let f = phi(p);
            let at_one = f.eval(&BigInt::from(1));
            Ok(Report::ok(
                format!("{f}\n"),
                json!({ "p": p, "coefficients": f, "display": f.to_string(), "value_at_one": at_one.to_string() }),
            ))
        }
        Command::Lemma(LemmaCommand::Check { poly, p }) => lemma_check(poly, p),
        Command::ZetaIdentity { vector, p } => zeta_identity(vector, p),
        Command::Factor { poly } => factor(poly),
        Command::Irreducible { p, seed } => irreducible(p, seed),
        Command::Eisenstein { p } => {
            let shifted = eisenstein_shift(p);
            let holds = eisenstein_shift_check(p);
            let text = format!(
                "Φ_{p}(t + 1) = {shifted}\nEisenstein at {p}: {}\n",
                if holds { "HOLDS" } else { "FAILS" }
            );
            Ok(Report {
                text,
                json: json!({ "p": p, "shifted": shifted, "display": shifted.to_string(), "eisenstein": holds }),
                holds,
            })
        }
        Command::Relation { rationals, p } => relation(rationals, p),
    }
}

fn det(
    vector: IntList,
    algorithm: Algorithm,
    modulus: Option<u64>,
) -> cyclokron_core::Result<Report> {
    let v = CirculantVector::new(vector.0)?;
    let d = match algorithm {
        Algorithm::Leibniz => det_leibniz(&v)?,
        Algorithm::Bareiss => det_bareiss(&v),
        Algorithm::Multimodular => det_multimodular(&v),
    };
    let mut json =
        json!({ "vector": v, "algorithm": algorithm.name(), "determinant": d.to_string() });
    let text = match modulus {
        Some(m) => {
            let r = ModInt::from_bigint(&d, m)?;
            json["modulus"] = json!(m);
            json["residue"] = json!(r.residue());
            format!("{}\n", r.residue())
        }
        None => format!("{d}\n"),
    };
    Ok(Report::ok(text, json))
}

fn det_congruence(vector: IntList, p: PrimeModulus) -> cyclokron_core::Result<Report> {
    let v = CirculantVector::new(vector.0)?;
    let power_sum = det_powersum_mod_p(&v, p)?;
    let d = det_bareiss(&v);
    let det_mod = ModInt::from_bigint(&d, p.get())?;
    let sum: BigInt = v.entries().iter().sum();
    let sum_mod = ModInt::from_bigint(&sum, p.get())?;
    let power_leg = det_mod == power_sum;
    let fermat_leg = det_mod == sum_mod;
    let holds = power_leg && fermat_leg;
    let text = format!(
        "det = {d}\ndet mod {p} = {}\npower sum mod {p} = {}\ncoefficient sum mod {p} = {}\nCONGRUENCE {}\n",
        det_mod.residue(),
        power_sum.residue(),
        sum_mod.residue(),
        if holds { "HOLDS" } else { "FAILS" }
    );
    let json = json!({
        "vector": v,
        "p": p,
        "determinant": d.to_string(),
        "det_mod_p": det_mod.residue(),
        "power_sum_mod_p": power_sum.residue(),
        "sum_mod_p": sum_mod.residue(),
        "power_sum_congruence": power_leg,
        "fermat_congruence": fermat_leg,
    });
    Ok(Report { text, json, holds })
}

fn claim_verify(p: PrimeModulus) -> cyclokron_core::Result<Report> {
    let r = verify_claim(p)?;
    let c = r.census;
    let mut text = format!(
        "p = {p}: {} permutations, {} fixed, {} orbits of size {p}\n",
        c.permutations, c.fixed_points, c.full_orbits
    );
    let _ = writeln!(
        text,
        "expansion reduces to the power sum mod {p}: {}",
        yes(r.reduces_to_power_sum)
    );
    let _ = writeln!(
        text,
        "orbit members share a monomial: {}",
        yes(r.orbit_monomials_agree)
    );
    let _ = writeln!(
        text,
        "orbit members share a sign: {}",
        yes(r.orbit_signs_agree)
    );
    let _ = writeln!(
        text,
        "fixed points give the pure powers: {}",
        yes(r.fixed_points_are_pure_powers)
    );
    let _ = writeln!(text, "det mod {p} = {}", r.reduced);
    let _ = writeln!(text, "CLAIM {}", if r.holds { "HOLDS" } else { "FAILS" });
    let json = serde_json::to_value(&r).expect("report serializes");
    Ok(Report {
        text,
        json,
        holds: r.holds,
    })
}

fn perm_orbits(p: PrimeModulus) -> cyclokron_core::Result<Report> {
    let orbits = orbit_decompose(p)?;
    let census = OrbitCensus::of(p.as_usize(), &orbits);
    let mut text = format!(
        "{} permutations: {} fixed, {} orbits of size {p}\n",
        census.permutations, census.fixed_points, census.full_orbits
    );
    for o in &orbits {
        let members: Vec<String> = o.members().iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "{}", members.join(" -> "));
    }
    let holds = census.fixed_points == p.as_usize() && census.other_orbits == 0;
    Ok(Report {
        text,
        json: json!({ "p": p, "census": census, "orbits": orbits }),
        holds,
    })
}

fn perm_sign(perm: IndexList) -> cyclokron_core::Result<Report> {
    let s = Permutation::new(perm.0)?;
    let sign = s.sign();
    let holds = sign == s.sign_by_cycles();
    let text = format!("{sign:+} ({} inversions)\n", s.inversions());
    let json = json!({
        "perm": s,
        "inversions": s.inversions(),
        "sign": sign,
        "sign_by_cycles": s.sign_by_cycles(),
    });
    Ok(Report { text, json, holds })
}

fn lemma_check(poly: IntList, p: PrimeModulus) -> cyclokron_core::Result<Report> {
    let f = IntPoly::new(poly.0);
    let r = kronecker_lemma_check(&f, p);
    let text = format!(
        "f = {f}\nf(ζ_{p}) = 0: {}\nf(1) = {}\n{p} | f(1): {}\nLEMMA {}\n",
        yes(r.vanishes),
        r.value_at_one,
        yes(r.p_divides_value),
        if r.consistent {
            "CONSISTENT"
        } else {
            "VIOLATED"
        }
    );
    let json = serde_json::to_value(&r).expect("report serializes");
    Ok(Report {
        text,
        json,
        holds: r.consistent,
    })
}

fn zeta_identity(vector: IntList, p: PrimeModulus) -> cyclokron_core::Result<Report> {
    let v = CirculantVector::new(vector.0)?;
    let kills = circulant_zeta_identity(&v, p)?;
    let divisible = vanishes_at_zeta(&v.to_poly(), p);
    let text = format!(
        "A·(1, ζ, ..., ζ^{}) = 0: {}\nΦ_{p} divides Σ a_j t^j: {}\n",
        p.get() - 1,
        yes(kills),
        yes(divisible)
    );
    let json = json!({ "vector": v, "p": p, "identity": kills, "phi_divides": divisible });
    Ok(Report {
        text,
        json,
        holds: kills == divisible,
    })
}

fn factor(poly: IntList) -> cyclokron_core::Result<Report> {
    let f = IntPoly::new(poly.0);
    let fact = kronecker_factor(&f)?;
    let holds = fact.expand() == f;
    let mut text = format!("{fact}\n");
    if fact.is_irreducible() {
        text.push_str("irreducible\n");
    }
    let factors: Vec<Value> = fact
        .factors
        .iter()
        .map(|(g, m)| json!({ "factor": g, "display": g.to_string(), "multiplicity": m }))
        .collect();
    let json = json!({
        "poly": f,
        "unit": fact.unit,
        "content": fact.content.to_string(),
        "factors": factors,
        "irreducible": fact.is_irreducible(),
    });
    Ok(Report { text, json, holds })
}

fn irreducible(p: PrimeModulus, seed: u64) -> cyclokron_core::Result<Report> {
    let r = irreducibility_report(p, seed)?;
    let mut text = format!("Φ_{p} = {}\n", r.phi);
    let _ = writeln!(
        text,
        "Φ_{p}(1) = {} = p: {}",
        r.phi_at_one,
        yes(r.phi_at_one_is_p)
    );
    let _ = writeln!(text, "p² ∤ Φ_{p}(1): {}", yes(r.p_squared_does_not_divide));
    let _ = writeln!(text, "Kronecker factorization: {}", r.factorization);
    let _ = writeln!(
        text,
        "single irreducible factor: {}",
        yes(r.single_irreducible_factor)
    );
    let _ = writeln!(
        text,
        "{} random multiples f = Φ_{p}·g vanish at ζ with p | f(1): {} (seed {})",
        r.lemma_samples,
        yes(r.lemma_instances_hold),
        r.seed
    );
    let _ = writeln!(text, "Eisenstein on Φ_{p}(t + 1): {}", yes(r.eisenstein));
    let _ = writeln!(text, "oracles agree: {}", yes(r.oracles_agree));
    let _ = writeln!(
        text,
        "IRREDUCIBLE {}",
        if r.holds { "HOLDS" } else { "FAILS" }
    );
    let json = serde_json::to_value(&r).expect("report serializes");
    Ok(Report {
        text,
        json,
        holds: r.holds,
    })
}

fn relation(rationals: RationalList, p: PrimeModulus) -> cyclokron_core::Result<Report> {
    let r = rational_relation_check(&rationals.0, p)?;
    let text = format!(
        "Σ a_j ζ^j = 0: {}\nall a_j equal: {}\nTHEOREM {}\n",
        yes(r.is_relation),
        yes(r.is_constant),
        if r.theorem_consistent {
            "CONSISTENT"
        } else {
            "VIOLATED"
        }
    );
    let mut json = serde_json::to_value(&r).expect("report serializes");
    json["rationals"] = json!(rationals
        .0
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>());
    Ok(Report {
        text,
        json,
        holds: r.theorem_consistent,
    })
}
