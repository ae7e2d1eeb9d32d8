//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if any
//! criterion fails. Run with `cargo test -p blockwork-core --test acceptance`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use blockwork::arith::{gcd, lcm, prime_divisors};
use blockwork::blocks::{block_partition, block_sum_invariant};
use blockwork::cyclo::{Cyclotomic, PrimeReduction};
use blockwork::groups::named::*;
use blockwork::groups::{default_cap, GroupFile, Perm, PermGroup};
use blockwork::partitions::{hook_degree, p_core, partitions_of, prop37_construct, Partition, Prop37Case};
use blockwork::rationality::{a_group_orbits, classify};
use blockwork::tables::CharacterTable;
use blockwork::verify::{self, CheckReport, GroupContext, VerifyError};

const DIXON_BUDGET: Duration = Duration::from_secs(10);
const NPC_BUDGET: Duration = Duration::from_secs(120);
const PROP37_BUDGET: Duration = Duration::from_secs(5);
const PROP37_N_MAX: u32 = 60;
/// samples per randomized property
const RANDOM_SAMPLES: usize = 10_000;
const SEED: u64 = 0x5eed_b10c;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

struct Item {
    ctx: GroupContext,
    small: bool,
    oracle: Option<Value>,
}

impl Item {
    fn primes(&self) -> Vec<u64> {
        prime_divisors(self.ctx.table.order())
    }
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn load(dir: &str, small: bool, oracle: &Value) -> Vec<Item> {
    json_files(&corpus_dir().join(dir))
        .into_iter()
        .map(|path| {
            let file = GroupFile::load(&path).unwrap_or_else(|e| panic!("{e}"));
            let ctx = GroupContext::from_file(&file, default_cap())
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            Item {
                oracle: oracle.get(&file.name).cloned(),
                ctx,
                small,
            }
        })
        .collect()
}

/// Tally of verdicts over many reports; any error counts against the criterion.
#[derive(Default)]
struct Tally {
    consistent: usize,
    inconsistent: Vec<String>,
    inapplicable: usize,
    errors: Vec<String>,
}

impl Tally {
    fn add(&mut self, r: Result<CheckReport, VerifyError>, what: &str) {
        match r {
            Ok(r) if r.is_inconsistent() => self.inconsistent.push(format!(
                "{} p={}: {}",
                r.subject.group, r.subject.p, r.narrative
            )),
            Ok(r) if r.verdict == verify::Verdict::Inapplicable => self.inapplicable += 1,
            Ok(_) => self.consistent += 1,
            Err(e) => self.errors.push(format!("{what}: {e}")),
        }
    }

    fn outcome(&self) -> Outcome {
        let mut detail = format!(
            "{} consistent, {} inconsistent, {} inapplicable, {} error(s)",
            self.consistent,
            self.inconsistent.len(),
            self.inapplicable,
            self.errors.len()
        );
        if let Some(first) = self.inconsistent.first().or(self.errors.first()) {
            detail.push_str(&format!("; first: {first}"));
        }
        Outcome::new(
            self.inconsistent.is_empty() && self.errors.is_empty() && self.consistent > 0,
            detail,
        )
    }
}

fn golden(name: &str) -> CharacterTable {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/data/golden/{name}.json"));
    CharacterTable::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn table_of(gens: Vec<Perm>, name: &str) -> CharacterTable {
    PermGroup::enumerate(gens, default_cap())
        .unwrap()
        .character_table(name)
        .unwrap()
}

fn dixon_golden() -> Outcome {
    let start = Instant::now();
    let cases: Vec<(&str, Vec<Perm>)> = vec![
        ("c2", cyclic(2)),
        ("c4", cyclic(4)),
        ("c5", cyclic(5)),
        ("c6", cyclic(6)),
        ("s3", symmetric(3)),
        ("d8", dihedral(4)),
        ("q8", dicyclic(2)),
        ("a4", alternating(4)),
        ("s4", symmetric(4)),
        ("a5", alternating(5)),
        ("s5", symmetric(5)),
        ("sl2_3", sl2_3()),
    ];
    let mut bad = Vec::new();
    for (name, gens) in &cases {
        let t = table_of(gens.clone(), name);
        // reloading re-runs the full validation
        let revalidated = CharacterTable::from_json(&t.to_json()).is_ok();
        if !revalidated || !t.is_equivalent(&golden(name)) {
            bad.push(*name);
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        bad.is_empty() && elapsed < DIXON_BUDGET,
        format!(
            "{}/{} golden tables matched in {:.2}s (budget {}s){}",
            cases.len() - bad.len(),
            cases.len(),
            elapsed.as_secs_f64(),
            DIXON_BUDGET.as_secs(),
            if bad.is_empty() { String::new() } else { format!("; mismatched {bad:?}") }
        ),
    )
}

fn sorted_block_shape(t: &CharacterTable, p: u64) -> Option<Vec<(usize, u32)>> {
    let bp = block_partition(t, p).ok()?;
    let mut shape: Vec<(usize, u32)> = bp.blocks.iter().map(|b| (b.len(), b.defect)).collect();
    shape.sort_unstable();
    Some(shape)
}

fn block_examples(items: &[Item]) -> Outcome {
    let mut failures = Vec::new();

    let s3 = table_of(symmetric(3), "S3");
    let bp = block_partition(&s3, 2).unwrap();
    let mut groups: Vec<Vec<u64>> = bp
        .blocks
        .iter()
        .map(|b| b.members.iter().map(|m| m.degree).collect())
        .collect();
    groups.sort();
    if groups != vec![vec![1, 1], vec![2]] {
        failures.push(format!("S3 p=2 blocks by degree {groups:?}"));
    }

    let a4 = table_of(alternating(4), "A4");
    if block_partition(&a4, 2).unwrap().blocks.len() != 1 {
        failures.push("A4 p=2 is not a single block".into());
    }

    let a5 = table_of(alternating(5), "A5");
    let bp = block_partition(&a5, 2).unwrap();
    let b0 = bp.principal_block();
    let singles: Vec<_> = bp.blocks.iter().filter(|b| b.len() == 1).collect();
    if bp.blocks.len() != 2
        || b0.len() != 4
        || singles.len() != 1
        || singles[0].defect != 0
        || singles[0].members[0].degree != 4
    {
        failures.push("A5 p=2 is not B0 of size 4 plus a degree-4 defect-zero block".into());
    }

    let (mut checked, mut oracle_pairs) = (0usize, 0usize);
    for item in items {
        let t = &item.ctx.table;
        for p in item.primes() {
            let bp = match block_partition(t, p) {
                Ok(bp) => bp,
                Err(e) => {
                    failures.push(format!("{} p={p}: {e}", t.name()));
                    continue;
                }
            };
            for b in &bp.blocks {
                checked += 1;
                if let Err(e) = block_sum_invariant(b, p, bp.a) {
                    failures.push(format!("{} p={p}: {e}", t.name()));
                }
            }
            if let Some(o) = item.oracle.as_ref().and_then(|o| o.get(format!("p{p}"))) {
                oracle_pairs += 1;
                let expected: Vec<(usize, u32)> =
                    serde_json::from_value(o["blocks"].clone()).unwrap();
                let principal = o["principal_size"].as_u64().unwrap() as usize;
                if sorted_block_shape(t, p).as_ref() != Some(&expected)
                    || bp.principal_block().len() != principal
                {
                    failures.push(format!("{} p={p}: block shape differs from the oracle", t.name()));
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty() && checked > 0,
        format!(
            "S3/A4/A5 examples; Σχ(1)² invariant on {checked} block(s); \
             {oracle_pairs} (group, p) shape(s) matched the external oracle{}",
            failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        ),
    )
}

fn npc(items: &[Item], load_time: Duration) -> Outcome {
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut oracle_mismatch = Vec::new();
    for item in items.iter().filter(|i| i.small) {
        for p in item.primes() {
            let r = verify::check_normal_complement_oracle(&item.ctx, p);
            if let (Ok(r), Some(o)) = (&r, &item.oracle) {
                let expected = o[format!("p{p}")]["normal_complement"].as_bool();
                if Some(r.witnesses[0]["group_side"].as_bool().unwrap()) != expected {
                    oracle_mismatch.push(format!("{} p={p}", item.ctx.name));
                }
            }
            tally.add(r, &item.ctx.name);
        }
    }
    let elapsed = load_time + start.elapsed();
    let mut out = tally.outcome();
    out.pass &= oracle_mismatch.is_empty() && elapsed < NPC_BUDGET;
    out.detail = format!(
        "groups of order < 100: {}; {} disagreement(s) with the external oracle; \
         {:.1}s including table construction (budget {}s)",
        out.detail,
        oracle_mismatch.len(),
        elapsed.as_secs_f64(),
        NPC_BUDGET.as_secs()
    );
    out
}

fn table_check<F>(items: &[Item], primes: F, check: impl Fn(&CharacterTable, u64) -> Result<CheckReport, VerifyError>) -> Outcome
where
    F: Fn(&Item) -> Vec<u64>,
{
    let mut tally = Tally::default();
    for item in items {
        for p in primes(item) {
            tally.add(check(&item.ctx.table, p), &item.ctx.name);
        }
    }
    tally.outcome()
}

fn prop37() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut certs = 0;
    for n in (5..=PROP37_N_MAX).filter(|&n| n != 6) {
        for p in prime_divisors_upto(n as u64) {
            let cert = match prop37_construct(n, p) {
                Ok(c) => c,
                Err(e) => {
                    failures.push(format!("n={n} p={p}: {e}"));
                    continue;
                }
            };
            certs += 1;
            let nn = n as u64;
            let formula = match cert.case {
                Prop37Case::PDividesN => BigUint::from(nn - 1),
                Prop37Case::NCongruentOne => BigUint::from(nn * (nn - 3) / 2),
                Prop37Case::Hook { s } => binomial(nn - 1, p.pow(s)),
                Prop37Case::NSix => unreachable!(),
            };
            if !cert.passes() || formula != cert.degree || formula != hook_degree(&cert.lambda) {
                failures.push(format!("n={n} p={p}: λ = {}", cert.lambda));
            }
        }
    }
    // the same sweep through the report layer
    let reports = verify::check_prop37(PROP37_N_MAX, PROP37_N_MAX as u64);
    let reported_bad = reports
        .iter()
        .filter(|r| r.verdict != verify::Verdict::Consistent)
        .filter(|r| r.witnesses[0]["n"] != 6)
        .count();
    let elapsed = start.elapsed();
    Outcome::new(
        failures.is_empty() && reported_bad == 0 && certs > 0 && elapsed < PROP37_BUDGET,
        format!(
            "{certs} certificate(s) for 5 ≤ n ≤ {PROP37_N_MAX}, n ≠ 6; {} failure(s); \
             degree formulas match hook lengths; {:.2}s (budget {}s)",
            failures.len() + reported_bad,
            elapsed.as_secs_f64(),
            PROP37_BUDGET.as_secs()
        ),
    )
}

fn prime_divisors_upto(n: u64) -> Vec<u64> {
    (3..=n).filter(|&p| blockwork::arith::is_prime(p)).collect()
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn lemma21(items: &[Item]) -> Outcome {
    let mut tally = Tally::default();
    for item in items {
        for p in item.primes() {
            tally.add(verify::check_restriction_p_prime_index(&item.ctx, p), &item.ctx.name);
        }
    }
    tally.outcome()
}

const MODULI: [u32; 14] = [1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 21, 24, 60];

fn random_cyclotomic(rng: &mut StdRng) -> Cyclotomic {
    let n = MODULI[rng.gen_range(0..MODULI.len())];
    let mut z = Cyclotomic::zero();
    for _ in 0..rng.gen_range(1..=5) {
        let q = BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4)));
        z = &z + &Cyclotomic::zeta_pow(n, rng.gen_range(0..n as i64)).scale(&q);
    }
    z
}

fn unit_mod(rng: &mut StdRng, n: u64) -> i64 {
    loop {
        let k = rng.gen_range(1..=n.max(2) * 3) as i64 - n as i64;
        if gcd(k.unsigned_abs(), n) == 1 {
            return k;
        }
    }
}

fn random_properties(items: &[Item]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut failures: Vec<String> = Vec::new();

    for _ in 0..RANDOM_SAMPLES {
        let (a, b) = (random_cyclotomic(&mut rng), random_cyclotomic(&mut rng));
        let n = lcm(a.modulus() as u64, b.modulus() as u64);
        let k = unit_mod(&mut rng, n);
        let s = |z: &Cyclotomic| z.galois(k).unwrap();
        if s(&(&a + &b)) != &s(&a) + &s(&b)
            || s(&(&a * &b)) != &s(&a) * &s(&b)
            || s(&Cyclotomic::one()) != Cyclotomic::one()
        {
            failures.push(format!("σ_{k} is not a ring homomorphism on {a}, {b}"));
        }
        let m = a.modulus() * rng.gen_range(1..=4);
        let lifted = a.lift(m);
        if s(&a).conductor() != a.conductor() || lifted != a || lifted.conductor() != a.conductor() {
            failures.push(format!("conductor of {a} is not invariant"));
        }

        // reduction modulo a prime above p, p ∤ 2·3·n so the denominators are units
        let p = [11u64, 13, 17, 19, 23, 29, 31, 37, 41, 43]
            .into_iter()
            .filter(|&p| !n.is_multiple_of(p))
            .nth(rng.gen_range(0..3))
            .unwrap();
        let red = PrimeReduction::new(n as u32, p);
        let r = |z: &Cyclotomic| red.reduce(z).unwrap();
        if r(&(&a + &b)) != r(&a).add(&r(&b)) || r(&(&a * &b)) != r(&a).mul(&r(&b)) {
            failures.push(format!("reduction mod {p} is not a homomorphism on {a}, {b}"));
        }
    }

    let mut cores = 0;
    let by_n: BTreeMap<u32, Vec<Partition>> = (1..=20).map(|n| (n, partitions_of(n))).collect();
    for _ in 0..RANDOM_SAMPLES / 5 {
        let n = rng.gen_range(1..=20);
        let parts = &by_n[&n];
        let lambda = parts[rng.gen_range(0..parts.len())].clone();
        let p = [2u32, 3, 5, 7][rng.gen_range(0..4)];
        let mut mu = lambda.clone();
        loop {
            let cells = mu.cells_with_hook(p);
            if cells.is_empty() {
                break;
            }
            let (i, j) = cells[rng.gen_range(0..cells.len())];
            mu = mu.remove_rim_hook(i, j);
        }
        cores += 1;
        if mu != p_core(&lambda, p) || !(lambda.n() - mu.n()).is_multiple_of(p) {
            failures.push(format!("{p}-core of {lambda} depends on the removal order"));
        }
    }

    let mut characters = 0;
    for item in items {
        let t = &item.ctx.table;
        for p in item.primes() {
            let orbits = match a_group_orbits(t, p) {
                Ok(o) => o,
                Err(e) => {
                    failures.push(format!("{} p={p}: {e}", t.name()));
                    continue;
                }
            };
            for row in 0..t.irr().len() {
                characters += 1;
                if orbits.is_fixed(row) != classify(t, row, p).almost_p_rational {
                    failures.push(format!("{} p={p} row {row}: A-fixed ≠ almost p-rational", t.name()));
                }
            }
        }
    }

    Outcome::new(
        failures.is_empty(),
        format!(
            "{RANDOM_SAMPLES} random pairs for Galois, conductor and reduction properties; \
             {cores} random rim-hook removal orders; {characters} (character, p) pairs for \
             A-invariance; {} failure(s){}",
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    )
}

/// Degrees, conductors, class counts and exponents against the external oracle.
fn oracle_tables(items: &[Item]) -> Outcome {
    let mut compared = 0;
    let mut bad = Vec::new();
    for item in items {
        let Some(o) = &item.oracle else { continue };
        compared += 1;
        let t = &item.ctx.table;
        let mut degrees = t.degrees();
        degrees.sort_unstable();
        let mut conductors: Vec<u64> = (0..t.irr().len())
            .map(|r| blockwork::rationality::character_conductor(t, r))
            .collect();
        conductors.sort_unstable();
        let as_vec = |v: &Value| -> Vec<u64> { serde_json::from_value(v.clone()).unwrap() };
        if o["classes"].as_u64() != Some(t.num_classes() as u64)
            || as_vec(&o["degrees"]) != degrees
            || as_vec(&o["conductors"]) != conductors
            || o["exponent"].as_u64() != Some(t.exponent())
        {
            bad.push(item.ctx.name.clone());
        }
    }
    Outcome::new(
        bad.is_empty() && compared == items.len(),
        format!(
            "{compared}/{} group(s) compared; {} mismatch(es){}",
            items.len(),
            bad.len(),
            bad.first().map(|b| format!("; first: {b}")).unwrap_or_default()
        ),
    )
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let oracle: Value = serde_json::from_str(
        &std::fs::read_to_string(corpus_dir().join("oracle.json")).expect("corpus/oracle.json"),
    )
    .unwrap();
    let start = Instant::now();
    let mut items = load("groups", true, &oracle);
    let small_load = start.elapsed();
    items.extend(load("extra", false, &oracle));
    println!(
        "corpus: {} groups ({} of order < 100) loaded in {:.1}s",
        items.len(),
        items.iter().filter(|i| i.small).count(),
        start.elapsed().as_secs_f64()
    );

    let all_primes = |i: &Item| i.primes();
    let odd_primes = |i: &Item| i.primes().into_iter().filter(|&p| p != 2).collect();
    let criteria: Vec<Criterion> = vec![
        ("Dixon tables match the golden set", Box::new(dixon_golden)),
        ("block partitions", Box::new(|| block_examples(&items))),
        ("normal p-complement, table side vs group side", Box::new(|| npc(&items, small_load))),
        (
            "rational odd degree iff normal 2-complement (thmD)",
            Box::new(|| {
                table_check(&items, |i| i.primes().into_iter().filter(|&p| p == 2).collect(), |t, _| {
                    verify::check_rational_degree_parity(t)
                })
            }),
        ),
        (
            "Q_p-valued p'-degree criterion (thmE)",
            Box::new(|| table_check(&items, odd_primes, verify::check_qp_valued_degree_criterion)),
        ),
        (
            "almost p-rational height-zero characters per block (thm41)",
            Box::new(|| table_check(&items, all_primes, verify::check_almost_rational_height_zero)),
        ),
        (
            "principal block degree equality iff normal p-complement (conjF)",
            Box::new(|| {
                table_check(&items, all_primes, |t, p| {
                    verify::check_principal_nilpotency_degrees(t, p).map(|(r, _)| r)
                })
            }),
        ),
        ("symmetric group certificates (prop37)", Box::new(prop37)),
        ("restriction to p'-index subgroups stays in B0 (lemma21)", Box::new(|| lemma21(&items))),
        ("randomized and exhaustive property suites", Box::new(|| random_properties(&items))),
    ];

    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        failed += usize::from(!out.pass);
        println!(
            "criterion {:>2} {} {label}: {} [{:.1}s]",
            k + 1,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            t.elapsed().as_secs_f64()
        );
    }
    let out = oracle_tables(&items);
    failed += usize::from(!out.pass);
    println!(
        "supplementary {} degrees and conductors vs external oracle: {}",
        if out.pass { "PASS" } else { "FAIL" },
        out.detail
    );
    if failed > 0 {
        println!("{failed} criterion line(s) failed");
        std::process::exit(1);
    }
}
