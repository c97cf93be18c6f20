//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs with `harness = false` so the lines always reach stdout.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use mwlattice::bitangents::{analyze, sample_input, u_equation_residuals, LinearForm, Tangency};
use mwlattice::dihedral::{cover_primes, dcover_exists, CoverQuery, DihedralError};
use mwlattice::exactmath::{is_odd_prime, rank_q, IntMatrix};
use mwlattice::lattice::{
    basis, enumerate_pairs, height_pairing, pair_set, rank_drop_primes, representative, MinimalVector, PairIndex,
};
use mwlattice::matroid::{iso_class_labels, subset_rank, Field, GroundSet, Matroid};
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const TABLE: [usize; 28] = [
    1, 1, 1, 2, 2, 4, 6, 11, 19, 37, 52, 80, 95, 102, 100, 90, 70, 54, 37, 23, 16, 10, 5, 3, 2, 1, 1, 1,
];
const FAST_BUDGET: Duration = Duration::from_secs(120);
const FULL_BUDGET: Duration = Duration::from_secs(3600);
const MEMORY_BUDGET_KIB: u64 = 4 * 1024 * 1024;
const PROPERTY_SAMPLES: usize = 10_000;
const BITANGENT_SEEDS: std::ops::Range<u64> = 0..5;
const REQUIRED_CLEAN_INPUTS: usize = 3;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn classify(args: &[&str]) -> Result<(Vec<u8>, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_mwlattice"))
        .arg("classify")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok((out.stdout, elapsed))
}

fn n_r(stdout: &[u8]) -> Result<(Vec<usize>, Value), String> {
    let v: Value = serde_json::from_slice(stdout).map_err(|e| e.to_string())?;
    let map: BTreeMap<usize, usize> = serde_json::from_value(v["n_r"].clone()).map_err(|e| e.to_string())?;
    Ok((map.into_values().collect(), v))
}

fn census_fast() -> Outcome {
    let (out, t) = classify(&["--max-r", "10", "--field", "q", "--threads", "4"])?;
    let (got, _) = n_r(&out)?;
    check(got == TABLE[..10], format!("n_1..n_10 = {got:?}"))?;
    check(t < FAST_BUDGET, format!("took {t:.1?}, budget {FAST_BUDGET:?}"))?;
    Ok(format!("n_1..n_10 = {got:?} in {t:.1?}"))
}

fn census_full() -> Outcome {
    let (out, t) = classify(&["--max-r", "28", "--field", "q", "--force-full", "--timings"])?;
    let (got, v) = n_r(&out)?;
    check(got == TABLE, format!("table = {got:?}"))?;
    check(t < FULL_BUDGET, format!("took {t:.1?}"))?;
    let rss = v["peak_rss_kib"].as_u64();
    if let Some(kib) = rss {
        check(kib < MEMORY_BUDGET_KIB, format!("peak RSS {kib} KiB"))?;
    }
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    Ok(format!(
        "all 28 levels exact, {t:.1?} on {threads} thread(s), peak RSS {}",
        rss.map_or("unknown".to_string(), |k| format!("{} MiB", k / 1024))
    ))
}

fn determinism() -> Outcome {
    let (one, _) = classify(&["--max-r", "10", "--field", "q", "--threads", "1"])?;
    let (many, _) = classify(&["--max-r", "10", "--field", "q", "--threads", "4"])?;
    let (again, _) = classify(&["--max-r", "10", "--field", "q", "--threads", "3"])?;
    check(one == many && many == again, "JSON differs between thread counts")?;
    Ok(format!("{} bytes identical for 1, 3 and 4 threads", one.len()))
}

fn lattice_invariants() -> Outcome {
    let reps = enumerate_pairs();
    let half = Rational64::new(1, 2);
    for (i, v) in &reps {
        check(height_pairing(v, v) == Rational64::new(3, 2), format!("height of {i}"))?;
        for (j, w) in &reps {
            let h = height_pairing(v, w);
            check(i == j || h == half || h == -half, format!("<{i},{j}> = {h}"))?;
        }
    }
    let rows: Vec<[i32; 8]> = reps.iter().map(|(_, v)| *v.coords()).collect();
    let rank = rank_q(&IntMatrix::from_rows(&rows));
    check(rank == 7, format!("rank {rank}"))?;
    let circuit: Vec<PairIndex> = [(0, 1), (2, 3), (4, 5), (6, 7)]
        .iter()
        .map(|&(a, b)| {
            let mut v = [1; 8];
            v[a] = -3;
            v[b] = -3;
            mwlattice::lattice::pair_of(&MinimalVector::new(v).unwrap())
        })
        .collect();
    let mut sum = [0; 8];
    for &p in &circuit {
        for (s, x) in sum.iter_mut().zip(representative(p).coords()) {
            *s += x;
        }
    }
    check(sum == [0; 8], "4-set does not sum to zero")?;
    let m = Matroid::new(GroundSet::full(Field::Rational).unwrap());
    check(m.is_circuit(&circuit).unwrap(), "4-set is not a circuit")?;
    Ok(format!(
        "28 heights 3/2, 756 cross pairings in {{+-1/2}}, rank 7, pairs {:?} form a zero-sum circuit",
        circuit.iter().map(|p| p.get()).collect::<Vec<_>>()
    ))
}

fn random_independent(rng: &mut ChaCha8Rng, f: Field, size: usize) -> Vec<PairIndex> {
    let mut order: Vec<usize> = (0..28).collect();
    order.shuffle(rng);
    let mut out = Vec::new();
    for i in order {
        if out.len() == size {
            break;
        }
        out.push(PairIndex::from_zero_based(i));
        if subset_rank(f, &out) < out.len() {
            out.pop();
        }
    }
    out
}

fn matroid_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_7472);
    let fields = [Field::Rational, Field::Prime(3), Field::Prime(5), Field::Prime(7)];
    let mut violations = 0usize;
    let mut augmentation_pairs = 0usize;
    while augmentation_pairs < PROPERTY_SAMPLES {
        let n = augmentation_pairs;
        let f = fields[n % fields.len()];
        let size = rng.gen_range(1..=7);
        let i = random_independent(&mut rng, f, size);
        let sub: Vec<PairIndex> = i.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        if subset_rank(f, &sub) != sub.len() {
            violations += 1;
        }
        let small = rng.gen_range(0..=6);
        let a = random_independent(&mut rng, f, small);
        let target = (a.len() + rng.gen_range(1..=7)).min(7);
        let b = random_independent(&mut rng, f, target);
        if a.len() < b.len() {
            augmentation_pairs += 1;
            let augments = b.iter().filter(|x| !a.contains(x)).any(|&x| {
                let mut c = a.clone();
                c.push(x);
                subset_rank(f, &c) == c.len()
            });
            if !augments {
                violations += 1;
            }
        }
    }
    let mut circuits = 0usize;
    for n in 0..200 {
        let f = fields[n % fields.len()];
        let mut all: Vec<PairIndex> = PairIndex::all().collect();
        all.shuffle(&mut rng);
        all.truncate(rng.gen_range(2..=11));
        let m = Matroid::new(GroundSet::full(f).unwrap());
        for c in m.circuits(&all).map_err(|e| e.to_string())? {
            circuits += 1;
            let minimal = subset_rank(f, &c) == c.len() - 1
                && (0..c.len()).all(|skip| {
                    let rest: Vec<PairIndex> =
                        c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &p)| p).collect();
                    subset_rank(f, &rest) == rest.len()
                });
            if !minimal {
                violations += 1;
            }
        }
    }
    check(violations == 0, format!("{violations} violations"))?;
    Ok(format!(
        "{PROPERTY_SAMPLES}+ hereditary and {augmentation_pairs} augmentation samples, {circuits} circuits rechecked, 0 violations"
    ))
}

fn lemma_small_r() -> Outcome {
    let levels = mwlattice::classifier::all_levels(5, Field::Rational, Default::default()).map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for r in 1..=5 {
        let iso = iso_class_labels(r, Field::Rational).map_err(|e| e.to_string())?;
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        for (&s, &m) in levels[r].ids().iter().zip(&iso) {
            check(*seen.entry(s).or_insert(m) == m, format!("r = {r}: oracle separates signature class {s}"))?;
        }
        let n_sig = levels[r].class_count();
        let n_iso = *iso.iter().max().unwrap() as usize + 1;
        check(n_sig <= n_iso, format!("r = {r}: {n_sig} signature classes > {n_iso} oracle classes"))?;
        if r == 4 {
            check(n_sig == 2 && n_iso == 2, format!("r = 4: {n_sig} vs {n_iso}"))?;
        }
        summary.push(format!("r={r}: {n_sig}/{n_iso}"));
    }
    Ok(format!("signature/oracle classes {}", summary.join(", ")))
}

fn dihedral_criteria() -> Outcome {
    let circuit = pair_set(&[1, 6, 15, 28]).unwrap();
    let primes: Vec<u64> = (3..=100).filter(|&p| is_odd_prime(p)).collect();
    for &p in &primes {
        let q = CoverQuery::positive(&circuit, p).map_err(|e| e.to_string())?;
        check(dcover_exists(&q).map_err(|e| e.to_string())?, format!("no cover at p = {p}"))?;
    }
    let triple = pair_set(&[1, 2, 3]).unwrap();
    let drops = rank_drop_primes(&triple).map_err(|e| e.to_string())?;
    let covers = cover_primes(&triple, 100).map_err(|e| e.to_string())?;
    check(covers.iter().all(|p| drops.contains(p)), format!("covers {covers:?} not in {drops:?}"))?;
    check(
        CoverQuery::positive(&circuit, 2) == Err(DihedralError::InvalidPrime(2)),
        "p = 2 accepted",
    )?;
    Ok(format!(
        "4-circuit covers at all {} odd primes <= 100; {{1,2,3}} covers {covers:?} within rank-drop {drops:?}; p = 2 rejected",
        primes.len()
    ))
}

fn bitangents() -> Outcome {
    let mut clean = Vec::new();
    let mut notes = Vec::new();
    for seed in BITANGENT_SEEDS {
        let inp = sample_input(seed).map_err(|e| e.to_string())?;
        let report = match analyze(&inp) {
            Ok(r) => r,
            Err(e) => {
                notes.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let residual_zero = u_equation_residuals(&inp, &report.solution.k, &report.solution.u)
            .iter()
            .all(LinearForm::is_zero);
        let distinct = report.lines.len() == 28
            && (0..28).all(|a| (a + 1..28).all(|b| !report.lines[a].line.form.is_proportional_to(&report.lines[b].line.form)));
        let all_true = report.lines.iter().all(|l| l.tangency == Tangency::TrueBitangent);
        let triples = report.concurrent_triples.len();
        if residual_zero && distinct && all_true && triples == 0 {
            clean.push(seed);
        } else {
            notes.push(format!(
                "seed {seed}: residual_zero={residual_zero} distinct={distinct} all_true={all_true} concurrent={triples}"
            ));
        }
    }
    let detail = format!(
        "seeds {:?} fully general (28 distinct true bitangents, 0/3276 concurrent, 4th residual 0){}",
        clean,
        if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }
    );
    check(clean.len() >= REQUIRED_CLEAN_INPUTS, detail.clone())?;
    Ok(detail)
}

fn main() {
    let _ = basis();
    let criteria: [Criterion; 8] = [
        (1, "census fast suite", census_fast),
        (2, "census full suite", census_full),
        (3, "determinism across thread counts", determinism),
        (4, "lattice invariants", lattice_invariants),
        (5, "matroid axioms", matroid_axioms),
        (6, "signature classes vs matroid classes, r <= 5", lemma_small_r),
        (7, "dihedral criteria", dihedral_criteria),
        (8, "bitangents on sampled inputs", bitangents),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS [{id}] {name}: {detail} ({t:.1?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{id}] {name}: {why} ({t:.1?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
