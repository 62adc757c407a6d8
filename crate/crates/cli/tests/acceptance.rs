//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criteria 5 and 6 fail on the mathematics itself; see `KNOWN_FAILURES`.
//! The process exits nonzero only when an outcome differs from the
//! expectation recorded there, so regressions in either direction show up.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fermat_adjoint_core::arith::{binomial, is_prime, primes_up_to};
use fermat_adjoint_core::lemmas::delta_identity_tally;
use fermat_adjoint_core::search::DEFAULT_SEARCH_CAP;
use fermat_adjoint_core::sections::{count_by_character, DEFAULT_ENUMERATION_CAP};
use fermat_adjoint_core::{
    count_basis, enumerate_basis, invariance_exponent_check, jet_matrix, resolve_sign_convention,
    search, separation_report, theorem1_check, CoordinatePoint, Error, LinearizedSystem,
    QuotientConfig,
};
use serde_json::Value;

/// Criteria whose failure is a finding about the claims, not a defect.
/// 5: `Σ_{k≠i}(k−i) = p(p−1)/2 − p·i` is odd for p = 2.
/// 6: with n = 2 every congruence tuple has its base point on the `k_0`
///    coordinate, where no jet column of `K + 3D'` vanishes.
const KNOWN_FAILURES: [u32; 2] = [5, 6];

const CRITERION_1_LIMIT: Duration = Duration::from_secs(1);
const CRITERION_2_LIMIT: Duration = Duration::from_secs(60);
const CRITERION_3_LIMIT: Duration = Duration::from_secs(60);

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fermat-adjoint"))
        .args(args)
        .output()
        .expect("run fermat-adjoint")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = cli(&["--json", "theorem1", "--p", "5", "--j", "0"]);
    let elapsed = start.elapsed();
    let doc: Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => return outcome(false, format!("unparseable output: {e}")),
    };
    let supports = doc["base_supports"].clone();
    let want = serde_json::json!([[1, 4], [2, 3]]);
    let pass = out.status.code() == Some(0)
        && supports == want
        && doc["exact_match"] == Value::Bool(true)
        && doc["base_point_count"] == 2
        && elapsed < CRITERION_1_LIMIT;
    outcome(
        pass,
        format!(
            "base supports {supports}, exact_match {}, exit {:?}, {:.3}s (limit {}s)",
            doc["exact_match"],
            out.status.code(),
            elapsed.as_secs_f64(),
            CRITERION_1_LIMIT.as_secs()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for p in [5u32, 7, 11, 13] {
        for j in 0..p as i64 {
            checked += 1;
            let r = theorem1_check(p, j).expect("theorem1_check");
            let large = r.base_supports.iter().filter(|s| s.len() >= 3).count();
            if r.pair_base_points.len() != (p as usize - 1) / 2 || large > 0 || !r.exact_match {
                bad.push(format!("p={p} j={j}"));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < CRITERION_2_LIMIT,
        format!(
            "{checked} (p, j) cases, {} with wrong count or a support of size >= 3 {:?}, {:.2}s (limit {}s)",
            bad.len(),
            bad,
            elapsed.as_secs_f64(),
            CRITERION_2_LIMIT.as_secs()
        ),
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (mut checked, mut degenerate) = (0, 0);
    let mut bad = Vec::new();
    for p in [5u32, 7, 11] {
        let config = QuotientConfig::fundamental(p).unwrap();
        let v = config.num_vars();
        for j in 0..p as i64 {
            let sys = LinearizedSystem::on_config(&config, p - 1, j);
            let basis = enumerate_basis(&sys, DEFAULT_ENUMERATION_CAP).unwrap();
            for a in 0..v {
                for b in a + 1..v {
                    let c = (j as usize + a + b) % p as usize;
                    let pt = CoordinatePoint::new(a, b, v).unwrap();
                    let jm = jet_matrix(&basis, pt).unwrap();
                    let rank = jm.matrix.rank_fraction_free().unwrap();
                    let deficiency = jm.matrix.cols() - rank;
                    let report = separation_report(&basis, pt).unwrap();
                    if c == a || c == b {
                        degenerate += 1;
                        continue;
                    }
                    checked += 1;
                    let ok = jm.zero_directions() == [c]
                        && deficiency == 1
                        && report.deficiency == 1
                        && !jm.value_column_is_zero();
                    if !ok {
                        bad.push(format!("p={p} j={j} ({a},{b})"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < CRITERION_3_LIMIT,
        format!(
            "{checked} points with c = j+a+b outside {{a,b}} ({degenerate} degenerate skipped), {} failures {:?}, {:.2}s (limit {}s)",
            bad.len(),
            bad.iter().take(5).collect::<Vec<_>>(),
            elapsed.as_secs_f64(),
            CRITERION_3_LIMIT.as_secs()
        ),
    )
}

/// Enumeration is run where the raw monomial count is at most this.
const ENUMERATION_LIMIT: u128 = 20_000;

fn criterion_4() -> Outcome {
    let (mut configs, mut sums, mut enumerated) = (0u64, 0u64, 0u64);
    let mut bad = Vec::new();
    for p in [5u32, 7, 11, 13] {
        for mask in 0u32..1 << p {
            let len = mask.count_ones();
            if !(4..=13).contains(&len) {
                continue;
            }
            let weights: Vec<u32> = (0..p).filter(|i| mask >> i & 1 == 1).collect();
            let config = QuotientConfig::new(p, len - 2, &weights).unwrap();
            configs += 1;
            let v = config.num_vars() as u64;
            for d in 0..=6u32 {
                let raw = binomial(d as u64 + v - 1, v - 1).unwrap();
                let per_c: Vec<u128> = (0..p)
                    .map(|c| {
                        count_basis(&LinearizedSystem::on_config(&config, d, c as i64)).unwrap()
                    })
                    .collect();
                sums += 1;
                if per_c.iter().sum::<u128>() != raw
                    || per_c != count_by_character(config.weights(), d, p).unwrap()
                {
                    bad.push(format!("{config} d={d} sum"));
                }
                if raw <= ENUMERATION_LIMIT {
                    for (c, &want) in per_c.iter().enumerate() {
                        let sys = LinearizedSystem::on_config(&config, d, c as i64);
                        let got = enumerate_basis(&sys, DEFAULT_ENUMERATION_CAP)
                            .unwrap()
                            .len();
                        enumerated += 1;
                        if got as u128 != want {
                            bad.push(format!("{config} d={d} c={c} enumerate"));
                        }
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{configs} configs, {sums} (config, d) sums, {enumerated} enumerations, {} mismatches {:?}",
            bad.len(),
            bad.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn criterion_5() -> Outcome {
    let tally = delta_identity_tally(30);
    let delta_ok =
        tally.triples == 24360 && tally.parity_failures == 0 && tally.table_failures == 0;
    let primes: Vec<u32> = primes_up_to(101).map(|p| p as u32).collect();
    let failing: Vec<u32> = primes
        .iter()
        .copied()
        .filter(|&p| !invariance_exponent_check(p))
        .collect();
    outcome(
        delta_ok && failing.is_empty(),
        format!(
            "delta identity: {} triples, {} failures; invariance exponent: {} primes <= 101, failing at {:?}",
            tally.triples,
            tally.parity_failures + tally.table_failures,
            primes.len(),
            failing
        ),
    )
}

fn criterion_6() -> Outcome {
    const CASES: [(u32, u32); 5] = [(2, 5), (2, 7), (3, 7), (2, 11), (3, 11)];
    let mut notes = Vec::new();
    let mut any_tuple = false;
    let mut all_verified = true;
    let mut signs = Vec::new();
    for (n, p) in CASES {
        let sign = match resolve_sign_convention(n, p) {
            Ok(r) => {
                signs.push(Some(r.resolved_sign));
                r.resolved_sign
            }
            Err(e) => {
                signs.push(None);
                notes.push(format!("n={n} p={p}: resolution {e}"));
                continue;
            }
        };
        match search(n, p, sign, DEFAULT_SEARCH_CAP) {
            Ok(r) => {
                let failed = r.tuples.iter().filter(|t| !t.verified()).count();
                any_tuple |= !r.tuples.is_empty();
                all_verified &= failed == 0;
                notes.push(format!(
                    "n={n} p={p}: {} tuples, {failed} without a vanishing jet column at a claimed base point",
                    r.tuples.len()
                ));
            }
            Err(Error::SearchTooLarge { count, cap }) => {
                all_verified = false;
                notes.push(format!("n={n} p={p}: {count} tuples exceed cap {cap}"));
            }
            Err(e) => panic!("search n={n} p={p}: {e}"),
        }
    }
    let consistent = signs.iter().all(Option::is_some) && signs.windows(2).all(|w| w[0] == w[1]);
    outcome(
        any_tuple && all_verified && consistent,
        format!(
            "sign consistent: {consistent} ({}); {}",
            signs
                .iter()
                .map(|s| s.map_or("none".to_string(), |s| s.to_string()))
                .collect::<Vec<_>>()
                .join(","),
            notes.join("; ")
        ),
    )
}

fn criterion_7() -> Outcome {
    // The symbolic-differentiation and prime-field oracles live in the core
    // crate's `oracles` test target; this repeats both at acceptance scale.
    let mut entries = 0u64;
    let mut bad = 0u64;
    for p in [5u32, 7] {
        let config = QuotientConfig::fundamental(p).unwrap();
        let v = config.num_vars();
        for d in [p - 2, p - 1] {
            for c in 0..p as i64 {
                let sys = LinearizedSystem::on_config(&config, d, c);
                let basis = enumerate_basis(&sys, DEFAULT_ENUMERATION_CAP).unwrap();
                for a in 0..v {
                    for b in a + 1..v {
                        let jm =
                            jet_matrix(&basis, CoordinatePoint::new(a, b, v).unwrap()).unwrap();
                        for (r, m) in basis.monomials().iter().enumerate() {
                            let row = jm.matrix.row(r);
                            let e = m.exponents();
                            // ξ_a = 1, ξ_b = -1, the rest 0; ∂/∂ξ_c by the power rule
                            let eval = |skip: Option<usize>| -> i64 {
                                (0..v)
                                    .map(|i| {
                                        let k = e[i] - u32::from(Some(i) == skip);
                                        let x: i64 = if i == a {
                                            1
                                        } else if i == b {
                                            -1
                                        } else {
                                            0
                                        };
                                        x.pow(k)
                                    })
                                    .product()
                            };
                            entries += 1 + jm.directions.len() as u64;
                            if row[0] != eval(None) {
                                bad += 1;
                            }
                            for (i, &dir) in jm.directions.iter().enumerate() {
                                let want = if e[dir] == 0 {
                                    0
                                } else {
                                    e[dir] as i64 * eval(Some(dir))
                                };
                                if row[1 + i] != want {
                                    bad += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let ranks = rank_agreement(1000);
    outcome(
        bad == 0 && ranks == 1000,
        format!(
            "{entries} jet entries, {bad} mismatches; {ranks}/1000 random ranks agree over F_q"
        ),
    )
}

/// Fraction-free rank against Gaussian elimination mod a large prime on
/// seeded random matrices with entries in [-9, 9] and at most 6 columns.
fn rank_agreement(samples: usize) -> usize {
    use rand::{Rng, SeedableRng};
    const Q: i64 = 1_000_000_007;
    assert!(is_prime(Q as u64));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut agree = 0;
    for _ in 0..samples {
        let (rows, cols) = (rng.random_range(1..=8usize), rng.random_range(1..=6usize));
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        if rng.random_bool(0.3) {
                            0
                        } else {
                            rng.random_range(-9..=9)
                        }
                    })
                    .collect()
            })
            .collect();
        let exact = fermat_adjoint_core::IntegerMatrix::from_rows(&data)
            .rank_fraction_free()
            .unwrap();
        let mut m: Vec<Vec<i64>> = data
            .iter()
            .map(|r| r.iter().map(|x| x.rem_euclid(Q)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = modpow(m[rank][col], Q - 2, Q);
            let pivot = m[rank].clone();
            for row in &mut m[rank + 1..] {
                let f = row[col] * inv % Q;
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(Q);
                }
            }
            rank += 1;
        }
        agree += usize::from(rank == exact);
    }
    agree
}

fn modpow(mut b: i64, mut e: i64, q: i64) -> i64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

fn criterion_8() -> Outcome {
    let commands: [&[&str]; 12] = [
        &["validate", "--p", "7", "--weights", "0,1,3,5"],
        &["basis", "--p", "7", "--d", "5", "--c", "2"],
        &["count", "--p", "11", "--d", "6"],
        &["baselocus", "--p", "11", "--d", "9", "--c", "4"],
        &["jets", "--p", "7", "--d", "6", "--c", "2"],
        &["theorem1", "--p", "7"],
        &["--json", "theorem1", "--p", "5"],
        &["theorem2", "--p", "7", "--weights", "0,1,2,5"],
        &["--json", "theorem2", "--p", "11", "--weights", "0,1,2,3,7"],
        &["search", "--n", "3", "--p", "7"],
        &["--tsv", "search", "--n", "2", "--p", "7"],
        &["--json", "lemmas"],
    ];
    let mut differing = Vec::new();
    for args in commands {
        let first = cli(args);
        let second = cli(args);
        if first.stdout != second.stdout
            || first.status.code() != second.status.code()
            || first.stdout.is_empty()
        {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} commands run twice, differing: {:?}",
            commands.len(),
            differing
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, "p = 5 untwisted base locus", criterion_1),
        (2, "base locus sweep", criterion_2),
        (3, "tangent separation sweep", criterion_3),
        (4, "dimension identity", criterion_4),
        (5, "identity kernels", criterion_5),
        (6, "congruence search end to end", criterion_6),
        (7, "cross-oracle agreement", criterion_7),
        (8, "determinism", criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        let expected_fail = KNOWN_FAILURES.contains(&id);
        let tag = match (o.pass, expected_fail) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id} [{name}]: {tag}: {}", o.detail);
        if o.pass == expected_fail {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected (known failures: {KNOWN_FAILURES:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
