//! Acceptance suite: one test per exit criterion, each printing a single
//! `[PASS]` / `[FAIL]` line. Criteria run one at a time so the runtime
//! bounds are measured without interference.
//!
//! Run with `cargo test -p threegap-cli --test acceptance -- --nocapture`.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use threegap::gap::{CircleConfig, GapKind, Orbit, PointIndex};
use threegap::numeric::{frac_add, frac_sub, Angle, FieldValue};
use threegap::oracle::{brute_gaps, verify_config, Depth, SortedOrbit};
use threegap::GapError;

static SERIAL: Mutex<()> = Mutex::new(());

const N_MAX: usize = 512;
const THREE_GAP_BUDGET: Duration = Duration::from_secs(10);
const LEMMA_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_ANGLES: usize = 20;
const RANDOM_N_MAX: usize = 256;
const RATIONAL_Q_MAX: i64 = 64;
const IDENTITY_PAIRS: usize = 10_000;

fn sweep_angles() -> Vec<Angle> {
    vec![
        Angle::golden(),
        Angle::quadratic(-1, 1, 1, 2).unwrap(),
        Angle::quadratic(-1, 1, 1, 3).unwrap(),
        Angle::quadratic(-2, 1, 1, 7).unwrap(),
        Angle::quadratic(1, 1, 4, 13).unwrap(),
    ]
}

fn sweep() -> impl Iterator<Item = CircleConfig> {
    sweep_angles()
        .into_iter()
        .flat_map(|a| (2..=N_MAX).map(move |n| CircleConfig::new(a.clone(), n).unwrap()))
}

/// Prints the criterion line and fails the test on `Err`.
fn criterion(name: &str, run: impl FnOnce() -> Result<String, String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let outcome = run();
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("[PASS] {name}: {detail} ({secs:.2}s)"),
        Err(detail) => {
            println!("[FAIL] {name}: {detail} ({secs:.2}s)");
            panic!("criterion failed: {name}: {detail}");
        }
    }
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took < budget {
        Ok(())
    } else {
        Err(format!("took {took:?}, budget {budget:?}"))
    }
}

#[test]
fn three_gap_bound() {
    criterion("three-gap bound", || {
        let start = Instant::now();
        let mut configs = 0;
        for cfg in sweep() {
            let gaps = brute_gaps(&cfg).map_err(|e| e.to_string())?;
            if gaps.len() > 3 {
                return Err(format!("{} N={}: {} lengths", cfg.alpha(), cfg.n_points(), gaps.len()));
            }
            configs += 1;
        }
        within(THREE_GAP_BUDGET, start)?;
        Ok(format!("{configs} configs, at most 3 distinct lengths each"))
    });
}

#[test]
fn census_exactness() {
    criterion("census exactness", || {
        let mut configs = 0;
        for cfg in sweep() {
            let n = cfg.n_points();
            let orbit = Orbit::new(&cfg);
            let report = orbit.census(false).map_err(|e| e.to_string())?;
            let (first, last) = (report.first.unwrap(), report.last.unwrap());
            let expected_counts = [
                (GapKind::FirstGap, n - first),
                (GapKind::LastGap, n - last),
                (GapKind::CombinedGap, first + last - n),
            ];
            let got: Vec<(GapKind, usize)> = report.classes.iter().map(|c| (c.kind, c.count)).collect();
            let want: Vec<(GapKind, usize)> =
                expected_counts.into_iter().filter(|&(_, c)| c > 0).collect();
            if got != want {
                return Err(format!("{} N={n}: counts {got:?}, expected {want:?}", cfg.alpha()));
            }
            let mut census: Vec<(FieldValue, usize)> =
                report.classes.iter().map(|c| (c.length.clone(), c.count)).collect();
            census.sort_by(|x, y| x.0.compare(&y.0).unwrap());
            let brute = brute_gaps(&cfg).map_err(|e| e.to_string())?;
            if census != brute {
                return Err(format!("{} N={n}: census {census:?} vs orbit {brute:?}", cfg.alpha()));
            }
            if report.total_length().compare(&FieldValue::one()).unwrap() != Ordering::Equal {
                return Err(format!("{} N={n}: lengths sum to {}", cfg.alpha(), report.total_length()));
            }
            configs += 1;
        }
        Ok(format!("{configs} configs exact, counts N-first/N-last/first+last-N, sum = 1"))
    });
}

fn random_quadratic(rng: &mut ChaCha8Rng) -> Angle {
    const SQUAREFREE: [i64; 30] = [
        2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30, 31, 33, 34, 35, 37,
        38, 39, 41, 42, 43, 46, 47,
    ];
    let a = rng.gen_range(-1000..=1000);
    let b = rng.gen_range(1..=1000) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let c = rng.gen_range(1..=1000);
    let d = SQUAREFREE[rng.gen_range(0..SQUAREFREE.len())];
    Angle::quadratic(a, b, c, d).unwrap()
}

fn successors_agree(cfg: &CircleConfig) -> Result<(), String> {
    let orbit = Orbit::new(cfg);
    let closed = orbit.after_table().map_err(|e| e.to_string())?;
    let brute = SortedOrbit::new(cfg).map_err(|e| e.to_string())?.successors();
    for m in 0..cfg.n_points() {
        let inductive = orbit.after_inductive(PointIndex(m)).map_err(|e| e.to_string())?;
        if closed.successor[m] != inductive || inductive != brute[m] {
            return Err(format!(
                "{} N={} m={m}: closed {} inductive {inductive} sorted {}",
                cfg.alpha(),
                cfg.n_points(),
                closed.successor[m],
                brute[m]
            ));
        }
    }
    Ok(())
}

#[test]
fn successor_equivalence() {
    criterion("successor equivalence", || {
        let mut configs = 0;
        for cfg in sweep() {
            successors_agree(&cfg)?;
            configs += 1;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x3_9a9);
        for _ in 0..RANDOM_ANGLES {
            let alpha = random_quadratic(&mut rng);
            for n in 2..=RANDOM_N_MAX {
                successors_agree(&CircleConfig::new(alpha.clone(), n).unwrap())?;
                configs += 1;
            }
        }
        Ok(format!("{configs} configs, zero disagreements"))
    });
}

#[test]
fn lemma_suite() {
    criterion("lemma suite", || {
        let start = Instant::now();
        let mut configs = 0;
        let mut checks = 0;
        for cfg in sweep() {
            let report = verify_config(&cfg, Depth::Lemmas).map_err(|e| e.to_string())?;
            if let Some(f) = report.first_failure() {
                return Err(format!(
                    "{} N={}: {} {}",
                    cfg.alpha(),
                    cfg.n_points(),
                    f.check,
                    f.witness.clone().unwrap_or_default()
                ));
            }
            configs += 1;
            checks += report.checks.len();
        }
        within(LEMMA_BUDGET, start)?;
        Ok(format!("{configs} configs, {checks} checks passed"))
    });
}

#[test]
fn rational_case() {
    criterion("rational case", || {
        let mut full_cycles = 0;
        let mut below_q = 0;
        let mut violations = Vec::new();
        for q in 1..=RATIONAL_Q_MAX {
            for p in 0..q {
                if num_integer::Integer::gcd(&p, &q) != 1 {
                    continue;
                }
                let alpha = Angle::rational(p, q).unwrap();
                let at_q = Orbit::new(&CircleConfig::new(alpha.clone(), q as usize).unwrap())
                    .census(false)
                    .map_err(|e| e.to_string())?;
                let one_over_q = FieldValue::rational(1, q).unwrap();
                if at_q.classes.len() != 1 || at_q.classes[0].length != one_over_q {
                    return Err(format!("{p}/{q} N=q: {:?}", at_q.classes));
                }
                full_cycles += 1;
                match CircleConfig::new(alpha.clone(), q as usize + 1) {
                    Err(GapError::PointCollision { .. }) => {}
                    other => return Err(format!("{p}/{q} N=q+1: expected collision, got {other:?}")),
                }
                for n in 2..q as usize {
                    let report = Orbit::new(&CircleConfig::new(alpha.clone(), n).unwrap())
                        .census(false)
                        .map_err(|e| e.to_string())?;
                    below_q += 1;
                    if report.classes.len() > 2 {
                        violations.push(format!("{p}/{q} N={n}"));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(format!("{full_cycles} angles: N=q one class 1/q, {below_q} cells N<q with <= 2 classes, N>q collides"))
        } else {
            Err(format!(
                "N=q and N>q hold for all {full_cycles} angles, but {} of {below_q} cells with 2 <= N < q have 3 classes (first: {})",
                violations.len(),
                violations[0]
            ))
        }
    });
}

fn random_unit(rng: &mut ChaCha8Rng, d: i64) -> FieldValue {
    if d == 0 {
        let q = rng.gen_range(1..=1_000_000i64);
        FieldValue::rational(rng.gen_range(0..q), q).unwrap()
    } else {
        FieldValue::new(
            rng.gen_range(-1_000_000..=1_000_000i64),
            rng.gen_range(-1_000_000..=1_000_000i64),
            rng.gen_range(1..=1_000_000i64),
            d,
        )
        .unwrap()
        .fract()
    }
}

/// `v - E(v)` built directly from the floor.
fn direct_fract(v: &FieldValue) -> FieldValue {
    v.try_sub(&FieldValue::rational(v.floor(), BigInt::from(1)).unwrap()).unwrap()
}

#[test]
fn fractional_part_identities() {
    criterion("fractional-part identities", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xf4ac);
        let one = FieldValue::one();
        // [add carry, add no carry, sub no borrow, sub borrow] per field kind
        let mut counts = [[0usize; 4]; 2];
        let mut failures = 0;
        let mut first_failure = None;
        let mut round = 0u64;
        while counts.iter().flatten().any(|&c| c < IDENTITY_PAIRS) {
            round += 1;
            let kind = (round % 2) as usize;
            let d = if kind == 0 { 0 } else { [2, 3, 5, 7, 13][rng.gen_range(0..5)] };
            let (r1, r2) = (random_unit(&mut rng, d), random_unit(&mut rng, d));

            let sum = r1.try_add(&r2).unwrap();
            let carry = sum.compare(&one).unwrap() != Ordering::Less;
            let expected = if carry { sum.try_sub(&one).unwrap() } else { sum.clone() };
            let direct = direct_fract(&sum);
            let lib = frac_add(&r1, &r2).unwrap();
            if direct.compare(&expected).unwrap() != Ordering::Equal
                || lib.compare(&direct).unwrap() != Ordering::Equal
            {
                failures += 1;
                first_failure.get_or_insert(format!("add {r1} {r2}"));
            }
            counts[kind][if carry { 0 } else { 1 }] += 1;

            let diff = r1.try_sub(&r2).unwrap();
            let no_borrow = r1.compare(&r2).unwrap() != Ordering::Less;
            let expected = if no_borrow { diff.clone() } else { diff.try_add(&one).unwrap() };
            let direct = direct_fract(&diff);
            let lib = frac_sub(&r1, &r2).unwrap();
            if direct.compare(&expected).unwrap() != Ordering::Equal
                || lib.compare(&direct).unwrap() != Ordering::Equal
            {
                failures += 1;
                first_failure.get_or_insert(format!("sub {r1} {r2}"));
            }
            counts[kind][if no_borrow { 2 } else { 3 }] += 1;
        }
        if failures > 0 {
            return Err(format!("{failures} failures, first {}", first_failure.unwrap()));
        }
        Ok(format!("per identity (rational, quadratic): {:?}, zero failures", counts))
    });
}

#[test]
fn fibonacci_spot_check() {
    criterion("fibonacci spot-check", || {
        let census = |n| {
            Orbit::new(&CircleConfig::new(Angle::golden(), n).unwrap())
                .census(false)
                .unwrap()
        };
        let r12 = census(12);
        let counts12: Vec<usize> = r12.classes.iter().map(|c| c.count).collect();
        let got12 = (r12.first, r12.last, r12.m_total, counts12.clone());
        if got12 != (Some(5), Some(8), Some(13), vec![7, 4, 1]) {
            return Err(format!("golden N=12: {got12:?}"));
        }
        let r5 = census(5);
        let counts5: Vec<usize> = r5.classes.iter().map(|c| c.count).collect();
        let got5 = (r5.first, r5.last, counts5);
        if got5 != (Some(2), Some(3), vec![3, 2]) {
            return Err(format!("golden N=5: {got5:?}"));
        }
        // Cross-check against the sorted orbit.
        for (n, want) in [(12, vec![4, 7, 1]), (5, vec![2, 3])] {
            let cfg = CircleConfig::new(Angle::golden(), n).unwrap();
            let brute: Vec<usize> = brute_gaps(&cfg).unwrap().into_iter().map(|(_, c)| c).collect();
            if brute != want {
                return Err(format!("golden N={n}: sorted-orbit counts {brute:?}"));
            }
        }
        Ok("golden N=12: first 5, last 8, M 13, 7/4/1; N=5: first 2, last 3, 3/2".into())
    });
}

fn digest(text: &str) -> u64 {
    let mut h = DefaultHasher::new();
    text.hash(&mut h);
    h.finish()
}

fn sweep_outputs(jobs: usize) -> Result<Vec<(u64, u64)>, String> {
    let jobs = jobs.to_string();
    sweep()
        .map(|cfg| {
            let alpha = cfg.alpha().to_string();
            let n = cfg.n_points().to_string();
            let gaps = threegap_cli::run([
                "threegap", "--jobs", &jobs, "gaps", "--alpha", &alpha, "--n", &n, "--format", "json",
            ]);
            let svg = threegap_cli::run(["threegap", "--jobs", &jobs, "render", "--alpha", &alpha, "--n", &n]);
            if gaps.code != 0 || svg.code != 0 {
                return Err(format!("{alpha} N={n}: exit {} / {}", gaps.code, svg.code));
            }
            Ok((digest(&gaps.stdout), digest(&svg.stdout)))
        })
        .collect()
}

#[test]
fn determinism() {
    criterion("determinism", || {
        let single = sweep_outputs(1)?;
        let single_again = sweep_outputs(1)?;
        let eight = sweep_outputs(8)?;
        if single != single_again {
            return Err("two --jobs 1 runs differ".into());
        }
        if single != eight {
            let at = single.iter().zip(&eight).position(|(a, b)| a != b).unwrap();
            return Err(format!("--jobs 1 and --jobs 8 differ at sweep cell {at}"));
        }

        // Separate processes, through files.
        let exe = env!("CARGO_BIN_EXE_threegap");
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        for (n, jobs) in [(12, "1"), (12, "8"), (512, "1"), (512, "8")] {
            let out = dir.path().join(format!("g{n}-{jobs}.svg"));
            let status = std::process::Command::new(exe)
                .args(["--jobs", jobs, "render", "--alpha", "golden", "--n", &n.to_string(), "--out"])
                .arg(&out)
                .status()
                .map_err(|e| e.to_string())?;
            if !status.success() {
                return Err(format!("render N={n} exited with {status}"));
            }
        }
        for n in [12, 512] {
            let a = std::fs::read(dir.path().join(format!("g{n}-1.svg"))).unwrap();
            let b = std::fs::read(dir.path().join(format!("g{n}-8.svg"))).unwrap();
            if a != b {
                return Err(format!("render N={n} differs between processes"));
            }
        }
        Ok(format!("{} configs x (gaps json, render) identical across runs and --jobs 1/8", single.len()))
    });
}
