//! Acceptance suite: one test per criterion, each ending with a PASS line.
//! Tolerances and ranges are pinned in code; timed criteria assert their
//! budgets.

use std::io::Write as _;
use std::process::{Command, Stdio};
use std::time::Instant;

use farey::analysis::{check_property, franel_statistic, franel_table, gap, gap_from_parts, order_index};
use farey::cycles::{cycle_set_for_denominator, s_initial, ResidueClassSet};
use farey::error::FareyError;
use farey::oracle::{naive_farey, naive_s_all, naive_twins, trial_division_is_prime, OracleConfig};
use farey::primes::{prime_stream, prime_stream_strict, twin_primes_report, twin_stream, FareySieve};
use farey::registry::CreationRegistry;
use farey::sequence::{generate, initial_sequence, FareyTriple, Sweep};
use farey::totient::{totient, totient_summatory};

#[test]
fn acceptance_01_sequence_correctness() {
    let start = Instant::now();
    let cfg = OracleConfig::default();

    let f2 = generate(2).unwrap();
    assert_eq!(f2, initial_sequence());
    assert_eq!(
        f2.entries(),
        &[
            FareyTriple { n: 0, d: 1, s: 1 },
            FareyTriple { n: 1, d: 2, s: 1 },
            FareyTriple { n: 1, d: 1, s: 0 }
        ]
    );

    for m in 1..=300u64 {
        let seq = generate(m).unwrap();
        let naive = naive_farey(m, &cfg).unwrap();
        assert_eq!(seq.len(), naive.len(), "length at m={}", m);
        for (got, want) in seq.fractions().zip(naive) {
            assert_eq!(got, want, "m={}", m);
        }
        assert_eq!(seq.len() as u64, totient_summatory(m).unwrap() + 1, "m={}", m);
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "budget exceeded: {:?}", elapsed);
    println!("acceptance 1 (sequence correctness, m <= 300, {:?}): PASS", elapsed);
}

#[test]
fn acceptance_02_triple_state_correctness() {
    let cfg = OracleConfig::default();
    let registry = CreationRegistry::build(150).unwrap();

    for m in 2..=150u64 {
        let seq = generate(m).unwrap();
        let scans = naive_s_all(m, &cfg).unwrap();
        assert_eq!(scans.len(), seq.len() - 1);
        for (t, (frac, s)) in seq.entries().iter().zip(&scans) {
            assert_eq!(t.fraction(), *frac, "m={}", m);
            assert_eq!(t.s, *s, "naive countdown at m={} f={}", m, frac);
        }
        for t in &seq.entries()[..seq.len() - 1] {
            let s_f = registry.get(&t.fraction()).unwrap().s_f;
            assert_eq!(t.s, t.d - (m - s_f) % t.d, "formula at m={} f={}", m, t.fraction());
        }
    }
    println!("acceptance 2 (triple-state vs naive scans and countdown formula, m <= 150): PASS");
}

#[test]
fn acceptance_03_created_fraction_counts() {
    let mut sweep = Sweep::to(2001).unwrap();
    let mut checked = 0u64;
    while let Some(state) = sweep.advance().unwrap() {
        if state.order < 2 {
            continue;
        }
        let m = state.order - 1; // created set of the transition out of order m
        let phi = totient(m + 1).unwrap();
        assert_eq!(state.created.len() as u64, phi, "|C_{}| != phi({})", m, m + 1);
        assert!(state.created.iter().all(|c| c.fraction().denominator() == m + 1));
        checked += 1;
    }
    assert_eq!(checked, 2000);
    println!("acceptance 3 (created counts equal the totient, m <= 2000): PASS");
}

#[test]
fn acceptance_04_properties_one_through_seven() {
    for m in 2..=200u64 {
        for id in 1..=7u8 {
            let report = check_property(id, m).unwrap();
            assert!(report.holds, "property {} failed at m={}: {:?}", id, m, report);
        }
    }
    println!("acceptance 4 (properties 1..7 hold, m in 2..=200): PASS");
}

#[test]
fn acceptance_05_gap_formula() {
    let registry = CreationRegistry::build(150).unwrap();
    let mut sweep = Sweep::to(150).unwrap();
    let mut pair_checks = 0u64;
    while let Some(state) = sweep.advance().unwrap() {
        let m = state.order;
        for pair in state.entries.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if a.d > 100 {
                continue;
            }
            let meta = registry.get(&a.fraction()).unwrap();
            let formula = gap_from_parts(meta.birth_order, meta.s_f, m).unwrap();
            let num = b.n as u128 * a.d as u128 - a.n as u128 * b.d as u128;
            let den = a.d as u128 * b.d as u128;
            assert_eq!(
                (num, den),
                (formula.numerator() as u128, formula.denominator() as u128),
                "m={} after {}",
                m,
                a.fraction()
            );
            pair_checks += 1;
        }
        // the CreatedFraction-shaped entry point, at each birth order
        if m <= 100 {
            for c in state.created {
                let i = c.i_f() as usize - 1;
                let succ = state.entries[i + 1];
                let formula = gap(c, m).unwrap();
                let num = succ.n as u128 * c.fraction().denominator() as u128
                    - c.fraction().numerator() as u128 * succ.d as u128;
                assert_eq!(num, formula.numerator() as u128);
                assert_eq!(
                    c.fraction().denominator() as u128 * succ.d as u128,
                    formula.denominator() as u128
                );
            }
        }
    }
    assert!(pair_checks > 100_000);
    println!("acceptance 5 (gap formula exact, denominators <= 100, m <= 150): PASS");
}

#[test]
fn acceptance_06_order_index() {
    let registry = CreationRegistry::build(120).unwrap();
    for m in 2..=120u64 {
        let seq = generate(m).unwrap();
        for (pos, f) in seq.fractions().enumerate() {
            assert_eq!(
                order_index(&f, m, &registry).unwrap(),
                pos as u64 + 1,
                "m={} f={}",
                m,
                f
            );
        }
    }
    println!("acceptance 6 (order index equals position, m in 2..=120): PASS");
}

#[test]
fn acceptance_07_franel_statistic() {
    assert!((franel_statistic(1).unwrap() - 0.25).abs() <= 1e-15);
    assert!((franel_statistic(2).unwrap() - 5.0 / 36.0).abs() <= 1e-15);

    // the table runs both index routes at every order and fails on any
    // disagreement beyond 1e-12 relative, so a clean run is the dual-path
    // criterion for every m <= 500
    let start = Instant::now();
    let rows = franel_table(500).unwrap();
    let mut csv = Vec::new();
    farey::io::write_franel_csv(&mut csv, &rows).unwrap();
    let elapsed = start.elapsed();

    assert_eq!(rows.len(), 500);
    assert!(rows.iter().all(|r| r.statistic.is_finite() && r.statistic >= 0.0));
    for m in [1u64, 2, 17, 300, 500] {
        let row = &rows[m as usize - 1];
        assert_eq!(row.order, m);
        assert_eq!(row.count, totient_summatory(m).unwrap() + 1);
    }
    assert_eq!(csv.iter().filter(|&&b| b == b'\n').count(), 501);
    assert!(elapsed.as_secs() < 120, "budget exceeded: {:?}", elapsed);
    println!(
        "acceptance 7 (Franel fixed points, dual-path m <= 500, CSV in {:?}): PASS",
        elapsed
    );
}

#[test]
fn acceptance_08_cycle_sets() {
    // exact membership against generated countdowns
    let mut sets: Vec<Vec<ResidueClassSet>> = Vec::with_capacity(61);
    sets.push(Vec::new());
    for d in 1..=60u64 {
        sets.push((1..=d).map(|c| cycle_set_for_denominator(d, c).unwrap()).collect());
    }
    let mut mismatches = 0u64;
    let mut sweep = Sweep::to(400).unwrap();
    while let Some(state) = sweep.advance().unwrap() {
        let m = state.order;
        let mut present = [[false; 61]; 61];
        for t in state.entries {
            if !t.is_terminal() && t.d <= 60 {
                present[t.d as usize][t.s as usize] = true;
            }
        }
        for d in 1..=60usize {
            for c in 1..=d {
                if sets[d][c - 1].contains(m) != present[d][c] {
                    mismatches += 1;
                }
            }
        }
    }
    assert_eq!(mismatches, 0);

    // fast initial-countdown path against every recorded creation
    let mut sweep = Sweep::to(2000).unwrap();
    let mut creations = 0u64;
    while let Some(state) = sweep.advance().unwrap() {
        for c in state.created {
            assert_eq!(
                s_initial(&c.fraction()).unwrap(),
                c.s_f(),
                "fast path diverges at {}",
                c.fraction()
            );
            creations += 1;
        }
    }
    assert_eq!(creations, totient_summatory(2000).unwrap() - 1);
    println!("acceptance 8 (cycle sets exact to m=400, fast s_f to d=2000): PASS");
}

#[test]
fn acceptance_09_primes() {
    let mut sieve = FareySieve::new();
    for p in 2..=10_000u64 {
        assert_eq!(sieve.is_prime(p), trial_division_is_prime(p), "p={}", p);
    }

    let stream = prime_stream(100).unwrap();
    let oracle: Vec<u64> = (3..).filter(|&n| trial_division_is_prime(n)).take(100).collect();
    assert_eq!(stream, oracle);
    assert_eq!(prime_stream_strict(100).unwrap(), stream);
    println!("acceptance 9 (prime sieve to 10^4, streams agree): PASS");
}

#[test]
fn acceptance_10_twins() {
    let mut sieve = FareySieve::new();
    for p in 3..=10_000u64 {
        let expected = trial_division_is_prime(p) && trial_division_is_prime(p + 2);
        assert_eq!(sieve.is_lesser_twin(p), expected, "p={}", p);
    }

    let stream = twin_stream(50).unwrap();
    let oracle = naive_twins(100_000);
    assert_eq!(stream.len(), 50);
    for (got, (p, q)) in stream.iter().zip(&oracle) {
        assert_eq!((got.p, got.q), (*p, *q));
    }

    for k_max in [1u64, 10, 100, 10_000] {
        match twin_primes_report(50, k_max) {
            Ok(pairs) => assert_eq!(pairs, stream, "k_max={}", k_max),
            Err(FareyError::TruncationExhausted { .. }) => {}
            Err(other) => panic!("k_max={}: unexpected error {:?}", k_max, other),
        }
    }
    assert_eq!(twin_primes_report(50, 10_000).unwrap(), stream);
    assert!(matches!(
        twin_primes_report(50, 1),
        Err(FareyError::TruncationExhausted { .. })
    ));
    println!("acceptance 10 (twin sieve to 10^4, stream and report agree): PASS");
}

fn run_cli(args: &[&str], stdin: Option<&[u8]>) -> (Vec<u8>, std::process::ExitStatus) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_farey"))
        .args(args)
        .stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("spawn farey binary");
    if let Some(input) = stdin {
        child.stdin.as_mut().unwrap().write_all(input).unwrap();
    }
    let output = child.wait_with_output().expect("collect output");
    (output.stdout, output.status)
}

#[test]
fn acceptance_11_cli_round_trip_and_selftest() {
    let (mut prev, status) = run_cli(&["gen", "--order", "1"], None);
    assert!(status.success());
    for m in 1..=100u64 {
        let (stepped, status) = run_cli(&["step"], Some(&prev));
        assert!(status.success(), "step failed at m={}", m);
        let (direct, status) = run_cli(&["gen", "--order", &(m + 1).to_string()], None);
        assert!(status.success());
        assert_eq!(stepped, direct, "pipe output differs from direct generation at m={}", m);
        prev = direct;
    }

    let (out, status) = run_cli(&["selftest", "--max-order", "120"], None);
    assert!(status.success(), "selftest exited nonzero");
    assert!(String::from_utf8_lossy(&out).contains("selftest passed"));
    println!("acceptance 11 (gen|step byte-identical to m=100, selftest exits 0): PASS");
}
