//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime. Run with `cargo test --test acceptance -- --nocapture` to
//! see the lines.

use std::time::Instant;

use phigcd::arith::{factorize, phi_block, sieve_primes, stream_primes};
use phigcd::asympt::{
    a_coeff, b_coeff, euler_gamma, gamma_laurent_f, log_iter, series_exp, zeta, PredictionSettings,
    Predictor, SeriesExpansion,
};
use phigcd::multiplicative::MultiplicativeSpec;
use phigcd::report::{compare, write_compare_csv, ComparisonRow, RunConfig};
use phigcd::scan::{count_phi_divisibility_multi, s_direct, s_inversion, Kahan, ScanConfig};
use phigcd::verify::SplitMix64;

const SEED: u64 = 0x7061706572;

fn report(criterion: &str, started: Instant, budget_s: u64) {
    let elapsed = started.elapsed().as_secs_f64();
    println!("PASS {criterion} ({elapsed:.1}s, budget {budget_s}s)");
    assert!(
        elapsed < budget_s as f64,
        "{criterion} exceeded its {budget_s}s budget: {elapsed:.1}s"
    );
}

/// Trial-division Euler phi, independent of the library sieve.
fn trial_phi(n: u64) -> u64 {
    let mut rem = n;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= rem {
        if rem.is_multiple_of(p) {
            let mut pe = 1u64;
            while rem.is_multiple_of(p) {
                rem /= p;
                pe *= p;
            }
            phi *= pe / p * (p - 1);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        phi *= rem - 1;
    }
    phi
}

#[test]
fn criterion_01_inversion_identity() {
    let started = Instant::now();
    let table = sieve_primes(1_000).unwrap();
    let cfg = ScanConfig::default();
    for name in ["mu", "tau", "two-squares", "rpower:2", "rfree:2"] {
        let spec = MultiplicativeSpec::builtin(name).unwrap();
        for x in [1_000u64, 10_000] {
            let direct = s_direct(&spec, x, &table, &cfg).unwrap().value;
            let inverted = s_inversion(&spec, x, &table).unwrap().value;
            assert_eq!(direct, inverted, "spec {name} at x = {x}");
        }
    }
    report("criterion 01 inversion identity", started, 60);
}

#[test]
fn criterion_02_sieve_correctness() {
    let started = Instant::now();
    let table = sieve_primes(40_000).unwrap();
    let block = phi_block(1, 100_001, &table).unwrap();
    for (n, v) in block.iter() {
        assert_eq!(v, trial_phi(n), "phi({n})");
    }
    let mut rng = SplitMix64::new(SEED);
    for _ in 0..1_000 {
        let n = 1_000_000_000 + rng.in_range(1_000_000);
        let v = phi_block(n, n + 1, &table).unwrap().phi(n);
        assert_eq!(v, trial_phi(n), "phi({n})");
    }
    report("criterion 02 sieve correctness", started, 30);
}

#[test]
fn criterion_03_phi_divisibility_property() {
    let started = Instant::now();
    let table = sieve_primes(400).unwrap();
    let mut rng = SplitMix64::new(SEED ^ 0xabcd);
    for _ in 0..10_000 {
        let a = rng.in_range(100_000);
        let b = rng.in_range(100_000);
        let fa = factorize(a, &table).unwrap();
        let fb = factorize(b, &table).unwrap();
        // phi(ab) from the merged factorization
        let mut merged: Vec<(u64, u32)> = fa.factors().to_vec();
        for &(p, e) in fb.factors() {
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, me)) => *me += e,
                None => merged.push((p, e)),
            }
        }
        let phi_ab: u64 = merged
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product();
        assert_eq!(
            phi_ab % fa.phi(),
            0,
            "phi({a}) does not divide phi({a}*{b})"
        );
    }
    report("criterion 03 phi(a) | phi(ab)", started, 60);
}

/// E_1(1) by its convergent series, with gamma from the Brent-McMillan
/// routine: an oracle independent of the quadrature path.
fn exponential_integral_one() -> f64 {
    let mut sum = 0.0f64;
    let mut kfact = 1.0f64;
    for k in 1..=30u32 {
        kfact *= k as f64;
        let term = 1.0 / (k as f64 * kfact);
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum - euler_gamma()
}

#[test]
fn criterion_04_coefficient_identities() {
    let started = Instant::now();
    let settings = PredictionSettings::default();
    let a0 = a_coeff(0, &settings).unwrap();
    let b0 = b_coeff(0, &settings).unwrap();
    assert!(
        (b0 - a0 - euler_gamma()).abs() <= 1e-6,
        "b0 - a0 = {} vs gamma",
        b0 - a0
    );
    for k in 1..=4u32 {
        let diff = b_coeff(k, &settings).unwrap() - a_coeff(k, &settings).unwrap();
        let f = gamma_laurent_f(k, &settings).unwrap();
        assert!(
            (diff - f).abs() <= 1e-5,
            "k = {k}: b-a = {diff} vs F^(k)(0) = {f}"
        );
    }
    assert!(
        (a0 - exponential_integral_one()).abs() <= 1e-8,
        "a0 = {a0} vs E1(1) oracle"
    );
    report("criterion 04 coefficient identities", started, 10);
}

#[test]
fn criterion_05_constants() {
    let started = Instant::now();
    let z2 = zeta(2).unwrap().value;
    let expect = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    assert!((z2 - expect).abs() <= 1e-10, "zeta(2) = {z2}");

    let predictor = Predictor::new(PredictionSettings::default()).unwrap();
    let c = predictor.mertens_constant().unwrap().value;
    // oracle: direct prime-harmonic sum at 1e8
    let mut sum = Kahan::default();
    stream_primes(100_000_000, |p| sum.add(1.0 / p as f64)).unwrap();
    let oracle = sum.value() - log_iter(1e8, 2).unwrap();
    assert!(
        (c - oracle).abs() <= 1e-3,
        "mertens c = {c} vs prime-sum oracle {oracle}"
    );

    let b_lo = predictor.landau_ramanujan_at(1_000_000).unwrap().value;
    let b_hi = predictor.landau_ramanujan_at(10_000_000).unwrap().value;
    assert!(
        (b_lo - b_hi).abs() <= 1e-6,
        "B cutoff drift {}",
        b_lo - b_hi
    );
    assert!(b_hi > 0.70 && b_hi < 0.80, "B = {b_hi}");
    report("criterion 05 constants", started, 300);
}

#[test]
fn criterion_06_divisibility_predictions() {
    let started = Instant::now();
    let x = 10_000_000u64;
    let table = sieve_primes(4_000).unwrap();
    let cfg = ScanConfig::with_workers(2);
    let counts = count_phi_divisibility_multi(&[5, 7, 35], x, &table, &cfg).unwrap();
    // cross-check against an independently computed (numpy phi sieve) oracle
    let oracle = [
        (5_619_848u64, 4_380_152u64),
        (7_312_368, 2_687_632),
        (4_147_682, 1_215_466),
    ];
    let settings = PredictionSettings {
        prime_cutoff: 1_000_000,
        ..Default::default()
    };
    let predictor = Predictor::new(settings).unwrap();
    let small = sieve_primes(100).unwrap();
    for (c, &(cop_oracle, div_oracle)) in counts.iter().zip(&oracle) {
        assert_eq!(c.coprime, cop_oracle, "coprime count d={}", c.d);
        assert_eq!(c.divisible, div_oracle, "divisible count d={}", c.d);
        let d = factorize(c.d, &small).unwrap();
        let cop_ratio =
            c.coprime as f64 / predictor.predict_phi_coprime(&d, x as f64).unwrap().value;
        let div_ratio =
            c.divisible as f64 / predictor.predict_phi_divisible(&d, x as f64).unwrap().value;
        assert!(
            (0.5..=1.5).contains(&cop_ratio),
            "coprime ratio d={} is {cop_ratio}",
            c.d
        );
        assert!(
            (0.5..=1.5).contains(&div_ratio),
            "divisible ratio d={} is {div_ratio}",
            c.d
        );
    }
    report("criterion 06 divisibility predictions", started, 120);
}

#[test]
fn criterion_07_p_divides_phi_bound() {
    let started = Instant::now();
    let x = 10_000_000u64;
    let table = sieve_primes(4_000).unwrap();
    let cfg = ScanConfig::with_workers(2);
    let counts = count_phi_divisibility_multi(&[101, 1009], x, &table, &cfg).unwrap();
    assert_eq!(counts[0].divisible, 107_452); // numpy cross-check
    assert_eq!(counts[1].divisible, 6_159);
    let y = log_iter(x as f64, 2).unwrap();
    for c in &counts {
        let bound = 10.0 * x as f64 * y / c.d as f64;
        assert!(
            (c.divisible as f64) <= bound,
            "count {} exceeds bound {bound} at p = {}",
            c.divisible,
            c.d
        );
    }
    report("criterion 07 p | phi(n) upper bound", started, 120);
}

fn golden_config(spec: &str, workers: usize) -> RunConfig {
    RunConfig {
        spec: spec.to_string(),
        x_grid: vec![100_000_000],
        k_order: 4,
        tol: 1e-10,
        prime_cutoff: 10_000_000,
        segment_size: 1 << 20,
        workers,
        seed: SEED,
    }
}

fn golden_rows(workers: usize) -> Vec<ComparisonRow> {
    let predictor = Predictor::new(PredictionSettings::default()).unwrap();
    let mut rows = Vec::new();
    for name in ["mu", "tau", "two-squares"] {
        let spec = MultiplicativeSpec::builtin(name).unwrap();
        let config = golden_config(name, workers);
        let report = compare(&config, &spec, &predictor).unwrap();
        rows.extend(report.rows);
    }
    rows
}

fn rows_to_csv(rows: &[ComparisonRow]) -> String {
    let mut buf = Vec::new();
    write_compare_csv(rows, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

const GOLDEN_PATH: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/compare_1e8.csv");

#[test]
fn criterion_08_main_term_sanity_at_1e8() {
    let started = Instant::now();
    let rows = golden_rows(1);

    // wide-band sanity gates
    let (mu, tau, two_sq) = (&rows[0], &rows[1], &rows[2]);
    // empirical values double-checked against an independent numpy phi sieve
    assert_eq!(mu.empirical, 28_488_167.0);
    assert_eq!(tau.empirical, 365_065_913.0);
    assert_eq!(two_sq.empirical, 73_007_188.0);
    for row in [mu, tau] {
        assert!(
            (0.5..=2.0).contains(&row.ratio_main),
            "ratio_main {} outside [0.5, 2]",
            row.ratio_main
        );
    }
    assert!(
        (0.3..=3.0).contains(&two_sq.ratio_leading),
        "two-squares ratio_leading {}",
        two_sq.ratio_leading
    );

    // golden regression record
    let csv = rows_to_csv(&rows);
    if std::env::var_os("PHIGCD_WRITE_GOLDEN").is_some() {
        std::fs::create_dir_all(std::path::Path::new(GOLDEN_PATH).parent().unwrap()).unwrap();
        std::fs::write(GOLDEN_PATH, &csv).unwrap();
    }
    let golden = std::fs::read_to_string(GOLDEN_PATH)
        .expect("golden file missing; regenerate with PHIGCD_WRITE_GOLDEN=1");
    assert_eq!(
        csv, golden,
        "criterion-8 CSV deviates from the golden record"
    );
    report("criterion 08 main-term sanity at 1e8", started, 900);
}

#[test]
fn criterion_09_series_machinery() {
    let started = Instant::now();
    let settings = PredictionSettings::default();
    // exponent sum_{k=0..4} (b_k - a_k) u^(k+1), the K = 4 expansion input
    let mut e = vec![0.0f64];
    for k in 0..=4u32 {
        e.push(b_coeff(k, &settings).unwrap() - a_coeff(k, &settings).unwrap());
    }
    let input = SeriesExpansion::new(e).unwrap();
    let output = series_exp(&input).unwrap();
    let u = 0.1f64;
    let exact = input.eval(u).exp();
    let poly = output.eval(u);
    let err = (poly - exact).abs();
    let bound = 2.0 * u.powi(5);
    assert!(
        err <= bound,
        "series_exp truncation error {err:e} > {bound:e}"
    );
    report("criterion 09 series machinery", started, 60);
}

#[test]
fn criterion_10_determinism_across_workers() {
    let started = Instant::now();
    let golden = std::fs::read_to_string(GOLDEN_PATH)
        .expect("golden file missing; run criterion 08 with PHIGCD_WRITE_GOLDEN=1 first");
    let csv = rows_to_csv(&golden_rows(4));
    assert_eq!(csv, golden, "worker count changed the CSV bytes");
    report("criterion 10 determinism across workers", started, 900);
}
