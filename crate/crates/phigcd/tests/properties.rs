//! Property-based invariants for the arithmetic substrate and the
//! multiplicative machinery.

use proptest::prelude::*;

use phigcd::arith::{factorize, gcd, is_prime, phi_block, sieve_primes, PrimeTable};
use phigcd::asympt::{series_exp, SeriesExpansion};
use phigcd::multiplicative::MultiplicativeSpec;
use phigcd::scan::{congruence_sum, gcd_histogram, prime_reciprocal_sum, ScanConfig};

fn table() -> PrimeTable {
    sieve_primes(40_000).unwrap()
}

fn phi(n: u64, t: &PrimeTable) -> u64 {
    factorize(n, t).unwrap().phi()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn phi_is_multiplicative_on_coprime_pairs(m in 2u64..30_000, n in 2u64..30_000) {
        prop_assume!(gcd(m, n) == 1);
        let t = table();
        prop_assert_eq!(phi(m * n, &t), phi(m, &t) * phi(n, &t));
    }

    #[test]
    fn phi_of_a_divides_phi_of_ab(a in 1u64..100_000, b in 1u64..100_000) {
        let t = table();
        // phi(ab) via merged factorizations to stay inside the table range
        let fa = factorize(a, &t).unwrap();
        let fb = factorize(b, &t).unwrap();
        let mut merged: Vec<(u64, u32)> = fa.factors().to_vec();
        for &(p, e) in fb.factors() {
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, me)) => *me += e,
                None => merged.push((p, e)),
            }
        }
        let phi_ab: u64 = merged.iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product();
        prop_assert_eq!(phi_ab % fa.phi(), 0);
    }

    #[test]
    fn segmented_phi_matches_factorization(lo in 1u64..1_000_000_000) {
        let t = table();
        let block = phi_block(lo, lo + 16, &t).unwrap();
        for (n, v) in block.iter() {
            prop_assert_eq!(v, phi(n, &t));
        }
    }

    #[test]
    fn gcd_divides_both(a in 1u64..1_000_000_000, b in 1u64..1_000_000_000) {
        let g = gcd(a, b);
        prop_assert!(g >= 1);
        prop_assert_eq!(a % g, 0);
        prop_assert_eq!(b % g, 0);
    }

    #[test]
    fn factorization_reassembles(n in 1u64..1_000_000_000) {
        let t = table();
        let f = factorize(n, &t).unwrap();
        let product: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(product, n);
        for &(p, _) in f.factors() {
            prop_assert!(is_prime(p));
        }
        for w in f.factors().windows(2) {
            prop_assert!(w[0].0 < w[1].0);
        }
    }

    #[test]
    fn g_is_bounded_for_builtins(n in 1u64..100_000, which in 0usize..7) {
        let names = ["mu", "tau", "rpower:2", "rfree:3", "two-squares", "smooth:30", "rough:30"];
        let spec = MultiplicativeSpec::builtin(names[which]).unwrap();
        let t = table();
        let fac = factorize(n, &t).unwrap();
        prop_assert!(spec.eval_g(&fac).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn f_is_divisor_sum_of_g(n in 1u64..5_000, which in 0usize..5) {
        let names = ["mu", "tau", "rpower:2", "rfree:2", "two-squares"];
        let spec = MultiplicativeSpec::builtin(names[which]).unwrap();
        let t = table();
        let fac = factorize(n, &t).unwrap();
        let by_divisors: i64 = fac
            .divisors()
            .iter()
            .map(|&d| spec.eval_g_int(&factorize(d, &t).unwrap()).unwrap())
            .sum();
        prop_assert_eq!(spec.eval_f_int(&fac).unwrap(), by_divisors);
    }

    #[test]
    fn congruence_sum_bounds(d in 1u64..64, x in 1u64..4_000) {
        let t = table();
        let cfg = ScanConfig::default();
        let a = congruence_sum(d, x, &t, &cfg).unwrap();
        prop_assert!(a <= x / d.max(1));
        let bigger = congruence_sum(d, x + 500, &t, &cfg).unwrap();
        prop_assert!(bigger >= a);
    }

    #[test]
    fn histogram_partitions(x in 1u64..3_000, cap in 1u64..64) {
        let t = table();
        let h = gcd_histogram(x, cap, &t, &ScanConfig::default()).unwrap();
        prop_assert_eq!(h.total(), x);
    }

    #[test]
    fn series_exp_matches_exp_locally(
        e1 in -1.0f64..1.0,
        e2 in -1.0f64..1.0,
        e3 in -1.0f64..1.0,
    ) {
        let input = SeriesExpansion::new(vec![0.0, e1, e2, e3]).unwrap();
        let out = series_exp(&input).unwrap();
        let u = 0.01f64;
        let err = (out.eval(u) - input.eval(u).exp()).abs();
        // remainder is O(u^4) with coefficients bounded by exp(3)
        prop_assert!(err <= 30.0 * u.powi(4));
    }
}

#[test]
fn residue_classes_partition_prime_reciprocals() {
    let t = sieve_primes(10_000).unwrap();
    let all = prime_reciprocal_sum(10_000, 1, 1, &t).unwrap();
    let s1 = prime_reciprocal_sum(10_000, 1, 4, &t).unwrap();
    let s3 = prime_reciprocal_sum(10_000, 3, 4, &t).unwrap();
    // all primes except 2 are odd: classes 1 and 3 mod 4 plus 1/2
    assert!((s1 + s3 + 0.5 - all).abs() < 1e-12);
}
