//! Runtime verification suites: the same identity, sieve, coefficient and
//! prediction checks the test suite pins down, packaged so the CLI can run
//! them on demand. Each check reports pass/fail with a short detail line.

use crate::arith::{factorize, phi_block, sieve_primes};
use crate::asympt::{
    a_coeff, alpha1, b_coeff, euler_gamma, gamma_laurent_f, log_iter, zeta, PredictionSettings,
    Predictor,
};
use crate::error::{Error, Result};
use crate::multiplicative::MultiplicativeSpec;
use crate::scan::{count_phi_divisibility_multi, s_direct, s_inversion, ScanConfig};

/// Deterministic split-mix generator; all randomized suites take a seed.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in [1, bound].
    pub fn in_range(&mut self, bound: u64) -> u64 {
        1 + self.next_u64() % bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Sieve,
    Coefficients,
    Predictions,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "identities" => Ok(Suite::Identities),
            "sieve" => Ok(Suite::Sieve),
            "coefficients" => Ok(Suite::Coefficients),
            "predictions" => Ok(Suite::Predictions),
            "all" => Ok(Suite::All),
            _ => Err(Error::Config(format!("unknown suite `{name}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(out: &mut Vec<CheckOutcome>, name: &str, passed: bool, detail: String) {
    out.push(CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
    });
}

/// Independent trial-division phi, used as the sieve oracle.
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

/// E_1(1) by the convergent series -gamma + sum (-1)^(k+1) / (k k!);
/// the oracle against which the quadrature value of a_0 is checked.
pub fn exp_integral_one_oracle() -> f64 {
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

fn identities_suite(out: &mut Vec<CheckOutcome>) -> Result<()> {
    let table = sieve_primes(1_000)?;
    let cfg = ScanConfig::default();
    for name in ["mu", "tau", "two-squares", "rpower:2", "rfree:2"] {
        let spec = MultiplicativeSpec::builtin(name)?;
        for x in [1_000u64, 10_000] {
            let direct = s_direct(&spec, x, &table, &cfg)?.value;
            let inverted = s_inversion(&spec, x, &table)?.value;
            let ok = direct == inverted;
            check(
                out,
                &format!("inversion-identity {name} x={x}"),
                ok,
                format!("direct {direct:?} vs inversion {inverted:?}"),
            );
        }
    }
    Ok(())
}

fn sieve_suite(out: &mut Vec<CheckOutcome>, seed: u64) -> Result<()> {
    let table = sieve_primes(40_000)?;

    let block = phi_block(1, 20_001, &table)?;
    let bad = block.iter().filter(|&(n, v)| v != trial_phi(n)).count();
    check(
        out,
        "segmented-phi vs trial division n<=2e4",
        bad == 0,
        format!("{bad} mismatches"),
    );

    let mut rng = SplitMix64::new(seed);
    let mut bad_high = 0u32;
    for _ in 0..200 {
        let n = 1_000_000_000 + rng.in_range(1_000_000);
        let v = phi_block(n, n + 1, &table)?.phi(n);
        if v != trial_phi(n) {
            bad_high += 1;
        }
    }
    check(
        out,
        "segmented-phi vs trial division near 1e9",
        bad_high == 0,
        format!("{bad_high} mismatches of 200"),
    );

    let trial: Vec<u64> = (2..=2_000u64)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect();
    let ok = table.primes_upto(2_000) == trial.as_slice();
    check(out, "prime table vs trial division", ok, String::new());

    // phi(a) | phi(ab) sampling
    let mut bad_div = 0u32;
    for _ in 0..2_000 {
        let a = rng.in_range(100_000);
        let b = rng.in_range(100_000);
        let fa = factorize(a, &table)?;
        let fab_phi = {
            // merge the factorizations of a and b
            let fb = factorize(b, &table)?;
            let mut merged: Vec<(u64, u32)> = fa.factors().to_vec();
            for &(p, e) in fb.factors() {
                match merged.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, me)) => *me += e,
                    None => merged.push((p, e)),
                }
            }
            merged
                .iter()
                .map(|&(p, e)| p.pow(e - 1) * (p - 1))
                .product::<u64>()
        };
        if fab_phi % fa.phi() != 0 {
            bad_div += 1;
        }
    }
    check(
        out,
        "phi(a) divides phi(ab)",
        bad_div == 0,
        format!("{bad_div} violations of 2000"),
    );
    Ok(())
}

fn coefficients_suite(out: &mut Vec<CheckOutcome>) -> Result<()> {
    let settings = PredictionSettings::default();
    let a0 = a_coeff(0, &settings)?;
    let b0 = b_coeff(0, &settings)?;
    let gamma = euler_gamma();

    let d = (b0 - a0 - gamma).abs();
    check(out, "b0 - a0 = gamma", d <= 1e-6, format!("delta {d:.2e}"));

    let oracle = exp_integral_one_oracle();
    let d = (a0 - oracle).abs();
    check(out, "a0 = E1(1)", d <= 1e-8, format!("delta {d:.2e}"));

    for k in 1..=4u32 {
        let diff = b_coeff(k, &settings)? - a_coeff(k, &settings)?;
        let f = gamma_laurent_f(k, &settings)?;
        let d = (diff - f).abs();
        check(
            out,
            &format!("b{k} - a{k} = F^({k})(0)"),
            d <= 1e-5,
            format!("delta {d:.2e}"),
        );
    }

    let z2 = zeta(2)?.value;
    let expect = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    let d = (z2 - expect).abs();
    check(
        out,
        "zeta(2) = pi^2/6",
        d <= 1e-10,
        format!("delta {d:.2e}"),
    );

    let predictor = Predictor::new(settings)?;
    let b_lo = predictor.landau_ramanujan_at(1_000_000)?.value;
    let b_hi = predictor.landau_ramanujan_at(10_000_000)?.value;
    let d = (b_lo - b_hi).abs();
    check(
        out,
        "landau-ramanujan cutoff stability",
        d < 1e-6 && b_hi > 0.70 && b_hi < 0.80,
        format!("B {b_hi:.8} delta {d:.2e}"),
    );

    let c = predictor.mertens_constant()?;
    check(
        out,
        "mertens constant in range",
        (c.value - 0.26149721).abs() < 1e-5,
        format!("c {:.9} tail {:.2e}", c.value, c.tail_bound),
    );
    Ok(())
}

fn predictions_suite(out: &mut Vec<CheckOutcome>) -> Result<()> {
    let x = 10_000_000u64;
    let table = sieve_primes((x + 1).isqrt() + 1)?;
    let cfg = ScanConfig::default();
    let counts = count_phi_divisibility_multi(&[5, 7, 35, 101, 1009], x, &table, &cfg)?;
    let settings = PredictionSettings {
        prime_cutoff: 1_000_000,
        ..Default::default()
    };
    let predictor = Predictor::new(settings)?;
    let fac_table = sieve_primes(100)?;
    for c in &counts[..3] {
        let d = factorize(c.d, &fac_table)?;
        let cop = predictor.predict_phi_coprime(&d, x as f64)?;
        let div = predictor.predict_phi_divisible(&d, x as f64)?;
        let r_cop = c.coprime as f64 / cop.value;
        let r_div = c.divisible as f64 / div.value;
        check(
            out,
            &format!("coprime ratio d={}", c.d),
            (0.5..=1.5).contains(&r_cop),
            format!("{r_cop:.4}"),
        );
        check(
            out,
            &format!("divisible ratio d={}", c.d),
            (0.5..=1.5).contains(&r_div),
            format!("{r_div:.4}"),
        );
    }
    let y = log_iter(x as f64, 2)?;
    for c in &counts[3..] {
        let bound = 10.0 * x as f64 * y / c.d as f64;
        check(
            out,
            &format!("p-divides-phi bound p={}", c.d),
            (c.divisible as f64) <= bound,
            format!("{} <= {bound:.3e}", c.divisible),
        );
    }

    // alpha_1 sanity against the simplified exponent
    let d35 = factorize(35, &fac_table)?;
    let a1 = alpha1(&d35)?;
    check(
        out,
        "alpha1(35) = 5/12",
        (a1 - 5.0 / 12.0).abs() < 1e-14,
        format!("{a1}"),
    );
    Ok(())
}

/// Run one suite (or all of them); `seed` drives the randomized samples.
pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    match suite {
        Suite::Identities => identities_suite(&mut out)?,
        Suite::Sieve => sieve_suite(&mut out, seed)?,
        Suite::Coefficients => coefficients_suite(&mut out)?,
        Suite::Predictions => predictions_suite(&mut out)?,
        Suite::All => {
            identities_suite(&mut out)?;
            sieve_suite(&mut out, seed)?;
            coefficients_suite(&mut out)?;
            predictions_suite(&mut out)?;
        }
    }
    Ok(out)
}
