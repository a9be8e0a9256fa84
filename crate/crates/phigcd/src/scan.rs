//! Exact counting by streaming phi blocks over n <= x: the weighted sums
//! S_g(x) in both summation orders, the congruence sums A_d(x),
//! phi-divisibility counts and gcd histograms.
//!
//! Scans parallelize over disjoint segments; every reduction folds the
//! per-segment partials in ascending segment order, so results are
//! independent of the worker count. Integer-valued specs accumulate in
//! exact `i64` end to end.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::arith::{gcd, is_prime, phi_block, PrimeTable, DEFAULT_SEGMENT_SIZE};
use crate::error::{Error, Result};
use crate::multiplicative::MultiplicativeSpec;

/// Upper bound for the quadratic-cost inversion oracle.
pub const INVERSION_MAX_X: u64 = 100_000;

/// Default gcd-histogram cap; larger gcd values land in the overflow bucket.
pub const DEFAULT_HISTOGRAM_CAP: u64 = 10_000;

/// Segmenting and threading knobs for the streaming scans.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub segment_size: u64,
    pub workers: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            segment_size: DEFAULT_SEGMENT_SIZE,
            workers: 1,
        }
    }
}

impl ScanConfig {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers: workers.max(1),
            ..Self::default()
        }
    }
}

/// Compensated (Neumaier) summation; deterministic for a fixed add order.
#[derive(Debug, Default, Clone, Copy)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Map every phi segment of [1, x] through `map` and fold the per-segment
/// values in ascending segment order.
fn scan_segments<A, M>(x: u64, primes: &PrimeTable, cfg: &ScanConfig, map: M) -> Result<Vec<A>>
where
    A: Send,
    M: Fn(u64, &[u64]) -> A + Sync,
{
    if x < 1 {
        return Err(Error::Precondition("scan needs x >= 1".into()));
    }
    if primes.limit() < (x + 1).isqrt() {
        return Err(Error::Precondition(format!(
            "prime table limit {} below isqrt({}) needed for phi sieving",
            primes.limit(),
            x + 1
        )));
    }
    let seg = cfg.segment_size.max(1024);
    let n_segs = ((x - 1) / seg + 1) as usize;
    let bounds = |i: usize| {
        let lo = 1 + i as u64 * seg;
        let hi = (lo + seg).min(x + 1);
        (lo, hi)
    };
    let run_one = |i: usize| -> Result<A> {
        let (lo, hi) = bounds(i);
        let block = phi_block(lo, hi, primes)?;
        Ok(map(lo, block.values()))
    };
    if cfg.workers <= 1 || n_segs == 1 {
        return (0..n_segs).map(run_one).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<A>>>> = Mutex::new((0..n_segs).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..cfg.workers.min(n_segs) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n_segs {
                    break;
                }
                let r = run_one(i);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|s| s.expect("all segments visited"))
        .collect()
}

/// One computed scan value with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub x: u64,
    pub spec_name: String,
    pub value: ScanValue,
    pub mode: ScanMode,
    pub runtime_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanValue {
    Int(i64),
    Real(f64),
}

impl ScanValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            ScanValue::Int(v) => *v as f64,
            ScanValue::Real(v) => *v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Direct,
    Inversion,
}

/// Trial-divide `m` by table primes into `buf` as (prime, exponent) pairs.
/// `m` must be covered by the table (one residual prime allowed).
fn factor_into(mut m: u64, primes: &PrimeTable, buf: &mut Vec<(u64, u32)>) {
    buf.clear();
    for &p in primes.primes() {
        if p * p > m {
            break;
        }
        if m.is_multiple_of(p) {
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            buf.push((p, e));
        }
    }
    if m > 1 {
        buf.push((m, 1));
    }
}

/// S_g(x) = sum_{n<=x} f((n, phi(n))), streaming over phi blocks.
pub fn s_direct(
    spec: &MultiplicativeSpec,
    x: u64,
    primes: &PrimeTable,
    cfg: &ScanConfig,
) -> Result<ScanResult> {
    let started = Instant::now();
    let value = if spec.integer_valued() {
        let parts = scan_segments(x, primes, cfg, |lo, phis| {
            let mut acc = 0i64;
            let mut buf: Vec<(u64, u32)> = Vec::with_capacity(16);
            for (i, &phi) in phis.iter().enumerate() {
                let d = gcd(lo + i as u64, phi);
                if d == 1 {
                    acc += 1; // f(1) = 1 for every spec
                } else {
                    factor_into(d, primes, &mut buf);
                    acc += spec.eval_f_int_over(buf.iter().copied());
                }
            }
            acc
        })?;
        ScanValue::Int(parts.iter().sum())
    } else {
        let parts = scan_segments(x, primes, cfg, |lo, phis| {
            let mut acc = Kahan::default();
            let mut buf: Vec<(u64, u32)> = Vec::with_capacity(16);
            for (i, &phi) in phis.iter().enumerate() {
                let d = gcd(lo + i as u64, phi);
                if d == 1 {
                    acc.add(1.0);
                } else {
                    factor_into(d, primes, &mut buf);
                    acc.add(spec.eval_f_over(buf.iter().copied()));
                }
            }
            acc.value()
        })?;
        let mut total = Kahan::default();
        for v in parts {
            total.add(v);
        }
        ScanValue::Real(total.value())
    };
    Ok(ScanResult {
        x,
        spec_name: spec.name().to_string(),
        value,
        mode: ScanMode::Direct,
        runtime_ms: started.elapsed().as_millis(),
    })
}

/// S_g(x) = sum_{d<=x} g(d) A_d(x), the Moebius-inversion order. Exists as
/// an independent oracle; quadratic-ish, so x is capped.
pub fn s_inversion(spec: &MultiplicativeSpec, x: u64, primes: &PrimeTable) -> Result<ScanResult> {
    if x > INVERSION_MAX_X {
        return Err(Error::Capacity(format!(
            "s_inversion supports x <= {INVERSION_MAX_X}, got {x}"
        )));
    }
    if x < 1 {
        return Err(Error::Precondition("s_inversion needs x >= 1".into()));
    }
    let started = Instant::now();
    let phis = phi_block(1, x + 1, primes)?;
    let phi_of = |n: u64| phis.values()[(n - 1) as usize];
    let mut buf: Vec<(u64, u32)> = Vec::with_capacity(16);
    let value = if spec.integer_valued() {
        let mut acc = 0i64;
        for d in 1..=x {
            factor_into(d, primes, &mut buf);
            let mut gd = 1i64;
            for &(p, e) in &buf {
                gd *= spec.g_int_at(p, e).expect("integer-valued spec");
                if gd == 0 {
                    break;
                }
            }
            if gd == 0 {
                continue;
            }
            let mut a_d = 0i64;
            let mut n = d;
            while n <= x {
                if phi_of(n) % d == 0 {
                    a_d += 1;
                }
                n += d;
            }
            acc += gd * a_d;
        }
        ScanValue::Int(acc)
    } else {
        let mut acc = Kahan::default();
        for d in 1..=x {
            factor_into(d, primes, &mut buf);
            let gd: f64 = buf.iter().map(|&(p, e)| spec.g_at(p, e)).product();
            if gd == 0.0 {
                continue;
            }
            let mut a_d = 0u64;
            let mut n = d;
            while n <= x {
                if phi_of(n) % d == 0 {
                    a_d += 1;
                }
                n += d;
            }
            acc.add(gd * a_d as f64);
        }
        ScanValue::Real(acc.value())
    };
    Ok(ScanResult {
        x,
        spec_name: spec.name().to_string(),
        value,
        mode: ScanMode::Inversion,
        runtime_ms: started.elapsed().as_millis(),
    })
}

/// A_d(x) = #{n <= x : d | n and d | phi(n)}.
pub fn congruence_sum(d: u64, x: u64, primes: &PrimeTable, cfg: &ScanConfig) -> Result<u64> {
    if d < 1 || x < 1 {
        return Err(Error::Precondition(
            "congruence_sum needs d >= 1, x >= 1".into(),
        ));
    }
    if d > x {
        return Ok(0);
    }
    let parts = scan_segments(x, primes, cfg, |lo, phis| {
        let hi = lo + phis.len() as u64;
        let mut count = 0u64;
        let mut n = lo.div_ceil(d) * d;
        while n < hi {
            if phis[(n - lo) as usize] % d == 0 {
                count += 1;
            }
            n += d;
        }
        count
    })?;
    Ok(parts.iter().sum())
}

/// Exact counts of n <= x with d | phi(n) and with gcd(phi(n), d) = 1, for
/// several moduli in a single streaming pass.
#[derive(Debug, Clone, Copy)]
pub struct PhiDivisibilityCounts {
    pub d: u64,
    pub divisible: u64,
    pub coprime: u64,
}

pub fn count_phi_divisibility_multi(
    ds: &[u64],
    x: u64,
    primes: &PrimeTable,
    cfg: &ScanConfig,
) -> Result<Vec<PhiDivisibilityCounts>> {
    if ds.contains(&0) {
        return Err(Error::Precondition("moduli must be >= 1".into()));
    }
    let parts = scan_segments(x, primes, cfg, |_lo, phis| {
        let mut acc = vec![(0u64, 0u64); ds.len()];
        for &phi in phis {
            for (j, &d) in ds.iter().enumerate() {
                if phi % d == 0 {
                    acc[j].0 += 1;
                }
                if gcd(phi, d) == 1 {
                    acc[j].1 += 1;
                }
            }
        }
        acc
    })?;
    let mut totals = vec![(0u64, 0u64); ds.len()];
    for part in parts {
        for (t, p) in totals.iter_mut().zip(part) {
            t.0 += p.0;
            t.1 += p.1;
        }
    }
    Ok(ds
        .iter()
        .zip(totals)
        .map(|(&d, (divisible, coprime))| PhiDivisibilityCounts {
            d,
            divisible,
            coprime,
        })
        .collect())
}

/// #{n <= x : d | phi(n)}.
pub fn count_phi_divisible(d: u64, x: u64, primes: &PrimeTable, cfg: &ScanConfig) -> Result<u64> {
    Ok(count_phi_divisibility_multi(&[d], x, primes, cfg)?[0].divisible)
}

/// #{n <= x : gcd(phi(n), d) = 1}.
pub fn count_phi_coprime(d: u64, x: u64, primes: &PrimeTable, cfg: &ScanConfig) -> Result<u64> {
    Ok(count_phi_divisibility_multi(&[d], x, primes, cfg)?[0].coprime)
}

/// #{n <= x : p | phi(n)} for prime p < x; diagnostic for the
/// Brun-Titchmarsh style bound O(x log_2 x / p).
pub fn count_p_divides_phi(p: u64, x: u64, primes: &PrimeTable, cfg: &ScanConfig) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p >= x {
        return Err(Error::Precondition(
            "count_p_divides_phi needs p < x".into(),
        ));
    }
    count_phi_divisible(p, x, primes, cfg)
}

/// Exact histogram of gcd(n, phi(n)) over n <= x: counts for gcd values up
/// to `cap`, everything else pooled in an overflow bucket.
#[derive(Debug, Clone)]
pub struct GcdHistogram {
    x: u64,
    counts: Vec<u64>, // index v in 1..=cap
    overflow: u64,
}

impl GcdHistogram {
    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn cap(&self) -> u64 {
        self.counts.len() as u64
    }

    /// Count of n <= x with gcd(n, phi(n)) = v; only valid for v <= cap.
    pub fn count_of(&self, v: u64) -> u64 {
        self.counts[(v - 1) as usize]
    }

    pub fn overflow(&self) -> u64 {
        self.overflow
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.overflow
    }

    /// Nonzero (value, count) pairs in ascending value order.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i as u64 + 1, c))
    }
}

pub fn gcd_histogram(
    x: u64,
    cap: u64,
    primes: &PrimeTable,
    cfg: &ScanConfig,
) -> Result<GcdHistogram> {
    if cap < 1 {
        return Err(Error::Precondition("histogram cap must be >= 1".into()));
    }
    let parts = scan_segments(x, primes, cfg, |lo, phis| {
        let mut counts = vec![0u64; cap as usize];
        let mut overflow = 0u64;
        for (i, &phi) in phis.iter().enumerate() {
            let d = gcd(lo + i as u64, phi);
            if d <= cap {
                counts[(d - 1) as usize] += 1;
            } else {
                overflow += 1;
            }
        }
        (counts, overflow)
    })?;
    let mut counts = vec![0u64; cap as usize];
    let mut overflow = 0u64;
    for (part_counts, part_overflow) in parts {
        for (t, p) in counts.iter_mut().zip(part_counts) {
            *t += p;
        }
        overflow += part_overflow;
    }
    Ok(GcdHistogram {
        x,
        counts,
        overflow,
    })
}

/// sum of 1/p over primes p <= x with p = a mod m, by direct summation in
/// ascending order. Requires gcd(a, m) = 1 and 1 <= a <= m (so m = 1, a = 1
/// sums over all primes).
pub fn prime_reciprocal_sum(x: u64, a: u64, m: u64, primes: &PrimeTable) -> Result<f64> {
    if m < 1 || a < 1 || a > m {
        return Err(Error::Domain(format!(
            "residue class needs 1 <= a <= m, got a={a} m={m}"
        )));
    }
    if gcd(a, m) != 1 {
        return Err(Error::Domain(format!("gcd({a}, {m}) > 1")));
    }
    if primes.limit() < x {
        return Err(Error::Precondition(format!(
            "prime table limit {} below x = {x}",
            primes.limit()
        )));
    }
    let target = a % m;
    let mut acc = Kahan::default();
    for &p in primes.primes_upto(x) {
        if p % m == target {
            acc.add(1.0 / p as f64);
        }
    }
    Ok(acc.value())
}
