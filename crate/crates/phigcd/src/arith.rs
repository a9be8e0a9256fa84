//! Exact integer substrate: prime generation, segmented Euler-phi sieving,
//! factorization, gcd and the elementary arithmetic functions built on top
//! of a factorization.
//!
//! All quantities are 64-bit; inputs are capped at [`MAX_N`] = 2^40 so that
//! every intermediate product (phi accumulators, prime-power cofactors)
//! stays well inside `u64`.

use crate::error::{Error, Result};

/// Largest integer accepted by [`factorize`] and [`phi_block`].
pub const MAX_N: u64 = 1 << 40;

/// Default ceiling for [`sieve_primes`]; one flat bit sieve of this size is
/// ~60 MB, anything larger should go through [`stream_primes`].
pub const DEFAULT_SIEVE_MAX: u64 = 1_000_000_000;

/// Default segment width for block-based scans: 2^20 integers keeps both the
/// phi accumulator and the cofactor array cache-resident.
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 20;

/// Ascending table of all primes up to `limit`. Immutable once built and
/// freely shareable across threads.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `p` with `p <= bound`, as a prefix slice of the table.
    pub fn primes_upto(&self, bound: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }
}

/// Sieve of Eratosthenes up to `limit` (inclusive), bounded by
/// [`DEFAULT_SIEVE_MAX`].
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_bounded(limit, DEFAULT_SIEVE_MAX)
}

/// Same as [`sieve_primes`] with an explicit capacity ceiling.
pub fn sieve_primes_bounded(limit: u64, max_limit: u64) -> Result<PrimeTable> {
    if limit > max_limit {
        return Err(Error::Capacity(format!(
            "sieve limit {limit} exceeds configured maximum {max_limit}"
        )));
    }
    if limit < 2 {
        return Ok(PrimeTable {
            limit,
            primes: Vec::new(),
        });
    }
    // Odd-only bit sieve: bit i represents the odd number 2i + 1.
    let n_odd = (limit as usize).div_ceil(2);
    let mut composite = vec![0u64; n_odd / 64 + 1];
    let is_set = |v: &[u64], i: usize| v[i / 64] >> (i % 64) & 1 == 1;
    let mut p = 3u64;
    while p * p <= limit {
        if !is_set(&composite, (p / 2) as usize) {
            let mut m = p * p;
            while m <= limit {
                let i = (m / 2) as usize;
                composite[i / 64] |= 1 << (i % 64);
                m += 2 * p;
            }
        }
        p += 2;
    }
    let mut primes = Vec::with_capacity(prime_count_upper(limit));
    primes.push(2);
    let mut q = 3u64;
    while q <= limit {
        if !is_set(&composite, (q / 2) as usize) {
            primes.push(q);
        }
        q += 2;
    }
    Ok(PrimeTable { limit, primes })
}

/// Rough upper bound on pi(n), used only to size allocations.
fn prime_count_upper(n: u64) -> usize {
    if n < 17 {
        return 8;
    }
    let x = n as f64;
    (x / x.ln() * 1.3) as usize + 16
}

/// Visit every prime `p <= limit` in ascending order without storing the
/// whole table. Used for the large prime sums (cutoffs up to 10^8).
pub fn stream_primes<F: FnMut(u64)>(limit: u64, mut visit: F) -> Result<()> {
    if limit < 2 {
        return Ok(());
    }
    let base = sieve_primes(limit.isqrt())?;
    visit(2);
    let seg = DEFAULT_SEGMENT_SIZE as usize;
    let mut composite = vec![false; seg];
    let mut lo = 3u64; // always odd
    while lo <= limit {
        let count = (((limit - lo) / 2) as usize + 1).min(seg);
        let hi = lo + 2 * count as u64; // odd numbers lo, lo+2, .., hi-2
        composite[..count].fill(false);
        for &p in base.primes().iter().skip(1) {
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            while m < hi {
                composite[((m - lo) / 2) as usize] = true;
                m += 2 * p;
            }
        }
        for (i, &c) in composite[..count].iter().enumerate() {
            if !c {
                visit(lo + 2 * i as u64);
            }
        }
        lo = hi;
    }
    Ok(())
}

/// Contiguous block `[lo, hi)` of Euler-phi values.
#[derive(Debug, Clone)]
pub struct PhiBlock {
    lo: u64,
    values: Vec<u64>,
}

impl PhiBlock {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.lo + self.values.len() as u64
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// phi(n) for n inside the block.
    pub fn phi(&self, n: u64) -> u64 {
        self.values[(n - self.lo) as usize]
    }

    /// Iterate `(n, phi(n))` pairs in ascending order of n.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.lo + i as u64, v))
    }
}

/// Compute phi(n) for every n in `[lo, hi)` with the standard segmented
/// method: divide out every prime `p <= sqrt(hi)` from the per-slot
/// cofactor, multiplying `p^(e-1) (p-1)` into the phi accumulator; whatever
/// cofactor survives is a single prime `q` contributing `q - 1`.
pub fn phi_block(lo: u64, hi: u64, primes: &PrimeTable) -> Result<PhiBlock> {
    if lo < 1 || lo >= hi {
        return Err(Error::Precondition(format!(
            "phi_block needs 1 <= lo < hi, got [{lo}, {hi})"
        )));
    }
    if hi - 1 > MAX_N {
        return Err(Error::Capacity(format!(
            "phi_block upper end {hi} exceeds supported range 2^40"
        )));
    }
    if primes.limit() < hi.isqrt() {
        return Err(Error::Precondition(format!(
            "prime table limit {} below isqrt(hi) = {}",
            primes.limit(),
            hi.isqrt()
        )));
    }
    let len = (hi - lo) as usize;
    let mut values = vec![1u64; len];
    let mut cofactor: Vec<u64> = (lo..hi).collect();
    for &p in primes.primes() {
        if p * p >= hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0u32;
            while cofactor[i].is_multiple_of(p) {
                cofactor[i] /= p;
                e += 1;
            }
            // m is a multiple of p inside the block, so e >= 1 unless a
            // previous prime already cleared it (impossible: primes distinct).
            values[i] *= p.pow(e - 1) * (p - 1);
            m += p;
        }
    }
    for i in 0..len {
        if cofactor[i] > 1 {
            values[i] *= cofactor[i] - 1;
        }
    }
    Ok(PhiBlock { lo, values })
}

/// A number together with its prime factorization, primes strictly
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

/// Smallest prime factor with the conventional sentinel `p(1) = infinity`.
/// The derived order puts `Finite(_) < Infinity`, so comparisons like
/// "p(d) > z" behave correctly for d = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SmallestPrime {
    Finite(u64),
    Infinity,
}

impl SmallestPrime {
    pub fn exceeds(&self, z: u64) -> bool {
        match self {
            SmallestPrime::Finite(p) => *p > z,
            SmallestPrime::Infinity => true,
        }
    }
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of divisors, tau(n) = prod (e_i + 1).
    pub fn tau(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| (e + 1) as u64).product()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Largest prime factor, with P(1) = 1.
    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |&(p, _)| p)
    }

    /// Smallest prime factor, with p(1) = infinity.
    pub fn smallest_prime(&self) -> SmallestPrime {
        self.factors
            .first()
            .map_or(SmallestPrime::Infinity, |&(p, _)| SmallestPrime::Finite(p))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// phi(n) = prod p^(e-1) (p-1).
    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    /// All divisors of n, in no particular order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let snapshot = out.len();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                for i in 0..snapshot {
                    out.push(out[i] * pe);
                }
            }
        }
        out
    }
}

/// Exact factorization of `n` by trial division over the table. The table
/// must cover sqrt(n); at most one residual prime above the table remains.
pub fn factorize(n: u64, primes: &PrimeTable) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Precondition("factorize needs n >= 1".into()));
    }
    if n > MAX_N {
        return Err(Error::Capacity(format!(
            "factorize input {n} exceeds supported range 2^40"
        )));
    }
    if primes.limit() < n.isqrt() {
        return Err(Error::Precondition(format!(
            "prime table limit {} below isqrt({n}) = {}",
            primes.limit(),
            n.isqrt()
        )));
    }
    let mut rem = n;
    let mut factors = Vec::new();
    for &p in primes.primes() {
        if p * p > rem {
            break;
        }
        if rem.is_multiple_of(p) {
            let mut e = 0u32;
            while rem.is_multiple_of(p) {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rem > 1 {
        factors.push((rem, 1));
    }
    Ok(Factorization { n, factors })
}

/// Greatest common divisor with the convention gcd(a, 0) = a; rejects
/// gcd(0, 0).
pub fn gcd_pair(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::Domain("gcd(0, 0) is undefined".into()));
    }
    Ok(gcd(a, b))
}

/// Binary gcd. gcd(a, 0) = a, gcd(0, 0) = 0.
pub fn gcd(a: u64, b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    let mut a = a >> a.trailing_zeros();
    let mut b = b >> b.trailing_zeros();
    while a != b {
        if a > b {
            a -= b;
            a >>= a.trailing_zeros();
        } else {
            b -= a;
            b >>= b.trailing_zeros();
        }
    }
    a << shift
}

/// Deterministic Miller-Rabin primality test, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This base set is deterministic for n < 3.3 * 10^24.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}
