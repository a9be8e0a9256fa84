//! The supporting constants: Euler-Mascheroni gamma, the Mertens constant,
//! zeta values and the Landau-Ramanujan constant. Every truncated quantity
//! carries an explicit tail bound.

use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::scan::Kahan;

/// A numeric value together with the bound on its truncation tail.
#[derive(Debug, Clone, Copy)]
pub struct Certified {
    pub value: f64,
    pub tail_bound: f64,
}

/// Euler-Mascheroni constant by the Brent-McMillan AGM-free scheme
///
///   gamma = A(n)/B(n) - log n,  A = sum (n^k/k!)^2 H_k,  B = sum (n^k/k!)^2,
///
/// whose error is O(e^(-4n)); n = 12 converges to full f64 precision and
/// every term is positive, so no cancellation occurs.
pub fn euler_gamma() -> f64 {
    let n = 12.0f64;
    let mut term = 1.0; // (n^k / k!)^2
    let mut harmonic = 0.0;
    let mut num = 0.0;
    let mut den = 1.0;
    let mut k = 1.0f64;
    loop {
        term *= (n * n) / (k * k);
        harmonic += 1.0 / k;
        num += term * harmonic;
        den += term;
        if term * harmonic.max(1.0) < 1e-22 * den && k > 2.0 * n {
            break;
        }
        k += 1.0;
    }
    num / den - n.ln()
}

/// zeta(r) for integer r >= 2 by direct series with a midpoint-rule tail
/// correction; the recorded bound covers the midpoint error.
pub fn zeta(r: u32) -> Result<Certified> {
    if r < 2 {
        return Err(Error::Domain("zeta needs r >= 2".into()));
    }
    let n = 20_000u64;
    let mut acc = Kahan::default();
    // descending magnitude order would be ascending n; sum small-to-large
    for m in (1..=n).rev() {
        acc.add((m as f64).powi(-(r as i32)));
    }
    let rf = r as f64;
    let tail = (n as f64 + 0.5).powi(1 - r as i32) / (rf - 1.0);
    let bound = rf * (n as f64 - 0.5).powi(-(r as i32) - 1) / 24.0;
    let value = acc.value() + tail;
    if !value.is_finite() || bound > 1e-12 {
        return Err(Error::Numeric(format!(
            "zeta({r}) tail bound {bound:e} too large"
        )));
    }
    Ok(Certified {
        value,
        tail_bound: bound,
    })
}

/// Mertens constant c = gamma + sum_p (log(1 - 1/p) + 1/p), truncated at
/// `cutoff`; tail bounded by sum_{p>P} 1/(2 p (p-1)) ~ 1/(2 P log P).
pub fn mertens_constant(primes: &PrimeTable, cutoff: u64) -> Result<Certified> {
    if primes.limit() < cutoff {
        return Err(Error::Precondition(format!(
            "prime table limit {} below cutoff {cutoff}",
            primes.limit()
        )));
    }
    let mut acc = Kahan::default();
    for &p in primes.primes_upto(cutoff) {
        let inv = 1.0 / p as f64;
        acc.add((-inv).ln_1p() + inv);
    }
    let pf = cutoff as f64;
    Ok(Certified {
        value: euler_gamma() + acc.value(),
        tail_bound: 1.0 / (pf * pf.ln()),
    })
}

/// Landau-Ramanujan constant from
///
///   B^2 = (1/2) prod_{p = 3 mod 4} (1 - p^-2)^-1,
///
/// truncated at `cutoff`; the recorded tail estimates the missing log-mass
/// sum_{p > P, p = 3 mod 4} p^-2.
pub fn landau_ramanujan(primes: &PrimeTable, cutoff: u64) -> Result<Certified> {
    if primes.limit() < cutoff {
        return Err(Error::Precondition(format!(
            "prime table limit {} below cutoff {cutoff}",
            primes.limit()
        )));
    }
    let mut log_b2 = Kahan::default();
    log_b2.add(0.5f64.ln());
    for &p in primes.primes_upto(cutoff) {
        if p % 4 == 3 {
            let inv2 = 1.0 / (p as f64 * p as f64);
            log_b2.add(-(-inv2).ln_1p());
        }
    }
    let value = (0.5 * log_b2.value()).exp();
    let pf = cutoff as f64;
    Ok(Certified {
        value,
        tail_bound: value * 0.5 / (pf * pf.ln()),
    })
}
