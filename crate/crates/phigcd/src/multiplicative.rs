//! Bounded multiplicative weight functions `g` given on prime powers, their
//! Dirichlet transforms `f = 1 * g`, and the local Euler factors
//! `sum_{j>=0} g(p^j) p^-j` that enter the main-term product.
//!
//! Every built-in spec takes integer values on prime powers, so the scan
//! side can accumulate exactly; `g` values are produced on demand from the
//! closed-form rules and never tabulated.

use std::fmt;
use std::sync::Arc;

use crate::arith::Factorization;
use crate::error::{Error, Result};

/// Hard bound from the theory: |g(p^j)| <= 1, with a small slack for
/// floating-point custom specs.
pub const G_BOUND_SLACK: f64 = 1e-12;

type CustomFn = Arc<dyn Fn(u64, u32) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    /// g = mu: f is the indicator of n = 1.
    Mu,
    /// g = 1: f = tau, the divisor count.
    Tau,
    /// f = indicator of perfect r-th powers.
    RPower(u32),
    /// f = indicator of integers free of r-th powers of primes.
    RFree(u32),
    /// f = indicator of sums of two squares (without multiplicity).
    TwoSquares,
    /// f = indicator of B-smooth numbers (all prime factors <= B).
    Smooth(u64),
    /// f = indicator of B-rough numbers (all prime factors > B).
    Rough(u64),
    Custom {
        g: CustomFn,
        integer_valued: bool,
    },
}

/// A bounded multiplicative function described by its values on prime
/// powers. Immutable and freely shareable.
#[derive(Clone)]
pub struct MultiplicativeSpec {
    name: String,
    kind: Kind,
}

impl fmt::Debug for MultiplicativeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeSpec")
            .field("name", &self.name)
            .finish()
    }
}

/// Truncated local Euler factor at a prime, with the recorded truncation
/// tail bound.
#[derive(Debug, Clone, Copy)]
pub struct EulerFactor {
    pub p: u64,
    pub value: f64,
    pub tail_bound: f64,
}

impl MultiplicativeSpec {
    /// Parse a spec from the CLI vocabulary: `mu`, `tau`, `rpower:R`,
    /// `rfree:R`, `two-squares`, `smooth:B`, `rough:B`.
    pub fn builtin(name: &str) -> Result<Self> {
        let (head, param) = match name.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (name, None),
        };
        let parse_u64 = |what: &str| -> Result<u64> {
            param
                .ok_or_else(|| {
                    Error::Config(format!(
                        "spec `{head}` needs a parameter, e.g. `{head}:{what}`"
                    ))
                })?
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("bad parameter for spec `{name}`")))
        };
        let parse_r = |what: &str| -> Result<u32> {
            let r = parse_u64(what)?;
            if !(2..=64).contains(&r) {
                return Err(Error::Config(format!(
                    "power families need 2 <= r <= 64, got {r}"
                )));
            }
            Ok(r as u32)
        };
        let kind = match head {
            "mu" => Kind::Mu,
            "tau" => Kind::Tau,
            "rpower" => Kind::RPower(parse_r("2")?),
            "rfree" => Kind::RFree(parse_r("2")?),
            "two-squares" => Kind::TwoSquares,
            "smooth" => Kind::Smooth(parse_u64("100")?),
            "rough" => Kind::Rough(parse_u64("100")?),
            _ => return Err(Error::Config(format!("unknown spec `{name}`"))),
        };
        if head != name && matches!(kind, Kind::Mu | Kind::Tau | Kind::TwoSquares) {
            return Err(Error::Config(format!("spec `{head}` takes no parameter")));
        }
        Ok(Self {
            name: name.to_string(),
            kind,
        })
    }

    /// Wrap an arbitrary g given on prime powers. The bound |g| <= 1 is
    /// checked on a grid of small prime powers; violations are rejected.
    pub fn custom<F>(name: &str, integer_valued: bool, g: F) -> Result<Self>
    where
        F: Fn(u64, u32) -> f64 + Send + Sync + 'static,
    {
        let spec = Self {
            name: name.to_string(),
            kind: Kind::Custom {
                g: Arc::new(g),
                integer_valued,
            },
        };
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 101, 1009, 65537] {
            for j in 1..=8u32 {
                let v = spec.g_raw(p, j);
                if !v.is_finite() || v.abs() > 1.0 + G_BOUND_SLACK {
                    return Err(Error::Config(format!(
                        "custom spec `{name}` violates |g| <= 1 at ({p}, {j}): {v}"
                    )));
                }
            }
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether f and g take exact integer values, enabling bit-exact
    /// accumulation. True for every built-in.
    pub fn integer_valued(&self) -> bool {
        match &self.kind {
            Kind::Custom { integer_valued, .. } => *integer_valued,
            _ => true,
        }
    }

    fn g_raw(&self, p: u64, j: u32) -> f64 {
        match &self.kind {
            Kind::Custom { g, .. } => g(p, j),
            _ => self.g_int(p, j) as f64,
        }
    }

    /// g(p^j) as an exact integer; panics for non-integer custom specs.
    fn g_int(&self, p: u64, j: u32) -> i64 {
        debug_assert!(j >= 1);
        match &self.kind {
            Kind::Mu => {
                if j == 1 {
                    -1
                } else {
                    0
                }
            }
            Kind::Tau => 1,
            // Indicator families: g(p^j) = f(p^j) - f(p^(j-1)).
            Kind::RPower(r) => {
                let f = |j: u32| j.is_multiple_of(*r) as i64;
                f(j) - f(j - 1)
            }
            Kind::RFree(r) => {
                let f = |j: u32| (j < *r) as i64;
                f(j) - f(j - 1)
            }
            Kind::TwoSquares => {
                if p == 2 || p % 4 == 1 {
                    0
                } else {
                    // p = 3 mod 4: f(p^j) = 1 iff j even, so g alternates.
                    if j.is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                }
            }
            Kind::Smooth(b) => {
                if p > *b && j == 1 {
                    -1
                } else {
                    0
                }
            }
            Kind::Rough(b) => {
                if p <= *b && j == 1 {
                    -1
                } else {
                    0
                }
            }
            Kind::Custom { g, integer_valued } => {
                assert!(*integer_valued, "g_int on a non-integer spec");
                let v = g(p, j);
                debug_assert_eq!(v, v.round(), "integer-valued spec returned {v}");
                v as i64
            }
        }
    }

    /// Exact g(p^j) for integer-valued specs.
    pub fn g_int_at(&self, p: u64, j: u32) -> Option<i64> {
        if self.integer_valued() {
            Some(self.g_int(p, j))
        } else {
            None
        }
    }

    /// g(p^j). Panics if the bound |g| <= 1 is violated; boundedness is a
    /// hard contract for everything downstream.
    pub fn g_at(&self, p: u64, j: u32) -> f64 {
        let v = self.g_raw(p, j);
        assert!(
            v.is_finite() && v.abs() <= 1.0 + G_BOUND_SLACK,
            "spec `{}`: |g({p}^{j})| = {v} exceeds 1",
            self.name
        );
        v
    }

    /// f(p^j) = sum_{i=0..j} g(p^i) as an exact integer (built-ins only).
    fn f_int_at(&self, p: u64, j: u32) -> i64 {
        1 + (1..=j).map(|i| self.g_int(p, i)).sum::<i64>()
    }

    /// g(n) from a factorization, exact. None for non-integer specs.
    pub fn eval_g_int(&self, fac: &Factorization) -> Option<i64> {
        if !self.integer_valued() {
            return None;
        }
        let mut acc = 1i64;
        for &(p, e) in fac.factors() {
            acc *= self.g_int(p, e);
            if acc == 0 {
                break;
            }
        }
        Some(acc)
    }

    /// f(n) = prod over p^e || n of (sum_{i=0..e} g(p^i)), exact.
    pub fn eval_f_int(&self, fac: &Factorization) -> Option<i64> {
        if !self.integer_valued() {
            return None;
        }
        Some(self.eval_f_int_over(fac.factors().iter().copied()))
    }

    /// Exact f over bare (prime, exponent) parts; used by the scan engine
    /// to avoid building a `Factorization` per n.
    pub fn eval_f_int_over<I: IntoIterator<Item = (u64, u32)>>(&self, parts: I) -> i64 {
        let mut acc = 1i64;
        for (p, e) in parts {
            acc *= self.f_int_at(p, e);
            if acc == 0 {
                break;
            }
        }
        acc
    }

    /// Float f over bare (prime, exponent) parts.
    pub fn eval_f_over<I: IntoIterator<Item = (u64, u32)>>(&self, parts: I) -> f64 {
        let mut acc = 1.0f64;
        for (p, e) in parts {
            acc *= 1.0 + (1..=e).map(|i| self.g_at(p, i)).sum::<f64>();
        }
        acc
    }

    /// g(n) = prod g(p^e).
    pub fn eval_g(&self, fac: &Factorization) -> f64 {
        if let Some(v) = self.eval_g_int(fac) {
            return v as f64;
        }
        fac.factors()
            .iter()
            .map(|&(p, e)| self.g_at(p, e))
            .product()
    }

    /// f(n) = sum_{d | n} g(d), evaluated through the local factors.
    pub fn eval_f(&self, fac: &Factorization) -> f64 {
        if let Some(v) = self.eval_f_int(fac) {
            return v as f64;
        }
        fac.factors()
            .iter()
            .map(|&(p, e)| 1.0 + (1..=e).map(|i| self.g_at(p, i)).sum::<f64>())
            .product()
    }

    /// Truncated Euler factor sum_{j>=0} g(p^j)/p^j, cut at the least J
    /// whose geometric tail bound p^-J * p/(p-1) drops below `tol`.
    pub fn euler_factor(&self, p: u64, tol: f64) -> EulerFactor {
        assert!(tol > 0.0, "euler_factor needs tol > 0");
        let pf = p as f64;
        let tail = |j: u32| pf.powi(-(j as i32)) * pf / (pf - 1.0);
        let mut value = 1.0;
        let mut pj = 1.0;
        let mut j = 0u32;
        while tail(j) >= tol {
            j += 1;
            pj /= pf;
            value += self.g_at(p, j) * pj;
        }
        EulerFactor {
            p,
            value,
            tail_bound: tail(j),
        }
    }
}
