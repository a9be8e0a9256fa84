//! Truncated asymptotic series in the variable u = 1/log_3 x, and the
//! formal exponential that turns exp(sum e_k u^k) into 1 + sum c_k u^k.

use crate::error::{Error, Result};

/// Coefficients c_0..c_K of a truncated expansion in u = 1/log_3 x.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesExpansion {
    coeffs: Vec<f64>,
}

impl SeriesExpansion {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("series needs at least c_0".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Numeric("series coefficient not finite".into()));
        }
        Ok(Self { coeffs })
    }

    /// Truncation order K.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    /// Horner evaluation at u; eval(0) = c_0.
    pub fn eval(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }
}

/// Formal power-series exponential truncated at the input's order. Requires
/// c_0 = 0; uses the derivative recurrence n c_n = sum_{j=1..n} j e_j c_{n-j}.
pub fn series_exp(input: &SeriesExpansion) -> Result<SeriesExpansion> {
    if input.coeff(0) != 0.0 {
        return Err(Error::Precondition(
            "series_exp needs a zero constant term".into(),
        ));
    }
    let k = input.order();
    let e = input.coeffs();
    let mut c = vec![0.0f64; k + 1];
    c[0] = 1.0;
    for n in 1..=k {
        let mut s = 0.0;
        for j in 1..=n {
            s += j as f64 * e[j] * c[n - j];
        }
        c[n] = s / n as f64;
    }
    SeriesExpansion::new(c)
}
