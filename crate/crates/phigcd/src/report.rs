//! Comparison reports: empirical scan values side by side with the
//! predicted main term and leading form, serialized as CSV or JSON.
//!
//! Numeric fields are written with 17 significant digits, enough for a
//! lossless f64 round trip, and every value is computed with a
//! deterministic reduction, so re-running with a different worker count
//! reproduces the output byte for byte.

use std::io::Write;

use serde::Serialize;

use crate::arith::{sieve_primes, PrimeTable};
use crate::asympt::Predictor;
use crate::error::{Error, Result};
use crate::multiplicative::MultiplicativeSpec;
use crate::scan::{s_direct, ScanConfig};

/// Exact CSV header of a comparison report.
pub const COMPARE_HEADER: &str =
    "x,empirical,pred_main,pred_leading,ratio_main,ratio_leading,q_g,tail_bound";

/// Everything a run needs; doubles as the `config` object in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub spec: String,
    pub x_grid: Vec<u64>,
    pub k_order: u32,
    pub tol: f64,
    pub prime_cutoff: u64,
    pub segment_size: u64,
    pub workers: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.x_grid.is_empty() {
            return Err(Error::Config("x grid must not be empty".into()));
        }
        if self.x_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("x grid must be strictly ascending".into()));
        }
        if self.workers < 1 {
            return Err(Error::Config("worker count must be >= 1".into()));
        }
        Ok(())
    }

    pub fn scan_config(&self) -> ScanConfig {
        ScanConfig {
            segment_size: self.segment_size,
            workers: self.workers,
        }
    }
}

/// One row of a comparison report.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub x: u64,
    pub empirical: f64,
    pub pred_main: f64,
    pub pred_leading: f64,
    pub ratio_main: f64,
    pub ratio_leading: f64,
    pub q_g: f64,
    pub tail_bound: f64,
}

/// Comparison rows plus the truncation certificates of the run.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub config: RunConfig,
    pub rows: Vec<ComparisonRow>,
    pub certificates: Certificates,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificates {
    /// Largest Q_g truncation tail over the grid.
    pub q_g_tail_max: f64,
    /// Tolerance used for the local Euler factors.
    pub euler_factor_tol: f64,
}

/// Prime table large enough to phi-sieve every x in the grid.
pub fn scan_table(config: &RunConfig) -> Result<PrimeTable> {
    let max_x = *config.x_grid.last().expect("validated nonempty");
    sieve_primes((max_x + 1).isqrt() + 1)
}

/// Run the empirical scan and the predictions across the grid.
pub fn compare(
    config: &RunConfig,
    spec: &MultiplicativeSpec,
    predictor: &Predictor,
) -> Result<ComparisonReport> {
    config.validate()?;
    let table = scan_table(config)?;
    let scan_cfg = config.scan_config();
    let mut rows = Vec::with_capacity(config.x_grid.len());
    let mut tail_max = 0.0f64;
    for &x in &config.x_grid {
        let empirical = s_direct(spec, x, &table, &scan_cfg)?.value.as_f64();
        let xf = x as f64;
        let pred_main = predictor.main_term(spec, xf)?;
        let pred_leading = predictor.corollary_product(spec, xf)?;
        let q = predictor.q_g(spec, xf)?;
        tail_max = tail_max.max(q.tail_bound);
        rows.push(ComparisonRow {
            x,
            empirical,
            pred_main,
            pred_leading,
            ratio_main: ratio(empirical, pred_main),
            ratio_leading: ratio(empirical, pred_leading),
            q_g: q.value,
            tail_bound: q.tail_bound,
        });
    }
    Ok(ComparisonReport {
        config: config.clone(),
        rows,
        certificates: Certificates {
            q_g_tail_max: tail_max,
            euler_factor_tol: predictor.settings().tol,
        },
    })
}

fn ratio(num: f64, den: f64) -> f64 {
    if den != 0.0 {
        num / den
    } else {
        f64::NAN
    }
}

/// 17 significant digits: lossless for f64 and stable across platforms.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_compare_csv<W: Write + ?Sized>(rows: &[ComparisonRow], out: &mut W) -> Result<()> {
    writeln!(out, "{COMPARE_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.x,
            fmt_f64(r.empirical),
            fmt_f64(r.pred_main),
            fmt_f64(r.pred_leading),
            fmt_f64(r.ratio_main),
            fmt_f64(r.ratio_leading),
            fmt_f64(r.q_g),
            fmt_f64(r.tail_bound),
        )?;
    }
    Ok(())
}

pub fn write_compare_json<W: Write + ?Sized>(report: &ComparisonReport, out: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, report)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    writeln!(out)?;
    Ok(())
}

/// CSV for plain scans: one row per x.
pub fn write_scan_csv<W: Write + ?Sized>(rows: &[(u64, f64, u128)], out: &mut W) -> Result<()> {
    writeln!(out, "x,value,runtime_ms")?;
    for &(x, value, ms) in rows {
        writeln!(out, "{x},{},{ms}", fmt_f64(value))?;
    }
    Ok(())
}
