//! Command-line front end: scans, comparison reports, constants,
//! coefficients and the verification suites.
//!
//! Exit codes: 0 success, 1 usage/config error, 2 numeric failure,
//! 3 verification failure.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::asympt::{
    a_coeff, b_coeff, euler_gamma, gamma_laurent_f, zeta, PredictionSettings, Predictor,
};
use crate::error::{Error, Result};
use crate::multiplicative::MultiplicativeSpec;
use crate::report::{self, RunConfig};
use crate::scan::s_direct;
use crate::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "phigcd",
    version,
    about = "Exact statistics of gcd(n, phi(n)) vs asymptotic predictions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact S_g(x) over an x grid
    Scan(ScanCmd),
    /// Empirical values against predicted main term and leading form
    Compare(CompareCmd),
    /// Constants (gamma, Mertens c, zeta, Landau-Ramanujan B) with
    /// truncation certificates
    Constants(ConstantsCmd),
    /// Expansion coefficients a_k, b_k and the Gamma-Laurent derivatives
    Coeffs(CoeffsCmd),
    /// Run a verification suite
    Verify(VerifyCmd),
}

#[derive(Args)]
struct CommonArgs {
    /// Quadrature / truncation tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Truncation point for infinite prime sums and products
    #[arg(long = "prime-cutoff", default_value = "1e7")]
    prime_cutoff: String,
    /// Segment width of the phi sieve
    #[arg(long, default_value_t = 1 << 20)]
    segment: u64,
    /// Worker threads for scans (0 = number of cpus)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized suites
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Args)]
struct GridArgs {
    /// One x value (repeatable); accepts scientific notation like 1e8
    #[arg(long = "x")]
    x: Vec<String>,
    /// Comma-separated ascending x grid
    #[arg(long)]
    xs: Option<String>,
}

#[derive(Args)]
struct ScanCmd {
    /// Weight spec: mu, tau, rpower:R, rfree:R, two-squares, smooth:B, rough:B
    #[arg(long)]
    spec: String,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CompareCmd {
    #[arg(long)]
    spec: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Expansion order
    #[arg(long = "K", default_value_t = 4)]
    k_order: u32,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ConstantsCmd {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CoeffsCmd {
    /// Largest coefficient index
    #[arg(long = "K", default_value_t = 4)]
    k_order: u32,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyCmd {
    /// identities, sieve, coefficients, predictions or all
    #[arg(long, default_value = "all")]
    suite: String,
    #[command(flatten)]
    common: CommonArgs,
}

/// Accept both integers and scientific notation (`1e8`, `2.5e6`).
fn parse_x(s: &str) -> Result<u64> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Config("empty x value".into()));
    }
    if s.contains(['e', 'E', '.']) {
        let v: f64 = s
            .parse()
            .map_err(|_| Error::Config(format!("bad x value `{s}`")))?;
        if !(v.is_finite() && v >= 1.0 && v <= u64::MAX as f64 && v.fract() == 0.0) {
            return Err(Error::Config(format!(
                "x value `{s}` is not a positive integer"
            )));
        }
        Ok(v as u64)
    } else {
        s.parse()
            .map_err(|_| Error::Config(format!("bad x value `{s}`")))
    }
}

impl GridArgs {
    fn resolve(&self) -> Result<Vec<u64>> {
        let mut grid = Vec::new();
        for s in &self.x {
            grid.push(parse_x(s)?);
        }
        if let Some(xs) = &self.xs {
            for part in xs.split(',') {
                grid.push(parse_x(part)?);
            }
        }
        Ok(grid)
    }
}

impl CommonArgs {
    fn settings(&self, k_order: u32) -> Result<PredictionSettings> {
        let s = PredictionSettings {
            tol: self.tol,
            prime_cutoff: parse_x(&self.prime_cutoff)?,
            k_order,
        };
        s.validate()?;
        Ok(s)
    }

    fn workers(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            self.threads
        }
    }

    fn run_config(&self, spec: &str, grid: &GridArgs, k_order: u32) -> Result<RunConfig> {
        let config = RunConfig {
            spec: spec.to_string(),
            x_grid: grid.resolve()?,
            k_order,
            tol: self.tol,
            prime_cutoff: parse_x(&self.prime_cutoff)?,
            segment_size: self.segment,
            workers: self.workers(),
            seed: self.seed,
        };
        config.validate()?;
        Ok(config)
    }

    fn want_json(&self) -> Result<bool> {
        match self.format.as_str() {
            "json" => Ok(true),
            "csv" => Ok(false),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }

    fn with_output<F>(&self, f: F) -> Result<()>
    where
        F: FnOnce(&mut dyn Write) -> Result<()>,
    {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                f(&mut w)?;
                w.flush()?;
                Ok(())
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                f(&mut lock)
            }
        }
    }
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version land on stdout with success; anything else is a
            // usage error and exits 1
            let usage_error = e.use_stderr();
            let _ = e.print();
            return if usage_error { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Cmd::Scan(cmd) => cmd_scan(cmd),
        Cmd::Compare(cmd) => cmd_compare(cmd),
        Cmd::Constants(cmd) => cmd_constants(cmd),
        Cmd::Coeffs(cmd) => cmd_coeffs(cmd),
        Cmd::Verify(cmd) => cmd_verify(cmd),
    }
}

fn cmd_scan(cmd: ScanCmd) -> Result<i32> {
    let config = cmd.common.run_config(&cmd.spec, &cmd.grid, 4)?;
    let spec = MultiplicativeSpec::builtin(&cmd.spec)?;
    let table = report::scan_table(&config)?;
    let scan_cfg = config.scan_config();
    let mut rows = Vec::new();
    for &x in &config.x_grid {
        let r = s_direct(&spec, x, &table, &scan_cfg)?;
        rows.push((x, r.value.as_f64(), r.runtime_ms));
    }
    let json = cmd.common.want_json()?;
    cmd.common.with_output(|out| {
        if json {
            let body = serde_json::json!({
                "config": config,
                "rows": rows
                    .iter()
                    .map(|&(x, value, ms)| serde_json::json!({
                        "x": x, "value": value, "runtime_ms": ms as u64,
                    }))
                    .collect::<Vec<_>>(),
            });
            serde_json::to_writer_pretty(&mut *out, &body)
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            writeln!(out)?;
            Ok(())
        } else {
            report::write_scan_csv(&rows, out)
        }
    })?;
    Ok(0)
}

fn cmd_compare(cmd: CompareCmd) -> Result<i32> {
    let config = cmd.common.run_config(&cmd.spec, &cmd.grid, cmd.k_order)?;
    let spec = MultiplicativeSpec::builtin(&cmd.spec)?;
    let settings = cmd.common.settings(cmd.k_order)?;
    let predictor = Predictor::new(settings)?;
    let report = report::compare(&config, &spec, &predictor)?;
    let json = cmd.common.want_json()?;
    cmd.common.with_output(|out| {
        if json {
            report::write_compare_json(&report, out)
        } else {
            report::write_compare_csv(&report.rows, out)
        }
    })?;
    Ok(0)
}

fn cmd_constants(cmd: ConstantsCmd) -> Result<i32> {
    let settings = cmd.common.settings(4)?;
    let predictor = Predictor::new(settings)?;
    let mut rows: Vec<(String, f64, f64)> = Vec::new();
    rows.push(("gamma".into(), euler_gamma(), 0.0));
    let c = predictor.mertens_constant()?;
    rows.push(("mertens_c".into(), c.value, c.tail_bound));
    for r in 2..=6u32 {
        let z = zeta(r)?;
        rows.push((format!("zeta({r})"), z.value, z.tail_bound));
    }
    let b = predictor.landau_ramanujan()?;
    rows.push(("landau_ramanujan_B".into(), b.value, b.tail_bound));
    let b_lo = predictor.landau_ramanujan_at(settings.prime_cutoff / 10)?;
    rows.push((
        "landau_ramanujan_cutoff_delta".into(),
        (b.value - b_lo.value).abs(),
        0.0,
    ));
    let json = cmd.common.want_json()?;
    cmd.common.with_output(|out| {
        if json {
            let body: serde_json::Map<String, serde_json::Value> = rows
                .iter()
                .map(|(name, value, tail)| {
                    (
                        name.clone(),
                        serde_json::json!({"value": value, "tail_bound": tail}),
                    )
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &body)
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            writeln!(out)?;
        } else {
            writeln!(out, "name,value,tail_bound")?;
            for (name, value, tail) in &rows {
                writeln!(
                    out,
                    "{name},{},{}",
                    report::fmt_f64(*value),
                    report::fmt_f64(*tail)
                )?;
            }
        }
        Ok(())
    })?;
    Ok(0)
}

fn cmd_coeffs(cmd: CoeffsCmd) -> Result<i32> {
    let settings = cmd.common.settings(cmd.k_order.clamp(1, 12))?;
    let kmax = cmd.k_order;
    let mut rows = Vec::new();
    for k in 0..=kmax {
        let a = a_coeff(k, &settings)?;
        let b = b_coeff(k, &settings)?;
        let f = if k <= 8 {
            Some(gamma_laurent_f(k, &settings)?)
        } else {
            None
        };
        rows.push((k, a, b, f));
    }
    let json = cmd.common.want_json()?;
    cmd.common.with_output(|out| {
        if json {
            let body: Vec<serde_json::Value> = rows
                .iter()
                .map(|&(k, a, b, f)| {
                    serde_json::json!({
                        "k": k, "a_k": a, "b_k": b, "b_minus_a": b - a,
                        "f_deriv": f, "delta": f.map(|v| (b - a - v).abs()),
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &body)
                .map_err(|e| Error::Io(std::io::Error::other(e)))?;
            writeln!(out)?;
        } else {
            writeln!(out, "k,a_k,b_k,b_minus_a,f_deriv,delta")?;
            for &(k, a, b, f) in &rows {
                let (fs, ds) = match f {
                    Some(v) => (report::fmt_f64(v), report::fmt_f64((b - a - v).abs())),
                    None => (String::new(), String::new()),
                };
                writeln!(
                    out,
                    "{k},{},{},{},{fs},{ds}",
                    report::fmt_f64(a),
                    report::fmt_f64(b),
                    report::fmt_f64(b - a)
                )?;
            }
        }
        Ok(())
    })?;
    Ok(0)
}

fn cmd_verify(cmd: VerifyCmd) -> Result<i32> {
    let suite = Suite::parse(&cmd.suite)?;
    let outcomes = run_suite(suite, cmd.common.seed)?;
    let mut failures = 0usize;
    cmd.common.with_output(|out| {
        for o in &outcomes {
            if o.passed {
                writeln!(out, "PASS {} {}", o.name, o.detail)?;
            } else {
                writeln!(out, "FAIL {} {}", o.name, o.detail)?;
            }
        }
        Ok(())
    })?;
    for o in &outcomes {
        if !o.passed {
            failures += 1;
        }
    }
    if failures > 0 {
        eprintln!("{failures} of {} checks failed", outcomes.len());
        Ok(3)
    } else {
        eprintln!("all {} checks passed", outcomes.len());
        Ok(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_x_forms() {
        assert_eq!(parse_x("1000").unwrap(), 1000);
        assert_eq!(parse_x("1e8").unwrap(), 100_000_000);
        assert_eq!(parse_x("2.5e7").unwrap(), 25_000_000);
        assert!(parse_x("1.5").is_err());
        assert!(parse_x("-3").is_err());
        assert!(parse_x("abc").is_err());
        assert!(parse_x("").is_err());
    }
}
