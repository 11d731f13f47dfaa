//! Run configuration and the tables behind the `fracpoisson` command.
//!
//! Everything here is single-threaded and deterministic; the binary decides
//! how to split simulation work across threads and merges the results with
//! [`CountHistogram::merge`], which is order-independent.

use crate::error::{Error, Result};
use crate::limits::{SweepReport, SWEEP_PATHS, SWEEP_SEED};
use crate::montecarlo::{CountHistogram, EmpiricalPmf, ErlangSample};
use crate::processes::{FractionalPoisson, ProcessKind, WrightProcess};
use crate::renewal::WaitingTimeLaw;
use crate::report::{config_hash, fmt_f64, write_config_hash, Report};
use crate::specfun::{EvalResult, Order};
use crate::verify::{Fault, VerifyOptions, DEFAULT_BETAS};
use serde::{Serialize, Serializer};
use std::fmt;
use std::io::Write;
use std::ops::Range;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Bad input and unwritable files are usage errors; everything else is a
/// numerical failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subcommand {
    Eval,
    Tabulate,
    Probs,
    Simulate,
    Verify,
    Limits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Domain(format!("unknown format {s:?}; expected csv or json"))),
        }
    }
}

/// A single order or the standard set 0.25, 0.5, 0.75, 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BetaChoice {
    One(f64),
    All,
}

impl BetaChoice {
    pub fn values(self) -> Vec<f64> {
        match self {
            BetaChoice::One(b) => vec![b],
            BetaChoice::All => DEFAULT_BETAS.to_vec(),
        }
    }
}

impl FromStr for BetaChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<BetaChoice> {
        if s == "all" {
            return Ok(BetaChoice::All);
        }
        let b: f64 = s.parse().map_err(|_| Error::Domain(format!("beta must be a number or \"all\", got {s:?}")))?;
        Order::new(b)?;
        Ok(BetaChoice::One(b))
    }
}

impl fmt::Display for BetaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaChoice::One(b) => write!(f, "{b}"),
            BetaChoice::All => f.write_str("all"),
        }
    }
}

impl Serialize for BetaChoice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BetaChoice::One(b) => s.serialize_f64(*b),
            BetaChoice::All => s.serialize_str("all"),
        }
    }
}

/// Everything that determines the output of one invocation. Its JSON form,
/// together with the crate version, is hashed into every CSV trailer.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub version: String,
    pub subcommand: Subcommand,
    pub beta: BetaChoice,
    pub process: ProcessKind,
    pub lambda: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub log_grid: bool,
    /// Explicit evaluation times; replace the grid when non-empty.
    pub times: Vec<f64>,
    pub n_max: usize,
    pub paths: u64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    /// Simulate the n-th epoch instead of the counting number.
    pub erlang_n: Option<u32>,
    pub taus: Vec<f64>,
    pub quick: bool,
    pub fault: Fault,
}

impl RunConfig {
    /// Defaults for `subcommand`: β = 0.5 (all four for verify), the fpp
    /// with λ = 1, 200 points on [0.01, 100] (logarithmic for eval and
    /// tabulate), n ≤ 20, t = 1 for simulation and sweeps, CSV output
    /// except for the verify report.
    pub fn new(subcommand: Subcommand) -> RunConfig {
        let sweep = subcommand == Subcommand::Limits;
        RunConfig {
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand,
            beta: if subcommand == Subcommand::Verify { BetaChoice::All } else { BetaChoice::One(0.5) },
            process: ProcessKind::Fpp,
            lambda: 1.0,
            t_min: 0.01,
            t_max: 100.0,
            points: 200,
            log_grid: matches!(subcommand, Subcommand::Eval | Subcommand::Tabulate),
            times: Vec::new(),
            n_max: 20,
            paths: if sweep { SWEEP_PATHS } else { 100_000 },
            seed: if sweep { SWEEP_SEED } else { 42 },
            output: None,
            format: if subcommand == Subcommand::Verify { OutputFormat::Json } else { OutputFormat::Csv },
            erlang_n: None,
            taus: crate::limits::SWEEP_TAUS.to_vec(),
            quick: false,
            fault: Fault::None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for b in self.beta.values() {
            Order::new(b)?;
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::Domain(format!("lambda must be positive, got {}", self.lambda)));
        }
        if !(self.t_min < self.t_max) || !self.t_min.is_finite() || !self.t_max.is_finite() {
            return Err(Error::Domain(format!("need t_min < t_max, got {} and {}", self.t_min, self.t_max)));
        }
        if self.t_min < 0.0 || (self.log_grid && self.t_min == 0.0) {
            return Err(Error::Domain(format!("t_min must be positive on a log grid, got {}", self.t_min)));
        }
        if self.points < 2 {
            return Err(Error::Domain(format!("need at least 2 grid points, got {}", self.points)));
        }
        if let Some(t) = self.times.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return Err(Error::Domain(format!("times must be finite and >= 0, got {t}")));
        }
        if self.erlang_n == Some(0) {
            return Err(Error::Domain("Erlang index starts at 1".into()));
        }
        if self.paths == 0 && matches!(self.subcommand, Subcommand::Simulate | Subcommand::Limits) {
            return Err(Error::Domain("need at least one path".into()));
        }
        if self.taus.iter().any(|&t| !(t > 0.0)) || self.taus.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Domain("taus must be positive and decreasing".into()));
        }
        Ok(())
    }

    /// The orders to run; a Poisson run has only β = 1.
    pub fn betas(&self) -> Vec<Order> {
        let values = if self.process == ProcessKind::Poisson { vec![1.0] } else { self.beta.values() };
        values.into_iter().filter_map(|b| Order::new(b).ok()).collect()
    }

    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                let u = i as f64 / (n - 1) as f64;
                if i == n - 1 {
                    self.t_max
                } else if self.log_grid {
                    self.t_min * (self.t_max / self.t_min).powf(u)
                } else {
                    self.t_min + (self.t_max - self.t_min) * u
                }
            })
            .collect()
    }

    /// Explicit times if given, else the grid.
    pub fn eval_times(&self) -> Vec<f64> {
        if self.times.is_empty() {
            self.grid()
        } else {
            self.times.clone()
        }
    }

    /// Explicit times if given, else t = 1.
    pub fn sim_times(&self) -> Vec<f64> {
        if self.times.is_empty() {
            vec![1.0]
        } else {
            self.times.clone()
        }
    }

    pub fn hash(&self) -> Result<String> {
        config_hash(self)
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { betas: self.beta.values(), quick: self.quick, seed: self.seed, fault: self.fault }
    }

    pub fn model(&self, beta: Order) -> Result<Model> {
        Ok(match self.process {
            ProcessKind::Fpp => Model::Fpp(FractionalPoisson::new(beta, self.lambda)?),
            ProcessKind::Poisson => Model::Fpp(FractionalPoisson::poisson(self.lambda)?),
            ProcessKind::Wright => Model::Wright(WrightProcess::new(beta)),
        })
    }

    /// Where the table for `beta` goes: `out.csv` becomes `out_beta0.5.csv`
    /// when several orders are written, and `suffix` is appended after that.
    pub fn output_for(&self, beta: Order, suffix: &str) -> Option<PathBuf> {
        let base = self.output.as_ref()?;
        let mut tag = String::new();
        if self.betas().len() > 1 {
            tag.push_str(&format!("_beta{beta}"));
        }
        tag.push_str(suffix);
        Some(if tag.is_empty() { base.clone() } else { with_stem_suffix(base, &tag) })
    }
}

fn with_stem_suffix(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}{tag}"),
    };
    path.with_file_name(name)
}

/// The process behind a run, fpp and Poisson sharing one type.
#[derive(Clone, Copy, Debug)]
pub enum Model {
    Fpp(FractionalPoisson),
    Wright(WrightProcess),
}

impl Model {
    pub fn beta(&self) -> Order {
        match self {
            Model::Fpp(p) => p.beta(),
            Model::Wright(w) => w.beta(),
        }
    }

    /// The β = 1 Wright process: every waiting time is exactly 1.
    pub fn is_lattice(&self) -> bool {
        matches!(self, Model::Wright(w) if w.beta().is_degenerate())
    }

    pub fn law(&self) -> WaitingTimeLaw {
        match self {
            Model::Fpp(p) => WaitingTimeLaw::MittagLeffler(*p),
            Model::Wright(w) => WaitingTimeLaw::stable(w.beta()),
        }
    }

    pub fn survival(&self, t: f64) -> Result<EvalResult> {
        match self {
            Model::Fpp(p) => p.survival(t),
            Model::Wright(w) => w.survival(t),
        }
    }

    pub fn density(&self, t: f64) -> Result<EvalResult> {
        match self {
            Model::Fpp(p) => p.density(t),
            Model::Wright(w) => w.density(t),
        }
    }

    pub fn counting_probs(&self, t: f64, n_max: usize) -> Result<Vec<EvalResult>> {
        let d = match self {
            Model::Fpp(p) => p.counting_probs(t, n_max)?,
            Model::Wright(w) => w.counting_probs(t, n_max)?,
        };
        Ok((0..d.probs.len()).map(|n| EvalResult::new(d.probs[n], d.abs_err[n], d.methods[n])).collect())
    }

    pub fn erlang_density(&self, n: u32, t: f64) -> Result<EvalResult> {
        match self {
            Model::Fpp(p) => p.erlang_density(n, t),
            Model::Wright(w) => w.erlang_density(n, t),
        }
    }

    pub fn renewal_function(&self, t: f64) -> Result<EvalResult> {
        match self {
            Model::Fpp(p) => p.renewal_function(t),
            Model::Wright(w) => w.renewal_function(t),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Model::Fpp(p) => p.tag(),
            Model::Wright(w) => w.tag(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_f64(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(serde_json::Value::Null, serde_json::Value::Number),
            Cell::Int(n) => (*n).into(),
            Cell::Text(s) => s.clone().into(),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Cell {
        Cell::Int(n)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Cell {
        Cell::Text(s.to_string())
    }
}

/// A header and rows, written as CSV with a hash trailer or as JSON.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let j = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| &r[j]).collect())
    }

    pub fn write_csv<W: Write>(&self, mut w: W, hash: &str) -> Result<()> {
        {
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record(&self.columns)?;
            for row in &self.rows {
                out.write_record(row.iter().map(Cell::csv))?;
            }
            out.flush()?;
        }
        write_config_hash(w, hash)
    }

    /// `{"config_hash": …, "columns": […], "rows": [{column: value}, …]}`.
    pub fn to_json(&self, hash: &str) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                let map: serde_json::Map<String, serde_json::Value> =
                    self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                serde_json::Value::Object(map)
            })
            .collect();
        serde_json::json!({ "config_hash": hash, "columns": self.columns, "rows": rows })
    }

    pub fn write<W: Write>(&self, mut w: W, format: OutputFormat, hash: &str) -> Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(w, hash),
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut w, &self.to_json(hash))?;
                writeln!(w)?;
                Ok(())
            }
        }
    }
}

fn value_cells(r: &Result<EvalResult>) -> Result<[Cell; 3]> {
    match r {
        Ok(e) => Ok([e.value.into(), e.abs_err.into(), e.method.as_str().into()]),
        Err(Error::Degenerate(_)) => Ok([Cell::Empty, Cell::Empty, "delta".into()]),
        Err(e) => Err(e.clone()),
    }
}

/// Ψ, φ and m(t) with their error bounds and methods.
pub fn eval_table(model: &Model, times: &[f64]) -> Result<Table> {
    let mut table =
        Table::new(vec!["t", "psi", "psi_err", "psi_method", "phi", "phi_err", "phi_method", "m", "m_err", "m_method"]);
    for &t in times {
        let mut row = vec![Cell::Num(t)];
        if model.is_lattice() {
            let psi = if t < 1.0 { 1.0 } else { 0.0 };
            row.extend([psi.into(), 0.0.into(), "closed_form".into()]);
            row.extend([Cell::Empty, Cell::Empty, "delta".into()]);
        } else {
            row.extend(value_cells(&model.survival(t))?);
            row.extend(value_cells(&model.density(t))?);
        }
        row.extend(value_cells(&model.renewal_function(t))?);
        table.push(row);
    }
    Ok(table)
}

/// Columns t,psi,phi. For the β = 1 Wright process Ψ is the step
/// Θ(t) − Θ(t − 1), φ is a delta and is written as 0 with an extra column
/// delta_at = 1 naming its location.
pub fn tabulate_table(model: &Model, times: &[f64]) -> Result<Table> {
    if model.is_lattice() {
        let mut table = Table::new(vec!["t", "psi", "phi", "delta_at"]);
        for &t in times {
            let psi = if t < 1.0 { 1.0 } else { 0.0 };
            table.push(vec![t.into(), psi.into(), 0.0.into(), 1.0.into()]);
        }
        return Ok(table);
    }
    let mut table = Table::new(vec!["t", "psi", "phi"]);
    for &t in times {
        table.push(vec![t.into(), model.survival(t)?.value.into(), model.density(t)?.value.into()]);
    }
    Ok(table)
}

/// p_n(t) for n ≤ n_max and q_n(t) for 1 ≤ n ≤ n_max, each with its error
/// bound and method. Delta-distributed epochs leave q empty with method
/// "delta".
pub fn probs_table(model: &Model, times: &[f64], n_max: usize) -> Result<Table> {
    let mut table = Table::new(vec!["t", "n", "p", "p_err", "p_method", "q", "q_err", "q_method"]);
    for &t in times {
        let probs = model.counting_probs(t, n_max)?;
        for (n, p) in probs.iter().enumerate() {
            let mut row = vec![t.into(), (n as u64).into()];
            row.extend(value_cells(&Ok(*p))?);
            if n == 0 {
                row.extend([Cell::Empty, Cell::Empty, Cell::Empty]);
            } else {
                row.extend(value_cells(&model.erlang_density(n as u32, t))?);
            }
            table.push(row);
        }
    }
    Ok(table)
}

/// Splits `0..paths` into consecutive ranges of at most `chunk` paths.
pub fn path_chunks(paths: u64, chunk: u64) -> Vec<Range<u64>> {
    let chunk = chunk.max(1);
    (0..paths.div_ceil(chunk)).map(|i| i * chunk..((i + 1) * chunk).min(paths)).collect()
}

/// Empirical against analytic counting pmf at time t. The analytic column
/// extends to n_max even where no path landed; `z` is the deviation in
/// units of the analytic binomial standard error.
pub fn pmf_table(model: &Model, t: f64, hist: CountHistogram, n_max: usize) -> Result<(Table, f64)> {
    let len = hist.counts.len().max(n_max + 1);
    let analytic: Vec<f64> = model.counting_probs(t, len - 1)?.iter().map(|e| e.value).collect();
    let pmf = EmpiricalPmf::from_histogram(&model.law(), t, hist);
    let max_z = pmf.max_z(&analytic);
    let paths = pmf.paths() as f64;
    let mut table = Table::new(vec!["n", "count", "empirical_p", "analytic_p", "std_err", "z"]);
    for (k, &a) in analytic.iter().enumerate() {
        let e = pmf.probs.get(k).copied().unwrap_or(0.0);
        let sigma = (a * (1.0 - a) / paths).sqrt();
        let z = if e == a { 0.0 } else { (e - a) / sigma };
        table.push(vec![
            (k as u64).into(),
            pmf.histogram.counts.get(k).copied().unwrap_or(0).into(),
            e.into(),
            a.into(),
            pmf.std_err.get(k).copied().unwrap_or(0.0).into(),
            z.into(),
        ]);
    }
    Ok((table, max_z))
}

/// Equal-probability histogram of the n-th epoch against Q_n.
pub fn erlang_table(sample: &ErlangSample) -> Table {
    let mut table = Table::new(vec!["bin_left", "bin_right", "count", "empirical_p", "analytic_p", "std_err"]);
    for b in &sample.histogram {
        table.push(vec![
            b.left.into(),
            b.right.into(),
            b.count.into(),
            b.empirical_p.into(),
            b.analytic_p.into(),
            b.std_err.into(),
        ]);
    }
    table
}

pub fn sweep_table(report: &SweepReport) -> Table {
    let mut table = Table::new(vec!["tau", "h", "ks_statistic", "paths", "pass"]);
    for r in &report.rows {
        table.push(vec![
            r.tau.into(),
            r.h.into(),
            r.ks_statistic.into(),
            r.paths.into(),
            if r.pass { "true" } else { "false" }.into(),
        ]);
    }
    table
}

/// The verify report as rows name,pass,measured,tolerance,detail.
pub fn checks_table(report: &Report) -> Table {
    let mut table = Table::new(vec!["name", "pass", "measured", "tolerance", "detail"]);
    for c in &report.checks {
        table.push(vec![
            c.name.as_str().into(),
            if c.pass { "true" } else { "false" }.into(),
            c.measured.into(),
            c.tolerance.into(),
            c.detail.as_deref().map_or(Cell::Empty, Cell::from),
        ]);
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(sub: Subcommand) -> RunConfig {
        RunConfig::new(sub)
    }

    #[test]
    fn defaults_validate() {
        for sub in [
            Subcommand::Eval,
            Subcommand::Tabulate,
            Subcommand::Probs,
            Subcommand::Simulate,
            Subcommand::Verify,
            Subcommand::Limits,
        ] {
            cfg(sub).validate().unwrap();
        }
    }

    #[test]
    fn invalid_configs_are_usage_errors() {
        let mut c = cfg(Subcommand::Tabulate);
        c.t_min = 5.0;
        c.t_max = 1.0;
        assert_eq!(exit_code(&c.validate().unwrap_err()), EXIT_USAGE);
        let mut c = cfg(Subcommand::Tabulate);
        c.points = 1;
        assert!(c.validate().is_err());
        let mut c = cfg(Subcommand::Tabulate);
        c.t_min = 0.0;
        assert!(c.validate().is_err());
        c.log_grid = false;
        c.validate().unwrap();
        assert!("1.5".parse::<BetaChoice>().is_err());
        assert!("0".parse::<BetaChoice>().is_err());
        assert_eq!("all".parse::<BetaChoice>().unwrap(), BetaChoice::All);
        assert_eq!(exit_code(&Error::NonConvergence("x".into())), EXIT_NUMERIC);
    }

    #[test]
    fn grids() {
        let mut c = cfg(Subcommand::Tabulate);
        let g = c.grid();
        assert_eq!(g.len(), 200);
        assert_eq!((g[0], g[199]), (0.01, 100.0));
        assert!((g[1] / g[0] - (1e4f64).powf(1.0 / 199.0)).abs() < 1e-12);
        c.log_grid = false;
        c.points = 3;
        c.t_min = 0.0;
        c.t_max = 2.0;
        assert_eq!(c.grid(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn output_names() {
        let mut c = cfg(Subcommand::Tabulate);
        c.output = Some(PathBuf::from("dir/out.csv"));
        let b = Order::new(0.5).unwrap();
        assert_eq!(c.output_for(b, ""), Some(PathBuf::from("dir/out.csv")));
        c.beta = BetaChoice::All;
        assert_eq!(c.output_for(b, ""), Some(PathBuf::from("dir/out_beta0.5.csv")));
        assert_eq!(c.output_for(b, "_t1"), Some(PathBuf::from("dir/out_beta0.5_t1.csv")));
        c.process = ProcessKind::Poisson;
        assert_eq!(c.betas().len(), 1);
    }

    #[test]
    fn hash_tracks_the_config() {
        let a = cfg(Subcommand::Probs);
        let mut b = a.clone();
        assert_eq!(a.hash().unwrap(), b.hash().unwrap());
        b.seed += 1;
        assert_ne!(a.hash().unwrap(), b.hash().unwrap());
    }

    #[test]
    fn tabulate_exponential_and_step() {
        let mut c = cfg(Subcommand::Tabulate);
        c.beta = BetaChoice::One(1.0);
        let m = c.model(Order::new(1.0).unwrap()).unwrap();
        let t = tabulate_table(&m, &c.grid()).unwrap();
        for row in &t.rows {
            let (Cell::Num(x), Cell::Num(psi)) = (&row[0], &row[1]) else { panic!() };
            assert!((psi - (-x).exp()).abs() < 1e-12);
        }
        c.process = ProcessKind::Wright;
        let m = c.model(Order::new(1.0).unwrap()).unwrap();
        let t = tabulate_table(&m, &[0.5, 1.5]).unwrap();
        assert_eq!(t.columns, vec!["t", "psi", "phi", "delta_at"]);
        assert_eq!(t.rows[0][1], Cell::Num(1.0));
        assert_eq!(t.rows[1][1], Cell::Num(0.0));
        assert_eq!(t.rows[0][3], Cell::Num(1.0));
    }

    #[test]
    fn tabulate_power_tail() {
        let c = cfg(Subcommand::Tabulate);
        let m = c.model(Order::new(0.5).unwrap()).unwrap();
        let t = tabulate_table(&m, &[100.0]).unwrap();
        let Cell::Num(psi) = t.rows[0][1] else { panic!() };
        let tail = 1.0 / (std::f64::consts::PI * 100.0).sqrt();
        assert!((psi / tail - 1.0).abs() < 0.05);
    }

    #[test]
    fn probs_spot_rows() {
        let find = |t: &Table, n: u64| -> f64 {
            let row = t.rows.iter().find(|r| r[1] == Cell::Int(n)).unwrap();
            match row[2] {
                Cell::Num(x) => x,
                _ => panic!(),
            }
        };
        let mut c = cfg(Subcommand::Probs);
        c.process = ProcessKind::Poisson;
        let m = c.model(Order::new(1.0).unwrap()).unwrap();
        let p = find(&probs_table(&m, &[2.0], 5).unwrap(), 2);
        assert!((p - 0.2706705664732254).abs() < 1e-15);
        c.process = ProcessKind::Fpp;
        let m = c.model(Order::new(0.5).unwrap()).unwrap();
        let p = find(&probs_table(&m, &[1.0], 5).unwrap(), 0);
        assert!((p - 0.4275835761558070).abs() < 1e-15);
        c.process = ProcessKind::Wright;
        let m = c.model(Order::new(1.0).unwrap()).unwrap();
        let t = probs_table(&m, &[3.5], 5).unwrap();
        assert_eq!(find(&t, 3), 1.0);
        assert_eq!(t.rows[3][7], Cell::Text("delta".into()));
    }

    #[test]
    fn csv_has_header_and_trailer() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec![0.5.into(), Cell::Empty]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf, "abc").unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n5e-1,\n# config_hash=abc\n");
        let j = t.to_json("abc");
        assert_eq!(j["rows"][0]["a"], 0.5);
        assert!(j["rows"][0]["b"].is_null());
    }

    #[test]
    fn chunks_cover_exactly() {
        let c = path_chunks(10, 4);
        assert_eq!(c, vec![0..4, 4..8, 8..10]);
        assert!(path_chunks(0, 4).is_empty());
    }
}
