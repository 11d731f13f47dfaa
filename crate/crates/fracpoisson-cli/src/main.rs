use clap::{Args, Parser, Subcommand as ClapSubcommand};
use fracpoisson::cli::{
    checks_table, erlang_table, eval_table, exit_code, path_chunks, pmf_table, probs_table, sweep_table,
    tabulate_table, BetaChoice, OutputFormat, RunConfig, Subcommand, Table, EXIT_FAIL, EXIT_PASS,
};
use fracpoisson::limits::{process_law, sweep_from_histograms, SWEEP_BASELINE};
use fracpoisson::montecarlo::{count_histogram, erlang_ks, sample_erlang_epochs, CountHistogram};
use fracpoisson::processes::ProcessKind;
use fracpoisson::report::Report;
use fracpoisson::verify::{suite_tasks, Fault};
use fracpoisson::{Error, Result};
use rayon::prelude::*;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

/// Paths per parallel work item.
const CHUNK: u64 = 4096;

#[derive(Parser)]
#[command(name = "fracpoisson", version, about = "Fractional Poisson and Wright renewal processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ClapSubcommand)]
enum Command {
    /// Survival, density and renewal function with error bounds and methods
    Eval(RunArgs),
    /// Survival and density on a log grid, one file per order
    Tabulate(RunArgs),
    /// Counting probabilities p_n and epoch densities q_n
    Probs(RunArgs),
    /// Monte Carlo counting pmf or epoch histogram against the analytic law
    Simulate(RunArgs),
    /// Run the cross-verification suite
    Verify(RunArgs),
    /// Diffusion-limit convergence sweep
    Limits(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Order in (0, 1], or "all"
    #[arg(long)]
    beta: Option<BetaChoice>,
    /// fpp, wright or poisson
    #[arg(long)]
    process: Option<ProcessKind>,
    /// Intensity of the fractional Poisson process
    #[arg(long)]
    lambda: Option<f64>,
    /// Grid start
    #[arg(long)]
    t_min: Option<f64>,
    /// Grid end
    #[arg(long)]
    t_max: Option<f64>,
    /// Grid size
    #[arg(long)]
    points: Option<usize>,
    /// Log-spaced grid (default for eval and tabulate)
    #[arg(long, conflicts_with = "linear_grid")]
    log_grid: bool,
    /// Evenly spaced grid
    #[arg(long)]
    linear_grid: bool,
    /// Explicit times, comma separated; replace the grid
    #[arg(long = "t", value_delimiter = ',')]
    times: Vec<f64>,
    /// Largest count n
    #[arg(long)]
    n_max: Option<usize>,
    /// Monte Carlo paths
    #[arg(long)]
    paths: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; several orders or times add _beta and _t suffixes
    #[arg(long)]
    output: Option<PathBuf>,
    /// csv or json
    #[arg(long)]
    format: Option<OutputFormat>,
    /// simulate: sample the n-th epoch instead of N(t)
    #[arg(long)]
    erlang_n: Option<u32>,
    /// limits: decreasing time scales, comma separated
    #[arg(long, value_delimiter = ',')]
    taus: Vec<f64>,
    /// verify: analytic checks only
    #[arg(long)]
    quick: bool,
    /// verify: inject a known error (none, wrong-gamma)
    #[arg(long)]
    fault: Option<Fault>,
}

impl RunArgs {
    fn into_config(self, sub: Subcommand) -> RunConfig {
        let mut c = RunConfig::new(sub);
        c.beta = self.beta.unwrap_or(c.beta);
        c.process = self.process.unwrap_or(c.process);
        c.lambda = self.lambda.unwrap_or(c.lambda);
        c.t_min = self.t_min.unwrap_or(c.t_min);
        c.t_max = self.t_max.unwrap_or(c.t_max);
        c.points = self.points.unwrap_or(c.points);
        if self.log_grid {
            c.log_grid = true;
        } else if self.linear_grid {
            c.log_grid = false;
        }
        c.times = self.times;
        c.n_max = self.n_max.unwrap_or(c.n_max);
        c.paths = self.paths.unwrap_or(c.paths);
        c.seed = self.seed.unwrap_or(c.seed);
        c.output = self.output;
        c.format = self.format.unwrap_or(c.format);
        c.erlang_n = self.erlang_n;
        if !self.taus.is_empty() {
            c.taus = self.taus;
        }
        c.quick = self.quick;
        c.fault = self.fault.unwrap_or(c.fault);
        c
    }
}

fn main() {
    let cli = Cli::parse();
    let (sub, args) = match cli.command {
        Command::Eval(a) => (Subcommand::Eval, a),
        Command::Tabulate(a) => (Subcommand::Tabulate, a),
        Command::Probs(a) => (Subcommand::Probs, a),
        Command::Simulate(a) => (Subcommand::Simulate, a),
        Command::Verify(a) => (Subcommand::Verify, a),
        Command::Limits(a) => (Subcommand::Limits, a),
    };
    let config = args.into_config(sub);
    let code = match run(&config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    std::process::exit(code);
}

fn run(config: &RunConfig) -> Result<i32> {
    config.validate()?;
    match config.subcommand {
        Subcommand::Eval | Subcommand::Tabulate | Subcommand::Probs => analytic(config),
        Subcommand::Simulate => simulate(config),
        Subcommand::Verify => verify(config),
        Subcommand::Limits => limits(config),
    }
}

fn emit(config: &RunConfig, table: &Table, path: Option<PathBuf>) -> Result<()> {
    let hash = config.hash()?;
    match path {
        Some(p) => {
            let file = File::create(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let mut w = BufWriter::new(file);
            table.write(&mut w, config.format, &hash)?;
            w.flush()?;
        }
        None => table.write(io::stdout().lock(), config.format, &hash)?,
    }
    Ok(())
}

fn analytic(config: &RunConfig) -> Result<i32> {
    let times = config.eval_times();
    for beta in config.betas() {
        let model = config.model(beta)?;
        let table = match config.subcommand {
            Subcommand::Eval => eval_table(&model, &times)?,
            Subcommand::Tabulate => tabulate_table(&model, &times)?,
            _ => probs_table(&model, &times, config.n_max)?,
        };
        emit(config, &table, config.output_for(beta, ""))?;
    }
    Ok(EXIT_PASS)
}

fn histogram(law: &fracpoisson::renewal::WaitingTimeLaw, t: f64, seed: u64, paths: u64) -> Result<CountHistogram> {
    path_chunks(paths, CHUNK)
        .into_par_iter()
        .map(|r| count_histogram(law, t, seed, r))
        .try_reduce(CountHistogram::default, |a, b| Ok(a.merge(&b)))
}

fn simulate(config: &RunConfig) -> Result<i32> {
    let times = config.sim_times();
    for beta in config.betas() {
        let model = config.model(beta)?;
        let law = model.law();
        if let Some(n) = config.erlang_n {
            let chunks: Vec<Vec<f64>> = path_chunks(config.paths, CHUNK)
                .into_par_iter()
                .map(|r| sample_erlang_epochs(&law, n, config.seed, r))
                .collect::<Result<_>>()?;
            let sample = erlang_ks(&law, n, chunks.concat(), 40)?;
            eprintln!(
                "{} epoch {n}: KS {:.4} against critical {:.4}",
                model.tag(),
                sample.ks_statistic,
                sample.critical
            );
            emit(config, &erlang_table(&sample), config.output_for(beta, ""))?;
            continue;
        }
        for &t in &times {
            let hist = histogram(&law, t, config.seed, config.paths)?;
            let (table, max_z) = pmf_table(&model, t, hist, config.n_max)?;
            eprintln!("{} at t={t}: largest pmf deviation {max_z:.2} sigma", model.tag());
            let suffix = if times.len() > 1 { format!("_t{t}") } else { String::new() };
            emit(config, &table, config.output_for(beta, &suffix))?;
        }
    }
    Ok(EXIT_PASS)
}

fn verify(config: &RunConfig) -> Result<i32> {
    let start = Instant::now();
    let opts = config.verify_options();
    let tasks = suite_tasks(&opts)?;
    let checks: Vec<_> = tasks.into_par_iter().map(|task| (task.run)()).collect();
    let mut report = Report::new(if opts.quick { "verify-quick" } else { "verify" });
    report.extend(checks.into_iter().flatten());
    for c in &report.checks {
        eprintln!("{}", c.line());
    }
    let failed = report.failures().count();
    eprintln!("{} checks, {failed} failed, {:.1} s", report.checks.len(), start.elapsed().as_secs_f64());
    match (config.format, &config.output) {
        (OutputFormat::Csv, _) => emit(config, &checks_table(&report), config.output.clone())?,
        (OutputFormat::Json, Some(p)) => {
            std::fs::write(p, report.to_json()? + "\n").map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
        }
        (OutputFormat::Json, None) => println!("{}", report.to_json()?),
    }
    Ok(if report.pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn limits(config: &RunConfig) -> Result<i32> {
    let mut pass = true;
    let betas: Vec<_> = config.betas().into_iter().filter(|b| !b.is_degenerate()).collect();
    if betas.is_empty() || config.process == ProcessKind::Poisson {
        return Err(Error::Domain("the diffusion limit needs a fractional order beta < 1".into()));
    }
    let times = config.sim_times();
    for beta in betas {
        let law = process_law(config.process, beta)?;
        for &t in &times {
            let runs: Vec<(f64, CountHistogram)> = config
                .taus
                .par_iter()
                .map(|&tau| Ok((tau, histogram(&law, t / tau, config.seed, config.paths)?)))
                .collect::<Result<_>>()?;
            let report = sweep_from_histograms(config.process, beta, t, &runs, SWEEP_BASELINE)?;
            eprintln!(
                "{} beta={beta} t={t}: final KS {:.4}, baseline {}, sigma {:.4}, monotone {}: {}",
                config.process,
                report.final_ks(),
                report.baseline,
                report.sigma,
                report.monotone,
                if report.pass { "PASS" } else { "FAIL" }
            );
            pass &= report.pass;
            let suffix = if times.len() > 1 { format!("_t{t}") } else { String::new() };
            emit(config, &sweep_table(&report), config.output_for(beta, &suffix))?;
        }
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}
