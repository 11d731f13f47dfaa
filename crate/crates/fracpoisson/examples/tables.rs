//! The tables behind the command-line tool, built in-process.
//!
//!     cargo run --release --example tables

use fracpoisson::cli::{eval_table, probs_table, tabulate_table, OutputFormat, RunConfig, Subcommand};
use fracpoisson::processes::ProcessKind;
use fracpoisson::Result;
use std::io::stdout;

fn main() -> Result<()> {
    let mut config = RunConfig::new(Subcommand::Eval);
    config.times = vec![0.1, 1.0, 10.0];
    config.validate()?;
    let hash = config.hash()?;
    for beta in config.betas() {
        let model = config.model(beta)?;
        eval_table(&model, &config.eval_times())?.write(stdout(), OutputFormat::Csv, &hash)?;
    }

    let mut config = RunConfig::new(Subcommand::Tabulate);
    config.process = ProcessKind::Wright;
    config.points = 5;
    let model = config.model(config.betas()[0])?;
    println!();
    tabulate_table(&model, &config.grid())?.write(stdout(), OutputFormat::Csv, &config.hash()?)?;

    let mut config = RunConfig::new(Subcommand::Probs);
    config.times = vec![2.0];
    config.n_max = 3;
    let model = config.model(config.betas()[0])?;
    println!();
    probs_table(&model, &config.eval_times(), config.n_max)?.write(stdout(), OutputFormat::Json, &config.hash()?)?;
    println!();
    Ok(())
}
