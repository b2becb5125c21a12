//! `discrete-l`: runs the experiments of the `discrete-l` library and writes
//! their tables as CSV or JSON.
//!
//! Exit status is 2 for invalid arguments, 1 when `acceptance` has a failing
//! criterion or output cannot be written, and 0 otherwise. The worker thread
//! count is read once from `DISCRETE_L_THREADS`; it never changes results.

mod args;
mod commands;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use discrete_l::acceptance::{run_all, run_criterion, CriterionOutcome};

use args::{Cli, Command, Format};
use commands::Output;

const THREADS_VAR: &str = "DISCRETE_L_THREADS";

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().with_context(|| format!("{THREADS_VAR}={raw} is not a count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run_command(command: &Command) -> Result<Output> {
    match command {
        Command::Coeffs { max_k } => commands::coeffs(*max_k),
        Command::ZetaN { s, theta, n } => commands::zeta_n_value(*s, *theta, *n),
        Command::LN { q, index, s, n } => commands::l_n_value(*q, *index, *s, *n),
        Command::Identities { family, p, n, theta, q, index } => {
            commands::identities(*family, *p, *n, *theta, *q, *index)
        }
        Command::Recursion { p_max } => commands::recursion(*p_max),
        Command::HeatScan { q, index, n, t_min, t_max, steps } => {
            commands::heat_scan(*q, *index, *n, *t_min, *t_max, *steps)
        }
        Command::GrhRatio { q, index, s_list, n_list, widen_even_region } => {
            commands::grh_ratio(*q, *index, s_list, n_list, *widen_even_region)
        }
        Command::Siegel { q, index, s_steps, n_list } => commands::siegel(*q, *index, *s_steps, n_list),
        Command::Characters { q } => commands::characters(*q),
        Command::Acceptance { .. } => unreachable!("handled separately"),
    }
}

fn sink(cli: &Cli) -> Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit(cli: &Cli, output: &Output) -> Result<()> {
    let mut out = sink(cli)?;
    match cli.format {
        Format::Csv => output.table.write_csv(&mut out)?,
        Format::Json => {
            let text = match &output.json {
                Some(v) => serde_json::to_string_pretty(v)?,
                None => output.table.to_json_string(),
            };
            writeln!(out, "{text}")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn acceptance(cli: &Cli, only: &[u8]) -> Result<bool> {
    let outcomes: Vec<CriterionOutcome> = if only.is_empty() {
        run_all()
    } else {
        only.iter()
            .map(|&id| run_criterion(id).with_context(|| format!("no criterion {id}")))
            .collect::<Result<_>>()?
    };
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let mut out = sink(cli)?;
    match cli.format {
        Format::Csv => {
            for o in &outcomes {
                writeln!(out, "{}", o.line())?;
            }
            writeln!(out, "{passed}/{} criteria passed", outcomes.len())?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&outcomes)?)?,
    }
    out.flush()?;
    Ok(passed == outcomes.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if let Command::Acceptance { only } = &cli.command {
        return match acceptance(&cli, only) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        };
    }
    let output = match run_command(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    match emit(&cli, &output) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
