//! `envcalc`: batch front end for conjugates, hulls, subdifferentials,
//! Fitzpatrick functions, upper envelopes and the theorem lab.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on parse or usage
//! errors, 3 when an input violates a hypothesis of the requested operation.

mod compute;
mod input;
mod lab;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use envcalc::envelopes::EnvelopeKind;
use envcalc::io::Table;
use envcalc::Error;

use crate::compute::EnvelopeParams;
use crate::input::{backend_override, load, Func};
use crate::lab::Report;

#[derive(Parser)]
#[command(name = "envcalc", version, about = "Convex analysis on desk-scale instances")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Instance JSON file, or `gallery:NAME[:PART]`; repeat for infconv and check
    #[arg(long, global = true)]
    instance: Vec<String>,

    /// Primal probes as `start:stop:count`, one axis per coordinate separated by commas
    #[arg(long, global = true, allow_hyphen_values = true)]
    probes: Option<String>,

    /// Dual probes, same syntax as --probes
    #[arg(long, global = true, allow_hyphen_values = true)]
    dual_grid: Option<String>,

    /// Envelope kind: cup, sharp, starcup, circ, ncup, smile, smileeps
    #[arg(long, global = true)]
    kind: Option<String>,

    /// Chain length for ncup, instance count for suite, largest size exponent for bench
    #[arg(short, long, global = true)]
    n: Option<usize>,

    /// ε for smileeps
    #[arg(long, global = true)]
    eps: Option<String>,

    /// Seed for suite instances
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Largest accepted llt/brute disagreement in bench
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Theorem id to check; repeatable, all registered checks when absent
    #[arg(long, global = true)]
    theorem: Vec<String>,

    /// Write the CSV table here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Write the instances used by suite or gallery as JSON files into this directory
    #[arg(long, global = true)]
    export: Option<PathBuf>,
}

#[derive(Subcommand, Clone, PartialEq, Eq)]
enum Verb {
    /// f* at the dual probes
    Conjugate,
    /// cl conv f at the probes
    Clconv,
    /// Infimal convolution of two instances at the probes
    Infconv,
    /// Pairs of the subdifferential graph
    Subdiff,
    /// Fitzpatrick function over probes × dual probes
    Fitz,
    /// One member of the upper-envelope family at the probes
    Envelope,
    /// Portable hull membership of the probes
    Hull,
    /// Registered checks on the given instances
    Check,
    /// Registered checks on seeded random instances
    Suite,
    /// Gallery findings, for one entry or all of them
    Gallery { name: Option<String> },
    /// Timing of brute-force against linear-time conjugation
    Bench,
}

enum Failure {
    Usage(String),
    Lib(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn one_instance(cli: &Cli) -> Result<envcalc::theoremlab::LabInstance, Failure> {
    match cli.instance.as_slice() {
        [spec] => Ok(load(spec)?),
        other => Err(Failure::Usage(format!("expected one --instance, got {}", other.len()))),
    }
}

fn emit(cli: &Cli, table: &Table) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, table.to_csv()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{}", table.to_csv());
            Ok(())
        }
    }
}

fn finish(cli: &Cli, report: Report) -> Result<(), Failure> {
    print!("{}", report.text);
    if let Some(path) = &cli.out {
        fs::write(path, report.table.to_csv()).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let backend = backend_override()?;
    let (at, dual) = (cli.probes.as_deref(), cli.dual_grid.as_deref());
    let func = |cli: &Cli| -> Result<Func, Failure> { Ok(Func::from_instance(&one_instance(cli)?.instance, backend, at)?) };
    let table = match &cli.verb {
        Verb::Conjugate => compute::conjugate(func(cli)?, dual)?,
        Verb::Clconv => compute::clconv(func(cli)?, at, dual)?,
        Verb::Infconv => {
            let [f, g] = cli.instance.as_slice() else {
                return Err(Failure::Usage("infconv needs two --instance".into()));
            };
            let f = Func::from_instance(&load(f)?.instance, backend, at)?;
            let g = Func::from_instance(&load(g)?.instance, backend, at)?;
            compute::infconv(f, g, at)?
        }
        Verb::Subdiff => compute::subdiff(func(cli)?, at, dual)?,
        Verb::Fitz => compute::fitz(&one_instance(cli)?.instance, backend, at, dual)?,
        Verb::Envelope => {
            let kind: EnvelopeKind = cli.kind.as_deref().ok_or(Failure::Usage("envelope needs --kind".into()))?.parse()?;
            if kind == EnvelopeKind::NCup && cli.n.is_none() {
                return Err(Failure::Usage("ncup needs --n".into()));
            }
            if kind == EnvelopeKind::SmileEps && cli.eps.is_none() {
                return Err(Failure::Usage("smileeps needs --eps".into()));
            }
            let params = EnvelopeParams { kind, n: cli.n, eps: cli.eps.clone() };
            compute::envelope(&one_instance(cli)?.instance, backend, &params, at, dual)?
        }
        Verb::Hull => compute::hull(&one_instance(cli)?.instance, backend, at, dual)?,
        Verb::Check => {
            if cli.instance.is_empty() {
                return Err(Failure::Usage("check needs at least one --instance".into()));
            }
            let instances = cli.instance.iter().map(|s| load(s)).collect::<Result<Vec<_>, _>>()?;
            return finish(cli, lab::check_instances(&instances, &cli.theorem, at, dual)?);
        }
        Verb::Suite => {
            let report = lab::suite(cli.seed, cli.n.unwrap_or(200), &cli.theorem, cli.export.as_deref())?;
            return finish(cli, report);
        }
        Verb::Gallery { name } => return finish(cli, lab::galleries(name.as_deref(), cli.export.as_deref())?),
        Verb::Bench => {
            let exp = cli.n.unwrap_or(16);
            let exp = u32::try_from(exp).map_err(|_| Failure::Usage(format!("bench exponent {exp} is too large")))?;
            return finish(cli, lab::bench(exp, cli.tolerance)?);
        }
    };
    emit(cli, &table)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("envcalc: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("envcalc: {e}");
            ExitCode::from(if e.is_hypothesis() { 3 } else { 2 })
        }
    }
}
