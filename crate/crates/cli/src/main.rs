use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;

use error::CliError;

/// Exact canonical bases, crystal data, folding and KLR checks for Cartan data.
#[derive(Parser, Debug)]
#[command(name = "qfold", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Datum JSON file, or the name of a built-in catalog entry.
    pub datum: String,
    /// Height bound for weight enumeration.
    #[arg(long, default_value_t = 4)]
    pub bound: u32,
    /// A single weight, as `label:n,label:m`.
    #[arg(long)]
    pub weight: Option<String>,
    /// Extra series precision used by the constructor and certifier.
    #[arg(long, default_value_t = 8)]
    pub trunc: i32,
    /// Cache directory for basis records.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Use the `(u − v)^m` parameter family where it applies.
    #[arg(long)]
    pub symmetric_klr: bool,
    /// Prime for the mod-ℓ quotient; defaults to the prime dividing the order of σ.
    #[arg(long)]
    pub ell: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Cartan datum, the automorphism and the KLR parameters.
    Validate(Common),
    /// Weight-space dimensions up to the bound.
    Dim(Common),
    /// Canonical bases with certification.
    Cb(Common),
    /// Crystal graph and upper global basis axioms.
    Crystal(Common),
    /// Folding harness: quotient isomorphism, signs, structure constants, dual compatibility.
    FoldVerify(Common),
    /// KLR relations on the orbit modules and graded dimensions.
    KlrCheck(Common),
    /// Gram matrix of divided-power monomials at one weight.
    Gram(Common),
    /// List or clear cache entries.
    Cache(CacheArgs),
}

#[derive(Args, Debug)]
struct CacheArgs {
    /// `list` or `clear`.
    action: String,
    #[arg(long)]
    cache: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&PathBuf>, report: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(
    cli: Cli,
) -> Result<(serde_json::Value, bool, Option<PathBuf>), (CliError, Option<PathBuf>)> {
    let (common, out) = match &cli.command {
        Command::Cache(a) => {
            let r = commands::cache(&a.action, &a.cache).map_err(|e| (e, a.out.clone()))?;
            return Ok((r.report, r.passed, a.out.clone()));
        }
        Command::Validate(c)
        | Command::Dim(c)
        | Command::Cb(c)
        | Command::Crystal(c)
        | Command::FoldVerify(c)
        | Command::KlrCheck(c)
        | Command::Gram(c) => (c.clone(), c.out.clone()),
    };
    let fail = |e: CliError| (e, out.clone());
    if common.jobs == 0 || common.bound == 0 || common.trunc < 8 {
        return Err(fail(CliError::Input(
            "require --jobs >= 1, --bound >= 1, --trunc >= 8".into(),
        )));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build_global()
        .map_err(|e| fail(CliError::Input(e.to_string())))?;
    let r = match &cli.command {
        Command::Validate(c) => commands::validate(c),
        Command::Dim(c) => commands::dim(c),
        Command::Cb(c) => commands::cb(c),
        Command::Crystal(c) => commands::crystal(c),
        Command::FoldVerify(c) => commands::fold_verify(c),
        Command::KlrCheck(c) => commands::klr(c),
        Command::Gram(c) => commands::gram(c),
        Command::Cache(_) => unreachable!(),
    }
    .map_err(fail)?;
    Ok((r.report, r.passed, out))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((report, passed, out)) => match emit(out.as_ref(), &report) {
            Ok(()) if passed => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err((e, out)) => {
            eprintln!("error: {e}");
            let _ = emit(out.as_ref(), &e.report());
            ExitCode::from(e.exit_code())
        }
    }
}
