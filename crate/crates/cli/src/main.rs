use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coheart::cli::{self, Command, Config, Report};
use coheart::{Error, Result};

#[derive(Parser)]
#[command(name = "coheart", version, about = "Verify hearts and cohearts of cotorsion pairs")]
struct Args {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze the pair (U, U^⊥1) of a config.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print AR grids of U, the coheart and the heart.
        #[arg(long)]
        ascii: bool,
        /// Re-run existence searches with multiplicity bounds scaled by this factor.
        #[arg(long)]
        audit_bounds: Option<usize>,
    },
    /// Enumerate every cotorsion pair of the config's algebra.
    Enumerate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        verify_theorems: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print a shipped example config, or analyze it with --run.
    PaperExample {
        name: String,
        #[arg(long)]
        run: bool,
        #[arg(long)]
        ascii: bool,
    },
    /// Re-validate the witnesses of a saved report.
    Recheck {
        #[arg(long)]
        report: PathBuf,
    },
    /// Compare enough injectives with enough projectives over the opposite algebra.
    Dual {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Config> {
    Config::from_json(&read(path)?)
}

fn emit(report: &Report, to: Option<&Path>) -> Result<()> {
    for line in &report.summary {
        eprintln!("{line}");
    }
    for c in &report.caveats {
        eprintln!("caveat: {c}");
    }
    eprintln!("outcome: {:?} in {} ms", report.outcome, report.timing_ms);
    match to {
        Some(p) => fs::write(p, report.to_json())?,
        None => println!("{}", report.to_json()),
    }
    Ok(())
}

fn main_inner(args: Args) -> Result<i32> {
    match args.cmd {
        Cmd::Analyze { config, report, ascii, audit_bounds } => {
            let mut c = load(&config)?;
            if let Some(f) = audit_bounds {
                c.bounds.audit_factor = f;
            }
            let r = cli::run(Command::Analyze, &c)?;
            if ascii {
                eprint!("{}", cli::render_ascii(&r)?);
            }
            emit(&r, report.as_deref())?;
            Ok(r.outcome.exit_code())
        }
        Cmd::Enumerate { config, verify_theorems, report } => {
            let r = cli::run(Command::Enumerate, &load(&config)?)?;
            emit(&r, report.as_deref())?;
            Ok(if verify_theorems { r.outcome.exit_code() } else { 0 })
        }
        Cmd::PaperExample { name, run, ascii } => {
            let c = cli::paper_example(&name)?;
            if !run {
                println!("{}", c.to_json());
                return Ok(0);
            }
            let r = cli::run(Command::Analyze, &c)?;
            if ascii {
                eprint!("{}", cli::render_ascii(&r)?);
            }
            emit(&r, None)?;
            Ok(r.outcome.exit_code())
        }
        Cmd::Recheck { report } => {
            let r = Report::from_json(&read(&report)?)?;
            cli::recheck(&r)?;
            eprintln!("all witnesses re-verified");
            Ok(0)
        }
        Cmd::Dual { config, report } => {
            let r = cli::run(Command::Dual, &load(&config)?)?;
            emit(&r, report.as_deref())?;
            Ok(r.outcome.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let code = match main_inner(Args::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            cli::error_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
