use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sforge::report::{self, Format, Report};
use sforge::Error;

#[derive(Parser)]
#[command(name = "sforge", version, about = "Splice-quotient data from resolution graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(clap::Args)]
struct Common {
    /// Graph file.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Graph invariants and the discriminant group.
    Analyze(Common),
    /// Splice diagram and edge determinants.
    Splice(Common),
    /// Semigroup and congruence conditions with witnesses.
    Conditions(Common),
    /// Splice-type equations and the group action.
    Equations(Common),
    /// Invariant generators with their relations.
    Invariants {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        degree_bound: u32,
        /// Polynomial file over generator names to check against the splice equations.
        #[arg(long)]
        verify_identity: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Precondition(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn classify(path: &Path, e: Error) -> Failure {
    let msg = format!("{}: {e}", path.display());
    if e.is_input_error() {
        Failure::Input(msg)
    } else {
        Failure::Precondition(msg)
    }
}

type Runner = Box<dyn Fn(&str) -> sforge::Result<Report>>;

fn run(cmd: Command) -> Result<(Report, OutputFormat), Failure> {
    let (common, f): (&Common, Runner) = match &cmd {
        Command::Analyze(c) => (c, Box::new(report::analyze)),
        Command::Splice(c) => (c, Box::new(report::splice)),
        Command::Conditions(c) => (c, Box::new(report::conditions)),
        Command::Equations(c) => (c, Box::new(report::equations)),
        Command::Invariants { common, degree_bound, verify_identity } => {
            let identity = verify_identity.as_deref().map(read).transpose()?;
            let bound = *degree_bound;
            (common, Box::new(move |input: &str| report::invariants(input, bound, identity.as_deref())))
        }
    };
    let input = read(&common.file)?;
    let r = f(&input).map_err(|e| classify(&common.file, e))?;
    Ok((r, common.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((r, format)) => {
            let format = match format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Structured => Format::Structured,
            };
            print!("{}", r.render(format));
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
