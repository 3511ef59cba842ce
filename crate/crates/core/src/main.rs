use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use multigraded::cli::{self, Kind, ProblemFile, Report, Theory, Which};
use multigraded::{Error, Result};

#[derive(Parser)]
#[command(name = "multigraded", version, about = "Exact multigraded brackets, cohomology and deformations")]
struct Args {
    /// Report format written to the output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bracket test and the brute-force axiom test.
    Verify {
        /// Problem file, or `-` for standard input.
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Bracket two named maps.
    Bracket {
        file: PathBuf,
        lhs: String,
        rhs: String,
        #[arg(long, value_enum, default_value_t = Which::Delta)]
        which: Which,
    },
    /// Cohomology dimensions per (k, weight).
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum)]
        theory: Theory,
        /// Highest cohomological degree (default from GRADED_NR_KMAX, else 3).
        #[arg(long)]
        kmax: Option<usize>,
        /// Only these weights, e.g. `--weights 0 --weights 1,0`.
        #[arg(long)]
        weights: Vec<String>,
        /// Also list representative cocycles.
        #[arg(long)]
        representatives: bool,
    },
    /// Solve the deformation equation to order N.
    Deform {
        file: PathBuf,
        /// Truncation order N (default: `order` in the file's [deform] section).
        #[arg(long)]
        order: Option<usize>,
        /// Form-degree window for the cocycle series (default from GRADED_NR_KMAX, else 3).
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Sign table s(sigma, x) for the given degrees, e.g. `signs 1,0 0,1 1,1`.
    Signs {
        #[arg(allow_hyphen_values = true, required = true)]
        degrees: Vec<String>,
    },
}

fn load(path: &PathBuf) -> Result<ProblemFile> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Io(e.to_string()))?;
        ProblemFile::parse(&text)
    } else {
        ProblemFile::load(path)
    }
}

fn run(command: &Command) -> Result<Report> {
    match command {
        Command::Verify { file, kind } => cli::cmd_verify(&load(file)?, *kind),
        Command::Bracket { file, lhs, rhs, which } => cli::cmd_bracket(&load(file)?, lhs, rhs, *which),
        Command::Cohomology { file, theory, kmax, weights, representatives } => {
            let kmax = match kmax {
                Some(k) => *k,
                None => cli::default_kmax()?,
            };
            let weights = if weights.is_empty() {
                None
            } else {
                Some(weights.iter().map(|w| cli::parse_multidegree(w)).collect::<Result<Vec<_>>>()?)
            };
            cli::cmd_cohomology(&load(file)?, *theory, kmax, weights, *representatives)
        }
        Command::Deform { file, order, kmax } => {
            let kmax = match kmax {
                Some(k) => *k,
                None => cli::default_kmax()?,
            };
            let problem = load(file)?;
            let order = match order.or(problem.deform.as_ref().and_then(|d| d.order)) {
                Some(o) => o,
                None => return Err(Error::Parse("deform: no --order given and the file sets no deform.order".into())),
            };
            cli::cmd_deform(&problem, order, kmax)
        }
        Command::Signs { degrees } => {
            let ds = degrees.iter().map(|d| cli::parse_multidegree(d)).collect::<Result<Vec<_>>>()?;
            cli::cmd_signs(&ds)
        }
    }
}

fn task(command: &Command) -> &'static str {
    match command {
        Command::Verify { .. } => "verify",
        Command::Bracket { .. } => "bracket",
        Command::Cohomology { .. } => "cohomology",
        Command::Deform { .. } => "deform",
        Command::Signs { .. } => "signs",
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match run(&args.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            cli::error_report(task(&args.command), &e)
        }
    };
    let body = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    let written = match &args.output {
        Some(p) => std::fs::write(p, body).map_err(|e| e.to_string()),
        None => {
            print!("{body}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(cli::EXIT_INPUT as u8);
    }
    ExitCode::from(report.exit_code as u8)
}
