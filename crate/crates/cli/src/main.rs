//! `schurcx`: build and check Schur complexes from JSON files.
//!
//! Exit codes: 0 success, 1 `verify` found violations, 2 unreadable or
//! malformed input, 3 well-formed but invalid input, 4 internal error
//! (a constructed complex failed `d∘d = 0`).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use schur_core::io::{complex_to_json, parse_complex, parse_tableau, straightening_to_json, ComplexDocument};
use schur_core::ring::{DEFAULT_SEED, DEFAULT_TRIALS};
use schur_core::{schur_complex, Error, FreeComplex, Partition, Polynomial};

/// Largest matrix dimension accepted by `ranks --exact`.
const EXACT_MAX_DIM: usize = 64;

#[derive(Parser)]
#[command(name = "schurcx", version, about = "Schur complexes of free complexes over polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a tableau as a combination of standard tableaux.
    Straighten {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Schur complex of a shape applied to a complex.
    Schur {
        #[arg(long)]
        complex: PathBuf,
        /// Row lengths, e.g. `3,3,2`.
        #[arg(long)]
        shape: Partition,
        /// Transpose the shape first.
        #[arg(long)]
        conjugate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check differential shapes and that consecutive differentials compose to zero.
    Verify {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Ranks of the differentials and homology over the fraction field.
    Ranks {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Use fraction-free elimination instead of random specialization.
        #[arg(long)]
        exact: bool,
        /// Only report this degree.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Homology ranks after substituting a point for the variables.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        /// Comma-separated coordinates, one per variable, e.g. `1,-2,1/3`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
}

enum Failure {
    Parse(String),
    Invalid(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Invalid(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::NotPrime(_) | Error::PointLength { .. } => Failure::Parse(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::Invalid(e.to_string()))
        }
    }
}

fn load_valid_complex(path: &Path) -> Result<ComplexDocument, Failure> {
    let doc = parse_complex(&read(path)?)?;
    let violations = doc.complex.validate();
    if let Some(v) = violations.first() {
        return Err(Failure::Invalid(format!("invalid complex: {v}")));
    }
    Ok(doc)
}

fn print_homology(f: &FreeComplex, homology: &[usize], degree: Option<i64>) {
    for (k, h) in homology.iter().enumerate() {
        let deg = f.min_degree() + k as i64;
        if degree.is_none_or(|d| d == deg) {
            println!("H_{deg} = {h}");
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Straighten { tableau, out } => {
            let input = parse_tableau(&read(&tableau)?)?;
            let result = schur_core::straighten(&input.tableau, input.m, input.n)?;
            write_output(out.as_deref(), &straightening_to_json(&result))?;
        }
        Command::Schur { complex, shape, conjugate, out } => {
            let doc = load_valid_complex(&complex)?;
            let shape = if conjugate { shape.conjugate() } else { shape };
            let s = schur_complex(&shape, &doc.complex)?;
            if let Some(v) = s.complex.validate().first() {
                return Err(Failure::Internal(format!("constructed complex is not a complex: {v}")));
            }
            write_output(out.as_deref(), &complex_to_json(&s.complex, Some(&s.basis)))?;
            if out.is_some() {
                println!("{}", s.complex.banner());
            } else {
                eprintln!("{}", s.complex.banner());
            }
        }
        Command::Verify { complex } => {
            let doc = parse_complex(&read(&complex)?)?;
            let violations = doc.complex.validate();
            if violations.is_empty() {
                println!("ok");
            } else {
                for v in &violations {
                    println!("{v}");
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Ranks { complex, trials, seed, exact, degree } => {
            let f = load_valid_complex(&complex)?.complex;
            let image_ranks = if exact {
                f.differentials().iter().map(|d| d.rank_fraction_free(EXACT_MAX_DIM)).collect::<Result<Vec<_>, _>>()?
            } else {
                f.generic_differential_ranks(trials, seed)?
            };
            for (k, r) in image_ranks.iter().enumerate() {
                let deg = f.min_degree() + k as i64 + 1;
                if degree.is_none_or(|d| d == deg) {
                    println!("rank d_{deg} = {r}");
                }
            }
            print_homology(&f, &f.homology_from_ranks(&image_ranks), degree);
        }
        Command::Homology { complex, point, degree } => {
            let f = load_valid_complex(&complex)?.complex;
            let coords = point
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| {
                    Polynomial::parse(f.ring(), s)?
                        .as_constant()
                        .ok_or_else(|| Error::Parse(format!("coordinate {s:?} is not a number")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let homology = f.homology_ranks_at_point(&coords)?;
            print_homology(&f, &homology, degree);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("schurcx: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
