use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use quadpencil::dlattice::WeightClass;
use quadpencil::report;
use quadpencil::Error;

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

macro_rules! outp {
    ($out:expr, $($arg:tt)*) => {
        $out.push_str(&format!($($arg)*))
    };
}

#[derive(Parser)]
#[command(name = "quadpencil", version, about = "Classify real pencils of quadrics")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a pencil given as JSON (`n`, `F1`, `F2`).
    Classify {
        #[arg(required_unless_present = "fixture_dir", conflicts_with = "fixture_dir")]
        file: Option<PathBuf>,
        /// Classify every `*.json` file in a directory.
        #[arg(long)]
        fixture_dir: Option<PathBuf>,
    },
    /// List all isotopy classes for one n.
    Atlas {
        #[arg(long)]
        n: usize,
    },
    /// Queries in the weight lattice of D_(2n+3).
    Lattice {
        #[command(subcommand)]
        query: LatticeQuery,
    },
}

#[derive(Subcommand)]
enum LatticeQuery {
    /// List weights of one parity as (+-L1+-L2...)/2.
    Weights {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Parity::Even)]
        parity: Parity,
    },
    /// Relation between the planes of two weights given as sign strings like `++-++-+`.
    Relation {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Plane and reducible quadric counts inside one parity class.
    Counts {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Parity::Even)]
        parity: Parity,
    },
    /// Middle-dimensional classes with given degree and self-intersection.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, allow_hyphen_values = true)]
        self_intersection: i64,
        #[arg(long, value_enum, default_value_t = Parity::Even)]
        parity: Parity,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SingularIntersection => 3,
        Error::UnsupportedDimension(_) => 4,
        Error::Parse(_)
        | Error::Rational(_)
        | Error::NotSquare { .. }
        | Error::NotSymmetric(..)
        | Error::EmptyMatrix
        | Error::DimensionMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::ParityMismatch
        | Error::BudgetExceeded(_) => 2,
        _ => 1,
    }
}

fn parse_weight(s: &str, m: usize) -> Result<WeightClass, Error> {
    let signs = s
        .chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(Error::Parse(format!("weight {s:?}: expected only '+' and '-'"))),
        })
        .collect::<Result<Vec<i64>, Error>>()?;
    if signs.len() != m {
        return Err(Error::Parse(format!("weight {s:?} has {} signs, expected {m}", signs.len())));
    }
    WeightClass::from_signs(&signs)
}

fn classify_file(path: &Path) -> Result<report::ClassificationReport, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut doc = report::PencilDocument::from_json(&text)?;
    if doc.label.is_none() {
        doc.label = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    report::classify_document(&doc)
}

fn classify_dir(dir: &Path, format: Format, out: &mut String) -> Result<u8, Error> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut code = 0;
    let mut entries = Vec::new();
    for f in &files {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        match classify_file(f) {
            Ok(rep) => match format {
                Format::Text => outln!(out, "== {name} ==\n{rep}"),
                Format::Json => entries.push(json!({ "file": name, "report": rep })),
            },
            Err(e) => {
                if code == 0 {
                    code = exit_code(&e);
                }
                match format {
                    Format::Text => outln!(out, "== {name} ==\nerror: {e}\n"),
                    Format::Json => entries.push(json!({ "file": name, "error": e.to_string() })),
                }
                eprintln!("{name}: {e}");
            }
        }
    }
    if format == Format::Json {
        outln!(out, "{}", serde_json::to_string_pretty(&entries).expect("serializable"));
    }
    Ok(code)
}

fn emit<T: serde::Serialize + std::fmt::Display>(value: &T, format: Format, out: &mut String) {
    match format {
        Format::Text => outp!(out, "{value}"),
        Format::Json => outln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable")),
    }
}

fn run(cli: Cli, out: &mut String) -> Result<u8, Error> {
    let format = cli.format;
    match cli.command {
        Command::Classify { file: Some(file), .. } => emit(&classify_file(&file)?, format, out),
        Command::Classify { fixture_dir: Some(dir), .. } => return classify_dir(&dir, format, out),
        Command::Classify { .. } => unreachable!("clap enforces one input"),
        Command::Atlas { n } => emit(&report::atlas(n)?, format, out),
        Command::Lattice { query } => match query {
            LatticeQuery::Weights { n, parity } => {
                let listing = report::weights_listing(n, parity.bit())?;
                match format {
                    Format::Text => outp!(out, "{listing}"),
                    Format::Json => {
                        let list: Vec<&str> = listing.lines().collect();
                        outln!(out, "{}", serde_json::to_string_pretty(&list).expect("serializable"));
                    }
                }
            }
            LatticeQuery::Relation { n, first, second } => {
                report::check_lattice_n(n)?;
                let m = 2 * n + 3;
                let q = report::relation_query(n, &parse_weight(&first, m)?, &parse_weight(&second, m)?)?;
                match format {
                    Format::Text => outln!(out, "{}  .  {}  =  {}  ->  {}", q.first, q.second, q.pairing, q.relation),
                    Format::Json => outln!(out, "{}", serde_json::to_string_pretty(&q).expect("serializable")),
                }
            }
            LatticeQuery::Counts { n, parity } => {
                let c = report::lattice_counts(n, parity.bit())?;
                match format {
                    Format::Text => {
                        outln!(out, "n = {} parity = {}", c.n, if c.parity == 0 { "even" } else { "odd" });
                        outln!(out, "weights: {}", c.weights);
                        outln!(out, "disjoint from the first: {}", c.disjoint);
                        outln!(out, "meeting the first in an (n-1)-plane: {}", c.meet_in_n_minus_1_plane);
                        outln!(out, "reducible quadrics: {}", c.reducible_quadrics);
                    }
                    Format::Json => outln!(out, "{}", serde_json::to_string_pretty(&c).expect("serializable")),
                }
            }
            LatticeQuery::Decompose { n, degree, self_intersection, parity } => {
                emit(&report::decompose_query(degree, self_intersection, n, parity.bit())?, format, out)
            }
        },
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    // A closed pipe (e.g. `| head`) is not an error.
    let mut stdout = io::stdout().lock();
    match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        _ => ExitCode::from(code),
    }
}
