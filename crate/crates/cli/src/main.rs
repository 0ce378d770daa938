mod commands;
mod doc;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conical::ErrorKind;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Lib(conical::Error),
    /// A check the command performs came out negative.
    Failed(String),
    Io(String),
}

impl From<conical::Error> for CliError {
    fn from(e: conical::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 3,
            CliError::Failed(_) => 2,
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Precondition => 4,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Validation => write!(f, "validation failed: {e}"),
                ErrorKind::Precondition => write!(f, "precondition violated: {e}"),
            },
            CliError::Failed(m) => write!(f, "check failed: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum BasisMode {
    /// Hermite normal form basis of the grading kernel.
    #[default]
    Auto,
    /// The document's own "basis" rows.
    Explicit,
}

/// Multigraded rings with chosen irrelevant subsets and their systems of fans.
#[derive(Parser, Debug)]
#[command(name = "conical", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Grading group, degrees, generators of the irrelevant ideal and the kernel lattice.
    RingInfo {
        path: PathBuf,
        /// Also search a subring realizing B, using monomials up to this degree.
        #[arg(long)]
        degree_bound: Option<u64>,
    },
    /// The system of fans of a conical ring.
    Fan {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = BasisMode::Auto)]
        basis: BasisMode,
        /// Write an SVG drawing (ambient rank 2 only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Separatedness verdict with the per-pair table.
    Separated { path: PathBuf },
    /// Recover the graded ring and irrelevant subset from a fan system.
    Cox { path: PathBuf },
    /// Classify a morphism; for a rational map also build the induced fan map.
    CheckMap { path: PathBuf },
    /// Quotient of the system of fans by a sublattice.
    Quotient {
        path: PathBuf,
        #[arg(long)]
        sublattice: PathBuf,
        #[arg(long, value_enum, default_value_t = BasisMode::Auto)]
        basis: BasisMode,
        /// Half-width of the enumeration box for the invariant semigroups.
        #[arg(long = "box", default_value_t = 10)]
        bound: u32,
    },
    /// Ring -> fan -> ring (or fan -> ring -> fan) consistency check.
    Roundtrip {
        /// Conical or fan_system document; omit with --seed.
        path: Option<PathBuf>,
        /// Check random instances from this seed instead of a document.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

fn path_str(p: &std::path::Path) -> String {
    p.to_string_lossy().into_owned()
}

fn run(cli: Cli) -> commands::Outcome {
    match cli.command {
        Command::RingInfo { path, degree_bound } => commands::ring_info(&doc::read(&path_str(&path))?, degree_bound),
        Command::Fan { path, basis, svg } => commands::fan(&doc::read(&path_str(&path))?, basis, svg.as_deref()),
        Command::Separated { path } => commands::separated(&doc::read(&path_str(&path))?),
        Command::Cox { path } => commands::cox(&doc::read(&path_str(&path))?),
        Command::CheckMap { path } => commands::check_map(&doc::read(&path_str(&path))?),
        Command::Quotient { path, sublattice, basis, bound } => {
            commands::quotient(&doc::read(&path_str(&path))?, &doc::read(&path_str(&sublattice))?, basis, bound)
        }
        Command::Roundtrip { path, seed, count } => match (path, seed) {
            (_, Some(seed)) => commands::roundtrip_random(seed, count),
            (Some(path), None) => commands::roundtrip(&doc::read(&path_str(&path))?),
            (None, None) => Err(CliError::Parse("roundtrip needs a document or --seed".into())),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let err = match run(cli) {
        Ok((v, failed)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            failed.map(CliError::Failed)
        }
        Err(e) => Some(e),
    };
    match err {
        None => ExitCode::SUCCESS,
        Some(e) => {
            eprintln!("conical: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
