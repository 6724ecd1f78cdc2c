mod commands;
mod failure;
mod select;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::failure::Failure;

/// Generate and verify standard complementary sequence pairs.
///
/// Exit codes: 0 success or complementary, 1 verified not complementary,
/// 2 usage or validation error, 3 constellation violation.
#[derive(Parser, Debug)]
#[command(name = "golay-forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a sequence, a pair, or the full complementary matrix.
    Generate(GenerateArgs),
    /// Check whether two sequence files form a complementary pair.
    Verify(VerifyArgs),
    /// Enumerate generator outputs over a parameter grid and deduplicate.
    Enumerate(EnumerateArgs),
    /// Find every complementary pair over a small alphabet by brute force.
    Census(CensusArgs),
    /// Search for admissible QAM-U matrix assignments.
    Search(SearchArgs),
    /// Time sequence generation.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quadrant {
    Ignore,
    Warn,
    Error,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Number of bits N; the sequence length is 2^N.
    #[arg(long)]
    pub n: Option<u32>,
    /// Permutation of 1..N as a comma list, or `identity`. Required when N > 1.
    #[arg(long)]
    pub perm: Option<String>,
    /// binary, mpsk:M, qam16, qam64, qam16:natural, qam64:natural, hex or custom:FILE.
    #[arg(long)]
    pub constellation: Option<String>,
    /// Phase indices m_0..m_N, comma separated. Defaults to all zeros.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u32>>,
    /// QAM-U matrix positions K1[,K2] in 0..=N.
    #[arg(long = "qam-pos", value_delimiter = ',')]
    pub qam_pos: Option<Vec<usize>>,
    /// C value such as `1+1i`, once per QAM-U position, or N+1 times for explicit matrices.
    #[arg(long = "c", allow_hyphen_values = true)]
    pub c_values: Vec<String>,
    /// S value, paired with --c.
    #[arg(long = "s", allow_hyphen_values = true)]
    pub s_values: Vec<String>,
    /// Row selector r.
    #[arg(long, default_value_t = 0)]
    pub r: u8,
    /// Column selector s.
    #[arg(long = "s-sel", default_value_t = 0)]
    pub s_sel: u8,
    /// Read the whole spec from a golay-spec/1 JSON file.
    #[arg(long, conflicts_with_all = ["n", "perm", "constellation", "m", "qam_pos", "c_values", "s_values", "random"])]
    pub spec: Option<PathBuf>,
    /// Print the spec as JSON instead of generating.
    #[arg(long)]
    pub emit_spec: bool,
    /// Output both sequences of row r.
    #[arg(long, conflicts_with = "matrix")]
    pub pair: bool,
    /// Output all four sequences of the complementary matrix.
    #[arg(long)]
    pub matrix: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file for a single document.
    #[arg(long, conflicts_with = "out_dir")]
    pub out: Option<PathBuf>,
    /// Directory receiving one file per sequence.
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    /// Draw unspecified parameters at random.
    #[arg(long)]
    pub random: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// What to do when a QAM-U C value lies outside the first quadrant.
    #[arg(long, value_enum, default_value_t = Quadrant::Warn)]
    pub quadrant: Quadrant,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// First sequence file (CSV or JSON).
    pub a: PathBuf,
    /// Second sequence file (CSV or JSON).
    pub b: PathBuf,
    /// Relative tolerance on off-peak sidelobes.
    #[arg(long, default_value_t = golay_forge::analysis::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u32,
    /// binary, mpsk:M, or a QAM/hex/custom selector together with --qam-pos.
    #[arg(long)]
    pub constellation: String,
    /// `all`, `identity`, or permutations separated by `;`.
    #[arg(long, default_value = "all")]
    pub perms: String,
    #[arg(long = "qam-pos", value_delimiter = ',')]
    pub qam_pos: Option<Vec<usize>>,
    /// Restrict QAM-U C values to the first quadrant.
    #[arg(long)]
    pub canonical_quadrant: bool,
    /// Refuse grids with more chains than this.
    #[arg(long, default_value_t = golay_forge::search::DEFAULT_GRID_CAP)]
    pub cap: u128,
    /// Run the autocorrelation check on every row and column.
    #[arg(long)]
    pub verify: bool,
    /// Write the distinct sequences as CSV: multiplicity, then re,im pairs.
    #[arg(long)]
    pub sequences_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    /// binary, mpsk:M, qam16, hex or custom:FILE.
    #[arg(long)]
    pub alphabet: String,
    #[arg(long)]
    pub len: usize,
    #[arg(long, default_value_t = golay_forge::search::DEFAULT_CENSUS_CAP)]
    pub cap: u128,
    /// Compare with the full generator grid (binary and M-PSK alphabets).
    #[arg(long)]
    pub compare: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub constellation: String,
    #[arg(long)]
    pub n: u32,
    #[arg(long = "qam-pos", value_delimiter = ',', required = true)]
    pub qam_pos: Vec<usize>,
    /// JSON list of [re, im] candidate points. Defaults to the constellation.
    #[arg(long)]
    pub candidates: Option<PathBuf>,
    /// Keep only candidates with |z|² at most this value.
    #[arg(long)]
    pub max_norm: Option<f64>,
    #[arg(long)]
    pub canonical_quadrant: bool,
    #[arg(long, default_value_t = golay_forge::search::DEFAULT_SEARCH_CAP)]
    pub cap: u128,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Number of bits, 6 to 20.
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// M-PSK order of the random spec.
    #[arg(long, default_value_t = 4)]
    pub order: u32,
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("GOLAY_FORGE_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::usage(format!("GOLAY_FORGE_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match cli.command {
        Command::Generate(args) => commands::generate(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Enumerate(args) => commands::enumerate(&args),
        Command::Census(args) => commands::census(&args),
        Command::Search(args) => commands::search(&args),
        Command::Bench(args) => commands::bench(&args),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("golay-forge: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
