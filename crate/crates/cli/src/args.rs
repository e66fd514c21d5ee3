use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "grmds", version, about = "Quasi-recursive MDS matrices over Galois rings")]
pub struct Cli {
    /// Append a JSON-lines record for every construction to this file.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Seed for sampled parameters.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Compact machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe a Galois ring and its automorphism.
    RingInfo(RingArgs),
    /// Build g from a construction family and verify its chain.
    Construct(ConstructArgs),
    /// Run the MDS test on a matrix or on the chain of a polynomial.
    Verify(VerifyArgs),
    /// Sweep construction parameters and record every candidate.
    Search(SearchArgs),
    /// Exhaustive minimum distance and weight criteria.
    Oracle(OracleArgs),
    /// Recompute the reference examples and compare with golden files.
    Reproduce(ReproduceArgs),
    /// Print data for external tooling.
    Emit(EmitArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct RingArgs {
    /// Residue characteristic.
    #[arg(long)]
    pub p: Option<u64>,
    /// Nilpotency index: the ring has characteristic p^s.
    #[arg(long, default_value_t = 1)]
    pub s: u32,
    /// Residue degree.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// sigma = theta^e.
    #[arg(long, default_value_t = 0)]
    pub e: usize,
    /// Monic basic primitive modulus, coefficients low to high, e.g. "3,3,0,1".
    #[arg(long)]
    pub modulus: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// Coefficients of g low to high, e.g. "1,2,2,1" or "[1,0,0],[2,0,0]".
    #[arg(long)]
    pub g: Option<String>,
    /// Chain length; defaults to deg g.
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Read the whole construction from a JSON spec instead of flags.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, default_value = "consecutive_powers")]
    pub family: String,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub b: u64,
    /// Unit scale, an element literal.
    #[arg(long)]
    pub c: Option<String>,
    /// Nilpotent perturbations, comma-separated element literals.
    #[arg(long)]
    pub eta: Option<String>,
    /// Use this power of the Teichmüller generator as xi.
    #[arg(long)]
    pub xi_power: Option<u64>,
    /// Coefficients of g for from_poly.
    #[arg(long)]
    pub g: Option<String>,
    /// Family of the polynomial that coeff_perturbed perturbs.
    #[arg(long)]
    pub base_family: Option<String>,
    /// Also test N^[k] N = I for N the chain of length k.
    #[arg(long)]
    pub check_involutory: bool,
    /// Also compute the minimum distance of [I | M].
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Matrix JSON file.
    #[arg(long, conflicts_with = "g")]
    pub matrix: Option<PathBuf>,
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Also compute the minimum distance.
    #[arg(long)]
    pub oracle: bool,
    /// Also evaluate the weight criteria (requires --g).
    #[arg(long, requires = "g")]
    pub criterion: bool,
    /// Code length for the full weight criterion.
    #[arg(long, requires = "criterion")]
    pub n: Option<usize>,
    #[arg(long)]
    pub check_involutory: bool,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, conflicts_with = "g")]
    pub matrix: Option<PathBuf>,
    #[command(flatten)]
    pub ring: RingArgs,
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Enumeration alphabet.
    #[arg(long, value_enum, default_value_t = SymbolsArg::Auto)]
    pub symbols: SymbolsArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolsArg {
    /// The ring when within budget, otherwise its residue field.
    Auto,
    Ring,
    Residue,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    /// Comma-separated families.
    #[arg(long, default_value = "consecutive_powers")]
    pub families: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub b_from: u64,
    #[arg(long, default_value_t = 0)]
    pub b_to: u64,
    /// Random nilpotent perturbations per offset for perturbation families.
    #[arg(long, default_value_t = 1)]
    pub eta_samples: usize,
    /// Comma-separated powers of the Teichmüller generator to use as xi.
    #[arg(long)]
    pub xi_powers: Option<String>,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Directory holding golden files to compare against instead of the built-in ones.
    #[arg(long)]
    pub golden_dir: Option<PathBuf>,
    /// Write the recomputed examples to this directory instead of comparing.
    #[arg(long, conflicts_with = "golden_dir")]
    pub bless: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EmitArgs {
    #[arg(long, value_enum)]
    pub format: EmitFormat,
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long)]
    pub g: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    /// Last row of the companion matrix: the feedback taps of the recursion.
    CompanionRecursion,
}
