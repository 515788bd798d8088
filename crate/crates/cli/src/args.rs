use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bentforge",
    version,
    about = "Spectral analysis of Boolean functions: transforms, bent/plateaued classification, censuses and exact counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Largest ANF enumeration allowed, as log2 of the number of ANFs.
    #[arg(long, global = true, value_name = "LOG2", default_value_t = bentforge::census::DEFAULT_MONOMIAL_CAP)]
    pub max_anf_space: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Walsh-Hadamard spectrum W_f(y) for every y.
    Wht(InputArgs),
    /// Algebraic normal form and degree.
    Anf(InputArgs),
    /// Bent, s-plateaued or neither.
    Classify(InputArgs),
    /// Derivative D_a f, optionally reduced to n - 1 variables.
    Derivative(DerivativeArgs),
    /// Restriction to the hyperplane <x, a> = c.
    Restrict(RestrictArgs),
    /// Dual of a bent function.
    Dual(InputArgs),
    /// Every bent function in n variables (n = 0, 2 or 4).
    EnumerateBent(SizeArgs),
    /// Derivative images of bent functions against low-degree balanced candidates.
    Census(CensusArgs),
    /// Weight distributions, recurrence bounds and the bound comparison.
    Count(CountArgs),
    /// Full profile of one function.
    Report(InputArgs),
    /// Runs a verification suite and exits 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["tt", "file", "anf", "random"])))]
pub struct InputArgs {
    /// Truth table: binary (x1 is the low index bit) or hex (0x prefix, or 2^n/4 digits with --n).
    #[arg(long, value_name = "TABLE")]
    pub tt: Option<String>,

    /// File holding a truth table in either notation.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,

    /// Polynomial such as "x1*x2 + x3 + 1"; needs --n.
    #[arg(long, value_name = "POLY", requires = "n")]
    pub anf: Option<String>,

    /// Uniformly random function drawn with --seed; needs --n.
    #[arg(long, requires = "n")]
    pub random: bool,

    /// Number of variables; inferred from the table length when omitted.
    #[arg(long)]
    pub n: Option<u32>,

    /// Seed for --random.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("dir").required(true).args(["direction", "coordinate"])))]
pub struct DerivativeArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Direction a as an integer (decimal, 0x hex or 0b binary; bit i-1 is x_i).
    #[arg(long, value_parser = parse_vector)]
    pub direction: Option<u32>,

    /// Coordinate direction e_i, 1-based.
    #[arg(long, value_name = "I")]
    pub coordinate: Option<u32>,

    /// Drop the redundant coordinate and return an (n-1)-variable function.
    #[arg(long)]
    pub reduce: bool,
}

#[derive(Debug, Args)]
pub struct RestrictArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Nonzero normal a (decimal, 0x hex or 0b binary).
    #[arg(long, value_parser = parse_vector)]
    pub normal: u32,

    /// Side c of the hyperplane <x, a> = c.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub side: u8,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: u32,

    /// Maiorana-McFarland sample size used when n >= 6.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Include every derivative image and candidate as a truth table.
    #[arg(long)]
    pub dump_functions: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exact", "bound", "report"])))]
pub struct CountArgs {
    /// Exact weight distribution of degree <= k functions in n variables.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub exact: Option<Vec<u32>>,

    /// Convolution lower bound for (n, k) built from the exact (n-1, k-1) distribution.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub bound: Option<Vec<u32>>,

    /// Exact comparison of the two counting exponents for even n >= 4.
    #[arg(long, value_name = "N")]
    pub report: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Proposition {
    /// Hyperplane restrictions of bent functions are 1-plateaued.
    Bentpla1,
    /// Derivative supports of bent functions.
    Shap1,
    /// Support fraction 2^-s of s-plateaued functions.
    Prop1,
    /// Walsh zeros over degree <= k functions double-count the balanced ones.
    Thm2,
    /// Every suite above.
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub prop: Proposition,

    #[arg(long)]
    pub n: u32,

    /// Maiorana-McFarland sample size used when n >= 6.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Check derivative supports along every nonzero direction, not only e_i.
    #[arg(long)]
    pub all_directions: bool,
}

/// Integers in decimal, `0x` hex or `0b` binary.
pub fn parse_vector(s: &str) -> Result<u32, String> {
    let (digits, radix) = if let Some(h) = s.strip_prefix("0x") {
        (h, 16)
    } else if let Some(b) = s.strip_prefix("0b") {
        (b, 2)
    } else {
        (s, 10)
    };
    u32::from_str_radix(digits, radix)
        .map_err(|e| format!("{e}; expected decimal, 0x hex or 0b binary"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("12"), Ok(12));
        assert_eq!(parse_vector("0xc"), Ok(12));
        assert_eq!(parse_vector("0b1100"), Ok(12));
        assert!(parse_vector("x").is_err());
    }
}
