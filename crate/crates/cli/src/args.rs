use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "biquant", version, about = "Graph calculus for quantized reduction of Lie algebras")]
pub struct Cli {
    /// Seed of the single generator behind every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check antisymmetry and the Jacobi identity of an algebra file.
    Validate { file: PathBuf },
    /// Enumerate graph classes.
    Graphs {
        #[command(subcommand)]
        action: GraphsAction,
    },
    /// Weight of one graph, tabulated or sampled.
    Weights(WeightsArgs),
    /// Truncated star product of two polynomials.
    Star(StarArgs),
    /// Basis of a reduction space.
    Reduce(ReduceArgs),
    /// Run one of the named checks.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
pub enum GraphsAction {
    /// Classes with `n` aerial vertices over two ground points, or one
    /// reduction family.
    Enum {
        #[arg(long, required_unless_present = "family", conflicts_with = "family")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        colored: bool,
        #[arg(long, value_enum, requires = "i")]
        family: Option<FamilyArg>,
        #[arg(long)]
        i: Option<usize>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FamilyArg {
    B,
    W,
    Bw,
}

#[derive(Args, Debug)]
pub struct WeightsArgs {
    /// Graph in wire format, e.g. "n1=1 n2=2 edges=(1,F1,.)(1,F2,.)".
    #[arg(long)]
    pub graph: String,
    #[arg(long, conflicts_with = "exact")]
    pub samples: Option<u64>,
    /// Only accept a tabulated value.
    #[arg(long)]
    pub exact: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendArg {
    Exact,
    Numeric,
}

#[derive(Args, Debug)]
pub struct BackendOpts {
    #[arg(long, value_enum, default_value = "exact")]
    pub backend: BackendArg,
    /// Monte Carlo samples per untabulated weight.
    #[arg(long, default_value_t = 200_000)]
    pub samples: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FlavorArg {
    Kontsevich,
    Cf,
}

#[derive(Args, Debug)]
pub struct StarArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long, value_enum)]
    pub flavor: FlavorArg,
    #[arg(long)]
    pub order: usize,
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
    #[command(flatten)]
    pub backend: BackendOpts,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VariantArg {
    Eps,
    Plain,
    T,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long = "D")]
    pub d: u32,
    #[arg(long = "N", default_value_t = 0)]
    pub n: u32,
    /// Truncation order of the differential; defaults to `D + 1`.
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value = "eps")]
    pub variant: VariantArg,
    /// Rational value of `t` for the `t` variant.
    #[arg(long, required_if_eq("variant", "t"), allow_hyphen_values = true)]
    pub t: Option<String>,
    #[command(flatten)]
    pub backend: BackendOpts,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Check {
    Prop33,
    Lemma34,
    Lemma41,
    Thm51,
    Thm61,
    Thm68,
    Centers,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub check: Check,
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long = "D", default_value_t = 3)]
    pub d: u32,
    #[arg(long = "N", default_value_t = 2)]
    pub n: u32,
    #[arg(long)]
    pub order: Option<usize>,
    /// Random combinations tried by `prop33`.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[command(flatten)]
    pub backend: BackendOpts,
}
