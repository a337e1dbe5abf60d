use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "planar", version, about = "Planar power series indexed by reduced planar rooted trees")]
pub struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate, count and contract trees.
    #[command(subcommand)]
    Trees(TreesCommand),
    /// Arithmetic on series documents.
    #[command(subcommand)]
    Series(SeriesCommand),
    /// Re-expand a series or germ around another point.
    Rebase(RebaseArgs),
    /// Coefficients of the planar exponential.
    #[command(subcommand)]
    Exp(ExpCommand),
    /// Germ of the planar zeta function.
    Zeta(SpecialArgs),
    /// Germ of the planar Gamma function.
    Gamma(SpecialArgs),
    /// Estimate a radius of convergence from degree majorants.
    Radius(RadiusArgs),
    /// Run identity suites; `all` runs every suite.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Keep the scalar type of the input.
    Auto,
    Exact,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Left,
    Right,
}

#[derive(Subcommand, Debug)]
pub enum TreesCommand {
    /// Number of trees of a degree.
    Count {
        #[arg(long)]
        degree: usize,
        /// Bound on vertex arity.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Trees of a degree in canonical order.
    List {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Planar binomial coefficient of two trees, upper first.
    Binom {
        #[arg(long, num_args = 1, required = true)]
        tree: Vec<String>,
    },
    /// Contraction of a tree to a set of leaves.
    Contract {
        #[arg(long)]
        tree: String,
        /// Comma-separated leaf indices, counted from 0 left to right.
        #[arg(long, value_delimiter = ',')]
        leaves: Vec<usize>,
    },
}

#[derive(Args, Debug)]
pub struct SeriesInput {
    /// Series document; `-` reads stdin.
    #[arg(long = "in", required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum SeriesCommand {
    /// Grafting product; with k inputs, the k-ary corolla product.
    Mul(SeriesInput),
    /// One-sided inverse.
    Inv {
        #[command(flatten)]
        io: SeriesInput,
        #[arg(long, value_enum, default_value = "left")]
        side: Side,
    },
    /// Solve `s * s = f` with a prescribed constant term.
    Sqrt {
        #[command(flatten)]
        io: SeriesInput,
        /// Constant term of the root; defaults to the principal square root.
        #[arg(long, allow_hyphen_values = true)]
        root: Option<String>,
    },
    /// Value of the truncated series at a point.
    Eval {
        #[command(flatten)]
        io: SeriesInput,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Args, Debug)]
pub struct RebaseArgs {
    #[command(flatten)]
    pub io: SeriesInput,
    /// Base of the input; defaults to its `base` field, then to 0.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// New base point.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Output truncation; defaults to the input truncation.
    #[arg(long)]
    pub trunc: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum ExpCommand {
    /// A single coefficient.
    Coeff {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        tree: String,
    },
    /// All coefficients through a degree.
    Table {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Compare the expansion around `a` with `e^a exp_k`.
    Translate {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 6)]
        trunc: usize,
        /// Source degree of the series being expanded.
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

#[derive(Args, Debug)]
pub struct SpecialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
    #[arg(long)]
    pub trunc: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RadiusArgs {
    /// Series document whose majorants are used.
    #[arg(long = "in", conflicts_with = "values")]
    pub input: Option<PathBuf>,
    /// Comma-separated majorants `M_0,...,M_N`.
    #[arg(long, value_delimiter = ',')]
    pub values: Vec<f64>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Suite name or number, or `all`.
    pub suite: String,
    /// Degree bound of the exhaustive exact suites.
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Print every individual check.
    #[arg(long)]
    pub verbose: bool,
}
