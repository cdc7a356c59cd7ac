use clap::{Args, Parser, Subcommand, ValueEnum};
use rittlab::ratfun::DEFAULT_DEGREE_BUDGET;

/// Exact composition, decomposition and dynamics of rational maps over ℚ(i).
///
/// Maps are written in the grammar `z`, `i`, rationals, `+ - * / ^`, parentheses
/// and `@` for composition, e.g. "((z-1)^2/(z+1)^2) @ z^2". Output is JSON
/// unless `--pretty` is given. Exit codes: 0 success, 1 domain error, 2 usage
/// error, 3 budget exhausted (partial output is still printed).
#[derive(Parser, Debug, Clone)]
#[command(name = "rittlab", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Human-readable output instead of compact JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Iteration cap per critical orbit.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_iter: usize,
    /// Chordal tolerance for detecting orbit returns.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Denominator bound for rational reconstruction of numeric candidates.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub den_bound: u64,
    /// Largest degree any intermediate composition may reach.
    #[arg(long, global = true, env = "RITTLAB_DEGREE_BUDGET", default_value_t = DEFAULT_DEGREE_BUDGET)]
    pub degree_budget: usize,
    /// Which decomposition tier to run.
    #[arg(long, global = true, value_enum, default_value_t = TierArg::Auto)]
    pub tier: TierArg,
    /// Cap on fiber partitions examined by the numeric tier.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub partition_cap: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TierArg {
    Auto,
    Exact,
    Numeric,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Dot,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Compose maps left to right: `compose A B C` is A∘B∘C.
    Compose {
        #[arg(required = true)]
        maps: Vec<String>,
    },
    /// The n-th iterate of a map.
    Iterate { map: String, n: usize },
    /// Decompositions of a map, for one degree split or all of them.
    Decompose {
        map: String,
        /// Degrees `d1,d2` of the left and right factor.
        #[arg(long)]
        split: Option<String>,
    },
    /// Maximal prime chains, one per equivalence class.
    Primes { map: String },
    /// Ritt equivalence of two chains given as comma-separated factor lists.
    Equiv { first: String, second: String },
    /// Whether a map is prime.
    PrimeCheck { map: String },
    /// Commutation and the least common iterate.
    Commute {
        first: String,
        second: String,
        #[arg(long = "maxN", default_value_t = 4)]
        max_n: usize,
    },
    /// Virtual-decomposability scan over the iterates up to maxN.
    Vscan {
        map: String,
        #[arg(long = "maxN", default_value_t = 2)]
        max_n: usize,
    },
    /// Critical points; with `--with B`, the chain rule for the composite.
    Critical {
        map: String,
        #[arg(long = "with")]
        with: Option<String>,
    },
    /// Critical-orbit classification; with `--with B`, both composition orders.
    Classify {
        map: String,
        #[arg(long = "with")]
        with: Option<String>,
    },
    /// Power and Chebyshev normal forms.
    Detect { map: String },
    /// A Möbius conjugacy `γ` with `B = γ⁻¹∘A∘γ`.
    Conj { first: String, second: String },
    /// The decomposition graph of a map up to conjugacy.
    Graph {
        map: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long, default_value_t = 64)]
        max_vertices: usize,
    },
    /// Homology of the decomposition graph and of its CW completion.
    Homology {
        map: String,
        #[arg(long, default_value_t = 64)]
        max_vertices: usize,
    },
    /// Run jobs from a file of command lines or a JSON list of argument lists.
    Batch {
        file: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}
