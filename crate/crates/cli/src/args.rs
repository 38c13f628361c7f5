use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "wedgelab",
    version,
    about = "Wedge schemes, jet schemes and their components"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the generators g_ij of the truncated wedge scheme W_m(X).
    BuildWedge(IdealArgs),
    /// Print the generators G_n of the jet scheme J_m(X).
    BuildJet(IdealArgs),
    /// Minimal primes of W_m of a monomial hypersurface.
    MinimalPrimes(MonomialArgs),
    /// Generators of the radical of W_m of a monomial scheme.
    Radical(RadicalArgs),
    /// Heights and dimensions of the components.
    Dimension(MonomialArgs),
    /// Dimension, pure dimensionality and irreducibility of W_m.
    LciVerdict(MonomialArgs),
    /// Multiplicity-one certificates for the components of a reduced hypersurface.
    MultCert(CertArgs),
    /// Certify every component of W_m(x_1 ... x_r) for m = 0..=M.
    Sweep(SweepArgs),
    /// Run a built-in consistency suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    /// Generator of the input ideal; repeat for several.
    #[arg(short = 'f', long = "poly", required_unless_present = "file")]
    pub polys: Vec<String>,
    /// File with one generator per line (`#` starts a comment).
    #[arg(long, conflicts_with = "polys")]
    pub file: Option<PathBuf>,
    /// Ambient coordinates, comma separated; inferred when omitted.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    #[arg(short = 'm', long)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MonomialArgs {
    /// Exponents a_1,...,a_r of x_1^a_1 ... x_r^a_r.
    #[arg(short = 'a', long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u32>,
    #[arg(short = 'm', long)]
    pub order: u32,
    /// Ambient dimension (defaults to the number of exponents).
    #[arg(short = 'N', long)]
    pub ambient: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RadicalArgs {
    /// Exponents of a single monomial generator.
    #[arg(
        short = 'a',
        long,
        value_delimiter = ',',
        required_unless_present = "gens",
        conflicts_with = "gens"
    )]
    pub exponents: Option<Vec<u32>>,
    /// Several monomial generators over shared variables, e.g. `1,1,0;0,1,1`.
    #[arg(long)]
    pub gens: Option<String>,
    #[arg(short = 'm', long)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Paper,
    Random,
}

#[derive(Args, Debug)]
pub struct RandomArgs {
    /// Prime field size for the randomized strategy.
    #[arg(long, default_value_t = 65521)]
    pub q: u64,
    /// Evaluation attempts per component.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CertArgs {
    #[arg(short = 'a', long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u32>,
    #[arg(short = 'm', long)]
    pub order: u32,
    /// Certify only the component with this order tuple.
    #[arg(short = 't', long, value_delimiter = ',')]
    pub tuple: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Paper)]
    pub strategy: StrategyArg,
    #[command(flatten)]
    pub random: RandomArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Number of variables.
    #[arg(short = 'r', long)]
    pub rank: usize,
    /// Largest order m.
    #[arg(short = 'M', long = "max-order")]
    pub max_order: u32,
    #[arg(long, value_enum, default_value_t = StrategyArg::Random)]
    pub strategy: StrategyArg,
    #[command(flatten)]
    pub random: RandomArgs,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Components of W_1(xy) and the quotient exhibiting its embedded prime.
    Embedded,
    /// Closed-form enumeration against the brute-force tuple filter.
    Enumeration,
    /// Radical generators against the intersection of the minimal primes.
    Radical,
    /// Generators vanish on random points of every component.
    Vanishing,
    /// Diagonal and W_1 product identities on fixed inputs.
    Structure,
    /// Explicit certificates for two and three variables.
    Certificates,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// S-pair limit for the Groebner computations.
    #[arg(long, default_value_t = wedgelab::oracle::DEFAULT_BUDGET)]
    pub budget: usize,
}
