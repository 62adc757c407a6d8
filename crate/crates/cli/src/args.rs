use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "fermat-adjoint",
    version,
    about = "Base loci and tangent separation of adjoint systems on cyclic quotients of Fermat hypersurfaces"
)]
pub struct Cli {
    /// Emit one JSON document per report instead of text.
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    /// Emit a tab-separated catalog (search only).
    #[arg(long, global = true)]
    pub tsv: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a (p, n, weights) configuration.
    Validate(ConfigArgs),
    /// List the invariant monomials of degree d and character c.
    Basis(SystemArgs),
    /// Count invariant monomials (all characters when --c is omitted).
    Count(CountArgs),
    /// Base supports of the (d, c) system.
    Baselocus(SystemArgs),
    /// Jet ranks and empty tangent columns at the points x_{a,b}.
    Jets(JetArgs),
    /// Base points of K + (p-2)D + jN and tangents of K + (p-1)D + jN on the fundamental quotient.
    Theorem1(Theorem1Args),
    /// Base points of K + nD' and tangents of K + (n+1)D' on a general quotient.
    Theorem2(Theorem2Args),
    /// Enumerate weight tuples with k_0 = 0 satisfying the base-point congruence and re-verify each.
    Search(SearchArgs),
    /// Exhaustive sign/exponent identities and the canonical-sign resolution.
    Lemmas(LemmaArgs),
}

/// `--weights` omitted means the fundamental configuration `(0, 1, .., p-1)`.
#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Order of the acting group.
    #[arg(long)]
    pub p: i64,
    /// Dimension; defaults to the weight count minus two.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Comma-separated weights k_0 < .. < k_{n+1}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
    /// Canonical-class sign: +1, -1 or auto.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub sign: String,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Degree.
    #[arg(long)]
    pub d: u32,
    /// Character, reduced mod p.
    #[arg(long, allow_hyphen_values = true)]
    pub c: i64,
    /// Cap on the raw number of degree-d monomials.
    #[arg(long, default_value_t = fermat_adjoint_core::sections::DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Degree.
    #[arg(long)]
    pub d: u32,
    /// Character, reduced mod p.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<i64>,
}

#[derive(Debug, Args)]
pub struct JetArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Restrict to the point x_{a,b}; all pairs a < b otherwise.
    #[arg(long, value_delimiter = ',', num_args = 2)]
    pub pair: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct Theorem1Args {
    #[arg(long)]
    pub p: i64,
    /// A single twist; every residue when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,
    /// Canonical-class sign: +1, -1 or auto.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub sign: String,
}

#[derive(Debug, Args)]
pub struct Theorem2Args {
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub p: i64,
    /// Canonical-class sign: +1, -1 or auto.
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub sign: String,
    /// Cap on the number of tuples examined.
    #[arg(long, default_value_t = fermat_adjoint_core::search::DEFAULT_SEARCH_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    /// Triples are drawn from [0, bound).
    #[arg(long, default_value_t = 30)]
    pub bound: u32,
    /// Check the exponent identity for every prime up to this bound.
    #[arg(long, default_value_t = 101)]
    pub max_prime: u32,
}
