use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use petrie_core::sim::{ExtensionBound, Mode};

#[derive(Parser, Debug)]
#[command(name = "petrie", version, about = "Petrie matrices of permutations and their extension similarities")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,

    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,

    /// Cache directory for classification reports; overrides PETRIE_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Extension bound: `N`, or `LxR` for separate left and right sizes.
    #[arg(long, global = true)]
    pub bound: Option<BoundArg>,

    /// Compare characteristic polynomials only.
    #[arg(long, global = true)]
    pub weak: bool,

    /// Ignore cached reports and recompute.
    #[arg(long, global = true)]
    pub fresh: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundArg {
    Uniform(usize),
    Sides(usize, usize),
}

impl FromStr for BoundArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| -> Result<usize, String> {
            match t.trim().parse::<usize>() {
                Ok(0) => Err("bounds must be at least 1".into()),
                Ok(v) => Ok(v),
                Err(_) => Err(format!("bad bound {t:?}")),
            }
        };
        match s.split_once(['x', 'X', ',']) {
            Some((l, r)) => Ok(Self::Sides(num(l)?, num(r)?)),
            None => Ok(Self::Uniform(num(s)?)),
        }
    }
}

impl BoundArg {
    pub fn resolve(arg: Option<Self>, mode: Mode) -> ExtensionBound {
        match arg {
            None => ExtensionBound::default_for(mode),
            Some(Self::Uniform(b)) => ExtensionBound::uniform(b),
            Some(Self::Sides(l, r)) => ExtensionBound::two_sided(l, r),
        }
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: petrie_core::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the Petrie matrix with its determinant, trace and characteristic polynomial.
    Matrix {
        /// Image list, cycle notation (`(3 4 5)@5`) or arrow chain.
        perm: String,
        /// Also print the minimal polynomial.
        #[arg(long)]
        minpoly: bool,
        /// Also print the invariant factors.
        #[arg(long)]
        invariant_factors: bool,
    },
    /// Search synchronized extensions of two permutations for a non-similar pair.
    Simtest {
        a: String,
        b: String,
        #[arg(long, default_value = "right", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Partition S_n into classes that no extension within the bound separates.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "right", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Build and check one of the constructive conjugacy witnesses.
    Verify(VerifyArgs),
    /// Apply an extension spec (JSON) to a base permutation.
    Extend {
        base: String,
        #[arg(long)]
        spec: String,
    },
    /// The mirror permutation i -> n+1 - p(n+1-i).
    Dual { perm: String },
    /// The interval transition digraph in DOT.
    Graph { perm: String },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Construction: 5 (block-lift), 7 (basic-lift), 9 (iterate basis),
    /// 10 (interval-shift), 12 (alpha-theta), 13 (beta-delta).
    #[arg(long, value_parser = ["5", "7", "9", "10", "12", "13"])]
    pub theorem: String,

    #[arg(long)]
    pub m: Option<usize>,
    /// Appended points; for 10, 12 and 13 every right spec of this size is checked.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,

    /// Images of the low block, as an image list (default: increasing).
    #[arg(long)]
    pub low: Option<String>,
    /// Images of the high block, as an image list (default: increasing).
    #[arg(long)]
    pub high: Option<String>,

    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long)]
    pub mu: Option<String>,

    /// A single right extension spec, JSON.
    #[arg(long)]
    pub spec: Option<String>,

    /// Block appended on the left (construction 5).
    #[arg(long)]
    pub left: Option<String>,
    /// Block appended on the right (construction 5).
    #[arg(long)]
    pub right: Option<String>,
    /// Base conjugator G as JSON rows of rationals; solved for when absent.
    #[arg(long)]
    pub g: Option<String>,

    /// Also require the base Petrie matrices to be similar.
    #[arg(long)]
    pub assert_base_similar: bool,
}
