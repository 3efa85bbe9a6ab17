use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "cgc",
    version,
    about = "Categorical Gini correlation between numeric features and a class label"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Distance exponent, in (0, 2).
    #[arg(long, global = true, default_value_t = 1.0, value_parser = parse_alpha)]
    pub alpha: f64,

    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "CGC_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Point estimate.
    Compute(DataArgs),
    /// Jackknife confidence interval.
    Ci {
        #[command(flatten)]
        data: DataArgs,
        /// Confidence level, in (0, 1).
        #[arg(long, default_value_t = 0.95, value_parser = parse_open_unit)]
        level: f64,
        /// Clip the displayed bounds to [0, 1].
        #[arg(long)]
        clip: bool,
    },
    /// Permutation test of independence.
    Test {
        #[command(flatten)]
        data: DataArgs,
        /// Number of permutations.
        #[arg(long, short = 'B', default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        permutations: u64,
        /// RNG seed; drawn from the OS when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Significance level, in (0, 1).
        #[arg(long, default_value_t = 0.05, value_parser = parse_open_unit)]
        significance: f64,
    },
    /// Rank every feature column by its own correlation with the label.
    Screen {
        #[command(flatten)]
        data: DataArgs,
        /// Show only the best k features (text mode).
        #[arg(long)]
        top: Option<usize>,
    },
    /// Time the estimation strategies on synthetic data.
    Bench {
        /// Sample sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [500usize, 1000, 2000, 4000])]
        sizes: Vec<usize>,
        /// Feature columns of the synthetic data.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        dims: u64,
        /// Timed runs per strategy; the fastest is reported.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        repeats: u64,
        /// Seed for the synthetic data.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Delimited text file with a header row.
    #[arg(long)]
    pub data: PathBuf,
    /// Label column, by name or 0-based index.
    #[arg(long)]
    pub target: String,
    /// Comma-separated feature columns; defaults to every numeric column except the target.
    #[arg(long, value_delimiter = ',')]
    pub features: Vec<String>,
    #[arg(long, value_enum, default_value_t = Missing::Fail)]
    pub missing: Missing,
    /// Field delimiter.
    #[arg(long, default_value_t = ',', value_parser = parse_delimiter)]
    pub delimiter: char,
    /// The file has no header row; columns are named by index.
    #[arg(long)]
    pub no_header: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Missing {
    Fail,
    DropRows,
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 2.0 {
        Ok(v)
    } else {
        Err(format!("{v} is outside (0, 2)"))
    }
}

fn parse_open_unit(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} is outside (0, 1)"))
    }
}

fn parse_delimiter(s: &str) -> Result<char, String> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii() => Ok(c),
        _ => Err("delimiter must be a single ASCII character".into()),
    }
}
