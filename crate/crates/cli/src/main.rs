mod args;
mod bench;

use std::fmt::{self, Write as _};
use std::process::ExitCode;

use cgc::{Alpha, CgcError, CgcEstimate, ColumnRef, Engine, LoadedTable, MissingPolicy, TableSpec, TestConfig};
use clap::Parser;
use serde::Serialize;

use crate::args::{Cli, Command, DataArgs, Missing};

/// A failure reported on stderr with exit status 1.
#[derive(Debug)]
pub enum Failure {
    Cgc(CgcError),
    Read { path: String, source: std::io::Error },
    Mismatch(String),
}

impl Failure {
    fn name(&self) -> &'static str {
        match self {
            Failure::Cgc(e) => e.name(),
            Failure::Read { .. } => "IoError",
            Failure::Mismatch(_) => "StrategyMismatch",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Cgc(e) => e.fmt(f),
            Failure::Read { path, source } => write!(f, "cannot read {path}: {source}"),
            Failure::Mismatch(msg) => f.write_str(msg),
        }
    }
}

impl From<CgcError> for Failure {
    fn from(e: CgcError) -> Self {
        Failure::Cgc(e)
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}: {failure}", failure.name());
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let engine = Engine::with_workers(cli.workers.map(|w| w as usize))?;
    let alpha = Alpha::new(cli.alpha)?;
    match cli.command {
        Command::Compute(data) => compute(&load(&data)?, alpha, &engine, cli.json),
        Command::Ci { data, level, clip } => interval(&load(&data)?, alpha, level, clip, &engine, cli.json),
        Command::Test {
            data,
            permutations,
            seed,
            significance,
        } => {
            let seed = seed.unwrap_or_else(rand::random);
            let config = TestConfig::new(permutations as usize, seed).with_significance(significance);
            test(&load(&data)?, alpha, &config, &engine, cli.json)
        }
        Command::Screen { data, top } => screen(&load(&data)?, alpha, top, &engine, cli.json),
        Command::Bench {
            sizes,
            dims,
            repeats,
            seed,
        } => bench::run(
            &bench::Plan::new(sizes, dims as usize, repeats as usize, seed),
            alpha,
            &engine,
            cli.json,
        ),
    }
}

fn load(args: &DataArgs) -> Result<LoadedTable, Failure> {
    let mut spec = TableSpec::new(&args.data, args.target.as_str())
        .missing(match args.missing {
            Missing::Fail => MissingPolicy::Fail,
            Missing::DropRows => MissingPolicy::DropRows,
        })
        .delimiter(args.delimiter as u8)
        .has_header(!args.no_header);
    if !args.features.is_empty() {
        spec = spec.features(args.features.iter().map(|f| ColumnRef::from(f.as_str())));
    }
    let table = spec.load().map_err(|e| match e {
        CgcError::Io(source) => Failure::Read {
            path: args.data.display().to_string(),
            source,
        },
        e => Failure::Cgc(e),
    })?;
    if table.dropped_rows > 0 {
        let s = if table.dropped_rows == 1 { "" } else { "s" };
        eprintln!("{} row{s} dropped", table.dropped_rows);
    }
    Ok(table)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Described<'a, T> {
    target: &'a str,
    features: &'a [String],
    dropped_rows: usize,
    #[serde(flatten)]
    result: T,
}

impl<'a, T> Described<'a, T> {
    fn new(table: &'a LoadedTable, result: T) -> Self {
        Described {
            target: &table.target_name,
            features: &table.feature_names,
            dropped_rows: table.dropped_rows,
            result,
        }
    }
}

fn compute(table: &LoadedTable, alpha: Alpha, engine: &Engine, json: bool) -> Outcome {
    let est: CgcEstimate = engine.cgc(&table.sample()?, alpha)?;
    if json {
        return Ok(to_json(&Described::new(table, est)));
    }
    Ok(format!("Categorical Gini Correlation: {:.6}\n", est.rho))
}

fn interval(table: &LoadedTable, alpha: Alpha, level: f64, clip: bool, engine: &Engine, json: bool) -> Outcome {
    let mut ci = engine.confidence_interval(&table.sample()?, alpha, level)?;
    if clip {
        ci.lower = ci.lower.clamp(0.0, 1.0);
        ci.upper = ci.upper.clamp(0.0, 1.0);
    }
    if json {
        return Ok(to_json(&Described::new(table, ci)));
    }
    let mut out = String::new();
    writeln!(out, "Categorical Gini Correlation: {:.6}", ci.estimate).unwrap();
    writeln!(out, "Standard error: {:.6}", ci.stderr).unwrap();
    writeln!(out, "Confidence level: {}", ci.level).unwrap();
    writeln!(out, "Lower bound: {:.6}", ci.lower).unwrap();
    writeln!(out, "Upper bound: {:.6}", ci.upper).unwrap();
    Ok(out)
}

fn test(table: &LoadedTable, alpha: Alpha, config: &TestConfig, engine: &Engine, json: bool) -> Outcome {
    let result = engine.independence_test(&table.sample()?, alpha, config)?;
    if json {
        return Ok(to_json(&Described::new(table, result)));
    }
    let mut out = String::new();
    writeln!(out, "Statistic: {:.6}", result.statistic).unwrap();
    writeln!(out, "Permutations: {}", result.permutations).unwrap();
    writeln!(out, "Seed: {}", result.seed).unwrap();
    writeln!(out, "P-value: {:.4}", result.p_value).unwrap();
    out.push_str(if result.rejected {
        "Reject null hypothesis.\n"
    } else {
        "Fail to reject null hypothesis.\n"
    });
    Ok(out)
}

#[derive(Serialize)]
struct RankedFeature<'a> {
    rank: usize,
    feature: &'a str,
    column: usize,
    rho: Option<f64>,
}

fn screen(table: &LoadedTable, alpha: Alpha, top: Option<usize>, engine: &Engine, json: bool) -> Outcome {
    let result = engine.screen_features(&table.sample()?, alpha)?;
    let shown = top.map_or(&result.ranking[..], |k| result.top(k));
    let rows: Vec<RankedFeature> = shown
        .iter()
        .enumerate()
        .map(|(i, f)| RankedFeature {
            rank: i + 1,
            feature: &table.feature_names[f.feature],
            column: f.feature,
            rho: f.rho,
        })
        .collect();
    if json {
        #[derive(Serialize)]
        struct Report<'a> {
            target: &'a str,
            alpha: f64,
            ranking: Vec<RankedFeature<'a>>,
        }
        return Ok(to_json(&Report {
            target: &table.target_name,
            alpha: result.alpha,
            ranking: rows,
        }));
    }
    let width = rows
        .iter()
        .map(|r| r.feature.len())
        .max()
        .unwrap_or(0)
        .max("feature".len());
    let mut out = String::new();
    writeln!(out, "{:<4}  {:<width$}  rho", "rank", "feature").unwrap();
    for row in &rows {
        let rho = row
            .rho
            .map_or_else(|| "degenerate (constant column)".to_owned(), |r| format!("{r:.6}"));
        writeln!(out, "{:<4}  {:<width$}  {rho}", row.rank, row.feature).unwrap();
    }
    Ok(out)
}
