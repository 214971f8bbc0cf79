// Copyright 2026 The prepost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end. `run` is the whole program minus process exit so
//! tests can drive it in-process.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::{bench, run_algorithm, write_csv, Algorithm};
use crate::error::Error;
use crate::hprepost::HPrepostConfig;
use crate::io::{generate, read_fimi_file, stats, write_fimi, write_result};
use crate::types::{MinSup, MiningResult, TransactionDatabase};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "prepost", version, about = "Frequent itemset mining with PPC-trees and N-lists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mine frequent itemsets and write the canonical result file.
    Mine(MineArgs),
    /// Run several algorithms and check that they agree.
    Verify(VerifyArgs),
    /// Time algorithms over a min-sup grid and emit CSV.
    Bench(BenchArgs),
    /// Print `items transactions avg_length` of a FIMI file.
    Stats(StatsArgs),
    /// Write a seeded synthetic FIMI file.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Threshold {
    /// Minimum support as a fraction of transactions, in (0, 1].
    #[arg(long)]
    min_sup: Option<f64>,
    /// Minimum support as an absolute transaction count.
    #[arg(long)]
    min_count: Option<u64>,
}

impl Threshold {
    fn spec(&self) -> MinSup {
        match (self.min_sup, self.min_count) {
            (Some(f), _) => MinSup::Fraction(f),
            (None, Some(m)) => MinSup::Count(m),
            (None, None) => unreachable!("clap enforces one threshold flag"),
        }
    }
}

#[derive(Debug, Args)]
struct Parallelism {
    /// Mining groups for hprepost.
    #[arg(long, default_value_t = 1)]
    groups: usize,
    /// Input splits (map tasks) for hprepost.
    #[arg(long, default_value_t = 1)]
    splits: usize,
    /// Worker threads for hprepost.
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl Parallelism {
    fn config(&self) -> HPrepostConfig {
        HPrepostConfig::new(self.groups, self.splits, self.workers)
    }
}

#[derive(Debug, Args)]
struct MineArgs {
    /// FIMI transaction file.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    threshold: Threshold,
    /// prepost, hprepost, fpgrowth or bruteforce.
    #[arg(long)]
    algo: Algorithm,
    #[command(flatten)]
    parallel: Parallelism,
    /// Result file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// FIMI transaction file.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    threshold: Threshold,
    /// Comma-separated algorithm names.
    #[arg(long, value_delimiter = ',', required = true)]
    algos: Vec<Algorithm>,
    #[command(flatten)]
    parallel: Parallelism,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// FIMI transaction file.
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated support fractions.
    #[arg(long, value_delimiter = ',', required = true)]
    min_sups: Vec<f64>,
    /// Comma-separated algorithm names.
    #[arg(long, value_delimiter = ',', required = true)]
    algos: Vec<Algorithm>,
    /// Runs per cell; the median runtime is reported.
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    /// CSV file; standard output when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Dataset label for the CSV; defaults to the input file stem.
    #[arg(long)]
    name: Option<String>,
    #[command(flatten)]
    parallel: Parallelism,
}

#[derive(Debug, Args)]
struct StatsArgs {
    /// FIMI transaction file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Number of distinct items, numbered from 1.
    #[arg(long)]
    items: usize,
    #[arg(long)]
    transactions: usize,
    /// Mean transaction length.
    #[arg(long)]
    avg_len: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::InvalidMinSup(_) | Error::InvalidParameter(_) | Error::OracleLimit(_) => EXIT_USAGE,
            Error::UnorderedPath { .. } | Error::Task { .. } | Error::Io(_) => EXIT_INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Mine(a) => cmd_mine(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
        Command::Bench(a) => cmd_bench(a, stdout),
        Command::Stats(a) => cmd_stats(a, stdout),
        Command::Gen(a) => cmd_gen(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<TransactionDatabase, Failure> {
    read_fimi_file(path).map_err(|e| match e {
        Error::Io(io) => Failure { code: EXIT_PARSE, message: format!("{}: {io}", path.display()) },
        other => {
            let mut f = Failure::from(other);
            f.message = format!("{}: {}", path.display(), f.message);
            f
        }
    })
}

fn with_sink(path: Option<&Path>, stdout: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> crate::Result<()>) -> Outcome {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure { code: EXIT_INTERNAL, message: format!("{}: {e}", p.display()) })?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush().map_err(Error::from)?;
        }
        None => body(stdout)?,
    }
    Ok(EXIT_OK)
}

fn cmd_mine(a: MineArgs, stdout: &mut dyn Write) -> Outcome {
    let db = load(&a.input)?;
    let run = run_algorithm(a.algo, &db, a.threshold.spec(), a.parallel.config())?;
    with_sink(a.output.as_deref(), stdout, |w| write_result(&run.result, w))
}

/// Compares named results against the first one. Prints the first differing
/// itemset and returns the mismatch exit code on disagreement.
pub fn verify_agreement(results: &[(String, MiningResult)], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let Some((base_name, base)) = results.first() else {
        return EXIT_OK;
    };
    for (name, other) in &results[1..] {
        if let Some(diff) = base.first_difference(other) {
            let _ = writeln!(stderr, "mismatch between {base_name} and {name}: {diff}");
            return EXIT_MISMATCH;
        }
    }
    let names: Vec<&str> = results.iter().map(|(n, _)| n.as_str()).collect();
    let _ = writeln!(stdout, "ok: {} agree on {} itemsets", names.join(", "), base.len());
    EXIT_OK
}

fn cmd_verify(a: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let db = load(&a.input)?;
    let spec = a.threshold.spec();
    let mut results = Vec::with_capacity(a.algos.len());
    for algo in &a.algos {
        let run = run_algorithm(*algo, &db, spec, a.parallel.config())?;
        results.push((algo.to_string(), run.result));
    }
    Ok(verify_agreement(&results, stdout, stderr))
}

fn cmd_bench(a: BenchArgs, stdout: &mut dyn Write) -> Outcome {
    let db = load(&a.input)?;
    let name =
        a.name.clone().unwrap_or_else(|| a.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "dataset".into()));
    let records = bench(&name, &db, &a.min_sups, &a.algos, a.repeat, a.parallel.config())?;
    with_sink(a.csv.as_deref(), stdout, |w| write_csv(&records, w))
}

fn cmd_stats(a: StatsArgs, stdout: &mut dyn Write) -> Outcome {
    let db = load(&a.input)?;
    writeln!(stdout, "{}", stats(&db)).map_err(Error::from)?;
    Ok(EXIT_OK)
}

fn cmd_gen(a: GenArgs, stdout: &mut dyn Write) -> Outcome {
    let db = generate(a.items, a.transactions, a.avg_len, a.seed)?;
    with_sink(a.output.as_deref(), stdout, |w| write_fimi(&db, w))
}
