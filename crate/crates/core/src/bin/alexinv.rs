//! Command-line driver: one subcommand per registered check plus `verify-all`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use alexinv::checks::{self, CheckParams, SuiteConfig};

#[derive(Parser)]
#[command(name = "alexinv", version, about = "Exact checks on the Alexander invariant of surface groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct CheckArgs {
    /// Genus.
    #[arg(long)]
    g: Option<usize>,
    /// Degree.
    #[arg(long)]
    n: Option<usize>,
    /// Truncation bound m (polynomials modulo J^m).
    #[arg(long)]
    trunc: Option<usize>,
    /// Magnus truncation degree k.
    #[arg(long)]
    budget: Option<usize>,
    /// Search cap: largest valuation or Magnus degree.
    #[arg(long)]
    max: Option<usize>,
    /// Number of random samples.
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Fundamental-weight coefficients, e.g. `1,1,0`.
    #[arg(long)]
    lambda: Option<String>,
    /// `identity` or `twist:c<h>`.
    #[arg(long)]
    endo: Option<String>,
    /// Word in the generators, e.g. `a1 b1 a1^-1 b1^-1`.
    #[arg(long)]
    word: Option<String>,
    /// Laurent polynomial multiplying the class of `--word`.
    #[arg(long)]
    poly: Option<String>,
    /// Run beyond the default budgets; the report is marked out-of-budget.
    #[arg(long)]
    allow_out_of_budget: bool,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

impl CheckArgs {
    fn params(&self) -> CheckParams {
        CheckParams {
            g: self.g,
            n: self.n,
            trunc: self.trunc,
            budget: self.budget,
            max: self.max,
            count: self.count,
            seed: self.seed,
            lambda: self.lambda.clone(),
            endo: self.endo.clone(),
            word: self.word.clone(),
            poly: self.poly.clone(),
            allow_out_of_budget: self.allow_out_of_budget,
            timings: false,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    FoxRelator(CheckArgs),
    FoxIdentity(CheckArgs),
    HallWittJacobi(CheckArgs),
    GradedDim(CheckArgs),
    AValuation(CheckArgs),
    NgBound(CheckArgs),
    WeylDim(CheckArgs),
    Decomp(CheckArgs),
    VerifyHwv(CheckArgs),
    Vanishing(CheckArgs),
    DehnLemma(CheckArgs),
    LcsDims(CheckArgs),
    JohnsonDepth(CheckArgs),
    Tau(CheckArgs),
    Kg1Probe(CheckArgs),
    /// Run the acceptance suite.
    VerifyAll {
        /// TOML configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Include per-check runtimes (makes the output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// List registered check ids.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (id, args) = match cli.command {
        Command::FoxRelator(a) => ("fox-relator", a),
        Command::FoxIdentity(a) => ("fox-identity", a),
        Command::HallWittJacobi(a) => ("hall-witt-jacobi", a),
        Command::GradedDim(a) => ("graded-dim", a),
        Command::AValuation(a) => ("a-valuation", a),
        Command::NgBound(a) => ("ng-bound", a),
        Command::WeylDim(a) => ("weyl-dim", a),
        Command::Decomp(a) => ("decomp", a),
        Command::VerifyHwv(a) => ("verify-hwv", a),
        Command::Vanishing(a) => ("vanishing", a),
        Command::DehnLemma(a) => ("dehn-lemma", a),
        Command::LcsDims(a) => ("lcs-dims", a),
        Command::JohnsonDepth(a) => ("johnson-depth", a),
        Command::Tau(a) => ("tau", a),
        Command::Kg1Probe(a) => ("kg1-probe", a),
        Command::List => {
            for (id, summary) in checks::check_ids() {
                println!("{id:<17} {summary}");
            }
            return ExitCode::SUCCESS;
        }
        Command::VerifyAll { config, json, timings } => return verify_all(config, json, timings),
    };
    let report = checks::run_check_reporting(id, &args.params());
    let reports = [report];
    if args.json {
        println!("{}", checks::reports_to_json(&reports));
    } else {
        print!("{}", checks::render_table(&reports));
        for n in &reports[0].notes {
            println!("  {n}");
        }
    }
    if reports[0].pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn verify_all(config: Option<PathBuf>, json: bool, timings: bool) -> ExitCode {
    let mut cfg = match config {
        Some(path) => match SuiteConfig::from_path(&path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{}", serde_json::json!({ "error": "config", "message": e.to_string() }));
                return ExitCode::from(2);
            }
        },
        None => SuiteConfig::default(),
    };
    cfg.timings |= timings;
    let reports = checks::verify_all(&cfg);
    if json {
        println!("{}", checks::reports_to_json(&reports));
    } else {
        print!("{}", checks::render_table(&reports));
    }
    if reports.iter().all(|r| r.ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
