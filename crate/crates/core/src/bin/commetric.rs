use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commutator_metric::report::{
    self, HistogramOptions, RunOptions, Table1Options, TheoryOptions,
};
use commutator_metric::{Alpha, EnsembleKind, Error};

/// Triangle-inequality experiments for the commutator Frobenius norm.
#[derive(Parser)]
#[command(name = "commetric", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean and std-dev of the defect over an (n x alpha) grid.
    Table1(Table1Args),
    /// Per-n histograms of the defect.
    Histogram(HistogramArgs),
    /// Empirical vs. predicted moments of the squared-distance defect.
    Theory(TheoryArgs),
    /// Print the 2x2 triple that violates the triangle inequality.
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct Common {
    /// Number of trials per cell.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,
    #[arg(long, default_value_t = commutator_metric::DEFAULT_SEED)]
    seed: u64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads (0 = auto). Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Drop dimensions larger than this.
    #[arg(long)]
    max_n: Option<usize>,
}

impl Common {
    fn run_options(&self) -> RunOptions {
        RunOptions {
            out_dir: self.out.clone(),
            threads: self.threads,
        }
    }
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, value_delimiter = ',', value_parser = parse_n)]
    n: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alpha: Option<Vec<Alpha>>,
    #[arg(long, default_value = "unit-sphere", value_parser = parse_ensemble)]
    ensemble: EnsembleKind,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct HistogramArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_n)]
    n: Option<Vec<usize>>,
    #[arg(long, default_value = "1", value_parser = parse_alpha)]
    alpha: Alpha,
    #[arg(long, default_value = "gaussian", value_parser = parse_ensemble)]
    ensemble: EnsembleKind,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(2..))]
    bins: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TheoryArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_n)]
    n: Option<Vec<usize>>,
    #[arg(long, default_value = "unit-sphere", value_parser = parse_ensemble)]
    ensemble: EnsembleKind,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long, value_delimiter = ',', value_parser = parse_alpha)]
    alpha: Option<Vec<Alpha>>,
}

fn parse_n(s: &str) -> Result<usize, String> {
    let n: usize = s.trim().parse().map_err(|e| format!("{e}"))?;
    if n < 2 {
        return Err(format!("dimension must be at least 2, got {n}"));
    }
    Ok(n)
}

fn parse_alpha(s: &str) -> Result<Alpha, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    Alpha::new(v).map_err(|e| e.to_string())
}

fn parse_ensemble(s: &str) -> Result<EnsembleKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Table1(a) => {
            let mut opts = Table1Options {
                ensemble: a.ensemble,
                seed: a.common.seed,
                max_n: a.common.max_n,
                ..Table1Options::default()
            };
            if let Some(n) = a.n {
                opts.n_list = n;
            }
            if let Some(alpha) = a.alpha {
                opts.alpha_list = alpha;
            }
            if let Some(t) = a.common.trials {
                opts.trials = t;
            }
            let rep = report::cmd_table1(&opts, &a.common.run_options())?;
            print!("{rep}");
            println!("wrote {}", rep.csv_path.display());
        }
        Command::Histogram(a) => {
            let mut opts = HistogramOptions {
                ensemble: a.ensemble,
                alpha: a.alpha,
                seed: a.common.seed,
                bins: a.bins as usize,
                max_n: a.common.max_n,
                ..HistogramOptions::default()
            };
            if let Some(n) = a.n {
                opts.n_list = n;
            }
            if let Some(t) = a.common.trials {
                opts.trials = t;
            }
            let rep = report::cmd_histogram(&opts, &a.common.run_options())?;
            print!("{rep}");
        }
        Command::Theory(a) => {
            let mut opts = TheoryOptions {
                ensemble: a.ensemble,
                seed: a.common.seed,
                max_n: a.common.max_n,
                ..TheoryOptions::default()
            };
            if let Some(n) = a.n {
                opts.n_list = n;
            }
            if let Some(t) = a.common.trials {
                opts.trials = t;
            }
            let rep = report::cmd_theory(&opts, &a.common.run_options())?;
            print!("{rep}");
            println!("wrote {}", rep.csv_path.display());
        }
        Command::Counterexample(a) => {
            let alphas = a
                .alpha
                .unwrap_or_else(report::default_counterexample_alphas);
            print!("{}", report::cmd_counterexample(&alphas)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
