mod format;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rankforge", version, about = "Algebraic attacks on rank decoding and MinRank")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "RANKFORGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Cap on worker threads (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run an attack on an instance file.
    Solve(SolveArgs),
    /// Bit-complexity estimates.
    Estimate(EstimateArgs),
    /// Rank experiments on random instances, as CSV.
    Experiment {
        #[command(subcommand)]
        name: ExperimentKind,
    },
    /// Check a solution file against an instance file.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct GenCommon {
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: u32,
    /// Output path (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Write the planted solution into the file.
    #[arg(long)]
    pub with_plant: bool,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Rank decoding instance over F_{q^m} with a planted error.
    Rd {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// MinRank instance of K matrices of size m x n.
    Minrank {
        #[command(flatten)]
        common: GenCommon,
        #[arg(long = "K", value_parser = clap::value_parser!(u32).range(1..))]
        kk: u32,
        /// Purely random matrices without a planted solution.
        #[arg(long)]
        unplanted: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Dense,
    Wiedemann,
    Auto,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// Columns of C to guess (hybrid).
    #[arg(long, conflicts_with = "auto")]
    pub a: Option<usize>,
    /// Positions to puncture.
    #[arg(long, conflicts_with = "auto")]
    pub p: Option<usize>,
    /// Support Minors degree.
    #[arg(long, conflicts_with = "auto")]
    pub b: Option<usize>,
    /// Columns kept for Support Minors.
    #[arg(long = "n-prime", conflicts_with = "auto")]
    pub n_prime: Option<usize>,
    /// Let the estimator pick the cheapest plan that fits the budget.
    #[arg(long)]
    pub auto: bool,
    #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
    pub solver: SolverArg,
    /// Refuse plans whose dense elimination would need more memory.
    #[arg(long, default_value_t = 1024)]
    pub memory_mb: u64,
    /// Write the solution to this file for `verify`.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    RolloRqc,
    GemssRainbow,
    NewParams,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Linear algebra exponent.
    #[arg(long)]
    pub omega: Option<f64>,
    #[command(subcommand)]
    pub target: Option<EstimateTarget>,
}

#[derive(Subcommand, Debug)]
pub enum EstimateTarget {
    /// All plans for one decoding parameter set.
    Rd {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        omega: Option<f64>,
    },
    /// Support Minors plans for one MinRank parameter set.
    Minrank {
        /// Field size; omit for a field too large to matter.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "K")]
        kk: usize,
        #[arg(long)]
        r: usize,
    },
    /// Cost over a range of lengths, as CSV.
    Sweep {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        r: usize,
        /// m is the largest prime below n / ratio.
        #[arg(long = "ratio-m-n")]
        ratio: f64,
        /// k = n / 2 (the only family supported).
        #[arg(long)]
        n2k: bool,
        #[arg(long, default_value_t = 20)]
        from: usize,
        #[arg(long, default_value_t = 200)]
        to: usize,
        /// Plain MaxMinors only, without puncturing or the hybrid attack.
        #[arg(long)]
        plain: bool,
        /// Defaults to log2(7).
        #[arg(long)]
        omega: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentKind {
    /// How often the MaxMinors matrix has corank one.
    RankHeuristic {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Measured Support Minors ranks against the prediction.
    Dexp {
        #[arg(long, default_value_t = 13)]
        q: u32,
        #[arg(long, value_enum, default_value_t = Grid::Paper)]
        grid: Grid,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Cells with more monomials are reported unmeasured.
        #[arg(long, env = "RANKFORGE_DEXP_BUDGET", default_value_t = 1000)]
        budget: usize,
        #[arg(long)]
        unplanted: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    /// m in {7,8}, r in {2,3}, n in r+3..=r+5, K in 3..=20, b in 1..=3.
    Paper,
}

fn main() -> ExitCode {
    // die quietly when piped into `head` instead of panicking in println!
    #[cfg(unix)]
    // SAFETY: called before any other thread exists
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(run::exit_code(&e))
        }
    }
}
