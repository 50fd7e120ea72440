//! `massign`: predictions and Monte Carlo experiments for the multinomial
//! assignment process.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use massign::experiment::{
    self, emit, lemma1_test, run_trials, write_csv, write_json, zero_prob, ExperimentPlan,
    OutputFormat, SolverMode, Statistic,
};
use massign::theory::{self, h_star, h_tilde_star, m_of_n, Estimate, RegimeFamily, RegimeSpec};
use massign::words::{min_coded_hamming, parse_word};
use massign::{Error, Result};

#[derive(Parser)]
#[command(
    name = "massign",
    version,
    about = "Extrema of the multinomial random assignment process"
)]
struct Cli {
    /// Worker threads for trial-level parallelism (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Leading-order prediction for the maximum or minimum
    Predict {
        #[command(flatten)]
        regime: RegimeArgs,
        #[arg(long)]
        n: usize,
        /// Ball count override (default: the family's m(n))
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, value_enum, default_value_t = StatSide::Max)]
        stat: StatSide,
    },
    /// Root of H log H - (H - 1) = 1/c
    Hstar {
        #[arg(long)]
        c: f64,
        #[arg(long, value_enum, default_value_t = BranchArg::Upper)]
        branch: BranchArg,
    },
    /// Monte Carlo trials at a single n
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo trials over several n
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated, strictly increasing
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Also render ratio against log n as SVG
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Fraction of zero minima, decided by zero-cell matching only
    Zeroprob {
        #[command(flatten)]
        regime: OptRegimeArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Minimal coded Hamming distance between two words
    Hamming {
        /// Letters as a..z or comma-separated integers from 1
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        alphabet: usize,
    },
    /// Chi-square check of the greedy step-i maximum against a fresh row prefix
    Lemma1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        step: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct RegimeArgs {
    #[arg(long)]
    family: RegimeFamily,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
}

#[derive(Args)]
struct OptRegimeArgs {
    /// Regime family; omit for an explicit (n, m) run
    #[arg(long)]
    family: Option<RegimeFamily>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
}

impl OptRegimeArgs {
    fn spec(&self) -> Result<Option<RegimeSpec>> {
        self.family
            .map(|f| RegimeSpec::new(f, self.c, self.a))
            .transpose()
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    regime: OptRegimeArgs,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated statistics, e.g. max_exact,min_is_zero
    #[arg(long, default_value = "max_exact")]
    stats: String,
    #[arg(long, value_enum, default_value_t = SolverArg::Auto)]
    solver: SolverArg,
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write the first trial's matrix at the first n in text form
    #[arg(long)]
    dump_matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatSide {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Upper,
    Lower,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Exact,
    Bracket,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let threads = cli.threads;
    let result = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidPlan(e.to_string()))
            .and_then(|pool| pool.install(|| run(cli.command))),
        None => run(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::OverBudget { .. }
                | Error::NoLowerBranch(_)
                | Error::TooLargeForEnumeration { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Predict { regime, n, m, stat } => {
            let spec = RegimeSpec::new(regime.family, regime.c, regime.a)?;
            let m = m.unwrap_or_else(|| m_of_n(&spec, n));
            let p = match stat {
                StatSide::Max => theory::predict_max_for(&spec, n, m),
                StatSide::Min => theory::predict_min_for(&spec, n, m),
            };
            writeln!(out, "family: {}", spec.family)?;
            writeln!(out, "n: {}", p.n)?;
            writeln!(out, "m: {}", p.m)?;
            writeln!(out, "kind: {}", p.estimate.kind())?;
            match p.estimate {
                Estimate::Point { value } => writeln!(out, "value: {value}")?,
                Estimate::Interval { low, high } => writeln!(out, "low: {low}\nhigh: {high}")?,
                Estimate::ZeroWhp | Estimate::NotCovered => {}
            }
            writeln!(out, "theorem: {:?}", p.theorem)?;
        }
        Command::Hstar { c, branch } => {
            let s = match branch {
                BranchArg::Upper => h_star(c)?,
                BranchArg::Lower => h_tilde_star(c)?,
            };
            writeln!(out, "c: {}", s.c)?;
            writeln!(out, "h: {}", s.h)?;
            writeln!(
                out,
                "branch: {}",
                if matches!(branch, BranchArg::Upper) {
                    "upper"
                } else {
                    "lower"
                }
            )?;
            writeln!(out, "residual: {:e}", s.residual)?;
        }
        Command::Simulate { run, n } => simulate(run, vec![n], None)?,
        Command::Sweep { run, n_list, svg } => simulate(run, n_list, svg)?,
        Command::Zeroprob {
            regime,
            n,
            m,
            trials,
            seed,
        } => {
            let spec = regime.spec()?;
            let m = match (m, spec) {
                (Some(m), _) => m,
                (None, Some(spec)) => m_of_n(&spec, n),
                (None, None) => return Err(Error::InvalidPlan("give --family or --m".into())),
            };
            let r = zero_prob(n, m, trials, seed)?;
            writeln!(out, "n: {}", r.n)?;
            writeln!(out, "m: {}", r.m)?;
            writeln!(out, "trials: {}", r.trials)?;
            writeln!(out, "zeros: {}", r.zeros)?;
            writeln!(out, "zero_fraction: {}", r.zero_fraction)?;
            writeln!(out, "ci_low: {}", r.ci_low)?;
            writeln!(out, "ci_high: {}", r.ci_high)?;
        }
        Command::Hamming { u, v, alphabet } => {
            let u = parse_word(&u)?;
            let v = parse_word(&v)?;
            writeln!(out, "{}", min_coded_hamming(&u, &v, alphabet)?)?;
        }
        Command::Lemma1 {
            n,
            m,
            step,
            samples,
            seed,
        } => {
            let r = lemma1_test(n, m, step, samples, seed)?;
            writeln!(out, "greedy_mean: {}", r.greedy_mean)?;
            writeln!(out, "reference_mean: {}", r.reference_mean)?;
            writeln!(out, "statistic: {}", r.test.statistic)?;
            writeln!(out, "df: {}", r.test.df)?;
            writeln!(out, "p_value: {}", r.test.p_value)?;
        }
    }
    Ok(())
}

fn simulate(args: RunArgs, n_list: Vec<usize>, svg: Option<PathBuf>) -> Result<()> {
    let stats = Statistic::parse_list(&args.stats)?;
    let plan = ExperimentPlan {
        spec: args.regime.spec()?,
        m: args.m,
        n_list,
        trials: args.trials,
        master_seed: args.seed,
        stats,
        solver_mode: match args.solver {
            SolverArg::Exact => SolverMode::Exact,
            SolverArg::Bracket => SolverMode::Bracket,
            SolverArg::Auto => SolverMode::Auto,
        },
    };
    plan.validate()?;
    if let Some(path) = &args.dump_matrix {
        let x = experiment::trial_matrix(&plan, plan.n_list[0], 0)?;
        x.write_text(std::io::BufWriter::new(std::fs::File::create(path)?))?;
    }
    let summaries = run_trials(&plan)?;
    let format = match args.format {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Json => OutputFormat::Json,
    };
    match &args.out {
        Some(path) => emit(&summaries, format, path)?,
        None => {
            let stdout = io::stdout();
            match format {
                OutputFormat::Csv => write_csv(&summaries, stdout.lock())?,
                _ => write_json(&summaries, stdout.lock())?,
            }
        }
    }
    if let Some(path) = svg {
        emit(&summaries, OutputFormat::Svg, &path)?;
    }
    Ok(())
}
