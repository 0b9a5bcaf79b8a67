use clap::{Args, Parser, Subcommand};
use fermi_loss::entropy::EntropyFunctional;
use fermi_loss::optimizer::Scope;
use fermi_loss::suites::Suite;
use fermi_loss_cli::commands::{
    curves_to_csv, emit, resolve_seed, run_analytic_mixture, run_analytic_n4,
    run_analytic_two_fermion, run_curves, run_loss, run_verify, LossOptions,
};
use fermi_loss_cli::jsonfmt::to_json_string;
use fermi_loss_cli::statefile::{StateFile, TransformFile};
use fermi_loss_cli::CliError;
use std::path::PathBuf;

/// One-body information loss of fermionic states: optimize unread
/// mode-occupancy measurements, reproduce the closed-form benchmark curves,
/// and run randomized verification suites.
#[derive(Parser)]
#[command(name = "fermi-loss", version, about)]
struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimize the basis-summed information loss of a state file.
    Loss(LossArgs),
    /// Emit the four-mode benchmark curves as CSV.
    Fig1(Fig1Args),
    /// Run a randomized verification suite.
    Verify(VerifyArgs),
    /// Evaluate closed-form mixture results without any Fock-space work.
    Analytic(AnalyticArgs),
}

#[derive(Args)]
struct LossArgs {
    /// Path to the JSON state file.
    state: PathBuf,
    /// Entropy selector: vn | quad | tsallis:<q> | renyi:<q>.
    #[arg(long, default_value = "vn")]
    entropy: String,
    /// Basis family: sp (pairing-free) or qsp (all Bogoliubov bases).
    #[arg(long, value_enum, default_value = "qsp")]
    scope: ScopeArg,
    #[arg(long, default_value_t = 5)]
    restarts: usize,
    /// Residual tolerance for convergence.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    /// Seed for the random restarts (env FERMI_LOSS_SEED, then 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Skip optimization and evaluate the loss at this transform file.
    #[arg(long)]
    eval_transform: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig1Args {
    /// Number of grid points on w ∈ [0, 1].
    #[arg(long, default_value_t = 101)]
    steps: usize,
    /// Recompute the loss curves with the optimizer and append deviations.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: anticommutators | majorization | discord | ancilla |
    /// theorems | gradient | oracle | invariance | twofermion.
    #[arg(long)]
    suite: String,
    /// Mode count (suite-specific default).
    #[arg(long)]
    n: Option<usize>,
    /// Trial count (suite-specific default).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyticArgs {
    /// Family: mixture | n4 | twofermion.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0.5)]
    w: f64,
    /// Ensemble dimension (mixture and twofermion families).
    #[arg(long)]
    d: Option<usize>,
    /// Mode-occupancy spectrum, comma separated (mixture family).
    #[arg(long)]
    spectrum: Option<String>,
    /// Slater eigenvalues, comma separated (twofermion family).
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value = "vn")]
    entropy: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ScopeArg {
    Sp,
    Qsp,
}

impl From<ScopeArg> for Scope {
    fn from(arg: ScopeArg) -> Scope {
        match arg {
            ScopeArg::Sp => Scope::Sp,
            ScopeArg::Qsp => Scope::Qsp,
        }
    }
}

fn parse_entropy(text: &str) -> Result<EntropyFunctional, CliError> {
    text.parse::<EntropyFunctional>().map_err(CliError::from)
}

fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|item| {
            item.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Validation(format!("bad number '{item}': {e}")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| CliError::Validation(format!("cannot configure workers: {e}")))?;
    }

    match cli.command {
        Command::Loss(args) => {
            let state = StateFile::load(&args.state)?;
            let mut opts = LossOptions::new(parse_entropy(&args.entropy)?, args.scope.into());
            opts.restarts = args.restarts;
            opts.tolerance = args.tol;
            opts.max_iterations = args.max_iters;
            opts.seed = resolve_seed(args.seed);
            if let Some(path) = &args.eval_transform {
                opts.eval_transform = Some(TransformFile::load(path)?);
            }
            let report = run_loss(&state, &opts)?;
            let rendered = to_json_string(&report)
                .map_err(|e| CliError::Output(e.to_string()))?;
            emit(&rendered, args.out.as_deref())?;
            if report.optimized && !report.converged {
                return Err(CliError::NonConvergence);
            }
            Ok(())
        }
        Command::Fig1(args) => {
            let rows = run_curves(args.steps, args.verify, resolve_seed(args.seed))?;
            emit(&curves_to_csv(&rows), args.out.as_deref())
        }
        Command::Verify(args) => {
            let suite: Suite = args
                .suite
                .parse()
                .map_err(|e: fermi_loss::Error| CliError::Validation(e.to_string()))?;
            let report = run_verify(suite, args.n, args.trials, resolve_seed(args.seed))?;
            let rendered = to_json_string(&report)
                .map_err(|e| CliError::Output(e.to_string()))?;
            emit(&rendered, args.out.as_deref())?;
            if !report.passed {
                return Err(CliError::SuiteFailure(format!(
                    "{} of {} checks failed",
                    report.checks.iter().filter(|c| !c.passed).count(),
                    report.checks.len()
                )));
            }
            Ok(())
        }
        Command::Analytic(args) => {
            let entropy = parse_entropy(&args.entropy)?;
            let report = match args.family.as_str() {
                "mixture" => {
                    let spectrum = parse_list(args.spectrum.as_deref().ok_or_else(|| {
                        CliError::Validation("mixture family needs --spectrum".into())
                    })?)?;
                    let d = args.d.ok_or_else(|| {
                        CliError::Validation("mixture family needs --d".into())
                    })?;
                    run_analytic_mixture(args.w, d, spectrum, &entropy)?
                }
                "n4" => run_analytic_n4(args.w)?,
                "twofermion" => {
                    let lambdas = parse_list(args.lambda.as_deref().ok_or_else(|| {
                        CliError::Validation("twofermion family needs --lambda".into())
                    })?)?;
                    let d = args.d.ok_or_else(|| {
                        CliError::Validation("twofermion family needs --d".into())
                    })?;
                    run_analytic_two_fermion(lambdas, args.w, d, &entropy)?
                }
                other => {
                    return Err(CliError::Validation(format!(
                        "unknown analytic family '{other}'"
                    )))
                }
            };
            let rendered = to_json_string(&report)
                .map_err(|e| CliError::Output(e.to_string()))?;
            emit(&rendered, args.out.as_deref())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
