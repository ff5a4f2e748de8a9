use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use experiments_cli::*;
use fourier_analysis::{write_sweep_csv, SymbolMethod};
use solvers::{Method, SolverConfig};

#[derive(Parser)]
#[command(name = "moment-experiments", about = "Benchmarks for iterative moment-method solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one benchmark problem and write its field, macro, history and report files.
    Solve(SolveArgs),
    /// Errors of the N = 5 heat-transfer problem against the exact solution.
    Convergence(ConvergenceArgs),
    /// Dominant amplification factors over (method, ε, η).
    Symbols(SymbolArgs),
    /// Markdown summary of the CSV files under a directory.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Heat1d,
    HeatCavity,
    LidCavity,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bsgs,
    Bssr,
    BsgsMm,
    HybridMm,
    BsgsMs,
    HybridMs,
    Gsis,
    Direct,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Bsgs => Method::Bsgs,
            MethodArg::Bssr => Method::Bssr,
            MethodArg::BsgsMm => Method::BsgsMm,
            MethodArg::HybridMm => Method::HybridMm,
            MethodArg::BsgsMs => Method::BsgsMs,
            MethodArg::HybridMs => Method::HybridMs,
            MethodArg::Gsis => Method::Gsis,
            MethodArg::Direct => Method::Direct,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SymbolArg {
    Bsgs,
    Bssr,
    BsgsMm,
}

impl From<SymbolArg> for SymbolMethod {
    fn from(m: SymbolArg) -> SymbolMethod {
        match m {
            SymbolArg::Bsgs => SymbolMethod::Bsgs,
            SymbolArg::Bssr => SymbolMethod::Bssr,
            SymbolArg::BsgsMm => SymbolMethod::BsgsMm,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// JSON run configuration; replaces the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "heat1d")]
    problem: ProblemArg,
    /// Hermite degree (1D) or Burnett truncation (2D).
    #[arg(long, default_value_t = 16)]
    n: usize,
    /// Cells per direction.
    #[arg(long, default_value_t = 200)]
    cells: usize,
    #[arg(long, default_value_t = 1e-2)]
    epsilon: f64,
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Paper-scale 2D preset: Burnett L = 10 on a 50×50 grid.
    #[arg(long)]
    full: bool,
    #[arg(long, value_enum, default_value = "bsgs")]
    method: MethodArg,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = 10000)]
    max_iter: usize,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long = "n-b", default_value_t = 0)]
    n_b: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[arg(long, default_value_t = 1)]
    order: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1e-1, 1e-2, 1e-3])]
    epsilon: Vec<f64>,
    /// Grids `80 · 2^j`, `j < levels`.
    #[arg(long, default_value_t = 6)]
    levels: usize,
    #[arg(long, default_value = "convergence.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct SymbolArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [SymbolArg::Bsgs, SymbolArg::Bssr, SymbolArg::BsgsMm])]
    methods: Vec<SymbolArg>,
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1e-1, 1e-2, 1e-3, 1e-4])]
    epsilon: Vec<f64>,
    /// Number of phases in (0, 2π).
    #[arg(long, default_value_t = 63)]
    etas: usize,
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    dx: f64,
    #[arg(long = "n-trunc", default_value_t = 32)]
    n_trunc: usize,
    #[arg(long, default_value = "symbols.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    dir: PathBuf,
    /// Write the summary here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_config(a: &SolveArgs) -> Result<RunConfig, ExpError> {
    if let Some(path) = &a.config {
        return RunConfig::from_file(path);
    }
    let (n, cells) = if a.full { (10, 50) } else { (a.n, a.cells) };
    let spec = match a.problem {
        ProblemArg::Heat1d => ProblemSpec::heat_1d(a.n, a.cells, a.epsilon, a.order),
        ProblemArg::HeatCavity => ProblemSpec::heat_cavity(n, cells, a.epsilon, a.order),
        ProblemArg::LidCavity => ProblemSpec::lid_cavity(n, cells, a.epsilon),
    };
    let solver = SolverConfig::new(a.method.into()).tol(a.tol).max_iter(a.max_iter).alpha(a.alpha).n_b(a.n_b);
    Ok(RunConfig { spec, solver })
}

fn execute(cli: Cli) -> Result<bool, ExpError> {
    match cli.command {
        Command::Solve(a) => {
            let cfg = run_config(&a)?;
            let out = run(&cfg, &a.out)?;
            let r = &out.report;
            println!(
                "{:?}: {} outer iterations, residual {:.3e}, {:.2} s, {}",
                cfg.solver.method,
                r.outer_iters,
                r.final_residual(),
                r.wall_time,
                if r.converged { "converged" } else { "not converged" }
            );
            Ok(r.converged)
        }
        Command::Convergence(a) => {
            let study = convergence_study(a.order, &a.epsilon, &default_ladder(a.levels))?;
            study.write_csv(&a.out)?;
            for (eps, slope) in study.epsilons.iter().zip(&study.slopes) {
                println!("ε = {eps:e}: order {slope:.3}");
            }
            Ok(true)
        }
        Command::Symbols(a) => {
            let methods: Vec<SymbolMethod> = a.methods.iter().map(|&m| m.into()).collect();
            let rows = symbol_sweep(&methods, &a.epsilon, &eta_grid(a.etas), a.alpha, a.dx, a.n_trunc)?;
            write_sweep_csv(&a.out, &rows)?;
            println!("{} rows written to {}", rows.len(), a.out.display());
            Ok(true)
        }
        Command::Report(a) => {
            let text = summarize(&a.dir)?;
            match a.out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
