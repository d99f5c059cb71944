use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polybound::config::{DomainConfig, KRange, ProblemConfig, SolverConfig, SolverMethod};
use polybound::{exit, experiment, table1, ExperimentConfig, HarnessError};
use polybound_core::bounds::{self, LpVariant, DEFAULT_SIGMA0_GRID};
use polybound_core::{BoundParams, IndexForm, ProblemSpec};

#[derive(Parser)]
#[command(name = "polybound", version, about = "Eigenvalue bounds for the clamped poly-Laplacian")]
struct Cli {
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Use the (1 + k) form of the collar bound.
    #[arg(long, global = true)]
    proof_form: bool,
    /// Output directory for CSV and plot script.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every applicable bound at one k.
    Bounds {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        k: usize,
        /// Fixed sigma0; optimised over the admissible range when absent.
        #[arg(long)]
        sigma0: Option<f64>,
    },
    /// Compute and print a spectrum.
    Spectrum {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value = "auto")]
        method: String,
        #[arg(long)]
        basis: Option<usize>,
    },
    /// Run the inequality checks of a config; exit code 1 on violations.
    Verify,
    /// Write the CSV report and plot script of a config.
    Report {
        /// Logarithmic axes in the plot script.
        #[arg(long)]
        log_log: bool,
    },
    /// Check the A1 branch table and the clamped-plate coefficients.
    Table1,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Interval,
    Box,
    Ball,
}

#[derive(Args)]
struct ProblemArgs {
    /// Poly-harmonic order.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum)]
    shape: Option<ShapeArg>,
    /// Interval length.
    #[arg(long)]
    length: Option<f64>,
    /// Box sides, comma separated.
    #[arg(long, value_delimiter = ',')]
    sides: Vec<f64>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
}

fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Config(msg.into())
}

impl ProblemArgs {
    /// Problem from flags, falling back to the config's problem.
    fn resolve(&self, cfg: Option<&ExperimentConfig>) -> Result<ProblemConfig, HarnessError> {
        let domain = match self.shape {
            Some(ShapeArg::Interval) => DomainConfig::Interval {
                length: self.length.ok_or_else(|| usage("--length required for an interval"))?,
                center: None,
            },
            Some(ShapeArg::Box) => {
                if self.sides.is_empty() {
                    return Err(usage("--sides required for a box"));
                }
                DomainConfig::Box { sides: self.sides.clone(), center: None }
            }
            Some(ShapeArg::Ball) => DomainConfig::Ball {
                dim: self.dim.ok_or_else(|| usage("--dim required for a ball"))?,
                radius: self.radius.ok_or_else(|| usage("--radius required for a ball"))?,
                center: None,
            },
            None => match cfg {
                Some(c) => c.problem.domain.clone(),
                None => return Err(usage("give --shape or --config")),
            },
        };
        let l = match (self.l, cfg) {
            (Some(l), _) => l,
            (None, Some(c)) => c.problem.l,
            (None, None) => return Err(usage("give --l or --config")),
        };
        Ok(ProblemConfig { l, domain })
    }
}

fn load_config(cli: &Cli) -> Result<Option<ExperimentConfig>, HarnessError> {
    let Some(path) = &cli.config else { return Ok(None) };
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if cli.proof_form {
        cfg.proof_form = true;
    }
    Ok(Some(cfg))
}

fn require_config(cfg: Option<ExperimentConfig>) -> Result<ExperimentConfig, HarnessError> {
    cfg.ok_or_else(|| usage("this subcommand needs --config"))
}

fn print_bounds(spec: &ProblemSpec, k: usize, sigma0: Option<f64>, form: IndexForm) -> Result<(), HarnessError> {
    let show = |name: &str, r: Result<f64, polybound_core::BoundsError>| match r {
        Ok(v) => println!("{name:<30} {v:.12e}"),
        Err(e) => println!("{name:<30} n/a ({e})"),
    };
    show("weyl_kth", bounds::weyl_kth(spec, k));
    show("weyl_average", bounds::weyl_average(spec, k));
    show("li_yau", bounds::li_yau_lower(spec, k));
    show("polya", bounds::polya_tiling_lower(spec, k));
    show("levine_protter:general-l", bounds::levine_protter_lower(spec, k, LpVariant::GeneralL));
    show("levine_protter:clamped-16pi4", bounds::levine_protter_lower(spec, k, LpVariant::Clamped16Pi4));
    show("cheng_qi_wei", bounds::cheng_qi_wei_lower(spec, k));
    let params = match sigma0 {
        Some(s) => BoundParams::for_spec(spec, s, k),
        None => bounds::optimize_sigma0(spec, k, DEFAULT_SIGMA0_GRID, form),
    };
    match params {
        Ok(p) => {
            let b = bounds::theorem_upper(spec, &p, form);
            println!(
                "{:<30} {:.12e}  (sigma0 = {:.6}, theta = {:.6}, valid = {}, degenerate = {})",
                "theorem_upper", b.value, p.sigma0, p.theta, b.valid, b.degenerate
            );
            println!(
                "{:<30} [{:.6e}, {:.6e}, {:.6e}]",
                "  terms", b.terms[0], b.terms[1], b.terms[2]
            );
            if spec.l() == 2 && !p.is_degenerate() {
                show("cheng_wei (k+1 average)", bounds::cheng_wei_clamped_upper(spec.n(), spec.volume(), p.theta, k));
            }
        }
        Err(e) => println!("{:<30} n/a ({e})", "theorem_upper"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    let cfg = load_config(&cli)?;
    let out_dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    match &cli.command {
        Command::Bounds { problem, k, sigma0 } => {
            let problem = problem.resolve(cfg.as_ref())?;
            let spec = ProblemSpec::new(problem.l, problem.domain.build()?)?;
            let form = if cli.proof_form || cfg.as_ref().is_some_and(|c| c.proof_form) {
                IndexForm::Proof
            } else {
                IndexForm::Stated
            };
            print_bounds(&spec, *k, *sigma0, form)?;
            Ok(exit::OK)
        }
        Command::Spectrum { problem, count, method, basis } => {
            let problem = problem.resolve(cfg.as_ref())?;
            let sc = ExperimentConfig {
                problem,
                k_range: KRange { start: 1, end: (*count).max(1) },
                bounds: vec![],
                sigma0: Default::default(),
                solver: SolverConfig { method: method.parse::<SolverMethod>()?, basis: *basis },
                output: Default::default(),
                seed: 0,
                proof_form: false,
                mc_samples: 0,
                corrupt: None,
            };
            sc.validate()?;
            let s = experiment::compute_spectrum(&sc, *count)?;
            println!("# method = {}, basis = {}, converged = {}", s.method().as_str(), s.basis_size(), s.converged_count());
            for (j, v) in s.values().iter().enumerate() {
                println!("{} {:.16e}", j + 1, v);
            }
            Ok(exit::OK)
        }
        Command::Verify => {
            let cfg = require_config(cfg)?;
            let (report, code) = experiment::verify(&cfg)?;
            if cli.out.is_some() {
                polybound::write_outputs(&cfg, &report, &out_dir)?;
            }
            let checked = report
                .rows
                .iter()
                .flat_map(|r| &r.cells)
                .filter(|c| c.verdict != polybound::Verdict::Skip)
                .count();
            println!(
                "{} rows, {checked} checks, {} violations, exit {code}",
                report.rows.len(),
                report.violations().len()
            );
            Ok(code)
        }
        Command::Report { log_log } => {
            let mut cfg = require_config(cfg)?;
            cfg.output.log_log |= *log_log;
            let report = experiment::run_experiment(&cfg)?;
            let (csv, plot) = polybound::write_outputs(&cfg, &report, &out_dir)?;
            println!("wrote {} and {}", csv.display(), plot.display());
            Ok(exit::OK)
        }
        Command::Table1 => Ok(if table1::print_report() { exit::OK } else { exit::VIOLATIONS }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
