use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use greedy_lab::experiments::{export_csv, run_experiment, ExperimentConfig, StoppingMode, THREADS_ENV};
use greedy_lab::kernels::MassKernel;
use greedy_lab::process::{simulate, write_trajectories, write_trajectories_file, Clock, GridEstimator, StoppingRule};
use greedy_lab::theory::{self, CheckReport, RateCurve, RateParams};
use greedy_lab::{EngineKind, EngineSpec, Error, InterpolationCop, Preset, QuadratureGrid};

#[derive(Parser)]
#[command(name = "greedy-lab", version, about = "Stochastic greedy sampling experiments and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// K-run Monte Carlo experiment; writes decay.csv, pointwise.csv, meta.csv and manifest.json.
    Run(RunArgs),
    /// Single-trajectory CSV dump.
    Simulate(SimulateArgs),
    /// Runs verification checks and prints one PASS/FAIL line each.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Preset example: 1, 2 or 3.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    example: Option<u8>,
    /// JSON config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    engines: Option<Vec<EngineKind>>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    clock: Option<Clock>,
    #[arg(long)]
    stopping: Option<StoppingMode>,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Use K = 1000 unless --k is given.
    #[arg(long)]
    full_scale: bool,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    engine: EngineKind,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    example: u8,
    #[arg(long, default_value = "node")]
    clock: Clock,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    max_nodes: Option<usize>,
    #[arg(long)]
    max_time: Option<f64>,
    /// Stop once the grid-mean error is at most this value.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 500.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.01)]
    epsilon: f64,
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long, default_value_t = 500)]
    l: usize,
    /// Number of trajectories (seeds seed, seed+1, ...).
    #[arg(long, default_value_t = 1)]
    runs: usize,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated: mass, bounds, rates, c2, synthetic.
    #[arg(long, value_delimiter = ',', default_value = "mass,bounds,rates,c2,synthetic")]
    checks: Vec<String>,
    /// Restrict the synthetic check to one beta.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV of empirical curves against their bounds.
    #[arg(long)]
    csv: Option<PathBuf>,
}

const CHECKS: [&str; 5] = ["mass", "bounds", "rates", "c2", "synthetic"];

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => Failure::Usage(m),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn preset(i: u8) -> Result<Preset, Failure> {
    Preset::from_index(i).ok_or_else(|| Failure::Usage(format!("unknown example {i}")))
}

fn resolve(args: &RunArgs) -> Result<ExperimentConfig, Failure> {
    let flag_preset = args.example.map(preset).transpose()?;
    let mut cfg = match (&args.config, flag_preset) {
        (Some(path), p) => ExperimentConfig::from_json_file(path, p)?,
        (None, Some(p)) => ExperimentConfig::preset(p),
        (None, None) => return Err(Failure::Usage("either --example or --config is required".into())),
    };
    if let Some(p) = flag_preset {
        if p != cfg.preset {
            cfg.sample_size = p.default_sample_size();
        }
        cfg.preset = p;
    }
    if args.full_scale {
        cfg.k = 1000;
    }
    if let Some(v) = &args.engines {
        cfg.engines = v.clone();
    }
    macro_rules! set {
        ($($flag:ident => $field:ident),*) => { $(if let Some(v) = args.$flag { cfg.$field = v; })* };
    }
    set!(k => k, l => l, alpha => alpha, epsilon => epsilon, tol => tolerance, sample_size => sample_size,
         seed => base_seed, clock => clock, stopping => stopping, max_steps => max_steps);
    cfg.validate()?;
    Ok(cfg)
}

fn cmd_run(args: RunArgs) -> Result<(), Failure> {
    let cfg = resolve(&args)?;
    let started = Instant::now();
    let stats = run_experiment(&cfg)?;
    let elapsed = started.elapsed().as_secs_f64();
    let files = export_csv(&stats, &args.out)?;
    for e in &stats.engines {
        let last = e.final_step();
        println!(
            "{:<12} nodes {:>7.2}  E_t {:.6}  V_t {:.3e}  selection evals {:.1}  reached {}",
            e.engine.name(),
            last.mean_nodes,
            last.e_t,
            last.v_t,
            e.selection_evals.mean,
            e.reached_tolerance
        );
    }
    let manifest = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg,
        "run_seeds": { "first": cfg.base_seed, "count": cfg.k, "rule": "base_seed + run_index" },
        "threads_env": std::env::var(THREADS_ENV).ok(),
        "wall_clock_seconds": elapsed,
        "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    });
    let path = args.out.join("manifest.json");
    fs::write(&path, serde_json::to_string_pretty(&manifest).expect("manifest serializes"))
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    for f in files.iter().chain([&path]) {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Failure> {
    let p = preset(args.example)?;
    let stop = match (args.max_nodes, args.max_time, args.tol) {
        (Some(n), None, None) => StoppingRule::MaxNodes(n),
        (None, Some(t), None) => StoppingRule::MaxTime(t),
        (None, None, Some(tol)) => StoppingRule::ErrorBelow(tol),
        _ => return Err(Failure::Usage("give exactly one of --max-nodes, --max-time, --tol".into())),
    };
    let spec = EngineSpec {
        kind: args.engine,
        alpha: args.alpha,
        epsilon: args.epsilon,
        sample_size: args.sample_size.unwrap_or(p.default_sample_size()),
    };
    let cop = InterpolationCop::preset(p);
    let grid = QuadratureGrid::new(&p.domain(), args.l)?;
    let est = GridEstimator { cop: &cop, grid: &grid };
    let trajectories = (0..args.runs)
        .map(|i| simulate(&spec, &cop, &est, args.clock, stop, i, args.seed.wrapping_add(i as u64)))
        .collect::<Result<Vec<_>, _>>()?;
    match &args.out {
        Some(path) => write_trajectories_file(path, &trajectories)?,
        None => write_trajectories(io::stdout().lock(), &trajectories).map_err(|e| Failure::Runtime(e.to_string()))?,
    }
    if let Some(path) = &args.out {
        for t in &trajectories {
            let last = t.last();
            eprintln!(
                "run {}: {} nodes, selection evals {}, probe refresh evals {}, wrote {}",
                t.run_id,
                last.configuration.count(),
                last.evals.selection,
                last.evals.probe_refresh,
                path.display()
            );
        }
    }
    Ok(())
}

fn synthetic_params(beta: f64) -> RateParams {
    RateParams { gamma: 0.5, delta: 0.5, beta, c0: 1.0, e0: 1.0 }
}

fn run_checks(args: &VerifyArgs) -> Result<(Vec<CheckReport>, Vec<RateCurve>), Failure> {
    let mut reports = Vec::new();
    let mut curves = Vec::new();
    let mut rng = theory::check_rng(args.seed);
    for check in &args.checks {
        match check.as_str() {
            "mass" => {
                for kernel in [MassKernel::Uniform, MassKernel::Rpdm { alpha: 500.0 }] {
                    for mu in [0.25, 0.05, 0.1, 0.4] {
                        reports.push(theory::verify_mass_lemma(kernel, 50, mu, &mut rng)?.to_check());
                    }
                }
            }
            "bounds" => {
                for p in [Preset::Example1, Preset::Example2] {
                    reports.push(theory::verify_improvement_factor(p, 0.25, 20, &mut rng)?);
                }
                let mut ok = true;
                for beta in [0.0, 0.25, 0.5, 0.75, 1.0] {
                    let params = synthetic_params(beta);
                    let mut prev = theory::expectation_bound(&params, 0.0)?;
                    ok &= prev == params.e0;
                    for i in 1..=200 {
                        let v = theory::expectation_bound(&params, i as f64 * 0.5)?;
                        ok &= v <= prev;
                        prev = v;
                    }
                }
                reports.push(CheckReport {
                    name: "expectation_bound".into(),
                    passed: ok,
                    detail: "equals E0 at t = 0 and non-increasing for β ∈ {0, 0.25, 0.5, 0.75, 1}".into(),
                });
            }
            "rates" => {
                let r = theory::verify_c2_convergence(
                    Preset::Example1,
                    EngineKind::Uniform,
                    0.25,
                    None,
                    500,
                    &[0.0, 5.0, 10.0, 20.0],
                    args.seed,
                )?;
                reports.push(r.to_check());
                curves.push(r.curve);
                let n = theory::ctmc_node_counts(10.0, 2000, args.seed)?;
                reports.push(CheckReport {
                    name: "ctmc_node_count".into(),
                    passed: (n.mean - 11.0).abs() <= 0.25 && n.tail <= n.tail_bound(),
                    detail: format!("mean N(10) = {:.3}, P(N > 22) = {:.4} ≤ 0.5", n.mean, n.tail),
                });
            }
            "c2" => {
                let r = theory::verify_c2_convergence(
                    Preset::Example3,
                    EngineKind::Uniform,
                    0.25,
                    Some(8.0),
                    300,
                    &[0.0, 10.0, 30.0],
                    args.seed,
                )?;
                reports.push(r.to_check());
                curves.push(r.curve);
                let r = theory::verify_c2_convergence(
                    Preset::Example2,
                    EngineKind::Rpdm,
                    0.25,
                    None,
                    200,
                    &[0.0, 5.0, 10.0, 20.0],
                    args.seed,
                )?;
                reports.push(r.to_check());
                curves.push(r.curve);
            }
            "synthetic" => {
                let betas = args.beta.map(|b| vec![b]).unwrap_or_else(|| vec![0.0, 0.5, 1.0]);
                for beta in betas {
                    let params = synthetic_params(beta);
                    let times: Vec<f64> = (0..=20).map(f64::from).collect();
                    let curve = theory::run_synthetic(params, &times, 2000, &mut rng)?;
                    let checkpoints: Vec<usize> = vec![1, 2, 4, 6, 8];
                    let ok = checkpoints.iter().all(|&i| curve.mean[i] <= 1.1 * curve.bound[i]);
                    let mut detail = format!("worst mean/bound = {:.4}", curve.worst_ratio());
                    let mut passed = ok;
                    if beta == 0.0 {
                        let slope = curve.log_slope(2.0, 20.0).unwrap_or(f64::NAN);
                        passed &= slope <= -0.8 * params.rate();
                        detail.push_str(&format!(", log-slope {slope:.4} ≤ {:.4}", -0.8 * params.rate()));
                    }
                    reports.push(CheckReport { name: format!("synthetic beta={beta}"), passed, detail });
                    curves.push(curve);
                }
            }
            other => unreachable!("check {other} validated earlier"),
        }
    }
    Ok((reports, curves))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if let Some(bad) = args.checks.iter().find(|c| !CHECKS.contains(&c.as_str())) {
        return Err(Failure::Usage(format!("unknown check {bad:?} (expected {})", CHECKS.join(", "))));
    }
    if let Some(b) = args.beta {
        if !(0.0..=1.0).contains(&b) {
            return Err(Failure::Usage(format!("--beta {b} must lie in [0, 1]")));
        }
    }
    let (reports, curves) = run_checks(&args)?;
    for r in &reports {
        println!("{r}");
    }
    if let Some(path) = &args.csv {
        theory::write_curves(Path::new(path), &curves)?;
        println!("wrote {}", path.display());
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(Failure::Runtime(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
