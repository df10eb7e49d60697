//! K-run Monte Carlo harness for the interpolation examples.
//!
//! All runs of an engine share the configuration and differ only in their
//! seed (`base_seed + run_index`). Statistics are reduced in run order, so
//! results do not depend on the worker count.
//!
//! With the node clock, step `s` of the decay table holds configurations of
//! `s + 1` nodes (the first node is included). With the CTMC clock, step `s`
//! is the checkpoint time `s * checkpoint_dt`.

use std::fs;
use std::path::{Path, PathBuf};

use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config_space::Configuration;
use crate::cop::InterpolationCop;
use crate::error::{invalid, Error, Result};
use crate::interpolation::{Preset, QuadratureGrid};
use crate::kernels::{Engine, EngineKind, EngineSpec, EvalCounts};
use crate::process::{clock_rng, selection_rng, Clock};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "GREEDY_LAB_THREADS";

/// When the runs of an experiment stop adding nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StoppingMode {
    /// All runs advance together until the K-run mean error `E_t` is below
    /// the tolerance.
    Aggregate,
    /// Each run stops on its own grid-mean error and is frozen afterwards.
    PerRun,
}

impl std::str::FromStr for StoppingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "aggregate" => Ok(Self::Aggregate),
            "per_run" | "per-run" => Ok(Self::PerRun),
            other => Err(invalid(format!("unknown stopping mode {other:?} (expected aggregate | per_run)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub preset: Preset,
    pub engines: Vec<EngineKind>,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub tolerance: f64,
    pub alpha: f64,
    pub epsilon: f64,
    pub sample_size: usize,
    pub base_seed: u64,
    pub clock: Clock,
    pub stopping: StoppingMode,
    /// Upper bound on decay-table steps.
    pub max_steps: usize,
    /// Spacing of CTMC checkpoints.
    pub checkpoint_dt: f64,
}

impl ExperimentConfig {
    /// Desk-scale defaults for a preset: K = 200, L = 500, alpha = 500,
    /// epsilon = tolerance = 0.01, all three engines.
    pub fn preset(preset: Preset) -> Self {
        Self {
            preset,
            engines: vec![EngineKind::Rpdm, EngineKind::Uniform, EngineKind::WeakGreedy],
            k: 200,
            l: 500,
            tolerance: 1e-2,
            alpha: 500.0,
            epsilon: 0.01,
            sample_size: preset.default_sample_size(),
            base_seed: 0,
            clock: Clock::Node,
            stopping: StoppingMode::Aggregate,
            max_steps: 2000,
            checkpoint_dt: 1.0,
        }
    }

    /// The full-scale protocol with K = 1000 runs.
    pub fn full_scale(preset: Preset) -> Self {
        Self { k: 1000, ..Self::preset(preset) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(invalid("K must be at least 1"));
        }
        if self.l < 2 {
            return Err(invalid("L must be at least 2"));
        }
        if !(self.tolerance > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        if self.engines.is_empty() {
            return Err(invalid("at least one engine is required"));
        }
        if self.max_steps == 0 {
            return Err(invalid("max_steps must be positive"));
        }
        if self.clock == Clock::Ctmc && !(self.checkpoint_dt > 0.0) {
            return Err(invalid("checkpoint_dt must be positive"));
        }
        for &kind in &self.engines {
            self.engine_spec(kind).validate()?;
        }
        Ok(())
    }

    pub fn engine_spec(&self, kind: EngineKind) -> EngineSpec {
        EngineSpec { kind, alpha: self.alpha, epsilon: self.epsilon, sample_size: self.sample_size }
    }

    /// Reads a JSON config. Fields left out take the defaults of its preset
    /// (or of `fallback` when the file names no preset).
    pub fn from_json_file(path: &Path, fallback: Option<Preset>) -> Result<Self> {
        let json = |source| Error::Json { path: path.to_path_buf(), source };
        let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        let overlay: serde_json::Value = serde_json::from_str(&text).map_err(json)?;
        let serde_json::Value::Object(fields) = overlay else {
            return Err(invalid(format!("{}: expected a JSON object", path.display())));
        };
        let preset = match fields.get("preset") {
            Some(v) => serde_json::from_value(v.clone()).map_err(json)?,
            None => fallback.ok_or_else(|| invalid(format!("{}: no preset given", path.display())))?,
        };
        let mut base = serde_json::to_value(Self::preset(preset)).map_err(json)?;
        if let serde_json::Value::Object(b) = &mut base {
            b.extend(fields);
        }
        serde_json::from_value(base).map_err(json)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepStats {
    pub step: usize,
    /// Checkpoint time on the CTMC clock, step index on the node clock.
    pub time: f64,
    pub mean_nodes: f64,
    pub e_t: f64,
    pub v_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointwiseStats {
    pub y: f64,
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

impl Summary {
    fn of(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        Self {
            mean,
            std: var.sqrt(),
            min: xs.iter().copied().fold(f64::INFINITY, f64::min),
            max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

/// Statistics of one engine over K runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineStats {
    pub engine: EngineKind,
    pub decay: Vec<StepStats>,
    /// Pointwise mean and variance of the final configurations.
    pub pointwise: Vec<PointwiseStats>,
    /// Node count of each run when it stopped.
    pub stop_nodes: Summary,
    pub selection_evals: Summary,
    pub probe_refresh_evals: Summary,
    /// Whether the stopping criterion fired before `max_steps`.
    pub reached_tolerance: bool,
}

impl EngineStats {
    pub fn final_step(&self) -> &StepStats {
        self.decay.last().expect("decay holds at least the initial step")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentStats {
    pub config: ExperimentConfig,
    pub engines: Vec<EngineStats>,
}

impl ExperimentStats {
    pub fn engine(&self, kind: EngineKind) -> Option<&EngineStats> {
        self.engines.iter().find(|e| e.engine == kind)
    }
}

struct Run {
    engine: Engine,
    eta: Configuration,
    rng: ChaCha8Rng,
    clock: ChaCha8Rng,
    next_jump: f64,
    errors: Vec<f64>,
    mean_error: f64,
    stopped_at: Option<(usize, EvalCounts)>,
}

impl Run {
    fn start(spec: &EngineSpec, cop: &InterpolationCop, grid: &QuadratureGrid, seed: u64) -> Result<Self> {
        let mut engine = spec.build(cop.domain())?;
        let mut rng = selection_rng(seed);
        let eta = engine.initialize(cop, &mut rng)?;
        let mut clock = clock_rng(seed);
        let next_jump = Exp1.sample(&mut clock);
        let mut run = Self { engine, eta, rng, clock, next_jump, errors: Vec::new(), mean_error: 0.0, stopped_at: None };
        run.refresh(cop, grid)?;
        Ok(run)
    }

    fn refresh(&mut self, cop: &InterpolationCop, grid: &QuadratureGrid) -> Result<()> {
        self.errors = cop.grid_errors(&self.eta, grid)?;
        self.mean_error = self.errors.iter().sum::<f64>() / self.errors.len() as f64;
        Ok(())
    }

    fn jump(&mut self, cop: &InterpolationCop) -> Result<()> {
        self.eta = self.engine.step(&self.eta, cop, &mut self.rng)?.1;
        Ok(())
    }

    /// Advances to the next decay-table step.
    fn advance(&mut self, clock: Clock, until: f64, cop: &InterpolationCop, grid: &QuadratureGrid) -> Result<()> {
        if self.stopped_at.is_some() {
            return Ok(());
        }
        match clock {
            Clock::Node => self.jump(cop)?,
            Clock::Ctmc => {
                while self.next_jump <= until {
                    self.jump(cop)?;
                    let hold: f64 = Exp1.sample(&mut self.clock);
                    self.next_jump += hold;
                }
            }
        }
        self.refresh(cop, grid)
    }
}

/// Mean and population variance, shifted by the first value so identical
/// samples give exactly zero variance.
fn mean_var(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let mut it = xs.clone();
    let Some(x0) = it.next() else { return (f64::NAN, f64::NAN) };
    let n = xs.clone().count() as f64;
    let shift = xs.clone().map(|x| x - x0).sum::<f64>() / n;
    let var = xs.map(|x| (x - x0 - shift).powi(2)).sum::<f64>() / n;
    (x0 + shift, var)
}

fn reduce_step(runs: &[Run], step: usize, time: f64) -> StepStats {
    let k = runs.len() as f64;
    let (e_t, v_t) = mean_var(runs.iter().map(|r| r.mean_error));
    let mean_nodes = runs.iter().map(|r| r.eta.count() as f64).sum::<f64>() / k;
    StepStats { step, time, mean_nodes, e_t, v_t }
}

fn pointwise(runs: &[Run], grid: &QuadratureGrid) -> Vec<PointwiseStats> {
    grid.points()
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            let (mean, variance) = mean_var(runs.iter().map(|r| r.errors[i]));
            PointwiseStats { y, mean, variance }
        })
        .collect()
}

/// Runs `f` inside a pool sized by `GREEDY_LAB_THREADS`, when set.
pub fn with_thread_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    match std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        Some(n) if n > 0 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

/// Runs one engine for all K seeds on an arbitrary interpolation problem.
pub fn run_engine(cfg: &ExperimentConfig, kind: EngineKind, cop: &InterpolationCop) -> Result<EngineStats> {
    cfg.validate()?;
    let grid = QuadratureGrid::new(cop.domain(), cfg.l)?;
    let spec = cfg.engine_spec(kind);
    let mut runs: Vec<Run> = (0..cfg.k)
        .into_par_iter()
        .map(|i| Run::start(&spec, cop, &grid, cfg.base_seed.wrapping_add(i as u64)))
        .collect::<Result<_>>()?;

    let time_of = |step: usize| match cfg.clock {
        Clock::Node => step as f64,
        Clock::Ctmc => step as f64 * cfg.checkpoint_dt,
    };
    let mut decay = vec![reduce_step(&runs, 0, 0.0)];
    let mut step = 0;
    let mut reached = false;
    loop {
        // Decide stops on the configurations of the current step.
        match cfg.stopping {
            StoppingMode::Aggregate => {
                if decay[step].e_t <= cfg.tolerance {
                    reached = true;
                }
            }
            StoppingMode::PerRun => {
                for r in runs.iter_mut().filter(|r| r.stopped_at.is_none()) {
                    if r.mean_error <= cfg.tolerance {
                        r.stopped_at = Some((r.eta.count(), r.engine.counts()));
                    }
                }
                reached = runs.iter().all(|r| r.stopped_at.is_some());
            }
        }
        if reached || step >= cfg.max_steps {
            break;
        }
        step += 1;
        let until = time_of(step);
        runs.par_iter_mut().try_for_each(|r| r.advance(cfg.clock, until, cop, &grid))?;
        decay.push(reduce_step(&runs, step, until));
    }

    let stops: Vec<(usize, EvalCounts)> = runs
        .iter()
        .map(|r| r.stopped_at.unwrap_or_else(|| (r.eta.count(), r.engine.counts())))
        .collect();
    let nodes: Vec<f64> = stops.iter().map(|s| s.0 as f64).collect();
    let sel: Vec<f64> = stops.iter().map(|s| s.1.selection as f64).collect();
    let refresh: Vec<f64> = stops.iter().map(|s| s.1.probe_refresh as f64).collect();
    Ok(EngineStats {
        engine: kind,
        pointwise: pointwise(&runs, &grid),
        decay,
        stop_nodes: Summary::of(&nodes),
        selection_evals: Summary::of(&sel),
        probe_refresh_evals: Summary::of(&refresh),
        reached_tolerance: reached,
    })
}

/// Runs every configured engine on the configured preset.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentStats> {
    cfg.validate()?;
    let cop = InterpolationCop::preset(cfg.preset);
    let engines = with_thread_pool(|| cfg.engines.iter().map(|&k| run_engine(cfg, k, &cop)).collect::<Result<Vec<_>>>())??;
    Ok(ExperimentStats { config: cfg.clone(), engines })
}

/// Final-configuration figures of one engine column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinalSummary {
    pub label: String,
    pub nodes: f64,
    pub e_t: f64,
    pub v_t: f64,
    pub selection_evals: f64,
}

/// A decay step and, per column, `(E_t, V_t)` or `None` once stopped.
pub type ComparisonRow = (usize, Vec<Option<(f64, f64)>>);

/// Engine columns aligned by decay step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub labels: Vec<String>,
    /// `(step, per-column (E_t, V_t))`; `None` once a column has stopped.
    pub rows: Vec<ComparisonRow>,
    pub finals: Vec<FinalSummary>,
    /// Column labels sorted by final `E_t`, smallest first.
    pub by_error: Vec<String>,
    /// Column labels sorted by final `V_t`, smallest first.
    pub by_variance: Vec<String>,
}

/// Runs several experiments on one preset and aligns their columns.
pub fn compare_engines(cfgs: &[ExperimentConfig]) -> Result<Comparison> {
    let first = cfgs.first().ok_or_else(|| invalid("nothing to compare"))?;
    if let Some(other) = cfgs.iter().find(|c| c.preset != first.preset) {
        return Err(Error::Mismatch(format!("presets differ: {} vs {}", first.preset.name(), other.preset.name())));
    }
    let mut cols: Vec<(String, EngineStats)> = Vec::new();
    for cfg in cfgs {
        for es in run_experiment(cfg)?.engines {
            let base = es.engine.name().to_string();
            let dupes = cols.iter().filter(|(l, _)| l == &base || l.starts_with(&format!("{base}#"))).count();
            let label = if dupes == 0 { base } else { format!("{base}#{dupes}") };
            cols.push((label, es));
        }
    }
    let max_len = cols.iter().map(|(_, s)| s.decay.len()).max().unwrap_or(0);
    let rows = (0..max_len)
        .map(|i| (i, cols.iter().map(|(_, s)| s.decay.get(i).map(|d| (d.e_t, d.v_t))).collect()))
        .collect();
    let finals: Vec<FinalSummary> = cols
        .iter()
        .map(|(label, s)| {
            let f = s.final_step();
            FinalSummary { label: label.clone(), nodes: f.mean_nodes, e_t: f.e_t, v_t: f.v_t, selection_evals: s.selection_evals.mean }
        })
        .collect();
    let sorted_by = |key: fn(&FinalSummary) -> f64| {
        let mut v: Vec<&FinalSummary> = finals.iter().collect();
        v.sort_by(|a, b| key(a).total_cmp(&key(b)));
        v.into_iter().map(|f| f.label.clone()).collect()
    };
    let by_error = sorted_by(|f| f.e_t);
    let by_variance = sorted_by(|f| f.v_t);
    Ok(Comparison { labels: cols.into_iter().map(|(l, _)| l).collect(), rows, finals, by_error, by_variance })
}

pub const DECAY_HEADER: [&str; 4] = ["step", "engine", "E_t", "V_t"];
pub const POINTWISE_HEADER: [&str; 4] = ["y", "engine", "E_y", "V_y"];
pub const META_HEADER: [&str; 3] = ["engine", "key", "value"];

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv { path: path.to_path_buf(), source })
}

fn write_rows<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let wrap = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut w = csv_writer(path)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(row).map_err(wrap)?;
    }
    w.flush().map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn enum_name<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

/// Writes `decay.csv`, `pointwise.csv` and `meta.csv` into `dir`.
pub fn export_csv(stats: &ExperimentStats, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;
    let decay = dir.join("decay.csv");
    let point = dir.join("pointwise.csv");
    let meta = dir.join("meta.csv");

    write_rows(
        &decay,
        &DECAY_HEADER,
        stats.engines.iter().flat_map(|e| {
            let name = e.engine.name();
            e.decay.iter().map(move |d| {
                let step = match stats.config.clock {
                    Clock::Node => (d.step + 1).to_string(),
                    Clock::Ctmc => d.time.to_string(),
                };
                vec![step, name.to_string(), d.e_t.to_string(), d.v_t.to_string()]
            })
        }),
    )?;

    write_rows(
        &point,
        &POINTWISE_HEADER,
        stats.engines.iter().flat_map(|e| {
            let name = e.engine.name();
            e.pointwise
                .iter()
                .map(move |p| vec![p.y.to_string(), name.to_string(), p.mean.to_string(), p.variance.to_string()])
        }),
    )?;

    let cfg = &stats.config;
    let config_json = serde_json::to_string(cfg).map_err(|source| Error::Json { path: meta.clone(), source })?;
    let mut rows: Vec<[String; 3]> = vec![
        ["*".into(), "version".into(), env!("CARGO_PKG_VERSION").into()],
        ["*".into(), "preset".into(), cfg.preset.name().into()],
        ["*".into(), "base_seed".into(), cfg.base_seed.to_string()],
        ["*".into(), "run_seeds".into(), format!("base_seed + run_index for run_index in 0..{}", cfg.k)],
        ["*".into(), "K".into(), cfg.k.to_string()],
        ["*".into(), "L".into(), cfg.l.to_string()],
        ["*".into(), "tolerance".into(), cfg.tolerance.to_string()],
        ["*".into(), "alpha".into(), cfg.alpha.to_string()],
        ["*".into(), "epsilon".into(), cfg.epsilon.to_string()],
        ["*".into(), "sample_size".into(), cfg.sample_size.to_string()],
        ["*".into(), "clock".into(), enum_name(&cfg.clock)],
        ["*".into(), "stopping".into(), enum_name(&cfg.stopping)],
        [
            "*".into(),
            "step_convention".into(),
            match cfg.clock {
                Clock::Node => "step = total node count including the initial node (one more than the number of added nodes)".into(),
                Clock::Ctmc => "step = checkpoint time".into(),
            },
        ],
        ["*".into(), "config_json".into(), config_json],
    ];
    for e in &stats.engines {
        let n = e.engine.name().to_string();
        let f = e.final_step();
        let push = |rows: &mut Vec<[String; 3]>, k: &str, v: String| rows.push([n.clone(), k.into(), v]);
        push(&mut rows, "reached_tolerance", e.reached_tolerance.to_string());
        push(&mut rows, "final_step", (f.step + 1).to_string());
        push(&mut rows, "final_mean_nodes", f.mean_nodes.to_string());
        push(&mut rows, "final_E_t", f.e_t.to_string());
        push(&mut rows, "final_V_t", f.v_t.to_string());
        push(&mut rows, "stop_nodes_mean", e.stop_nodes.mean.to_string());
        push(&mut rows, "stop_nodes_std", e.stop_nodes.std.to_string());
        push(&mut rows, "selection_evals_mean", e.selection_evals.mean.to_string());
        push(&mut rows, "selection_evals_min", e.selection_evals.min.to_string());
        push(&mut rows, "selection_evals_max", e.selection_evals.max.to_string());
        push(&mut rows, "probe_refresh_evals_mean", e.probe_refresh_evals.mean.to_string());
    }
    write_rows(&meta, &META_HEADER, rows.into_iter().map(Vec::from))?;
    Ok(vec![decay, point, meta])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(preset: Preset) -> ExperimentConfig {
        ExperimentConfig { k: 8, l: 100, ..ExperimentConfig::preset(preset) }
    }

    #[test]
    fn weak_greedy_has_zero_variance() {
        let cfg = ExperimentConfig { k: 2, engines: vec![EngineKind::WeakGreedy], ..small(Preset::Example1) };
        let stats = run_experiment(&cfg).unwrap();
        let wg = stats.engine(EngineKind::WeakGreedy).unwrap();
        assert!(wg.decay.iter().all(|d| d.v_t == 0.0));
        assert!(wg.pointwise.iter().all(|p| p.variance == 0.0));
        assert!(wg.reached_tolerance);
    }

    #[test]
    fn validation() {
        let mut cfg = small(Preset::Example1);
        cfg.k = 0;
        assert!(run_experiment(&cfg).is_err());
        let cfg = ExperimentConfig { l: 1, ..small(Preset::Example1) };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { tolerance: 0.0, ..small(Preset::Example1) };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn per_run_mode_freezes_runs() {
        let cfg = ExperimentConfig {
            engines: vec![EngineKind::Uniform],
            stopping: StoppingMode::PerRun,
            ..small(Preset::Example2)
        };
        let stats = run_experiment(&cfg).unwrap();
        let u = &stats.engines[0];
        assert!(u.reached_tolerance);
        assert!(u.stop_nodes.max <= u.final_step().mean_nodes + 1e-9 || u.stop_nodes.max >= 1.0);
        assert!(u.final_step().e_t <= cfg.tolerance);
    }

    #[test]
    fn ctmc_clock_checkpoints() {
        let cfg = ExperimentConfig {
            engines: vec![EngineKind::Rpdm],
            clock: Clock::Ctmc,
            checkpoint_dt: 2.0,
            ..small(Preset::Example1)
        };
        let stats = run_experiment(&cfg).unwrap();
        let d = &stats.engines[0].decay;
        assert!(d.windows(2).all(|w| w[1].time - w[0].time == 2.0));
        assert!(stats.engines[0].reached_tolerance);
    }

    #[test]
    fn json_roundtrip_uses_field_names() {
        let cfg = ExperimentConfig::preset(Preset::Example3);
        let text = serde_json::to_string(&cfg).unwrap();
        assert!(text.contains("\"K\":200") && text.contains("\"engines\":[\"rpdm\",\"uniform\",\"weak-greedy\"]"));
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn compare_rejects_mixed_presets() {
        let a = small(Preset::Example1);
        let b = small(Preset::Example2);
        assert!(matches!(compare_engines(&[a, b]), Err(Error::Mismatch(_))));
    }
}
