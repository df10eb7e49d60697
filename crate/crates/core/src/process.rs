//! The jump Markov process on configuration space.
//!
//! Two clocks drive the same skeleton chain: the node clock advances one
//! transition per step, the CTMC clock separates transitions by i.i.d.
//! `Exp(1)` holding times (the kernel has total mass one). Holding times are
//! drawn from their own random stream, so both clocks visit the same
//! configurations for a given seed.

use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::config_space::Configuration;
use crate::cop::{Cop, InterpolationCop};
use crate::error::{invalid, Error, Result};
use crate::interpolation::QuadratureGrid;
use crate::kernels::{Engine, EngineKind, EngineSpec, EvalCounts};

/// Default iteration cap for stopping rules without a node budget.
pub const DEFAULT_ITERATION_CAP: usize = 10_000;

/// RNG for point selection of run `seed`.
pub fn selection_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// RNG for CTMC holding times of run `seed`, independent of [`selection_rng`].
pub fn clock_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    rng
}

/// Error statistics of a configuration on a quadrature grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    /// Trapezoid estimate of the global (L1) error.
    pub global: f64,
    /// Mean of the local error over the grid points.
    pub mean: f64,
}

/// Maps a configuration to its error statistics.
pub trait ErrorEstimator: Sync {
    fn summarize(&self, eta: &Configuration) -> Result<ErrorSummary>;
}

/// Grid-based estimator for the interpolation problem.
#[derive(Debug, Clone)]
pub struct GridEstimator<'a> {
    pub cop: &'a InterpolationCop,
    pub grid: &'a QuadratureGrid,
}

impl ErrorEstimator for GridEstimator<'_> {
    fn summarize(&self, eta: &Configuration) -> Result<ErrorSummary> {
        let errs = self.cop.grid_errors(eta, self.grid)?;
        Ok(ErrorSummary {
            global: self.grid.trapezoid(&errs),
            mean: errs.iter().sum::<f64>() / errs.len() as f64,
        })
    }
}

/// Estimator for problems without a global error; reports NaN.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoEstimate;

impl ErrorEstimator for NoEstimate {
    fn summarize(&self, _eta: &Configuration) -> Result<ErrorSummary> {
        Ok(ErrorSummary { global: f64::NAN, mean: f64::NAN })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Clock {
    Node,
    Ctmc,
}

impl std::str::FromStr for Clock {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "node" => Ok(Self::Node),
            "ctmc" => Ok(Self::Ctmc),
            other => Err(invalid(format!("unknown clock {other:?} (expected node | ctmc)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StoppingRule {
    /// Stop once the configuration holds this many nodes.
    MaxNodes(usize),
    /// Stop once the grid-mean local error is at most the tolerance.
    ErrorBelow(f64),
    /// Stop at this time (step index on the node clock).
    MaxTime(f64),
}

impl StoppingRule {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::MaxNodes(n) => n >= 1,
            Self::ErrorBelow(t) => t >= 0.0,
            Self::MaxTime(t) => t > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("invalid stopping rule {self:?}")))
        }
    }

    fn default_cap(&self) -> usize {
        match *self {
            Self::MaxNodes(n) => n.saturating_mul(10).min(100_000),
            Self::MaxTime(t) => ((10.0 * t).ceil() as usize).clamp(1, 100_000),
            Self::ErrorBelow(_) => DEFAULT_ITERATION_CAP,
        }
    }
}

/// One recorded state of a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub step: usize,
    pub time: f64,
    pub configuration: Configuration,
    pub error: ErrorSummary,
    pub evals: EvalCounts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub run_id: usize,
    pub seed: u64,
    pub engine: EngineKind,
    pub clock: Clock,
    pub events: Vec<Event>,
}

impl Trajectory {
    pub fn last(&self) -> &Event {
        self.events.last().expect("trajectories start with the initial event")
    }

    pub fn final_configuration(&self) -> &Configuration {
        &self.last().configuration
    }
}

fn record(step: usize, time: f64, eta: &Configuration, engine: &Engine, est: &dyn ErrorEstimator) -> Result<Event> {
    Ok(Event { step, time, configuration: eta.clone(), error: est.summarize(eta)?, evals: engine.counts() })
}

fn check_initial(eta0: &Configuration) -> Result<()> {
    if eta0.count() != 1 {
        return Err(invalid(format!("initial configuration must hold exactly one point, got {}", eta0.count())));
    }
    Ok(())
}

/// Node-clock run: one transition per step until `stop` fires.
///
/// `engine` must already be initialised at `eta0`. Returns
/// [`Error::IterationCap`] if the rule has not fired after `cap` steps
/// (default depends on the rule).
pub fn run_discrete<R: Rng + ?Sized>(
    engine: &mut Engine,
    cop: &dyn Cop,
    est: &dyn ErrorEstimator,
    eta0: &Configuration,
    stop: StoppingRule,
    cap: Option<usize>,
    rng: &mut R,
) -> Result<Vec<Event>> {
    check_initial(eta0)?;
    stop.validate()?;
    let cap = cap.unwrap_or_else(|| stop.default_cap());
    let mut eta = eta0.clone();
    let mut events = vec![record(0, 0.0, &eta, engine, est)?];
    let done = |ev: &Event| match stop {
        StoppingRule::MaxNodes(n) => ev.configuration.count() >= n,
        StoppingRule::ErrorBelow(tol) => ev.error.mean <= tol,
        StoppingRule::MaxTime(t) => ev.time >= t,
    };
    let mut step = 0;
    while !done(events.last().expect("non-empty")) {
        if step >= cap {
            return Err(Error::IterationCap(cap));
        }
        step += 1;
        eta = engine.step(&eta, cop, rng)?.1;
        events.push(record(step, step as f64, &eta, engine, est)?);
    }
    Ok(events)
}

/// CTMC run on `[0, horizon]` with unit-rate exponential holding times.
pub fn run_ctmc<R: Rng + ?Sized, C: Rng + ?Sized>(
    engine: &mut Engine,
    cop: &dyn Cop,
    est: &dyn ErrorEstimator,
    eta0: &Configuration,
    horizon: f64,
    rng: &mut R,
    clock: &mut C,
) -> Result<Vec<Event>> {
    check_initial(eta0)?;
    if !(horizon > 0.0) {
        return Err(invalid("CTMC horizon must be positive"));
    }
    let mut eta = eta0.clone();
    let mut events = vec![record(0, 0.0, &eta, engine, est)?];
    let mut t = 0.0;
    loop {
        let hold: f64 = clock.sample(Exp1);
        t += hold;
        if t > horizon {
            break;
        }
        eta = engine.step(&eta, cop, rng)?.1;
        events.push(record(events.len(), t, &eta, engine, est)?);
    }
    Ok(events)
}

/// Builds, initialises and runs one engine from a seed.
pub fn simulate(
    spec: &EngineSpec,
    cop: &dyn Cop,
    est: &dyn ErrorEstimator,
    clock: Clock,
    stop: StoppingRule,
    run_id: usize,
    seed: u64,
) -> Result<Trajectory> {
    let mut engine = spec.build(cop.domain())?;
    let mut rng = selection_rng(seed);
    let eta0 = engine.initialize(cop, &mut rng)?;
    let events = match (clock, stop) {
        (Clock::Node, _) => run_discrete(&mut engine, cop, est, &eta0, stop, None, &mut rng)?,
        (Clock::Ctmc, StoppingRule::MaxTime(t)) => run_ctmc(&mut engine, cop, est, &eta0, t, &mut rng, &mut clock_rng(seed))?,
        (Clock::Ctmc, _) => return Err(invalid("the CTMC clock needs a max-time stopping rule")),
    };
    Ok(Trajectory { run_id, seed, engine: spec.kind, clock, events })
}

/// Monte Carlo estimate of `E[(L J(q, .))^-]` over the given snapshots.
///
/// Each snapshot pairs an engine state with the configuration it belongs to;
/// the inner average draws `y` from that engine's kernel without advancing it.
pub fn generator_residual<R: Rng + ?Sized>(
    snapshots: &[(Engine, Configuration)],
    cop: &dyn Cop,
    q: &[f64],
    inner_samples: usize,
    rng: &mut R,
) -> Result<f64> {
    if snapshots.is_empty() || inner_samples == 0 {
        return Err(invalid("generator residual needs snapshots and inner samples"));
    }
    let domain = cop.domain();
    let mut outer = 0.0;
    for (engine, eta) in snapshots {
        let mut engine = engine.clone();
        let j_now = cop.error_field(eta)?.local_error(q);
        let mut inner = 0.0;
        for _ in 0..inner_samples {
            let y = engine.propose(eta, cop, rng)?.y;
            let next = eta.oplus(&y, domain)?;
            inner += j_now - cop.error_field(&next)?.local_error(q);
        }
        outer += inner / inner_samples as f64;
    }
    Ok(outer / snapshots.len() as f64)
}

pub const TRAJECTORY_HEADER: [&str; 6] = ["run_id", "step", "jump_time", "n_nodes", "g_estimate", "evals_cumulative"];

/// One CSV row per event. `evals_cumulative` is the selection count.
pub fn write_trajectories<W: Write>(out: W, trajectories: &[Trajectory]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAJECTORY_HEADER)?;
    for tr in trajectories {
        for ev in &tr.events {
            w.write_record([
                tr.run_id.to_string(),
                ev.step.to_string(),
                ev.time.to_string(),
                ev.configuration.count().to_string(),
                ev.error.global.to_string(),
                ev.evals.selection.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_trajectories_file(path: &Path, trajectories: &[Trajectory]) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    write_trajectories(std::io::BufWriter::new(file), trajectories).map_err(|source| Error::Csv { path: path.to_path_buf(), source })
}
