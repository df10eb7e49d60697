//! Executable checks of the mass lemma, the improvement factor, and the
//! convergence-rate bounds, plus a synthetic problem that realises the
//! improvement assumption with equality in expectation.

use std::fmt;
use std::io::Write;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::Serialize;

use crate::config_space::{Configuration, Domain};
use crate::cop::{Cop, FnCop, InterpolationCop};
use crate::error::{invalid, Error, Result};
use crate::interpolation::{global_error_exact, Preset, QuadratureGrid, TargetFunction};
use crate::kernels::{kernel_mass, EngineKind, EngineSpec, MassKernel};
use crate::process::{clock_rng, selection_rng};

/// `B_mu(eta)`: the middle `1 - 2 mu` portion of every node gap, with the
/// domain ends counted as nodes.
pub fn b_mu_set(eta: &Configuration, mu: f64, domain: &Domain) -> Result<Vec<(f64, f64)>> {
    if !(mu > 0.0 && mu < 0.5) {
        return Err(invalid(format!("mu = {mu} must lie in (0, 1/2)")));
    }
    let (a, b) = domain.bounds_1d()?;
    let mut nodes = Vec::with_capacity(eta.count() + 2);
    nodes.push(a);
    nodes.extend_from_slice(eta.order()?.scalars());
    nodes.push(b);
    Ok(nodes
        .windows(2)
        .map(|w| {
            let h = w[1] - w[0];
            (w[0] + mu * h, w[1] - mu * h)
        })
        .collect())
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.name, if self.passed { "PASS" } else { "FAIL" }, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassReport {
    pub kernel: MassKernel,
    pub mu: f64,
    pub trials: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl MassReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }

    pub fn to_check(&self) -> CheckReport {
        let name = match self.kernel {
            MassKernel::Uniform => "mass_lemma uniform",
            MassKernel::Rpdm { .. } => "mass_lemma rpdm",
        };
        let expected = 1.0 - 2.0 * self.mu;
        CheckReport::new(
            name,
            self.passed(),
            format!(
                "{} = 1−2μ, μ = {}, {} configurations, max deviation {:.3e}",
                (expected * 1e12).round() / 1e12,
                self.mu,
                self.trials,
                self.max_deviation
            ),
        )
    }
}

/// Checks `lambda(eta, B_mu(eta)) = 1 - 2 mu` on configurations produced by
/// short uniform runs on example 1.
pub fn verify_mass_lemma<R: Rng + ?Sized>(kernel: MassKernel, trials: usize, mu: f64, rng: &mut R) -> Result<MassReport> {
    let cop = InterpolationCop::preset(Preset::Example1);
    let tolerance = match kernel {
        MassKernel::Uniform => 1e-10,
        MassKernel::Rpdm { .. } => 1e-9,
    };
    let expected = 1.0 - 2.0 * mu;
    let mut max_deviation: f64 = 0.0;
    for _ in 0..trials {
        let nodes = rng.random_range(1..=30);
        let mut engine = EngineSpec::new(EngineKind::Uniform).build(cop.domain())?;
        let mut eta = engine.initialize(&cop, rng)?;
        for _ in 1..nodes {
            eta = engine.step(&eta, &cop, rng)?.1;
        }
        let set = b_mu_set(&eta, mu, cop.domain())?;
        let mass = kernel_mass(kernel, &eta, &set, &cop, 4)?;
        max_deviation = max_deviation.max((mass - expected).abs());
    }
    Ok(MassReport { kernel, mu, trials, max_deviation, tolerance })
}

/// Parameters of the improvement assumption.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateParams {
    pub gamma: f64,
    pub delta: f64,
    pub beta: f64,
    /// Uniform bound on the global error.
    pub c0: f64,
    /// Initial expected error.
    pub e0: f64,
}

impl RateParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(invalid(format!("gamma = {} must lie in [0, 1)", self.gamma)));
        }
        if !(self.delta > 0.0) {
            return Err(invalid(format!("delta = {} must be positive", self.delta)));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(invalid(format!("beta = {} must lie in [0, 1]", self.beta)));
        }
        if !(self.c0 >= 0.0 && self.e0 >= 0.0) {
            return Err(invalid("c0 and E0 must be non-negative"));
        }
        if self.beta > 0.0 && self.c0 == 0.0 {
            return Err(invalid("c0 must be positive when beta > 0"));
        }
        Ok(())
    }

    /// `gamma * delta`.
    pub fn rate(&self) -> f64 {
        self.gamma * self.delta
    }

    /// `alpha_beta = (mu c0^-beta / (1 + beta)) (beta / (1 + beta))^beta`
    /// with `mu = gamma delta`.
    pub fn alpha_beta(&self) -> f64 {
        let b = self.beta;
        self.rate() * self.c0.powf(-b) / (1.0 + b) * (b / (1.0 + b)).powf(b)
    }
}

/// The decay profile `theta_beta(t)`, defined for `t >= 1`.
pub fn theta(beta: f64, t: f64, params: &RateParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(invalid(format!("beta = {beta} must lie in [0, 1]")));
    }
    if !(t >= 1.0) {
        return Err(invalid(format!("theta needs t >= 1, got {t}")));
    }
    Ok(if beta == 0.0 {
        (-params.rate() * t).exp()
    } else if beta < 1.0 {
        t.powf(1.0 - 1.0 / beta)
    } else {
        1.0 / (1.0 + t).ln()
    })
}

/// Closed-form upper bound on `E[G(eta_t)]`.
pub fn expectation_bound(params: &RateParams, t: f64) -> Result<f64> {
    params.validate()?;
    if !(t >= 0.0) {
        return Err(invalid(format!("t = {t} must be non-negative")));
    }
    let (b, e0) = (params.beta, params.e0);
    if e0 == 0.0 {
        return Ok(0.0);
    }
    Ok(if b == 0.0 {
        e0 * (-params.rate() * t).exp()
    } else if b < 1.0 {
        let inner = 1.0 + params.alpha_beta() * e0.powf(b) * (b / (1.0 - b)) * ((1.0 + t).powf(1.0 - b) - 1.0);
        e0 * inner.powf(-1.0 / b)
    } else {
        e0 / (1.0 + params.alpha_beta() * e0 * (1.0 + t).ln())
    })
}

/// A problem whose global error drops by the factor `1 - gamma / n^beta`
/// with probability `delta` at every jump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticCop {
    pub g: f64,
    pub n: usize,
    pub params: RateParams,
}

impl SyntheticCop {
    pub fn new(params: RateParams) -> Result<Self> {
        params.validate()?;
        if params.delta > 1.0 {
            return Err(invalid("the synthetic problem needs delta <= 1"));
        }
        Ok(Self { g: params.e0, n: 1, params })
    }

    pub fn jump<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if rng.random::<f64>() < self.params.delta {
            self.g *= 1.0 - self.params.gamma / (self.n as f64).powf(self.params.beta);
        }
        self.n += 1;
    }
}

/// Empirical mean curve against a bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateCurve {
    pub label: String,
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub std_error: Vec<f64>,
    pub bound: Vec<f64>,
}

impl RateCurve {
    fn from_samples(label: String, times: &[f64], samples: &[Vec<f64>], bound: Vec<f64>) -> Self {
        let runs = samples.len() as f64;
        let mut mean = Vec::with_capacity(times.len());
        let mut std_error = Vec::with_capacity(times.len());
        for i in 0..times.len() {
            let m = samples.iter().map(|s| s[i]).sum::<f64>() / runs;
            let var = samples.iter().map(|s| (s[i] - m).powi(2)).sum::<f64>() / (runs - 1.0).max(1.0);
            mean.push(m);
            std_error.push((var / runs).sqrt());
        }
        Self { label, times: times.to_vec(), mean, std_error, bound }
    }

    /// Largest `mean / bound` ratio over the checkpoints.
    pub fn worst_ratio(&self) -> f64 {
        self.mean.iter().zip(&self.bound).map(|(m, b)| m / b).fold(0.0, f64::max)
    }

    /// `mean <= bound * factor` at every checkpoint.
    pub fn below(&self, factor: f64) -> bool {
        self.mean.iter().zip(&self.bound).all(|(m, b)| *m <= b * factor)
    }

    /// `mean <= bound * (1 + k SE / mean)` at every checkpoint.
    pub fn below_with_se(&self, k: f64) -> bool {
        self.mean
            .iter()
            .zip(&self.bound)
            .zip(&self.std_error)
            .all(|((m, b), se)| *m <= b * (1.0 + if *m > 0.0 { k * se / m } else { 0.0 }))
    }

    /// Least-squares slope of `log(mean)` over checkpoints in `[t0, t1]`.
    pub fn log_slope(&self, t0: f64, t1: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .times
            .iter()
            .zip(&self.mean)
            .filter(|(t, m)| **t >= t0 && **t <= t1 && **m > 0.0)
            .map(|(t, m)| (*t, m.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let n = pts.len() as f64;
        let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some(sxy / sxx)
    }

    pub fn write_rows<W: Write>(&self, w: &mut csv::Writer<W>) -> csv::Result<()> {
        for i in 0..self.times.len() {
            w.write_record([
                self.label.clone(),
                self.times[i].to_string(),
                self.mean[i].to_string(),
                self.std_error[i].to_string(),
                self.bound[i].to_string(),
            ])?;
        }
        Ok(())
    }
}

pub const CURVE_HEADER: [&str; 5] = ["check", "t", "empirical_mean", "std_error", "bound"];

/// Writes every curve into one CSV file.
pub fn write_curves(path: &Path, curves: &[RateCurve]) -> Result<()> {
    let wrap = |source| Error::Csv { path: path.to_path_buf(), source };
    let mut w = csv::Writer::from_path(path).map_err(wrap)?;
    w.write_record(CURVE_HEADER).map_err(wrap)?;
    for c in curves {
        c.write_rows(&mut w).map_err(wrap)?;
    }
    w.flush().map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

/// Mean synthetic error at `times` over `runs` CTMC paths.
pub fn run_synthetic<R: Rng + ?Sized>(params: RateParams, times: &[f64], runs: usize, rng: &mut R) -> Result<RateCurve> {
    if runs < 2 || times.is_empty() {
        return Err(invalid("run_synthetic needs at least two runs and one time"));
    }
    if times.windows(2).any(|w| w[1] < w[0]) || times[0] < 0.0 {
        return Err(invalid("checkpoint times must be non-negative and sorted"));
    }
    let mut samples = Vec::with_capacity(runs);
    for _ in 0..runs {
        let mut cop = SyntheticCop::new(params)?;
        let mut next: f64 = Exp1.sample(rng);
        let row: Vec<f64> = times
            .iter()
            .map(|&t| {
                while next <= t {
                    cop.jump(rng);
                    let hold: f64 = Exp1.sample(rng);
                    next += hold;
                }
                cop.g
            })
            .collect();
        samples.push(row);
    }
    let bound = times.iter().map(|&t| expectation_bound(&params, t)).collect::<Result<Vec<_>>>()?;
    Ok(RateCurve::from_samples(format!("synthetic beta={}", params.beta), times, &samples, bound))
}

/// Parameters produced by the convexity argument for interpolation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct C2Params {
    /// `gamma = mu (alpha - c_f) / (alpha + c_f)`.
    pub gamma: f64,
    pub delta: f64,
    /// `gamma = mu m / M` when `f` carries convexity bounds.
    pub direct_gamma: Option<f64>,
}

impl C2Params {
    pub fn rate_params(&self, c0: f64, e0: f64) -> RateParams {
        RateParams { gamma: self.direct_gamma.unwrap_or(self.gamma), delta: self.delta, beta: 0.0, c0, e0 }
    }
}

pub fn c2_rate_params(f: &TargetFunction, mu: f64, alpha_shift: f64) -> Result<C2Params> {
    if !(mu > 0.0 && mu < 0.5) {
        return Err(invalid(format!("mu = {mu} must lie in (0, 1/2)")));
    }
    let c_f = f
        .sup_second_derivative()
        .ok_or_else(|| invalid(format!("{} has no declared sup |f''|", f.name())))?;
    if !(alpha_shift > c_f) {
        return Err(invalid(format!("alpha = {alpha_shift} must exceed c_f = {c_f}")));
    }
    Ok(C2Params {
        gamma: mu * (alpha_shift - c_f) / (alpha_shift + c_f),
        delta: 1.0 - 2.0 * mu,
        direct_gamma: f.second_derivative_bounds().map(|(m, big_m)| mu * m / big_m),
    })
}

/// `c0 = (b - a) max |I_0[f] - f|` for the chord through the end points,
/// maximised on a fine grid.
pub fn chord_error_bound(f: &TargetFunction, domain: &Domain) -> Result<f64> {
    let (a, b) = domain.bounds_1d()?;
    let (fa, fb) = (f.eval(a), f.eval(b));
    let grid = QuadratureGrid::new(domain, 10_001)?;
    let max = grid
        .points()
        .iter()
        .map(|&x| (fa + (fb - fa) * (x - a) / (b - a) - f.eval(x)).abs())
        .fold(0.0, f64::max);
    Ok((b - a) * max)
}

/// `G` at each checkpoint for CTMC runs seeded `base_seed + run`.
pub fn ctmc_errors_at<G>(
    spec: &EngineSpec,
    cop: &dyn Cop,
    g: G,
    times: &[f64],
    runs: usize,
    base_seed: u64,
) -> Result<Vec<Vec<f64>>>
where
    G: Fn(&Configuration) -> Result<f64> + Sync,
{
    (0..runs)
        .into_par_iter()
        .map(|r| {
            let seed = base_seed.wrapping_add(r as u64);
            let mut engine = spec.build(cop.domain())?;
            let mut rng = selection_rng(seed);
            let mut clock = clock_rng(seed);
            let mut eta = engine.initialize(cop, &mut rng)?;
            let mut next: f64 = Exp1.sample(&mut clock);
            times
                .iter()
                .map(|&t| {
                    while next <= t {
                        eta = engine.step(&eta, cop, &mut rng)?.1;
                        let hold: f64 = Exp1.sample(&mut clock);
                        next += hold;
                    }
                    g(&eta)
                })
                .collect()
        })
        .collect()
}

/// Split errors of the convexification `f = f_alpha - h_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitDiagnostics {
    pub alpha: f64,
    /// Mean `||I[f_alpha] - f_alpha||_1` over the initial configurations.
    pub f_alpha_error: f64,
    /// Mean `||I[h_alpha] - h_alpha||_1` over the initial configurations.
    pub h_alpha_error: f64,
    /// `4 max(f_alpha_error, h_alpha_error)`.
    pub m_g: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C2Report {
    pub preset: Preset,
    pub engine: EngineKind,
    pub mu: f64,
    pub params: C2Params,
    /// Rate `gamma delta` used for the envelope.
    pub rate: f64,
    pub split: Option<SplitDiagnostics>,
    pub curve: RateCurve,
    pub passed: bool,
}

impl C2Report {
    pub fn to_check(&self) -> CheckReport {
        let name = format!("c2_rate {} {}", self.preset.name(), self.engine.name());
        let mut detail = format!("γδ = {:.5}, worst mean/bound = {:.4}", self.rate, self.curve.worst_ratio());
        if let Some(s) = &self.split {
            detail.push_str(&format!(", α = {}, m_G = {:.4}", s.alpha, s.m_g));
        }
        CheckReport::new(name, self.passed, detail)
    }
}

/// Default shift used for problems without convexity bounds: `2 c_f`.
pub fn default_alpha_shift(f: &TargetFunction) -> Option<f64> {
    f.sup_second_derivative().map(|c| 2.0 * c)
}

/// Empirical `E[G(eta_t)]` against the exponential envelope.
///
/// Strongly convex presets use `gamma = mu m / M` and `E0` estimated from
/// the runs at time zero. Other presets use the shifted parameters and the
/// split errors of the initial configurations. `times` must start at 0.
pub fn verify_c2_convergence(
    preset: Preset,
    engine: EngineKind,
    mu: f64,
    alpha_shift: Option<f64>,
    runs: usize,
    times: &[f64],
    base_seed: u64,
) -> Result<C2Report> {
    if times.first() != Some(&0.0) {
        return Err(invalid("the first checkpoint must be t = 0"));
    }
    let cop = InterpolationCop::preset(preset);
    let f = cop.target().clone();
    let domain = cop.domain().clone();
    let alpha = match alpha_shift.or_else(|| default_alpha_shift(&f)) {
        Some(a) => a,
        None => return Err(invalid("no alpha shift available")),
    };
    let params = c2_rate_params(&f, mu, alpha)?;
    let spec = EngineSpec::new(engine);
    let exact_or_grid = {
        let grid = QuadratureGrid::new(&domain, 4001)?;
        let f = f.clone();
        let domain = domain.clone();
        move |eta: &Configuration| {
            if f.is_convex() {
                global_error_exact(&f, eta, &domain)
            } else {
                crate::interpolation::global_error(&f, eta, &grid, &domain)
            }
        }
    };
    let samples = ctmc_errors_at(&spec, &cop, &exact_or_grid, times, runs, base_seed)?;
    let e0 = samples.iter().map(|s| s[0]).sum::<f64>() / runs as f64;

    let (rate, scale, split) = match params.direct_gamma {
        Some(g) => (g * params.delta, e0, None),
        None => {
            let f_alpha = f.convexified(alpha)?;
            let h_alpha = TargetFunction::half_square(alpha)?;
            let pairs: Vec<(f64, f64)> = (0..runs)
                .into_par_iter()
                .map(|r| {
                    let seed = base_seed.wrapping_add(r as u64);
                    let mut e = spec.build(&domain)?;
                    let eta = e.initialize(&cop, &mut selection_rng(seed))?;
                    Ok((global_error_exact(&f_alpha, &eta, &domain)?, global_error_exact(&h_alpha, &eta, &domain)?))
                })
                .collect::<Result<_>>()?;
            let n = runs as f64;
            let fa = pairs.iter().map(|p| p.0).sum::<f64>() / n;
            let ha = pairs.iter().map(|p| p.1).sum::<f64>() / n;
            let d = SplitDiagnostics { alpha, f_alpha_error: fa, h_alpha_error: ha, m_g: 4.0 * fa.max(ha) };
            (params.gamma * params.delta, fa + ha, Some(d))
        }
    };
    let bound: Vec<f64> = times.iter().map(|&t| scale * (-rate * t).exp()).collect();
    let curve = RateCurve::from_samples(format!("c2 {} {}", preset.name(), engine.name()), times, &samples, bound);
    let passed = curve.below_with_se(3.0);
    Ok(C2Report { preset, engine, mu, params, rate, split, curve, passed })
}

/// Improvement integral `int_{B_mu} [G(eta) - G(eta + y)] lambda_unif(dy)`
/// by Gauss-Legendre quadrature on each interval of `B_mu`.
pub fn uniform_improvement(f: &TargetFunction, eta: &Configuration, mu: f64, domain: &Domain) -> Result<f64> {
    const GL: [(f64, f64); 5] = [
        (0.0, 0.568_888_888_888_889),
        (-0.538_469_310_105_683, 0.478_628_670_499_366),
        (0.538_469_310_105_683, 0.478_628_670_499_366),
        (-0.906_179_845_938_664, 0.236_926_885_056_189),
        (0.906_179_845_938_664, 0.236_926_885_056_189),
    ];
    const PANELS: usize = 16;
    let (a, b) = domain.bounds_1d()?;
    let g0 = global_error_exact(f, eta, domain)?;
    let mut total = 0.0;
    for (lo, hi) in b_mu_set(eta, mu, domain)? {
        let w = (hi - lo) / PANELS as f64;
        for p in 0..PANELS {
            let mid = lo + (p as f64 + 0.5) * w;
            for &(x, wt) in &GL {
                let y = mid + 0.5 * w * x;
                let g1 = global_error_exact(f, &eta.oplus(&[y], domain)?, domain)?;
                total += 0.5 * w * wt * (g0 - g1);
            }
        }
    }
    Ok(total / (b - a))
}

/// Checks the improvement factor `delta mu (m / M) G(eta)` on configurations
/// from short uniform runs.
pub fn verify_improvement_factor<R: Rng + ?Sized>(preset: Preset, mu: f64, trials: usize, rng: &mut R) -> Result<CheckReport> {
    let cop = InterpolationCop::preset(preset);
    let f = cop.target();
    let (m, big_m) = f
        .second_derivative_bounds()
        .ok_or_else(|| invalid(format!("{} is not strongly convex", preset.name())))?;
    let factor = (1.0 - 2.0 * mu) * mu * m / big_m;
    let mut worst = f64::INFINITY;
    for _ in 0..trials {
        let nodes = rng.random_range(1..=15);
        let mut engine = EngineSpec::new(EngineKind::Uniform).build(cop.domain())?;
        let mut eta = engine.initialize(&cop, rng)?;
        for _ in 1..nodes {
            eta = engine.step(&eta, &cop, rng)?.1;
        }
        let g = global_error_exact(f, &eta, cop.domain())?;
        let improvement = uniform_improvement(f, &eta, mu, cop.domain())?;
        worst = worst.min(improvement / (factor * g));
    }
    Ok(CheckReport::new(
        format!("improvement_factor {}", preset.name()),
        worst >= 1.0 - 1e-9,
        format!("min improvement / (δμ m/M G) = {worst:.4} over {trials} configurations"),
    ))
}

/// Node-count statistics of the unit-rate clock at time `horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NodeCountStats {
    pub horizon: f64,
    pub runs: usize,
    pub mean: f64,
    /// Empirical `P(N > 2 (1 + T))`.
    pub tail: f64,
}

impl NodeCountStats {
    /// Markov bound `(1 + T) / K` at `K = 2 (1 + T)`.
    pub fn tail_bound(&self) -> f64 {
        0.5
    }
}

pub fn ctmc_node_counts(horizon: f64, runs: usize, base_seed: u64) -> Result<NodeCountStats> {
    let cop = FnCop::nearest_node_distance(Domain::interval(0.0, 1.0)?);
    let spec = EngineSpec::new(EngineKind::Uniform);
    let counts = ctmc_errors_at(&spec, &cop, |eta| Ok(eta.count() as f64), &[horizon], runs, base_seed)?;
    let k = 2.0 * (1.0 + horizon);
    let n = runs as f64;
    Ok(NodeCountStats {
        horizon,
        runs,
        mean: counts.iter().map(|c| c[0]).sum::<f64>() / n,
        tail: counts.iter().filter(|c| c[0] > k).count() as f64 / n,
    })
}

/// Seeded generator for checks that need one.
pub fn check_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
