//! Selection engines: the uniform kernel, the randomized polytope division
//! method (R-PDM) and the weak greedy baseline.
//!
//! Every engine follows the same two-phase protocol so that the process
//! driver can form `eta ⊕ y` in between: [`Engine::propose`] picks the next
//! point from the current configuration, [`Engine::commit`] updates internal
//! state once the transition has happened. [`Engine::step`] runs both.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::config_space::{Configuration, Domain};
use crate::cop::{Cop, ErrorField};
use crate::error::{invalid, Error, Result};
use crate::geometry::{Polytope, PolytopeDivision};

/// Attempts at drawing a point strictly inside a cell before giving up.
pub const BOUNDARY_RETRIES: usize = 64;

/// Cumulative local-error evaluations of an engine.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCounts {
    /// Evaluations made to choose the next point: one per R-PDM cell probe,
    /// one per weak-greedy candidate.
    pub selection: u64,
    /// R-PDM probe checks against the post-transition configuration.
    pub probe_refresh: u64,
}

impl EvalCounts {
    pub fn total(&self) -> u64 {
        self.selection + self.probe_refresh
    }
}

/// Engine selector as used in run configurations and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EngineKind {
    #[serde(rename = "uniform")]
    Uniform,
    #[serde(rename = "rpdm")]
    Rpdm,
    #[serde(rename = "weak-greedy")]
    WeakGreedy,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Uniform => "uniform",
            Self::Rpdm => "rpdm",
            Self::WeakGreedy => "weak-greedy",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "rpdm" => Ok(Self::Rpdm),
            "weak-greedy" => Ok(Self::WeakGreedy),
            other => Err(invalid(format!("unknown engine {other:?} (expected uniform | rpdm | weak-greedy)"))),
        }
    }
}

/// Engine kind plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineSpec {
    pub kind: EngineKind,
    pub alpha: f64,
    pub epsilon: f64,
    pub sample_size: usize,
}

impl EngineSpec {
    pub fn new(kind: EngineKind) -> Self {
        Self { kind, alpha: 500.0, epsilon: 0.01, sample_size: 90 }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            EngineKind::Rpdm if !(self.alpha >= 0.0 && self.alpha.is_finite()) => {
                Err(invalid("rpdm alpha must be finite and non-negative"))
            }
            EngineKind::Rpdm if !(self.epsilon >= 0.0) => Err(invalid("rpdm epsilon must be non-negative")),
            EngineKind::WeakGreedy if self.sample_size == 0 => Err(invalid("weak greedy needs a non-empty sample set")),
            _ => Ok(()),
        }
    }

    pub fn build(&self, domain: &Domain) -> Result<Engine> {
        self.validate()?;
        Ok(match self.kind {
            EngineKind::Uniform => Engine::Uniform(UniformEngine),
            EngineKind::Rpdm => Engine::Rpdm(RpdmState::new(self.alpha, self.epsilon)?),
            EngineKind::WeakGreedy => Engine::WeakGreedy(WeakGreedyState::interior_grid(domain, self.sample_size)?),
        })
    }
}

/// A proposed next point and, for R-PDM, the cell it was drawn from.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub y: Vec<f64>,
    pub cell: Option<usize>,
}

/// Uniform point in the parameter box.
pub fn uniform_sample<R: Rng + ?Sized>(domain: &Domain, rng: &mut R) -> Vec<f64> {
    domain
        .lower()
        .iter()
        .zip(domain.upper())
        .map(|(l, u)| l + rng.random::<f64>() * (u - l))
        .collect()
}

fn interior_sample<R: Rng + ?Sized>(domain: &Domain, rng: &mut R) -> Result<Vec<f64>> {
    for _ in 0..BOUNDARY_RETRIES {
        let y = uniform_sample(domain, rng);
        if domain.contains_interior(&y) {
            return Ok(y);
        }
    }
    Err(Error::BoundaryRetries(BOUNDARY_RETRIES))
}

/// Probabilities proportional to `exp(log_weights)`, normalised after
/// subtracting the largest log weight.
pub fn softmax(log_weights: &[f64]) -> Vec<f64> {
    let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = log_weights.iter().map(|l| (l - max).exp()).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

/// Draws an index with probability proportional to `exp(log_weights[i])`.
pub fn sample_log_weights<R: Rng + ?Sized>(log_weights: &[f64], rng: &mut R) -> usize {
    let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = log_weights.iter().map(|l| (l - max).exp()).collect();
    let z: f64 = w.iter().sum();
    let mut u = rng.random::<f64>() * z;
    for (i, wi) in w.iter().enumerate() {
        if u < *wi {
            return i;
        }
        u -= wi;
    }
    // Rounding can leave u marginally above the last weight.
    w.iter().rposition(|&x| x > 0.0).unwrap_or(0)
}

/// The uniform kernel `lambda(eta, .) = unif_P`. Evaluates nothing.
#[derive(Debug, Clone, Default)]
pub struct UniformEngine;

/// State of the randomized polytope division method.
#[derive(Debug, Clone)]
pub struct RpdmState {
    division: Option<PolytopeDivision>,
    alpha: f64,
    epsilon: f64,
    counts: EvalCounts,
}

impl RpdmState {
    /// An engine whose division is created by the first [`Engine::initialize`].
    pub fn new(alpha: f64, epsilon: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) || !(epsilon >= 0.0) {
            return Err(invalid("rpdm requires finite alpha >= 0 and epsilon >= 0"));
        }
        Ok(Self { division: None, alpha, epsilon, counts: EvalCounts::default() })
    }

    /// Splits `P` at the interior point `p` by facet linking, with barycenter
    /// probes and no evaluations yet.
    pub fn init(p: &[f64], domain: &Domain, alpha: f64, epsilon: f64) -> Result<Self> {
        let mut s = Self::new(alpha, epsilon)?;
        s.division = Some(PolytopeDivision::initial(p, &Polytope::from_domain(domain)?)?);
        Ok(s)
    }

    pub fn division(&self) -> Option<&PolytopeDivision> {
        self.division.as_ref()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn counts(&self) -> EvalCounts {
        self.counts
    }

    fn division_mut(&mut self) -> Result<&mut PolytopeDivision> {
        self.division.as_mut().ok_or_else(|| invalid("rpdm engine used before initialisation"))
    }

    /// Cell-selection probabilities from the errors cached by the last
    /// [`RpdmState::propose`].
    pub fn cell_probabilities(&self) -> Option<Vec<f64>> {
        let div = self.division.as_ref()?;
        let logs: Option<Vec<f64>> = div.cells().iter().map(|c| c.error.map(|e| self.alpha * e)).collect();
        logs.map(|l| softmax(&l))
    }

    /// Evaluates every probe, draws a cell with weight `exp(alpha J)` and a
    /// uniform point strictly inside it.
    pub fn propose<R: Rng + ?Sized>(&mut self, field: &dyn ErrorField, rng: &mut R) -> Result<Proposal> {
        let alpha = self.alpha;
        let div = self.division_mut()?;
        let mut logs = Vec::with_capacity(div.len());
        for cell in div.cells_mut() {
            let e = field.local_error(&cell.probe);
            cell.error = Some(e);
            logs.push(alpha * e);
        }
        let n = div.len() as u64;
        let k = sample_log_weights(&logs, rng);
        let poly = &div.cells()[k].polytope;
        let mut y = None;
        for _ in 0..BOUNDARY_RETRIES {
            let cand = poly.sample_uniform(rng);
            if poly.contains_strictly(&cand) {
                y = Some(cand);
                break;
            }
        }
        self.counts.selection += n;
        let y = y.ok_or(Error::BoundaryRetries(BOUNDARY_RETRIES))?;
        Ok(Proposal { y, cell: Some(k) })
    }

    /// After `eta ⊕ y`: refreshes low-error probes of the other cells, then
    /// splits the chosen cell at `y`.
    pub fn commit<R: Rng + ?Sized>(&mut self, field_next: &dyn ErrorField, proposal: &Proposal, rng: &mut R) -> Result<()> {
        let chosen = proposal.cell.ok_or_else(|| invalid("rpdm commit needs the chosen cell"))?;
        let eps = self.epsilon;
        let div = self.division_mut()?;
        let mut refreshed = 0u64;
        for (i, cell) in div.cells_mut().iter_mut().enumerate() {
            if i == chosen {
                continue;
            }
            refreshed += 1;
            if field_next.local_error(&cell.probe) < eps {
                cell.probe = cell.polytope.sample_uniform(rng);
                cell.probe_is_barycenter = false;
                cell.error = None;
            }
        }
        div.split(chosen, &proposal.y)?;
        self.counts.probe_refresh += refreshed;
        Ok(())
    }
}

/// Deterministic argmax of the local error over a fixed sample set.
#[derive(Debug, Clone)]
pub struct WeakGreedyState {
    samples: Vec<Vec<f64>>,
    counts: EvalCounts,
}

impl WeakGreedyState {
    pub fn new(samples: Vec<Vec<f64>>, domain: &Domain) -> Result<Self> {
        if samples.is_empty() {
            return Err(invalid("weak greedy needs a non-empty sample set"));
        }
        for s in &samples {
            domain.check(s)?;
        }
        Ok(Self { samples, counts: EvalCounts::default() })
    }

    /// `size` equally spaced interior points `a + (b-a) i/(size+1)`; in two
    /// dimensions a `size x size` tensor grid of the same form.
    pub fn interior_grid(domain: &Domain, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(invalid("weak greedy needs a non-empty sample set"));
        }
        let axis = |d: usize| -> Vec<f64> {
            let (l, u) = (domain.lower()[d], domain.upper()[d]);
            (1..=size).map(|i| l + (u - l) * i as f64 / (size + 1) as f64).collect()
        };
        let samples = match domain.dim() {
            1 => axis(0).into_iter().map(|x| vec![x]).collect(),
            2 => {
                let (xs, ys) = (axis(0), axis(1));
                ys.iter().flat_map(|&y| xs.iter().map(move |&x| vec![x, y])).collect()
            }
            d => return Err(Error::UnsupportedDimension { expected: 2, got: d }),
        };
        Self::new(samples, domain)
    }

    pub fn samples(&self) -> &[Vec<f64>] {
        &self.samples
    }

    pub fn counts(&self) -> EvalCounts {
        self.counts
    }

    /// `argmax_{q in S} J(q, eta)`, lowest index on ties.
    pub fn select(&mut self, field: &dyn ErrorField) -> Vec<f64> {
        let mut best = 0;
        let mut best_err = f64::NEG_INFINITY;
        for (i, s) in self.samples.iter().enumerate() {
            let e = field.local_error(s);
            if e > best_err {
                best = i;
                best_err = e;
            }
        }
        self.counts.selection += self.samples.len() as u64;
        self.samples[best].clone()
    }
}

/// A selection engine owned by one trajectory.
#[derive(Debug, Clone)]
pub enum Engine {
    Uniform(UniformEngine),
    Rpdm(RpdmState),
    WeakGreedy(WeakGreedyState),
}

impl Engine {
    pub fn kind(&self) -> EngineKind {
        match self {
            Self::Uniform(_) => EngineKind::Uniform,
            Self::Rpdm(_) => EngineKind::Rpdm,
            Self::WeakGreedy(_) => EngineKind::WeakGreedy,
        }
    }

    pub fn counts(&self) -> EvalCounts {
        match self {
            Self::Uniform(_) => EvalCounts::default(),
            Self::Rpdm(s) => s.counts(),
            Self::WeakGreedy(s) => s.counts(),
        }
    }

    /// Chooses the first node and returns `eta_0 = (p)`.
    ///
    /// Stochastic engines draw `p` uniformly from the interior of `P`; weak
    /// greedy selects it from the empty configuration, which makes it fully
    /// deterministic.
    pub fn initialize<R: Rng + ?Sized>(&mut self, cop: &dyn Cop, rng: &mut R) -> Result<Configuration> {
        let domain = cop.domain();
        let p = match self {
            Self::WeakGreedy(s) => {
                let field = cop.error_field(&Configuration::empty(domain.dim()))?;
                s.select(field.as_ref())
            }
            _ => interior_sample(domain, rng)?,
        };
        self.initialize_at(&p, cop)
    }

    /// Starts from the given first node.
    pub fn initialize_at(&mut self, p: &[f64], cop: &dyn Cop) -> Result<Configuration> {
        let domain = cop.domain();
        if let Self::Rpdm(s) = self {
            *s = RpdmState::init(p, domain, s.alpha, s.epsilon)?;
        }
        Configuration::empty(domain.dim()).oplus(p, domain)
    }

    pub fn propose<R: Rng + ?Sized>(&mut self, eta: &Configuration, cop: &dyn Cop, rng: &mut R) -> Result<Proposal> {
        match self {
            Self::Uniform(_) => Ok(Proposal { y: uniform_sample(cop.domain(), rng), cell: None }),
            Self::Rpdm(s) => s.propose(cop.error_field(eta)?.as_ref(), rng),
            Self::WeakGreedy(s) => Ok(Proposal { y: s.select(cop.error_field(eta)?.as_ref()), cell: None }),
        }
    }

    pub fn commit<R: Rng + ?Sized>(&mut self, eta_next: &Configuration, proposal: &Proposal, cop: &dyn Cop, rng: &mut R) -> Result<()> {
        match self {
            Self::Rpdm(s) => s.commit(cop.error_field(eta_next)?.as_ref(), proposal, rng),
            _ => Ok(()),
        }
    }

    /// One transition `eta -> eta ⊕ y`.
    pub fn step<R: Rng + ?Sized>(&mut self, eta: &Configuration, cop: &dyn Cop, rng: &mut R) -> Result<(Vec<f64>, Configuration)> {
        let proposal = self.propose(eta, cop, rng)?;
        let next = eta.oplus(&proposal.y, cop.domain())?;
        self.commit(&next, &proposal, cop, rng)?;
        Ok((proposal.y, next))
    }
}

/// Disjoint open intervals inside `[a, b]`.
pub type IntervalSet = [(f64, f64)];

/// Kernels whose mass on interval sets can be computed in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MassKernel {
    Uniform,
    /// R-PDM on the one-dimensional division induced by the configuration.
    Rpdm { alpha: f64 },
}

fn overlap(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.1.min(b.1) - a.0.max(b.0)).max(0.0)
}

fn check_set(set: &IntervalSet, a: f64, b: f64) -> Result<()> {
    for &(lo, hi) in set {
        if !(a <= lo && lo <= hi && hi <= b) {
            return Err(Error::DomainViolation { point: vec![lo, hi] });
        }
    }
    Ok(())
}

/// `lambda(eta, set)` for a one-dimensional kernel.
///
/// For R-PDM the cell weights use `exp(alpha * Jbar_D)` with `Jbar_D` the
/// mean of `J` at `quad_points_per_cell` midpoint nodes of the cell.
pub fn kernel_mass(
    kernel: MassKernel,
    eta: &Configuration,
    set: &IntervalSet,
    cop: &dyn Cop,
    quad_points_per_cell: usize,
) -> Result<f64> {
    let domain = cop.domain();
    let (a, b) = domain.bounds_1d()?;
    check_set(set, a, b)?;
    match kernel {
        MassKernel::Uniform => Ok(set.iter().map(|&(lo, hi)| hi - lo).sum::<f64>() / (b - a)),
        MassKernel::Rpdm { alpha } => {
            let division = PolytopeDivision::from_nodes_1d(domain, eta)?;
            division_mass(&division, alpha, eta, set, cop, quad_points_per_cell)
        }
    }
}

/// R-PDM kernel mass of `set` for an explicit one-dimensional division.
pub fn division_mass(
    division: &PolytopeDivision,
    alpha: f64,
    eta: &Configuration,
    set: &IntervalSet,
    cop: &dyn Cop,
    quad_points_per_cell: usize,
) -> Result<f64> {
    let (a, b) = cop.domain().bounds_1d()?;
    check_set(set, a, b)?;
    if quad_points_per_cell == 0 {
        return Err(invalid("quad_points_per_cell must be positive"));
    }
    let field = cop.error_field(eta)?;
    let q = quad_points_per_cell as f64;
    let mut logs = Vec::with_capacity(division.len());
    let mut fractions = Vec::with_capacity(division.len());
    for cell in division.cells() {
        let (lo, hi) = (cell.polytope.vertex(0)[0], cell.polytope.vertex(1)[0]);
        let mean = (0..quad_points_per_cell)
            .map(|j| field.local_error(&[lo + (j as f64 + 0.5) / q * (hi - lo)]))
            .sum::<f64>()
            / q;
        logs.push(alpha * mean);
        fractions.push(set.iter().map(|&s| overlap(s, (lo, hi))).sum::<f64>() / (hi - lo));
    }
    Ok(softmax(&logs).iter().zip(&fractions).map(|(w, f)| w * f).sum())
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cop::InterpolationCop;
    use crate::interpolation::{Preset, TargetFunction};

    fn sq_cop() -> InterpolationCop {
        InterpolationCop::new(TargetFunction::new("x^2", |x| x * x), Domain::interval(0.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn uniform_sample_moments_and_support() {
        let d = Domain::interval(0.0, 5.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| uniform_sample(&d, &mut rng)[0]).collect();
        assert!(xs.iter().all(|&x| (0.0..=5.0).contains(&x)));
        let mean = xs.iter().sum::<f64>() / n as f64;
        assert!((mean - 2.5).abs() < 0.014, "mean {mean}");

        let mut r1 = ChaCha8Rng::seed_from_u64(9);
        let mut r2 = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            assert_eq!(uniform_sample(&d, &mut r1), uniform_sample(&d, &mut r2));
        }
    }

    #[test]
    fn rpdm_init_cells() {
        let d = Domain::interval(0.0, 5.0).unwrap();
        let s = RpdmState::init(&[2.5], &d, 500.0, 0.01).unwrap();
        let div = s.division().unwrap();
        assert_eq!(div.len(), 2);
        assert_eq!(div.cells()[0].probe, vec![1.25]);
        assert_eq!(div.cells()[1].probe, vec![3.75]);
        assert_eq!(s.counts(), EvalCounts::default());

        let s2 = RpdmState::init(&[0.3, 0.6], &Domain::unit_square(), 1.0, 0.01).unwrap();
        assert_eq!(s2.division().unwrap().len(), 4);
        assert!(matches!(RpdmState::init(&[0.0], &d, 1.0, 0.01), Err(Error::InvalidSplit { .. })));
    }

    #[test]
    fn softmax_is_stable() {
        let p = softmax(&[500.0 * 1000.0, 0.0, 500.0 * 999.0]);
        assert!(p.iter().all(|x| x.is_finite()));
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(softmax(&[0.0; 4]), vec![0.25; 4]);
    }

    #[test]
    fn rpdm_eval_count_is_triangular() {
        let cop = InterpolationCop::preset(Preset::Example1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut e = EngineSpec::new(EngineKind::Rpdm).build(cop.domain()).unwrap();
        let mut eta = e.initialize(&cop, &mut rng).unwrap();
        while eta.count() < 45 {
            eta = e.step(&eta, &cop, &mut rng).unwrap().1;
        }
        assert_eq!(e.counts().selection, 1034);
        if let Engine::Rpdm(s) = &e {
            assert_eq!(s.division().unwrap().len(), 46);
        }
    }

    #[test]
    fn weak_greedy_example() {
        let d = Domain::interval(0.0, 1.0).unwrap();
        let cop = sq_cop();
        let mut s = WeakGreedyState::new(vec![vec![0.25], vec![0.5], vec![0.75]], &d).unwrap();
        let field = cop.error_field(&Configuration::empty(1)).unwrap();
        let errs: Vec<f64> = s.samples().iter().map(|q| field.local_error(q)).collect();
        assert_eq!(errs, vec![0.1875, 0.25, 0.1875]);
        assert_eq!(s.select(field.as_ref()), vec![0.5]);
        assert_eq!(s.counts().selection, 3);

        let affine = InterpolationCop::new(TargetFunction::new("lin", |x| 2.0 * x), d).unwrap();
        let f = affine.error_field(&Configuration::empty(1)).unwrap();
        assert_eq!(s.select(f.as_ref()), vec![0.25]);
    }

    #[test]
    fn alpha_zero_selects_cells_uniformly() {
        let cop = InterpolationCop::preset(Preset::Example1);
        let mut s = RpdmState::init(&[1.0], cop.domain(), 0.0, 0.0).unwrap();
        let field = cop.error_field(&Configuration::from_scalars(&[1.0], cop.domain()).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        s.propose(field.as_ref(), &mut rng).unwrap();
        assert_eq!(s.cell_probabilities().unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn kernel_mass_whole_interval_is_one() {
        let cop = InterpolationCop::preset(Preset::Example2);
        let eta = Configuration::from_scalars(&[3.0, 7.5, 1.2], cop.domain()).unwrap();
        let all = [(0.0, 10.0)];
        assert_eq!(kernel_mass(MassKernel::Uniform, &eta, &all, &cop, 1).unwrap(), 1.0);
        let m = kernel_mass(MassKernel::Rpdm { alpha: 500.0 }, &eta, &all, &cop, 3).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        assert!(kernel_mass(MassKernel::Uniform, &eta, &[(-1.0, 2.0)], &cop, 1).is_err());
    }

    #[test]
    fn engine_names_roundtrip() {
        for k in [EngineKind::Uniform, EngineKind::Rpdm, EngineKind::WeakGreedy] {
            assert_eq!(k.name().parse::<EngineKind>().unwrap(), k);
        }
        assert!("greedy".parse::<EngineKind>().is_err());
    }
}
