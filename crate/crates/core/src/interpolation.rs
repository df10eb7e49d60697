//! Piecewise-linear interpolation on `[a, b]` as a configuration
//! optimization problem.
//!
//! The selected nodes of a configuration are sorted and bracketed by the
//! domain endpoints, which are always knots but never count as nodes. The
//! local error is `J(x, eta) = |I_eta[f](x) - f(x)|` and the global error is
//! its L1 norm over `[a, b]`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::config_space::{Configuration, Domain};
use crate::error::{invalid, Error, Result};

type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar target `f` with optional curvature information.
#[derive(Clone)]
pub struct TargetFunction {
    name: String,
    f: Scalar,
    second_derivative_bounds: Option<(f64, f64)>,
    sup_second_derivative: Option<f64>,
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("name", &self.name)
            .field("second_derivative_bounds", &self.second_derivative_bounds)
            .field("sup_second_derivative", &self.sup_second_derivative)
            .finish()
    }
}

impl TargetFunction {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Arc::new(f), second_derivative_bounds: None, sup_second_derivative: None }
    }

    /// Declares `0 < m <= f'' <= M` on the domain.
    pub fn with_convexity(mut self, m: f64, big_m: f64) -> Result<Self> {
        if !(m > 0.0 && m <= big_m) {
            return Err(invalid(format!("convexity bounds need 0 < m <= M, got ({m}, {big_m})")));
        }
        self.second_derivative_bounds = Some((m, big_m));
        Ok(self)
    }

    /// Declares `c_f = sup |f''|`.
    pub fn with_sup_second_derivative(mut self, c_f: f64) -> Result<Self> {
        if !(c_f >= 0.0) {
            return Err(invalid("sup |f''| must be non-negative"));
        }
        self.sup_second_derivative = Some(c_f);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn second_derivative_bounds(&self) -> Option<(f64, f64)> {
        self.second_derivative_bounds
    }

    pub fn sup_second_derivative(&self) -> Option<f64> {
        self.sup_second_derivative
    }

    pub fn is_convex(&self) -> bool {
        self.second_derivative_bounds.is_some()
    }

    /// `h_alpha(x) = alpha x^2 / 2`.
    pub fn half_square(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(invalid("alpha must be positive"));
        }
        Self::new(format!("{alpha}*x^2/2"), move |x| 0.5 * alpha * x * x)
            .with_convexity(alpha, alpha)?
            .with_sup_second_derivative(alpha)
    }

    /// `f_alpha = f + h_alpha`, strongly convex with bounds
    /// `(alpha - c_f, alpha + c_f)` once `alpha > c_f`.
    pub fn convexified(&self, alpha: f64) -> Result<Self> {
        let c_f = self
            .sup_second_derivative
            .ok_or_else(|| invalid(format!("{} has no declared sup |f''|", self.name)))?;
        if !(alpha > c_f) {
            return Err(invalid(format!("alpha = {alpha} must exceed c_f = {c_f}")));
        }
        let inner = self.f.clone();
        Self::new(format!("{}+{alpha}*x^2/2", self.name), move |x| inner(x) + 0.5 * alpha * x * x)
            .with_convexity(alpha - c_f, alpha + c_f)?
            .with_sup_second_derivative(alpha + c_f)
    }
}

/// The three reference problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `x^2 + x^4/30` on `[0, 5]`.
    Example1,
    /// `((x-6)^4 + (x-2)^2 + 2)/200` on `[0, 10]`.
    Example2,
    /// `sin(2x)` on `[0, 10]`.
    Example3,
}

impl Preset {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Self::Example1),
            2 => Some(Self::Example2),
            3 => Some(Self::Example3),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Example1 => "example1",
            Self::Example2 => "example2",
            Self::Example3 => "example3",
        }
    }

    pub fn domain(self) -> Domain {
        let (a, b) = match self {
            Self::Example1 => (0.0, 5.0),
            Self::Example2 | Self::Example3 => (0.0, 10.0),
        };
        Domain::interval(a, b).expect("preset bounds are valid")
    }

    pub fn target(self) -> TargetFunction {
        match self {
            // f'' = 2 + 0.4 x^2 on [0, 5]
            Self::Example1 => TargetFunction::new("example1", |x| x * x + x.powi(4) / 30.0)
                .with_convexity(2.0, 12.0)
                .and_then(|t| t.with_sup_second_derivative(12.0)),
            // f'' = (12 (x-6)^2 + 2) / 200, maximal at x = 0
            Self::Example2 => TargetFunction::new("example2", |x| {
                ((x - 6.0).powi(4) + (x - 2.0).powi(2) + 2.0) / 200.0
            })
            .with_convexity(0.01, 434.0 / 200.0)
            .and_then(|t| t.with_sup_second_derivative(434.0 / 200.0)),
            // f'' = -4 sin(2x)
            Self::Example3 => TargetFunction::new("example3", |x| (2.0 * x).sin()).with_sup_second_derivative(4.0),
        }
        .expect("preset curvature bounds are valid")
    }

    /// Weak-greedy sample size used for this example.
    pub fn default_sample_size(self) -> usize {
        match self {
            Self::Example1 | Self::Example2 => 90,
            Self::Example3 => 120,
        }
    }
}

/// `L` equally spaced points covering `[a, b]`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    points: Vec<f64>,
}

impl QuadratureGrid {
    pub fn new(domain: &Domain, l: usize) -> Result<Self> {
        let (a, b) = domain.bounds_1d()?;
        if l < 2 {
            return Err(invalid("quadrature grid needs L >= 2"));
        }
        let h = (b - a) / (l - 1) as f64;
        let mut points: Vec<f64> = (0..l).map(|i| a + h * i as f64).collect();
        points[l - 1] = b;
        Ok(Self { points })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Composite trapezoid rule applied to samples taken at the grid points.
    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.points.len());
        self.points
            .windows(2)
            .zip(values.windows(2))
            .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] + v[1]))
            .sum()
    }
}

/// The piecewise-linear interpolant of `f` through the endpoints and the
/// sorted, de-duplicated interior nodes of a configuration.
#[derive(Debug, Clone)]
pub struct Interpolant {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl Interpolant {
    pub fn new(f: &TargetFunction, eta: &Configuration, domain: &Domain) -> Result<Self> {
        let (a, b) = domain.bounds_1d()?;
        if eta.dim() != 1 {
            return Err(Error::UnsupportedDimension { expected: 1, got: eta.dim() });
        }
        let mut knots = Vec::with_capacity(eta.count() + 2);
        knots.push(a);
        knots.extend(eta.scalars().iter().copied().filter(|&x| x > a && x < b));
        knots[1..].sort_by(f64::total_cmp);
        knots.dedup();
        knots.push(b);
        let values = knots.iter().map(|&x| f.eval(x)).collect();
        Ok(Self { knots, values })
    }

    /// Knot sequence `a = x_0 < x_1 < ... < x_{n+1} = b`.
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn check(&self, x: f64) -> Result<()> {
        let (a, b) = (self.knots[0], self.knots[self.knots.len() - 1]);
        if a <= x && x <= b {
            Ok(())
        } else {
            Err(Error::DomainViolation { point: vec![x] })
        }
    }

    /// Index `k` with `x_k <= x <= x_{k+1}`; exact knots map to themselves.
    #[inline]
    fn segment(&self, x: f64) -> usize {
        let idx = self.knots.partition_point(|&t| t <= x);
        idx.saturating_sub(1).min(self.knots.len() - 2)
    }

    /// Evaluates without a domain check.
    #[inline]
    pub fn eval_unchecked(&self, x: f64) -> f64 {
        let k = self.segment(x);
        let (x0, x1) = (self.knots[k], self.knots[k + 1]);
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        if x == x1 {
            return y1;
        }
        y0 + (y1 - y0) / (x1 - x0) * (x - x0)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(self.eval_unchecked(x))
    }
}

/// `I_eta[f](x)`.
pub fn interpolate(f: &TargetFunction, eta: &Configuration, x: f64, domain: &Domain) -> Result<f64> {
    Interpolant::new(f, eta, domain)?.eval(x)
}

/// `J(x, eta) = |I_eta[f](x) - f(x)|`.
pub fn local_error(f: &TargetFunction, eta: &Configuration, x: f64, domain: &Domain) -> Result<f64> {
    let i = Interpolant::new(f, eta, domain)?;
    Ok((i.eval(x)? - f.eval(x)).abs())
}

/// Local errors `J(y_i, eta)` at every grid point.
pub fn grid_errors(f: &TargetFunction, eta: &Configuration, grid: &QuadratureGrid, domain: &Domain) -> Result<Vec<f64>> {
    let i = Interpolant::new(f, eta, domain)?;
    Ok(grid.points().iter().map(|&y| (i.eval_unchecked(y) - f.eval(y)).abs()).collect())
}

/// Trapezoid estimate of `G(eta) = int_a^b J(x, eta) dx` on `grid`.
pub fn global_error(f: &TargetFunction, eta: &Configuration, grid: &QuadratureGrid, domain: &Domain) -> Result<f64> {
    Ok(grid.trapezoid(&grid_errors(f, eta, grid, domain)?))
}

// Five-point Gauss-Legendre nodes and weights on [-1, 1].
const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

/// Per-interval integration of `I_eta[f] - f` for convex `f`.
///
/// Convexity fixes the sign of the error on every knot interval, so the L1
/// norm is the sum of the absolute signed integrals. Each one is computed with
/// five-point Gauss-Legendre, exact for polynomial `f` up to degree nine.
pub fn global_error_exact(f: &TargetFunction, eta: &Configuration, domain: &Domain) -> Result<f64> {
    if !f.is_convex() {
        return Err(invalid(format!("exact global error requires convexity bounds for {}", f.name())));
    }
    Ok(l1_error_by_intervals(f, &Interpolant::new(f, eta, domain)?))
}

pub(crate) fn l1_error_by_intervals(f: &TargetFunction, interp: &Interpolant) -> f64 {
    let (k, v) = (interp.knots(), interp.values());
    let mut total = 0.0;
    for i in 0..k.len() - 1 {
        let (x0, x1) = (k[i], k[i + 1]);
        let half = 0.5 * (x1 - x0);
        let mid = 0.5 * (x0 + x1);
        let int_f: f64 = GL5.iter().map(|(t, w)| w * f.eval(mid + half * t)).sum::<f64>() * half;
        let chord = 0.5 * (x1 - x0) * (v[i] + v[i + 1]);
        total += (chord - int_f).abs();
    }
    total
}
