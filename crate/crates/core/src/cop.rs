//! The problem interface seen by selection engines: a parameter box and a
//! local error `J(x, eta)` that can be prepared once per configuration and
//! then probed at many points.

use std::sync::Arc;

use crate::config_space::{Configuration, Domain};
use crate::error::Result;
use crate::interpolation::{Interpolant, Preset, QuadratureGrid, TargetFunction};

/// `x -> J(x, eta)` for a fixed configuration.
pub trait ErrorField {
    fn local_error(&self, x: &[f64]) -> f64;
}

/// A configuration optimization problem.
pub trait Cop: Send + Sync {
    fn domain(&self) -> &Domain;

    fn error_field<'a>(&'a self, eta: &Configuration) -> Result<Box<dyn ErrorField + 'a>>;
}

/// Piecewise-linear interpolation of a target function on an interval.
#[derive(Debug, Clone)]
pub struct InterpolationCop {
    target: TargetFunction,
    domain: Domain,
}

impl InterpolationCop {
    pub fn new(target: TargetFunction, domain: Domain) -> Result<Self> {
        domain.bounds_1d()?;
        Ok(Self { target, domain })
    }

    pub fn preset(p: Preset) -> Self {
        Self { target: p.target(), domain: p.domain() }
    }

    pub fn target(&self) -> &TargetFunction {
        &self.target
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Local errors at every grid point.
    pub fn grid_errors(&self, eta: &Configuration, grid: &QuadratureGrid) -> Result<Vec<f64>> {
        crate::interpolation::grid_errors(&self.target, eta, grid, &self.domain)
    }

    /// Trapezoid estimate of the global error.
    pub fn global_error(&self, eta: &Configuration, grid: &QuadratureGrid) -> Result<f64> {
        crate::interpolation::global_error(&self.target, eta, grid, &self.domain)
    }
}

struct InterpolationField<'a> {
    interp: Interpolant,
    target: &'a TargetFunction,
}

impl ErrorField for InterpolationField<'_> {
    #[inline]
    fn local_error(&self, x: &[f64]) -> f64 {
        (self.interp.eval_unchecked(x[0]) - self.target.eval(x[0])).abs()
    }
}

impl Cop for InterpolationCop {
    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn error_field<'a>(&'a self, eta: &Configuration) -> Result<Box<dyn ErrorField + 'a>> {
        Ok(Box::new(InterpolationField { interp: Interpolant::new(&self.target, eta, &self.domain)?, target: &self.target }))
    }
}

type LocalFn = Arc<dyn Fn(&[f64], &Configuration) -> f64 + Send + Sync>;

/// A problem given directly by a closure `J(x, eta)`, evaluated lazily.
#[derive(Clone)]
pub struct FnCop {
    domain: Domain,
    j: LocalFn,
}

impl FnCop {
    pub fn new(domain: Domain, j: impl Fn(&[f64], &Configuration) -> f64 + Send + Sync + 'static) -> Self {
        Self { domain, j: Arc::new(j) }
    }

    /// `J(x, eta) = min_i |x - eta_i|`, capped at `diam(P)` for the empty
    /// configuration. Monotone and consistent in any dimension.
    pub fn nearest_node_distance(domain: Domain) -> Self {
        let diam = domain.diameter();
        Self::new(domain, move |x, eta| {
            eta.points()
                .map(|p| p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt())
                .fold(diam, f64::min)
        })
    }
}

struct FnField<'a> {
    j: &'a LocalFn,
    eta: Configuration,
}

impl ErrorField for FnField<'_> {
    fn local_error(&self, x: &[f64]) -> f64 {
        (self.j)(x, &self.eta)
    }
}

impl Cop for FnCop {
    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn error_field<'a>(&'a self, eta: &Configuration) -> Result<Box<dyn ErrorField + 'a>> {
        Ok(Box::new(FnField { j: &self.j, eta: eta.clone() }))
    }
}
