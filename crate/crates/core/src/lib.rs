//! Stochastic greedy sampling for configuration optimization problems.
//!
//! Greedy point selection is modelled as a jump Markov process on the space
//! of finite point configurations: every transition prepends one point drawn
//! from a selection kernel. The crate provides
//!
//! - [`config_space`]: configurations, the `⊕` transition, counting, the
//!   sequence metric and the 1D order mapping;
//! - [`geometry`]: intervals and convex polygons, facet linking and the
//!   polytope division maintained by R-PDM;
//! - [`interpolation`]: piecewise-linear interpolation as a reference problem;
//! - [`kernels`]: the uniform, R-PDM and weak greedy engines and closed-form
//!   kernel masses;
//! - [`process`]: node-clock and CTMC trajectories, generator residuals;
//! - [`experiments`]: the K-run Monte Carlo harness with CSV export;
//! - [`theory`]: executable checks of the convergence-rate statements.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config_space;
pub mod cop;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod interpolation;
pub mod kernels;
pub mod process;
pub mod theory;

pub use config_space::{metric, Configuration, Domain};
pub use cop::{Cop, ErrorField, FnCop, InterpolationCop};
pub use error::{Error, Result};
pub use experiments::{run_experiment, ExperimentConfig, ExperimentStats, StoppingMode};
pub use interpolation::{Preset, QuadratureGrid, TargetFunction};
pub use kernels::{Engine, EngineKind, EngineSpec, EvalCounts};
pub use process::{simulate, Clock, StoppingRule, Trajectory};
