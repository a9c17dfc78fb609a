//! Safe multi-task Bayesian optimization for cascade servo controller tuning.
//!
//! The crate tunes the `(Kp, Kv, Ti)` gains of a three-loop cascade controller
//! driving a simulated rotational axis, while never evaluating a controller
//! that is not known to be safe with high probability. Safety is tracked by
//! Gaussian process models of a vibration constraint and a tracking-error
//! constraint; candidate controllers are proposed by particle swarm search
//! over an implicit optimistic safe set and certified through a
//! pessimistic/optimistic safe-set expansion loop. Changing operating
//! conditions (load, friction, feed-forward gain, slow drift) are handled by
//! a task parameter estimated from episode data and fed to a multi-task
//! kernel.
//!
//! Entry points:
//! - [`plant`] — discrete-time drive simulation and disturbance scenarios,
//! - [`metrics`] — episode cost, constraints and task parameters,
//! - [`gp`] — GP regression with monotone confidence bounds,
//! - [`safe_set`] — grid, pessimistic safe set, boundary and expanders,
//! - [`pso`] — particle swarm search restricted to a membership predicate,
//! - [`goose`] — the outer safe tuning loop,
//! - [`baselines`] — constrained BO and exhaustive grid evaluation,
//! - [`harness`] — config files, calibration, runs, CSV/SVG artifacts.
//!
//! The `examples/` directory contains one runnable example per capability;
//! the `safetune` binary exposes the same flows as subcommands.

pub mod baselines;
pub mod error;
pub mod goose;
pub mod gp;
pub mod harness;
pub mod metrics;
pub mod plant;
pub mod pso;
pub mod rng;
pub mod safe_set;

pub use error::{Error, Result};
