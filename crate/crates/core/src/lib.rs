//! Proximal nonlinear conjugate gradient methods for composite minimization
//! `min_x g(x) + h(x)` with `g` smooth and `h` convex or weakly convex.
//!
//! The search direction is a three-term Hestenes-Stiefel update driven by the
//! forward-backward residual `eta_mu(x) = -(prox_{mu h}(x - mu grad g(x)) - x) / mu`
//! in place of the gradient. Each iteration either accepts a line-search step
//! along that direction or falls back to a proximal gradient step.
//!
//! Alongside the solvers the crate ships proximal-gradient baselines, seeded
//! instance generators for LASSO, l1-logistic, Student's-t and MCP problems, a
//! LIBSVM reader, and Dolan-More performance profiles.

pub mod bench;
pub mod cli;
pub mod composite;
pub mod direction;
pub mod error;
pub mod line_search;
pub mod nonsmooth;
pub mod numerics;
pub mod problems;
pub mod residual;
pub mod smooth;
pub mod solver;

pub use composite::{CompositeProblem, EvalCounts};
pub use error::{Error, Result};
pub use nonsmooth::{McpParams, ProxOracle};
pub use smooth::SmoothOracle;
pub use solver::{solve, SolveReport, SolverConfig, Status, StepKind, Variant};
