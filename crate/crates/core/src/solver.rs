//! Outer iterations: the proximal conjugate gradient drivers (convex and weakly
//! convex nonsmooth terms, with optional interpolated line search) and the
//! proximal-gradient baselines.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::composite::{CompositeProblem, EvalCounts};
use crate::direction::{compute_direction, steepest, DirectionInputs};
use crate::error::{check_dim, Error, Result};
use crate::line_search::{armijo, trial_scan, weakly_convex_search, LineSearchConfig, SearchPoint};
use crate::numerics::{axpy, dist, dot, norm, scale, sub};
use crate::residual::{backtrack_mu, increase_mu, initial_mu, FbrResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Proximal CG for convex `h`.
    Alg31,
    /// [`Variant::Alg31`] with quadratic-interpolation backtracking.
    Alg31Interp,
    /// Proximal CG for weakly convex `h` (both step conditions enforced).
    Alg41,
    Alg41Interp,
    /// Proximal gradient.
    Pgm,
    /// Accelerated proximal gradient with restart on objective increase.
    Apg,
}

impl Variant {
    pub const ALL: [Variant; 6] = [
        Variant::Alg31,
        Variant::Alg31Interp,
        Variant::Alg41,
        Variant::Alg41Interp,
        Variant::Pgm,
        Variant::Apg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Alg31 => "alg31",
            Variant::Alg31Interp => "alg31-interp",
            Variant::Alg41 => "alg41",
            Variant::Alg41Interp => "alg41-interp",
            Variant::Pgm => "pgm",
            Variant::Apg => "apg",
        }
    }

    pub fn is_conjugate_gradient(self) -> bool {
        !matches!(self, Variant::Pgm | Variant::Apg)
    }

    pub fn interpolates(self) -> bool {
        matches!(self, Variant::Alg31Interp | Variant::Alg41Interp)
    }

    pub fn weakly_convex(self) -> bool {
        matches!(self, Variant::Alg41 | Variant::Alg41Interp)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown solver variant '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Initial prox step `mu_{-1}`.
    pub mu_init: f64,
    /// Step reduction ratio `kappa`.
    pub kappa: f64,
    /// Safeguard constant `nu_hat`.
    pub nu_hat: f64,
    pub line_search: LineSearchConfig,
    /// Relative displacement tolerance.
    pub tol: f64,
    pub max_iter: usize,
    pub variant: Variant,
    /// Grow the step by `1/increase_factor` before each backtracking.
    pub mu_increase: bool,
    pub increase_factor: f64,
    /// Keep every iterate in the report.
    pub record_iterates: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            mu_init: 1.0,
            kappa: 0.5,
            nu_hat: 1e-8,
            line_search: LineSearchConfig::default(),
            tol: 1e-8,
            max_iter: 50_000,
            variant: Variant::Alg31,
            mu_increase: false,
            increase_factor: 0.9,
            record_iterates: false,
        }
    }
}

impl SolverConfig {
    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| v > 0.0 && v < 1.0;
        if !(self.mu_init > 0.0 && self.mu_init.is_finite()) {
            return Err(Error::InvalidParameter("mu_init must be positive".into()));
        }
        if !unit(self.kappa) {
            return Err(Error::InvalidParameter("kappa must lie in (0,1)".into()));
        }
        if self.nu_hat.is_nan() || self.nu_hat <= 0.0 {
            return Err(Error::InvalidParameter("nu_hat must be positive".into()));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::InvalidParameter("tol must be nonnegative".into()));
        }
        if self.mu_increase && !unit(self.increase_factor) {
            return Err(Error::InvalidParameter("increase factor must lie in (0,1)".into()));
        }
        self.line_search.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    MaxIter,
    OracleError,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxIter => "max-iter",
            Status::OracleError => "oracle-error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `x + alpha d` accepted by the line search.
    Cg,
    /// No acceptable step: fell back to the forward-backward point.
    ProxSwitch,
    /// Plain proximal gradient step.
    Prox,
    /// Accelerated step.
    Momentum,
    /// Accelerated method restarted from the current iterate.
    Restart,
    /// Final row: stopping test evaluated, no step taken.
    Stop,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Cg => "cg",
            StepKind::ProxSwitch => "prox-switch",
            StepKind::Prox => "prox",
            StepKind::Momentum => "momentum",
            StepKind::Restart => "restart",
            StepKind::Stop => "stop",
        }
    }
}

/// One trace row: quantities at iterate `k` and the step taken from it.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub f: f64,
    pub eta_norm: f64,
    pub mu: f64,
    pub alpha: Option<f64>,
    pub kind: StepKind,
    pub evals: EvalCounts,
    /// `eta_k^T d_k` for conjugate gradient rows.
    pub eta_dot_d: Option<f64>,
    /// `||d_k|| / ||eta_k||` for conjugate gradient rows.
    pub direction_ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub variant: Variant,
    pub status: Status,
    /// Steps taken.
    pub iterations: usize,
    pub switches: usize,
    pub x: Vec<f64>,
    pub f: f64,
    pub eta_norm: f64,
    pub trace: Vec<TraceRow>,
    /// `x_0, x_1, ...` when requested.
    pub iterates: Vec<Vec<f64>>,
    pub wall_time: Duration,
    pub error: Option<Error>,
}

impl SolveReport {
    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }

    pub fn switch_ratio(&self) -> f64 {
        if self.iterations == 0 {
            0.0
        } else {
            self.switches as f64 / self.iterations as f64
        }
    }

    pub fn total_evals(&self) -> EvalCounts {
        self.trace.iter().fold(EvalCounts::default(), |acc, r| EvalCounts {
            g: acc.g + r.evals.g,
            h: acc.h + r.evals.h,
            prox: acc.prox + r.evals.prox,
        })
    }
}

/// Runs the configured variant from `x0`.
pub fn solve(problem: &CompositeProblem, x0: &[f64], config: &SolverConfig) -> Result<SolveReport> {
    match config.variant {
        Variant::Pgm => solve_pgm(problem, x0, config),
        Variant::Apg => solve_apg(problem, x0, config),
        _ => solve_cg(problem, x0, config),
    }
}

fn rel_disp(a: &[f64], x: &[f64]) -> f64 {
    dist(a, x) / norm(x).max(1.0)
}

/// Shared trace bookkeeping.
struct Recorder {
    variant: Variant,
    record_iterates: bool,
    trace: Vec<TraceRow>,
    iterates: Vec<Vec<f64>>,
    start: Instant,
}

impl Recorder {
    fn new(config: &SolverConfig, x0: &[f64]) -> Self {
        let mut iterates = Vec::new();
        if config.record_iterates {
            iterates.push(x0.to_vec());
        }
        Self {
            variant: config.variant,
            record_iterates: config.record_iterates,
            trace: Vec::new(),
            iterates,
            start: Instant::now(),
        }
    }

    fn push(&mut self, row: TraceRow, x_next: Option<&[f64]>) {
        self.trace.push(row);
        if let (true, Some(x)) = (self.record_iterates, x_next) {
            self.iterates.push(x.to_vec());
        }
    }

    fn finish(self, status: Status, x: Vec<f64>, f: f64, eta_norm: f64, error: Option<Error>) -> SolveReport {
        let iterations = self.trace.iter().filter(|r| r.kind != StepKind::Stop).count();
        let switches = self.trace.iter().filter(|r| r.kind == StepKind::ProxSwitch).count();
        SolveReport {
            variant: self.variant,
            status,
            iterations,
            switches,
            x,
            f,
            eta_norm,
            trace: self.trace,
            iterates: self.iterates,
            wall_time: self.start.elapsed(),
            error,
        }
    }
}

fn check_start(problem: &CompositeProblem, x0: &[f64], config: &SolverConfig) -> Result<f64> {
    config.validate()?;
    check_dim(problem.dim(), x0.len())?;
    let mu = initial_mu(config.mu_init, problem.rho());
    Ok(mu)
}

/// Current iterate with cached oracle values.
struct Point {
    x: Vec<f64>,
    g: f64,
    h: f64,
    grad: Vec<f64>,
}

impl Point {
    fn at(problem: &CompositeProblem, x: Vec<f64>, counts: &mut EvalCounts) -> Result<Self> {
        let (g, grad) = problem.g_and_grad(&x, counts)?;
        let h = problem.h(&x, counts);
        if !(g + h).is_finite() {
            return Err(Error::NonFinite("objective"));
        }
        Ok(Self { x, g, h, grad })
    }

    fn f(&self) -> f64 {
        self.g + self.h
    }
}

fn next_mu(problem: &CompositeProblem, mu: f64, k: usize, config: &SolverConfig) -> Result<f64> {
    if config.mu_increase && k > 0 {
        increase_mu(mu, config.increase_factor, problem.nonsmooth().step_limit())
    } else {
        Ok(mu)
    }
}

struct Memory {
    eta: Vec<f64>,
    d: Vec<f64>,
    s: Vec<f64>,
}

enum Outcome {
    Step(Point, TraceRow),
    Stop(Status),
}

/// Proximal conjugate gradient iterations (`alg31`, `alg41` and their interpolated forms).
fn solve_cg(problem: &CompositeProblem, x0: &[f64], config: &SolverConfig) -> Result<SolveReport> {
    let mut mu = check_start(problem, x0, config)?;
    let mut ls = config.line_search;
    ls.interpolate = config.variant.interpolates();
    let weakly = config.variant.weakly_convex();

    let mut rec = Recorder::new(config, x0);
    let mut counts = EvalCounts::default();
    let mut cur = match Point::at(problem, x0.to_vec(), &mut counts) {
        Ok(p) => p,
        Err(e) => return Ok(rec.finish(Status::OracleError, x0.to_vec(), f64::NAN, f64::NAN, Some(e))),
    };
    let mut memory: Option<Memory> = None;
    let mut eta_norm = f64::NAN;

    for k in 0.. {
        let before = counts;
        let mut iteration = || -> Result<Outcome> {
            mu = next_mu(problem, mu, k, config)?;
            let res: FbrResult = backtrack_mu(problem, &cur.x, cur.g, &cur.grad, mu, config.kappa, &mut counts)?;
            mu = res.mu;
            eta_norm = norm(&res.eta);
            if rel_disp(&res.x_plus, &cur.x) <= config.tol {
                return Ok(Outcome::Stop(Status::Converged));
            }
            if k >= config.max_iter {
                return Ok(Outcome::Stop(Status::MaxIter));
            }

            let d = match &memory {
                None => steepest(&res.eta),
                Some(m) => match compute_direction(&DirectionInputs {
                    eta: &res.eta,
                    eta_prev: &m.eta,
                    d_prev: &m.d,
                    s_prev: &m.s,
                    nu_hat: config.nu_hat,
                }) {
                    Ok(dir) => dir.d,
                    Err(Error::DegenerateDenominator | Error::ZeroStep) => steepest(&res.eta),
                    Err(e) => return Err(e),
                },
            };

            let point = SearchPoint::new(problem, &cur.x, &d, &cur.grad, &res.eta, cur.g, cur.h);
            let (t, _) = trial_scan(&point, &ls, &mut counts);
            let accepted = match t {
                Some(t) if weakly => weakly_convex_search(&point, t, &ls, &mut counts)?,
                Some(t) => armijo(&point, t, &ls, &mut counts)?,
                None => None,
            };

            let (x_new, alpha, kind, eta_dot_d, ratio, mem) = match accepted {
                Some(acc) => {
                    let eta_dot_d = dot(&res.eta, &d);
                    let ratio = if eta_norm > 0.0 { norm(&d) / eta_norm } else { 0.0 };
                    let s = scale(&d, acc.alpha);
                    let mem = Memory { eta: res.eta, d, s };
                    (
                        acc.x_new,
                        Some(acc.alpha),
                        StepKind::Cg,
                        Some(eta_dot_d),
                        Some(ratio),
                        mem,
                    )
                }
                None => {
                    let s = sub(&res.x_plus, &cur.x);
                    let mem = Memory {
                        d: steepest(&res.eta),
                        eta: res.eta,
                        s,
                    };
                    (res.x_plus, None, StepKind::ProxSwitch, None, None, mem)
                }
            };
            memory = Some(mem);
            let next = Point::at(problem, x_new, &mut counts)?;
            let row = TraceRow {
                k,
                f: cur.f(),
                eta_norm,
                mu,
                alpha,
                kind,
                evals: counts.since(&before),
                eta_dot_d,
                direction_ratio: ratio,
            };
            Ok(Outcome::Step(next, row))
        };

        match iteration() {
            Ok(Outcome::Step(next, row)) => {
                rec.push(row, Some(&next.x));
                cur = next;
            }
            Ok(Outcome::Stop(status)) => {
                rec.push(stop_row(k, cur.f(), eta_norm, mu, counts.since(&before)), None);
                let f = cur.f();
                return Ok(rec.finish(status, cur.x, f, eta_norm, None));
            }
            Err(e) => {
                let f = cur.f();
                return Ok(rec.finish(Status::OracleError, cur.x, f, eta_norm, Some(e)));
            }
        }
    }
    unreachable!("iteration loop exits by return")
}

fn stop_row(k: usize, f: f64, eta_norm: f64, mu: f64, evals: EvalCounts) -> TraceRow {
    TraceRow {
        k,
        f,
        eta_norm,
        mu,
        alpha: None,
        kind: StepKind::Stop,
        evals,
        eta_dot_d: None,
        direction_ratio: None,
    }
}

/// Proximal gradient: `x_{k+1} = prox_{mu_k h}(x_k - mu_k grad g(x_k))` with backtracked `mu_k`.
///
/// Stops once `||x_{k+1} - x_k|| / max(1, ||x_k||) <= tol`, returning `x_{k+1}`.
pub fn solve_pgm(problem: &CompositeProblem, x0: &[f64], config: &SolverConfig) -> Result<SolveReport> {
    let mut mu = check_start(problem, x0, config)?;
    let mut rec = Recorder::new(config, x0);
    let mut counts = EvalCounts::default();
    let mut cur = match Point::at(problem, x0.to_vec(), &mut counts) {
        Ok(p) => p,
        Err(e) => return Ok(rec.finish(Status::OracleError, x0.to_vec(), f64::NAN, f64::NAN, Some(e))),
    };
    let mut eta_norm = f64::NAN;

    for k in 0.. {
        let before = counts;
        if k >= config.max_iter {
            rec.push(stop_row(k, cur.f(), eta_norm, mu, counts.since(&before)), None);
            let f = cur.f();
            return Ok(rec.finish(Status::MaxIter, cur.x, f, eta_norm, None));
        }
        let mut iteration = || -> Result<(Point, TraceRow, bool)> {
            mu = next_mu(problem, mu, k, config)?;
            let res = backtrack_mu(problem, &cur.x, cur.g, &cur.grad, mu, config.kappa, &mut counts)?;
            mu = res.mu;
            eta_norm = norm(&res.eta);
            let done = rel_disp(&res.x_plus, &cur.x) <= config.tol;
            let next = Point::at(problem, res.x_plus, &mut counts)?;
            let row = TraceRow {
                k,
                f: cur.f(),
                eta_norm,
                mu,
                alpha: None,
                kind: StepKind::Prox,
                evals: counts.since(&before),
                eta_dot_d: None,
                direction_ratio: None,
            };
            Ok((next, row, done))
        };
        match iteration() {
            Ok((next, row, done)) => {
                rec.push(row, Some(&next.x));
                cur = next;
                if done {
                    rec.push(stop_row(k + 1, cur.f(), eta_norm, mu, EvalCounts::default()), None);
                    let f = cur.f();
                    return Ok(rec.finish(Status::Converged, cur.x, f, eta_norm, None));
                }
            }
            Err(e) => {
                let f = cur.f();
                return Ok(rec.finish(Status::OracleError, cur.x, f, eta_norm, Some(e)));
            }
        }
    }
    unreachable!("iteration loop exits by return")
}

/// Accelerated proximal gradient (FISTA momentum) restarted whenever the
/// objective would increase; convex `h` only.
pub fn solve_apg(problem: &CompositeProblem, x0: &[f64], config: &SolverConfig) -> Result<SolveReport> {
    let rho = problem.rho();
    if rho > 0.0 {
        return Err(Error::NotConvex(rho));
    }
    let mut mu = check_start(problem, x0, config)?;
    let mut rec = Recorder::new(config, x0);
    let mut counts = EvalCounts::default();
    let mut cur = match Point::at(problem, x0.to_vec(), &mut counts) {
        Ok(p) => p,
        Err(e) => return Ok(rec.finish(Status::OracleError, x0.to_vec(), f64::NAN, f64::NAN, Some(e))),
    };
    // extrapolated point; `None` means it coincides with `cur`
    let mut y: Option<Point> = None;
    let mut t = 1.0f64;
    let mut eta_norm = f64::NAN;

    for k in 0.. {
        let before = counts;
        if k >= config.max_iter {
            rec.push(stop_row(k, cur.f(), eta_norm, mu, counts.since(&before)), None);
            let f = cur.f();
            return Ok(rec.finish(Status::MaxIter, cur.x, f, eta_norm, None));
        }
        let mut iteration = || -> Result<(Point, Option<Point>, TraceRow, bool)> {
            mu = next_mu(problem, mu, k, config)?;
            let mut kind = StepKind::Momentum;
            let mut next = None;
            if let Some(yp) = &y {
                let res = backtrack_mu(problem, &yp.x, yp.g, &yp.grad, mu, config.kappa, &mut counts)?;
                mu = res.mu;
                let cand = Point::at(problem, res.x_plus, &mut counts)?;
                if cand.f() <= cur.f() {
                    eta_norm = dist(&cand.x, &yp.x) / mu;
                    next = Some(cand);
                } else {
                    kind = StepKind::Restart;
                }
            }
            let next = match next {
                Some(p) => p,
                None => {
                    if kind == StepKind::Restart {
                        t = 1.0;
                    } else {
                        kind = StepKind::Prox;
                    }
                    let res = backtrack_mu(problem, &cur.x, cur.g, &cur.grad, mu, config.kappa, &mut counts)?;
                    mu = res.mu;
                    eta_norm = norm(&res.eta);
                    Point::at(problem, res.x_plus, &mut counts)?
                }
            };
            let done = rel_disp(&next.x, &cur.x) <= config.tol;
            let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
            let momentum = (t - 1.0) / t_next;
            t = t_next;
            let y_next = if momentum > 0.0 {
                let yx = axpy(&next.x, momentum, &sub(&next.x, &cur.x));
                Some(Point::at(problem, yx, &mut counts)?)
            } else {
                None
            };
            let row = TraceRow {
                k,
                f: cur.f(),
                eta_norm,
                mu,
                alpha: None,
                kind,
                evals: counts.since(&before),
                eta_dot_d: None,
                direction_ratio: None,
            };
            Ok((next, y_next, row, done))
        };
        match iteration() {
            Ok((next, y_next, row, done)) => {
                rec.push(row, Some(&next.x));
                cur = next;
                y = y_next;
                if done {
                    rec.push(stop_row(k + 1, cur.f(), eta_norm, mu, EvalCounts::default()), None);
                    let f = cur.f();
                    return Ok(rec.finish(Status::Converged, cur.x, f, eta_norm, None));
                }
            }
            Err(e) => {
                let f = cur.f();
                return Ok(rec.finish(Status::OracleError, cur.x, f, eta_norm, Some(e)));
            }
        }
    }
    unreachable!("iteration loop exits by return")
}
