//! Two-stage step selection: a trial-step scan on the composite model decrease,
//! then Armijo backtracking (plain or quadratic-interpolation scaling).

use crate::composite::{CompositeProblem, EvalCounts};
use crate::error::{Error, Result};
use crate::numerics::{axpy, dot, norm_sq};

/// Clamp range of the interpolated scaling factor.
pub const INTERP_SCALE_MIN: f64 = 1e-8;
pub const INTERP_SCALE_MAX: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSearchConfig {
    /// Armijo constant `delta` in (0,1).
    pub delta: f64,
    /// Trial-condition constant `T > delta`.
    pub trial_decrease: f64,
    /// Trial-step ratio `theta`.
    pub theta: f64,
    /// Trial threshold `t_bar`: candidates must exceed it.
    pub t_min: f64,
    /// Armijo backtracking ratio `tau`.
    pub tau: f64,
    pub interpolate: bool,
    pub alpha_floor: f64,
    pub max_backtracks: usize,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        Self {
            delta: 1e-4,
            trial_decrease: 1e-3,
            theta: 0.5,
            t_min: 2f64.powi(-20),
            tau: 0.5,
            interpolate: false,
            alpha_floor: 2f64.powi(-30),
            max_backtracks: 60,
        }
    }
}

impl LineSearchConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = |v: f64| v > 0.0 && v < 1.0;
        let checks = [
            (unit(self.delta), "delta must lie in (0,1)"),
            (self.trial_decrease > self.delta, "T must exceed delta"),
            (unit(self.theta), "theta must lie in (0,1)"),
            (unit(self.t_min), "t_bar must lie in (0,1)"),
            (unit(self.tau), "tau must lie in (0,1)"),
            (self.alpha_floor > 0.0, "alpha floor must be positive"),
        ];
        match checks.iter().find(|(ok, _)| !ok) {
            Some((_, msg)) => Err(Error::InvalidParameter((*msg).into())),
            None => Ok(()),
        }
    }
}

/// Quantities at the current iterate shared by both stages.
#[derive(Debug, Clone, Copy)]
pub struct SearchPoint<'a> {
    pub problem: &'a CompositeProblem,
    pub x: &'a [f64],
    pub d: &'a [f64],
    /// `grad g(x)^T d`
    pub grad_dot_d: f64,
    pub h_x: f64,
    pub f_x: f64,
    /// `||eta||^2`
    pub eta_sq: f64,
}

impl<'a> SearchPoint<'a> {
    pub fn new(
        problem: &'a CompositeProblem,
        x: &'a [f64],
        d: &'a [f64],
        grad: &[f64],
        eta: &[f64],
        g_x: f64,
        h_x: f64,
    ) -> Self {
        Self {
            problem,
            x,
            d,
            grad_dot_d: dot(grad, d),
            h_x,
            f_x: g_x + h_x,
            eta_sq: norm_sq(eta),
        }
    }

    /// `t grad^T d + h(x + t d) - h(x) <= -t T ||eta||^2`
    pub fn trial_condition(&self, t: f64, big_t: f64, counts: &mut EvalCounts) -> bool {
        let h_t = self.problem.h(&axpy(self.x, t, self.d), counts);
        self.trial_holds(t, h_t, big_t)
    }

    fn trial_holds(&self, t: f64, h_t: f64, big_t: f64) -> bool {
        t * self.grad_dot_d + h_t - self.h_x <= -t * big_t * self.eta_sq
    }

    fn armijo_holds(&self, alpha: f64, f_alpha: f64, delta: f64) -> bool {
        f_alpha <= self.f_x - delta * alpha * self.eta_sq
    }

    /// `(g, h)` at `x + alpha d`; a non-finite `g` is reported as `NaN`.
    fn eval(&self, alpha: f64, counts: &mut EvalCounts) -> Result<(f64, f64, Vec<f64>)> {
        let y = axpy(self.x, alpha, self.d);
        let g = match self.problem.g(&y, counts) {
            Ok(v) => v,
            Err(Error::NonFinite(_)) => f64::NAN,
            Err(e) => return Err(e),
        };
        let h = self.problem.h(&y, counts);
        Ok((g, h, y))
    }

    /// `phi'(0) = grad^T d + h'(x; d)`
    pub fn slope(&self) -> Result<f64> {
        Ok(self.grad_dot_d + self.problem.nonsmooth().dirderiv(self.x, self.d)?)
    }
}

/// Interpolated scaling `-phi'(0) a / (2 (phi(a) - phi(0) - phi'(0) a))`, clamped.
///
/// A non-positive curvature estimate yields `None`.
pub fn interpolation_scale(phi0: f64, slope0: f64, alpha: f64, phi_alpha: f64) -> Option<f64> {
    let curvature = phi_alpha - phi0 - slope0 * alpha;
    let raw = -slope0 * alpha / (2.0 * curvature);
    if curvature > 0.0 && raw.is_finite() {
        Some(raw.clamp(INTERP_SCALE_MIN, INTERP_SCALE_MAX))
    } else {
        None
    }
}

/// Accepted step and the objective at the new point.
#[derive(Debug, Clone, PartialEq)]
pub struct Accepted {
    pub alpha: f64,
    pub x_new: Vec<f64>,
    pub f_new: f64,
    pub g_new: f64,
    pub evals: usize,
}

/// Largest `t` in `{1, theta, theta^2, ...}` above `t_bar` satisfying the trial condition.
///
/// Returns the step (if any) and the number of candidates evaluated.
pub fn trial_scan(point: &SearchPoint<'_>, config: &LineSearchConfig, counts: &mut EvalCounts) -> (Option<f64>, usize) {
    let mut t = 1.0;
    let mut evals = 0;
    while t > config.t_min {
        evals += 1;
        if point.trial_condition(t, config.trial_decrease, counts) {
            return (Some(t), evals);
        }
        t *= config.theta;
    }
    (None, evals)
}

/// Backtracking from `alpha_init` until `f(x + alpha d) <= f(x) - delta alpha ||eta||^2`.
///
/// With `require_trial`, each candidate must also pass the trial condition at `t = alpha`.
fn backtrack(
    point: &SearchPoint<'_>,
    alpha_init: f64,
    config: &LineSearchConfig,
    require_trial: bool,
    counts: &mut EvalCounts,
) -> Result<Option<Accepted>> {
    let slope = if config.interpolate { point.slope()? } else { 0.0 };
    let mut alpha = alpha_init;
    let mut evals = 0;
    while alpha >= config.alpha_floor && evals <= config.max_backtracks {
        evals += 1;
        let (g, h, y) = point.eval(alpha, counts)?;
        let f = g + h;
        let armijo = f.is_finite() && point.armijo_holds(alpha, f, config.delta);
        if armijo && (!require_trial || point.trial_holds(alpha, h, config.trial_decrease)) {
            return Ok(Some(Accepted {
                alpha,
                x_new: y,
                f_new: f,
                g_new: g,
                evals,
            }));
        }
        let factor = if config.interpolate && f.is_finite() {
            interpolation_scale(point.f_x, slope, alpha, f).unwrap_or(config.tau)
        } else {
            config.tau
        };
        alpha *= factor;
    }
    Ok(None)
}

/// Armijo stage for a convex nonsmooth term.
pub fn armijo(
    point: &SearchPoint<'_>,
    alpha_init: f64,
    config: &LineSearchConfig,
    counts: &mut EvalCounts,
) -> Result<Option<Accepted>> {
    backtrack(point, alpha_init, config, false, counts)
}

/// Armijo stage for a weakly convex term: candidates must satisfy both conditions.
pub fn weakly_convex_search(
    point: &SearchPoint<'_>,
    alpha_init: f64,
    config: &LineSearchConfig,
    counts: &mut EvalCounts,
) -> Result<Option<Accepted>> {
    backtrack(point, alpha_init, config, true, counts)
}
