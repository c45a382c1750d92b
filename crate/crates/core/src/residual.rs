//! Forward-backward residual and the step-size backtracking that enforces the
//! quadratic upper-model condition on `g`.

use crate::composite::{CompositeProblem, EvalCounts};
use crate::error::{Error, Result};
use crate::nonsmooth::ProxOracle;
use crate::numerics::{axpy, dot, norm_sq, sub};

/// Maximum number of step reductions before the smooth oracle is deemed inconsistent.
pub const MAX_MU_REDUCTIONS: usize = 64;

/// Relative slack on the model condition absorbing roundoff in `g`.
pub const MODEL_SLACK: f64 = 1e-12;

/// Fraction of `1/rho` used when a step must be pulled inside the weakly convex range.
pub const WEAK_STEP_SHRINK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct FbrResult {
    /// `prox_{mu h}(x - mu grad g(x))`
    pub x_plus: Vec<f64>,
    /// `-(x_plus - x) / mu`
    pub eta: Vec<f64>,
    pub mu: f64,
    /// `g(x_plus)` when computed by [`backtrack_mu`], `NaN` otherwise.
    pub g_plus: f64,
}

fn check_step(problem: &CompositeProblem, mu: f64) -> Result<()> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {mu}")));
    }
    let limit = problem.nonsmooth().step_limit();
    if mu >= limit {
        return Err(Error::ProxStepTooLarge { mu, limit });
    }
    Ok(())
}

/// Residual at `x` for a precomputed gradient.
pub fn fbr_with_grad(
    problem: &CompositeProblem,
    x: &[f64],
    grad: &[f64],
    mu: f64,
    counts: &mut EvalCounts,
) -> Result<FbrResult> {
    check_step(problem, mu)?;
    let forward = axpy(x, -mu, grad);
    if matches!(problem.nonsmooth(), ProxOracle::Zero) {
        // The residual is exactly the gradient; avoid the rounding of (x - mu g - x) / mu.
        return Ok(FbrResult {
            x_plus: forward,
            eta: grad.to_vec(),
            mu,
            g_plus: f64::NAN,
        });
    }
    let x_plus = problem.prox(&forward, mu, counts)?;
    let eta = x.iter().zip(&x_plus).map(|(xi, pi)| -(pi - xi) / mu).collect();
    Ok(FbrResult {
        x_plus,
        eta,
        mu,
        g_plus: f64::NAN,
    })
}

/// `eta_mu(x)` and the forward-backward point.
pub fn fbr(problem: &CompositeProblem, x: &[f64], mu: f64) -> Result<FbrResult> {
    let mut counts = EvalCounts::default();
    let (_, grad) = problem.g_and_grad(x, &mut counts)?;
    fbr_with_grad(problem, x, &grad, mu, &mut counts)
}

/// Whether `g(x+) <= g(x) + grad^T (x+ - x) + ||x+ - x||^2 / (2 mu)` (up to [`MODEL_SLACK`]).
pub fn model_condition(g_x: f64, grad: &[f64], x: &[f64], x_plus: &[f64], g_plus: f64, mu: f64) -> bool {
    let step = sub(x_plus, x);
    let model = g_x + dot(grad, &step) + norm_sq(&step) / (2.0 * mu);
    g_plus.is_finite() && g_plus <= model + MODEL_SLACK * (1.0 + g_x.abs())
}

/// Largest `mu` in `{mu_prev, mu_prev kappa, mu_prev kappa^2, ...}` satisfying the model condition.
pub fn backtrack_mu(
    problem: &CompositeProblem,
    x: &[f64],
    g_x: f64,
    grad: &[f64],
    mu_prev: f64,
    kappa: f64,
    counts: &mut EvalCounts,
) -> Result<FbrResult> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::InvalidParameter(format!("kappa must lie in (0,1), got {kappa}")));
    }
    let mut mu = mu_prev;
    for _ in 0..=MAX_MU_REDUCTIONS {
        let mut res = fbr_with_grad(problem, x, grad, mu, counts)?;
        let g_plus = match problem.g(&res.x_plus, counts) {
            Ok(v) => v,
            Err(Error::NonFinite(_)) => f64::NAN,
            Err(e) => return Err(e),
        };
        if model_condition(g_x, grad, x, &res.x_plus, g_plus, mu) {
            res.g_plus = g_plus;
            return Ok(res);
        }
        mu *= kappa;
    }
    Err(Error::BacktrackExhausted(MAX_MU_REDUCTIONS))
}

/// `mu / factor`, kept strictly below `limit = 1/rho` when the term is weakly convex.
pub fn increase_mu(mu: f64, factor: f64, limit: f64) -> Result<f64> {
    if !(factor > 0.0 && factor < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "increase factor must lie in (0,1), got {factor}"
        )));
    }
    let grown = mu / factor;
    if grown < limit {
        Ok(grown)
    } else {
        Ok((limit * (1.0 - WEAK_STEP_SHRINK)).max(mu))
    }
}

/// Initial step respecting `mu < 1/rho`: requests at or above the limit fall back to `0.99/rho`.
pub fn initial_mu(requested: f64, rho: f64) -> f64 {
    if rho > 0.0 && requested >= 1.0 / rho {
        0.99 / rho
    } else {
        requested
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{norm, DenseMatrix};
    use crate::smooth::SmoothOracle;

    fn scaled_identity(n: usize, s: f64, b: Vec<f64>) -> SmoothOracle {
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = s;
        }
        SmoothOracle::least_squares(DenseMatrix::new(n, n, a).unwrap(), b).unwrap()
    }

    #[test]
    fn zero_term_residual_is_gradient() {
        let g = scaled_identity(2, 1.3, vec![0.4, -2.0]);
        let p = CompositeProblem::new(g.clone(), ProxOracle::Zero);
        let x = [0.7, 0.1];
        let r = fbr(&p, &x, 0.37).unwrap();
        assert_eq!(r.eta, g.grad(&x).unwrap());
    }

    #[test]
    fn hand_evaluated_l1_residual() {
        // g = ||x||^2, h = 0.5||x||_1, mu = 1, x = (1, 0):
        // forward = x - 2x = (-1, 0), prox = soft(., 0.5) = (-0.5, 0), eta = -(x+ - x) = (1.5, 0).
        let p = CompositeProblem::new(scaled_identity(2, 1.0, vec![0.0, 0.0]), ProxOracle::l1(0.5).unwrap());
        let r = fbr(&p, &[1.0, 0.0], 1.0).unwrap();
        assert_eq!(r.x_plus, vec![-0.5, 0.0]);
        assert_eq!(r.eta, vec![1.5, 0.0]);
    }

    #[test]
    fn fixed_point_has_zero_residual() {
        // minimizer of ||x - b||^2 + lambda ||x||_1 is soft(b, lambda/2)
        let b = vec![1.0, 0.1];
        let p = CompositeProblem::new(scaled_identity(2, 1.0, b), ProxOracle::l1(0.2).unwrap());
        let r = fbr(&p, &[0.9, 0.0], 0.3).unwrap();
        assert!(norm(&r.eta) <= 1e-8);
    }

    #[test]
    fn backtracking_finds_inverse_lipschitz() {
        // g = ||sqrt(2) x - b||^2 has L = 4
        let p = CompositeProblem::new(scaled_identity(1, 2f64.sqrt(), vec![1.0]), ProxOracle::Zero);
        let mut c = EvalCounts::default();
        let x = [3.0];
        let (gx, grad) = p.g_and_grad(&x, &mut c).unwrap();
        let r = backtrack_mu(&p, &x, gx, &grad, 1.0, 0.5, &mut c).unwrap();
        assert_eq!(r.mu, 0.25);
        let r = backtrack_mu(&p, &x, gx, &grad, 0.2, 0.5, &mut c).unwrap();
        assert_eq!(r.mu, 0.2);
    }

    #[test]
    fn stationary_point_keeps_step() {
        let p = CompositeProblem::new(scaled_identity(1, 2f64.sqrt(), vec![2f64.sqrt()]), ProxOracle::Zero);
        let mut c = EvalCounts::default();
        let x = [1.0];
        let (gx, grad) = p.g_and_grad(&x, &mut c).unwrap();
        let r = backtrack_mu(&p, &x, gx, &grad, 1.0, 0.5, &mut c).unwrap();
        assert_eq!(r.mu, 1.0);
    }

    #[test]
    fn increase_rules() {
        assert!((increase_mu(1.0, 0.9, f64::INFINITY).unwrap() - 1.0 / 0.9).abs() < 1e-15);
        let clamped = increase_mu(0.099, 0.9, 0.1).unwrap();
        assert_eq!(clamped, 0.1 * (1.0 - 1e-6));
        assert!(clamped < 0.1);
        assert!((increase_mu(0.05, 0.9, 0.1).unwrap() - 0.05 / 0.9).abs() < 1e-15);
        assert!(increase_mu(1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn weakly_convex_step_checks() {
        let p = CompositeProblem::new(scaled_identity(1, 1.0, vec![1.0]), ProxOracle::mcp(1.0, 0.1).unwrap());
        assert!(matches!(fbr(&p, &[0.0], 0.1), Err(Error::ProxStepTooLarge { .. })));
        assert_eq!(initial_mu(1.0, 10.0), 0.099);
        assert_eq!(initial_mu(0.05, 10.0), 0.05);
        assert_eq!(initial_mu(1.0, 0.0), 1.0);
    }
}
