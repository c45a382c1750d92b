//! Three-term Hestenes-Stiefel direction driven by the forward-backward residual.

use crate::error::{check_dim, Error, Result};
use crate::numerics::{dot, norm_sq, sub};

/// Smallest admissible magnitude of `d_prev^T z`.
pub const MIN_DENOMINATOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy)]
pub struct DirectionInputs<'a> {
    pub eta: &'a [f64],
    pub eta_prev: &'a [f64],
    pub d_prev: &'a [f64],
    /// `x_k - x_{k-1}`
    pub s_prev: &'a [f64],
    pub nu_hat: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    pub d: Vec<f64>,
    pub y: Vec<f64>,
    pub nu: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Shift `nu` making `s^T (y + nu s) >= nu_hat ||s||^2`.
pub fn select_nu(s_prev: &[f64], y_prev: &[f64], nu_hat: f64) -> Result<f64> {
    let ss = norm_sq(s_prev);
    if ss == 0.0 {
        return Err(Error::ZeroStep);
    }
    let sy = dot(s_prev, y_prev);
    if sy >= nu_hat * ss {
        Ok(0.0)
    } else {
        Ok((-sy / ss).max(0.0) + nu_hat)
    }
}

/// `d = -eta + beta d_prev - gamma y` with `beta = eta^T y / d_prev^T z`, `gamma = eta^T d_prev / d_prev^T z`.
///
/// Returns [`Error::DegenerateDenominator`] when `|d_prev^T z|` underflows; callers
/// then fall back to `-eta`.
pub fn compute_direction(inputs: &DirectionInputs<'_>) -> Result<Direction> {
    let n = inputs.eta.len();
    check_dim(n, inputs.eta_prev.len())?;
    check_dim(n, inputs.d_prev.len())?;
    check_dim(n, inputs.s_prev.len())?;
    let y = sub(inputs.eta, inputs.eta_prev);
    let nu = select_nu(inputs.s_prev, &y, inputs.nu_hat)?;
    let denom = if nu == 0.0 {
        dot(inputs.d_prev, &y)
    } else {
        inputs
            .d_prev
            .iter()
            .zip(&y)
            .zip(inputs.s_prev)
            .map(|((dp, yi), si)| dp * (yi + nu * si))
            .sum()
    };
    if denom.is_nan() || denom.abs() < MIN_DENOMINATOR {
        return Err(Error::DegenerateDenominator);
    }
    let beta = dot(inputs.eta, &y) / denom;
    let gamma = dot(inputs.eta, inputs.d_prev) / denom;
    let d = inputs
        .eta
        .iter()
        .zip(inputs.d_prev)
        .zip(&y)
        .map(|((e, dp), yi)| -e + beta * dp - gamma * yi)
        .collect();
    Ok(Direction { d, y, nu, beta, gamma })
}

/// First-iteration direction `-eta`.
pub fn steepest(eta: &[f64]) -> Vec<f64> {
    eta.iter().map(|e| -e).collect()
}
