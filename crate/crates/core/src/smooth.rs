//! Smooth terms `g` with value and gradient oracles.

use crate::error::{check_dim, Error, Result};
use crate::numerics::{all_finite, sub, LinearOperator};

/// Default Student's t scale parameter.
pub const DEFAULT_STUDENT_NU: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub enum SmoothOracle {
    /// `||A x - b||^2`
    LeastSquares { op: LinearOperator, b: Vec<f64> },
    /// `sum_i log(1 + exp(-b_i a_i^T x))`, rows `a_i` of `op`, labels in `{-1, +1}`.
    Logistic { op: LinearOperator, labels: Vec<f64> },
    /// `sum_i log(1 + r_i^2 / nu)` with `r = A x - b`.
    StudentT { op: LinearOperator, b: Vec<f64>, nu: f64 },
}

/// `log(1 + exp(z))` without overflow for large `|z|`.
pub fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Logistic function `1 / (1 + exp(-z))`.
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

impl SmoothOracle {
    pub fn least_squares(op: impl Into<LinearOperator>, b: Vec<f64>) -> Result<Self> {
        let op = op.into();
        check_dim(op.rows(), b.len())?;
        if !all_finite(&b) {
            return Err(Error::NonFinite("least-squares target"));
        }
        Ok(Self::LeastSquares { op, b })
    }

    pub fn logistic(op: impl Into<LinearOperator>, labels: Vec<f64>) -> Result<Self> {
        let op = op.into();
        check_dim(op.rows(), labels.len())?;
        if labels.iter().any(|&l| l != 1.0 && l != -1.0) {
            return Err(Error::InvalidParameter("logistic labels must be +1 or -1".into()));
        }
        Ok(Self::Logistic { op, labels })
    }

    pub fn student_t(op: impl Into<LinearOperator>, b: Vec<f64>, nu: f64) -> Result<Self> {
        let op = op.into();
        check_dim(op.rows(), b.len())?;
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "student-t nu must be positive, got {nu}"
            )));
        }
        if !all_finite(&b) {
            return Err(Error::NonFinite("student-t target"));
        }
        Ok(Self::StudentT { op, b, nu })
    }

    pub fn operator(&self) -> &LinearOperator {
        match self {
            Self::LeastSquares { op, .. } | Self::Logistic { op, .. } | Self::StudentT { op, .. } => op,
        }
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.operator().cols()
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        check_dim(self.dim(), x.len())?;
        if !all_finite(x) {
            return Err(Error::NonFinite("smooth oracle input"));
        }
        Ok(())
    }

    pub fn value(&self, x: &[f64]) -> Result<f64> {
        self.check_input(x)?;
        let ax = self.operator().matvec(x)?;
        Ok(self.value_from_product(&ax))
    }

    pub fn grad(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.value_and_grad(x).map(|(_, g)| g)
    }

    /// Value and gradient sharing one forward product.
    pub fn value_and_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.check_input(x)?;
        let ax = self.operator().matvec(x)?;
        let value = self.value_from_product(&ax);
        let weights: Vec<f64> = match self {
            Self::LeastSquares { b, .. } => sub(&ax, b).into_iter().map(|r| 2.0 * r).collect(),
            Self::Logistic { labels, .. } => ax.iter().zip(labels).map(|(z, l)| -l * sigmoid(-l * z)).collect(),
            Self::StudentT { b, nu, .. } => ax
                .iter()
                .zip(b)
                .map(|(z, bi)| {
                    let r = z - bi;
                    2.0 * r / (nu + r * r)
                })
                .collect(),
        };
        let grad = self.operator().matvec_t(&weights)?;
        Ok((value, grad))
    }

    fn value_from_product(&self, ax: &[f64]) -> f64 {
        match self {
            Self::LeastSquares { b, .. } => ax.iter().zip(b).map(|(z, bi)| (z - bi).powi(2)).sum(),
            Self::Logistic { labels, .. } => ax.iter().zip(labels).map(|(z, l)| softplus(-l * z)).sum(),
            Self::StudentT { b, nu, .. } => ax.iter().zip(b).map(|(z, bi)| ((z - bi).powi(2) / nu).ln_1p()).sum(),
        }
    }
}
