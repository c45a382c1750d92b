use crate::error::{Error, Result};
use crate::nonsmooth::ProxOracle;
use crate::smooth::SmoothOracle;

/// Oracle call counters accumulated by solver components.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounts {
    /// Smooth value or gradient evaluations.
    pub g: usize,
    /// Nonsmooth value evaluations.
    pub h: usize,
    pub prox: usize,
}

impl EvalCounts {
    pub fn since(&self, earlier: &EvalCounts) -> EvalCounts {
        EvalCounts {
            g: self.g - earlier.g,
            h: self.h - earlier.h,
            prox: self.prox - earlier.prox,
        }
    }
}

/// `f(x) = g(x) + h(x)` with `g` smooth and `h` prox-friendly.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeProblem {
    smooth: SmoothOracle,
    nonsmooth: ProxOracle,
}

impl CompositeProblem {
    pub fn new(smooth: SmoothOracle, nonsmooth: ProxOracle) -> Self {
        Self { smooth, nonsmooth }
    }

    pub fn smooth(&self) -> &SmoothOracle {
        &self.smooth
    }

    pub fn nonsmooth(&self) -> &ProxOracle {
        &self.nonsmooth
    }

    pub fn dim(&self) -> usize {
        self.smooth.dim()
    }

    pub fn rho(&self) -> f64 {
        self.nonsmooth.rho()
    }

    pub fn g(&self, x: &[f64], counts: &mut EvalCounts) -> Result<f64> {
        counts.g += 1;
        self.smooth.value(x)
    }

    pub fn g_and_grad(&self, x: &[f64], counts: &mut EvalCounts) -> Result<(f64, Vec<f64>)> {
        counts.g += 1;
        self.smooth.value_and_grad(x)
    }

    pub fn h(&self, x: &[f64], counts: &mut EvalCounts) -> f64 {
        counts.h += 1;
        self.nonsmooth.value(x)
    }

    pub fn prox(&self, v: &[f64], mu: f64, counts: &mut EvalCounts) -> Result<Vec<f64>> {
        counts.prox += 1;
        self.nonsmooth.prox(v, mu)
    }

    /// `f(x)`; a non-finite value is reported as an error.
    pub fn value(&self, x: &[f64], counts: &mut EvalCounts) -> Result<f64> {
        let f = self.g(x, counts)? + self.h(x, counts);
        if f.is_finite() {
            Ok(f)
        } else {
            Err(Error::NonFinite("objective"))
        }
    }
}
