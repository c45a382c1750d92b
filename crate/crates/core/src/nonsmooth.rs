//! Nonsmooth terms `h`: value, proximal mapping, directional derivative and
//! weak-convexity modulus.

use crate::error::{check_dim, Error, Result};

/// Minimax concave penalty parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McpParams {
    lambda: f64,
    c: f64,
}

impl McpParams {
    pub fn new(lambda: f64, c: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite() && c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mcp needs lambda > 0 and c > 0, got lambda={lambda}, c={c}"
            )));
        }
        Ok(Self { lambda, c })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    fn value(&self, x: f64) -> f64 {
        let (l, c) = (self.lambda, self.c);
        let a = x.abs();
        if a <= c * l {
            l * a - x * x / (2.0 * c)
        } else {
            c * l * l / 2.0
        }
    }

    /// Firm thresholding, valid for `mu < c`.
    fn prox(&self, v: f64, mu: f64) -> f64 {
        let (l, c) = (self.lambda, self.c);
        let a = v.abs();
        if a <= mu * l {
            0.0
        } else if a <= c * l {
            v.signum() * (a - mu * l) / (1.0 - mu / c)
        } else {
            v
        }
    }

    fn dirderiv(&self, x: f64, d: f64) -> f64 {
        let (l, c) = (self.lambda, self.c);
        let a = x.abs();
        if x == 0.0 {
            l * d.abs()
        } else if a < c * l {
            (l * x.signum() - x / c) * d
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProxOracle {
    Zero,
    L1 { lambda: f64 },
    Mcp(McpParams),
}

pub fn soft_threshold(v: f64, thresh: f64) -> f64 {
    v.signum() * (v.abs() - thresh).max(0.0)
}

impl ProxOracle {
    pub fn l1(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "l1 weight must be positive, got {lambda}"
            )));
        }
        Ok(Self::L1 { lambda })
    }

    pub fn mcp(lambda: f64, c: f64) -> Result<Self> {
        McpParams::new(lambda, c).map(Self::Mcp)
    }

    /// Weak-convexity modulus: `h + rho/2 ||.||^2` is convex.
    pub fn rho(&self) -> f64 {
        match self {
            Self::Zero | Self::L1 { .. } => 0.0,
            Self::Mcp(p) => 1.0 / p.c,
        }
    }

    pub fn is_convex(&self) -> bool {
        self.rho() == 0.0
    }

    /// Largest admissible prox step (exclusive), `1/rho`.
    pub fn step_limit(&self) -> f64 {
        let rho = self.rho();
        if rho > 0.0 {
            1.0 / rho
        } else {
            f64::INFINITY
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::L1 { lambda } => lambda * x.iter().map(|v| v.abs()).sum::<f64>(),
            Self::Mcp(p) => x.iter().map(|&v| p.value(v)).sum(),
        }
    }

    /// `argmin_u h(u) + ||u - v||^2 / (2 mu)`, componentwise.
    pub fn prox(&self, v: &[f64], mu: f64) -> Result<Vec<f64>> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::InvalidParameter(format!("prox step must be positive, got {mu}")));
        }
        Ok(match self {
            Self::Zero => v.to_vec(),
            Self::L1 { lambda } => v.iter().map(|&vi| soft_threshold(vi, mu * lambda)).collect(),
            Self::Mcp(p) => {
                if mu >= p.c {
                    return Err(Error::ProxStepTooLarge { mu, limit: p.c });
                }
                v.iter().map(|&vi| p.prox(vi, mu)).collect()
            }
        })
    }

    /// One-sided directional derivative `h'(x; d)`.
    pub fn dirderiv(&self, x: &[f64], d: &[f64]) -> Result<f64> {
        check_dim(x.len(), d.len())?;
        Ok(match self {
            Self::Zero => 0.0,
            Self::L1 { lambda } => {
                lambda
                    * x.iter()
                        .zip(d)
                        .map(|(&xi, &di)| if xi != 0.0 { xi.signum() * di } else { di.abs() })
                        .sum::<f64>()
            }
            Self::Mcp(p) => x.iter().zip(d).map(|(&xi, &di)| p.dirderiv(xi, di)).sum(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force 1-D prox: grid search over `[-3|v|-1, 3|v|+1]`.
    fn grid_prox(h: &ProxOracle, v: f64, mu: f64, step: f64) -> f64 {
        let r = 3.0 * v.abs() + 1.0;
        let n = (2.0 * r / step).ceil() as usize;
        let mut best = (f64::INFINITY, 0.0);
        for i in 0..=n {
            let u = -r + i as f64 * step;
            let obj = h.value(&[u]) + (u - v).powi(2) / (2.0 * mu);
            if obj < best.0 {
                best = (obj, u);
            }
        }
        best.1
    }

    #[test]
    fn values() {
        assert_eq!(ProxOracle::l1(0.5).unwrap().value(&[1.0, -2.0]), 1.5);
        let m = ProxOracle::mcp(1.0, 2.0).unwrap();
        assert_eq!(m.value(&[3.0]), 1.0);
        assert_eq!(m.value(&[1.0]), 0.75);
        assert_eq!(ProxOracle::Zero.value(&[5.0]), 0.0);
    }

    #[test]
    fn rho_per_variant() {
        assert_eq!(ProxOracle::Zero.rho(), 0.0);
        assert_eq!(ProxOracle::l1(1.0).unwrap().rho(), 0.0);
        assert_eq!(ProxOracle::mcp(1.0, 10.0).unwrap().rho(), 0.1);
        assert_eq!(ProxOracle::mcp(1.0, 0.1).unwrap().rho(), 10.0);
    }

    #[test]
    fn l1_prox_examples() {
        let h = ProxOracle::l1(0.6).unwrap();
        assert_eq!(h.prox(&[0.0], 0.5).unwrap(), vec![0.0]);
        let p = h.prox(&[1.0, -0.2], 0.5).unwrap();
        assert!((p[0] - 0.7).abs() < 1e-15 && p[1] == 0.0);
        for (v, want) in [(1.0, 0.7), (-0.2, 0.0)] {
            assert!((grid_prox(&h, v, 0.5, 1e-5) - want).abs() < 1e-4);
        }
    }

    #[test]
    fn mcp_prox_examples() {
        let h = ProxOracle::mcp(1.0, 2.0).unwrap();
        let p = h.prox(&[0.25, 1.0, 3.0], 0.5).unwrap();
        let want = [0.0, 2.0 / 3.0, 3.0];
        for ((a, b), v) in p.iter().zip(want).zip([0.25, 1.0, 3.0]) {
            assert!((a - b).abs() < 1e-15);
            assert!((grid_prox(&h, v, 0.5, 1e-5) - b).abs() < 1e-4);
        }
    }

    #[test]
    fn mcp_prox_rejects_large_step() {
        let h = ProxOracle::mcp(1.0, 2.0).unwrap();
        assert_eq!(
            h.prox(&[1.0], 2.0),
            Err(Error::ProxStepTooLarge { mu: 2.0, limit: 2.0 })
        );
        assert!(h.prox(&[1.0], 3.0).is_err());
    }

    #[test]
    fn directional_derivatives() {
        let h = ProxOracle::l1(0.5).unwrap();
        assert_eq!(h.dirderiv(&[1.0, 0.0], &[-1.0, 2.0]).unwrap(), 0.5);
        assert_eq!(ProxOracle::Zero.dirderiv(&[1.0], &[3.0]).unwrap(), 0.0);
        let m = ProxOracle::mcp(1.0, 2.0).unwrap();
        assert_eq!(m.dirderiv(&[2.5], &[7.0]).unwrap(), 0.0);
        // breakpoint |x| = c lambda uses the plateau branch
        assert_eq!(m.dirderiv(&[2.0], &[7.0]).unwrap(), 0.0);
        assert_eq!(m.dirderiv(&[0.0], &[-3.0]).unwrap(), 3.0);
        assert!((m.dirderiv(&[1.0], &[1.0]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constructors_validate() {
        assert!(ProxOracle::l1(0.0).is_err());
        assert!(ProxOracle::mcp(1.0, 0.0).is_err());
        assert!(ProxOracle::mcp(-1.0, 1.0).is_err());
    }
}
