//! TOML run configuration: `[suite]`, `[solver]` and `[[problem]]` sections.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use serde::Deserialize;

use crate::bench::ProblemSpec;
use crate::error::{Error, Result};
use crate::problems::parse_libsvm;
use crate::smooth::DEFAULT_STUDENT_NU;
use crate::solver::SolverConfig;

/// Solver parameter overrides shared by flags and the `[solver]` section.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverOverrides {
    /// Initial prox step mu_{-1}
    #[arg(long)]
    pub mu_init: Option<f64>,
    /// Prox step reduction ratio
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Conjugacy safeguard constant
    #[arg(long)]
    pub nu_hat: Option<f64>,
    /// Armijo constant
    #[arg(long)]
    pub delta: Option<f64>,
    /// Trial-condition constant (must exceed delta)
    #[arg(long)]
    pub big_t: Option<f64>,
    /// Trial step ratio
    #[arg(long)]
    pub theta: Option<f64>,
    /// Trial step threshold
    #[arg(long)]
    pub t_bar: Option<f64>,
    /// Armijo backtracking ratio
    #[arg(long)]
    pub tau: Option<f64>,
    /// Relative displacement tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Grow the prox step before each backtracking
    #[arg(long)]
    pub mu_increase: Option<bool>,
    #[arg(long)]
    pub increase_factor: Option<f64>,
}

impl SolverOverrides {
    /// Values set here win over `other`.
    pub fn or(&self, other: &SolverOverrides) -> SolverOverrides {
        SolverOverrides {
            mu_init: self.mu_init.or(other.mu_init),
            kappa: self.kappa.or(other.kappa),
            nu_hat: self.nu_hat.or(other.nu_hat),
            delta: self.delta.or(other.delta),
            big_t: self.big_t.or(other.big_t),
            theta: self.theta.or(other.theta),
            t_bar: self.t_bar.or(other.t_bar),
            tau: self.tau.or(other.tau),
            tol: self.tol.or(other.tol),
            max_iter: self.max_iter.or(other.max_iter),
            mu_increase: self.mu_increase.or(other.mu_increase),
            increase_factor: self.increase_factor.or(other.increase_factor),
        }
    }

    pub fn apply(&self, base: SolverConfig) -> Result<SolverConfig> {
        let mut c = base;
        let ls = &mut c.line_search;
        if let Some(v) = self.mu_init {
            c.mu_init = v;
        }
        if let Some(v) = self.kappa {
            c.kappa = v;
        }
        if let Some(v) = self.nu_hat {
            c.nu_hat = v;
        }
        if let Some(v) = self.delta {
            ls.delta = v;
        }
        if let Some(v) = self.big_t {
            ls.trial_decrease = v;
        }
        if let Some(v) = self.theta {
            ls.theta = v;
        }
        if let Some(v) = self.t_bar {
            ls.t_min = v;
        }
        if let Some(v) = self.tau {
            ls.tau = v;
        }
        if let Some(v) = self.tol {
            c.tol = v;
        }
        if let Some(v) = self.max_iter {
            c.max_iter = v;
        }
        if let Some(v) = self.mu_increase {
            c.mu_increase = v;
        }
        if let Some(v) = self.increase_factor {
            c.increase_factor = v;
        }
        c.validate()?;
        Ok(c)
    }
}

/// One `[[problem]]` entry.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProblemEntry {
    Lasso {
        m: usize,
        n: usize,
        s: usize,
        lambda: Option<f64>,
        sparse: Option<bool>,
    },
    Mcp {
        m: usize,
        n: usize,
        s: usize,
        lambda: Option<f64>,
        c: f64,
    },
    StudentT {
        n: usize,
        d: Option<f64>,
        lambda: Option<f64>,
        nu: Option<f64>,
    },
    Logistic {
        data: PathBuf,
        lambda: Option<f64>,
        features: Option<usize>,
    },
}

pub const DEFAULT_LASSO_LAMBDA: f64 = 0.1;
pub const DEFAULT_STUDENT_LAMBDA: f64 = 0.01;
pub const DEFAULT_STUDENT_DB: f64 = 20.0;
pub const DEFAULT_LOGISTIC_LAMBDA: f64 = 0.01;

impl ProblemEntry {
    /// Resolves the entry; relative dataset paths are taken from `base_dir`.
    pub fn to_spec(&self, base_dir: &Path) -> Result<ProblemSpec> {
        Ok(match self {
            ProblemEntry::Lasso {
                m,
                n,
                s,
                lambda,
                sparse,
            } => ProblemSpec::Lasso {
                m: *m,
                n: *n,
                s: *s,
                lambda: lambda.unwrap_or(DEFAULT_LASSO_LAMBDA),
                sparse: sparse.unwrap_or(false),
            },
            ProblemEntry::Mcp { m, n, s, lambda, c } => ProblemSpec::Mcp {
                m: *m,
                n: *n,
                s: *s,
                lambda: lambda.unwrap_or(DEFAULT_LASSO_LAMBDA),
                c: *c,
            },
            ProblemEntry::StudentT { n, d, lambda, nu } => ProblemSpec::StudentT {
                n: *n,
                dynamic_range: d.unwrap_or(DEFAULT_STUDENT_DB),
                lambda: lambda.unwrap_or(DEFAULT_STUDENT_LAMBDA),
                nu: nu.unwrap_or(DEFAULT_STUDENT_NU),
            },
            ProblemEntry::Logistic { data, lambda, features } => {
                let path = if data.is_absolute() {
                    data.clone()
                } else {
                    base_dir.join(data)
                };
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let dataset = parse_libsvm(&text, *features)?;
                let name = path
                    .file_name()
                    .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned());
                ProblemSpec::Logistic {
                    name,
                    data: Arc::new(dataset),
                    lambda: lambda.unwrap_or(DEFAULT_LOGISTIC_LAMBDA),
                }
            }
        })
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSection {
    pub repetitions: Option<usize>,
    pub seed_base: Option<u64>,
    pub workers: Option<usize>,
    pub variants: Option<Vec<String>>,
    pub baseline_mu_increase: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub suite: SuiteSection,
    #[serde(default)]
    pub solver: SolverOverrides,
    #[serde(default)]
    pub problem: Vec<ProblemEntry>,
    /// Directory of the file, for resolving dataset paths.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ConfigFile {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: ConfigFile = toml::from_str(text).map_err(|e| Error::Parse {
            line: e
                .span()
                .map_or(0, |s| text[..s.start.min(text.len())].lines().count().max(1)),
            message: e.message().to_string(),
        })?;
        cfg.base_dir = base_dir.to_path_buf();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, dir)
    }

    pub fn specs(&self) -> Result<Vec<ProblemSpec>> {
        self.problem.iter().map(|p| p.to_spec(&self.base_dir)).collect()
    }
}
