//! Experiment orchestration: seeded suites, run summaries, Dolan-More
//! performance profiles and the rate-envelope statistic.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::numerics::dist;
use crate::problems::{gen_lasso, gen_mcp, gen_student_t, Instance, LassoSpec, LibsvmDataset, McpSpec, StudentTSpec};
use crate::solver::{solve, SolverConfig, Variant};

/// Solver x problem costs; `None` marks a run that did not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    pub solvers: Vec<String>,
    pub problems: Vec<String>,
    /// `costs[p][s]`
    pub costs: Vec<Vec<Option<f64>>>,
}

impl CostMatrix {
    pub fn new(solvers: Vec<String>, problems: Vec<String>, costs: Vec<Vec<Option<f64>>>) -> Result<Self> {
        if costs.len() != problems.len() || costs.iter().any(|row| row.len() != solvers.len()) {
            return Err(Error::InvalidParameter(
                "cost matrix shape does not match labels".into(),
            ));
        }
        Ok(Self {
            solvers,
            problems,
            costs,
        })
    }
}

/// Per-solver profile `P(tau)` sampled at every breakpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileTable {
    pub solvers: Vec<String>,
    /// Shared grid: distinct finite ratios in ascending order, then `+inf`.
    pub taus: Vec<f64>,
    /// `values[s][i] = P_s(taus[i])`
    pub values: Vec<Vec<f64>>,
}

impl ProfileTable {
    /// `P_s(tau)` for any `tau >= 1`.
    pub fn eval(&self, solver: usize, tau: f64) -> f64 {
        let idx = self.taus.partition_point(|&t| t <= tau);
        if idx == 0 {
            0.0
        } else {
            self.values[solver][idx - 1]
        }
    }
}

/// Dolan-More profiles: `r_{p,s} = t_{p,s} / min_s t_{p,s}`,
/// `P_s(tau) = |{p : r_{p,s} <= tau}| / n_p`. Unconverged cells get `r = +inf`.
pub fn dolan_more(costs: &CostMatrix) -> Result<ProfileTable> {
    if costs.problems.is_empty() || costs.solvers.is_empty() {
        return Err(Error::Empty("cost matrix"));
    }
    let n_p = costs.problems.len();
    let mut ratios = Vec::with_capacity(n_p);
    for (p, row) in costs.costs.iter().enumerate() {
        if row.iter().flatten().any(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "problem '{}' has a non-positive or non-finite cost",
                costs.problems[p]
            )));
        }
        let best = row.iter().flatten().copied().fold(f64::INFINITY, f64::min);
        if !best.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "no solver converged on problem '{}'",
                costs.problems[p]
            )));
        }
        ratios.push(
            row.iter()
                .map(|c| c.map_or(f64::INFINITY, |c| c / best))
                .collect::<Vec<f64>>(),
        );
    }
    let mut taus: Vec<f64> = ratios.iter().flatten().copied().filter(|r| r.is_finite()).collect();
    taus.sort_by(f64::total_cmp);
    taus.dedup();
    taus.push(f64::INFINITY);
    let values = (0..costs.solvers.len())
        .map(|s| {
            taus.iter()
                .map(|&tau| ratios.iter().filter(|r| r[s] <= tau && r[s].is_finite()).count() as f64 / n_p as f64)
                .collect()
        })
        .collect();
    Ok(ProfileTable {
        solvers: costs.solvers.clone(),
        taus,
        values,
    })
}

/// `max_k e_k sqrt(k+1)` with `e_k = min_{i<=k} ||x_i - x_ref||`.
pub fn rate_envelope(iterates: &[Vec<f64>], x_ref: &[f64]) -> Result<f64> {
    if iterates.is_empty() {
        return Err(Error::Empty("iterate trace"));
    }
    let mut best = f64::INFINITY;
    let mut stat: f64 = 0.0;
    for (k, x) in iterates.iter().enumerate() {
        best = best.min(dist(x, x_ref));
        stat = stat.max(best * ((k + 1) as f64).sqrt());
    }
    Ok(stat)
}

/// A problem family entry of a suite.
#[derive(Debug, Clone)]
pub enum ProblemSpec {
    Lasso {
        m: usize,
        n: usize,
        s: usize,
        lambda: f64,
        sparse: bool,
    },
    Mcp {
        m: usize,
        n: usize,
        s: usize,
        lambda: f64,
        c: f64,
    },
    StudentT {
        n: usize,
        dynamic_range: f64,
        lambda: f64,
        nu: f64,
    },
    Logistic {
        name: String,
        data: Arc<LibsvmDataset>,
        lambda: f64,
    },
}

impl ProblemSpec {
    pub fn family(&self) -> &'static str {
        match self {
            ProblemSpec::Lasso { .. } => "lasso",
            ProblemSpec::Mcp { .. } => "mcp",
            ProblemSpec::StudentT { .. } => "student-t",
            ProblemSpec::Logistic { .. } => "logistic",
        }
    }

    /// Builds the instance for one repetition seed.
    pub fn instance(&self, seed: u64) -> Result<Instance> {
        match self {
            ProblemSpec::Lasso {
                m,
                n,
                s,
                lambda,
                sparse,
            } => gen_lasso(&LassoSpec {
                m: *m,
                n: *n,
                s: *s,
                lambda: *lambda,
                sparse: *sparse,
                seed,
            }),
            ProblemSpec::Mcp { m, n, s, lambda, c } => gen_mcp(&McpSpec {
                data: LassoSpec::new(*m, *n, *s, *lambda, seed),
                c: *c,
            }),
            ProblemSpec::StudentT {
                n,
                dynamic_range,
                lambda,
                nu,
            } => gen_student_t(&StudentTSpec {
                n: *n,
                dynamic_range: *dynamic_range,
                lambda: *lambda,
                nu: *nu,
                seed,
            }),
            ProblemSpec::Logistic { data, lambda, .. } => data.logistic_problem(*lambda),
        }
    }
}

impl fmt::Display for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemSpec::Lasso {
                m,
                n,
                s,
                lambda,
                sparse,
            } => {
                write!(
                    f,
                    "lasso({m},{n},{s};lambda={lambda}{})",
                    if *sparse { ";sparse" } else { "" }
                )
            }
            ProblemSpec::Mcp { m, n, s, lambda, c } => write!(f, "mcp({m},{n},{s};lambda={lambda};c={c})"),
            ProblemSpec::StudentT {
                n,
                dynamic_range,
                lambda,
                nu,
            } => {
                write!(f, "student-t(n={n};d={dynamic_range};lambda={lambda};nu={nu})")
            }
            ProblemSpec::Logistic { name, lambda, .. } => write!(f, "logistic({name};lambda={lambda})"),
        }
    }
}

/// One solve of one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub spec: String,
    pub repetition: usize,
    pub seed: u64,
    pub solver: Variant,
    /// `converged`, `max-iter`, `oracle-error` or `rejected`.
    pub status: String,
    pub iterations: usize,
    pub wall_time: f64,
    pub f: f64,
    pub eta_norm: f64,
    pub switches: usize,
    pub switch_ratio: f64,
}

impl RunRow {
    pub fn converged(&self) -> bool {
        self.status == "converged"
    }
}

/// Per (spec, solver) means over repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub spec: String,
    pub solver: Variant,
    pub runs: usize,
    pub converged: usize,
    pub mean_time: f64,
    pub mean_iterations: f64,
    pub mean_switches: f64,
    /// `mean_switches / mean_iterations`
    pub switch_ratio: f64,
    pub mean_f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub repetitions: usize,
    pub seed_base: u64,
    /// Worker threads; results do not depend on this.
    pub workers: usize,
    /// Enable the step increase for the `pgm` and `apg` baselines.
    pub baseline_mu_increase: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            repetitions: 10,
            seed_base: 0,
            workers: 1,
            baseline_mu_increase: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub runs: Vec<RunRow>,
    pub aggregates: Vec<AggregateRow>,
}

/// Solver configuration used for `variant` inside a suite.
pub fn suite_config(base: &SolverConfig, variant: Variant, options: &SuiteOptions) -> SolverConfig {
    let mut cfg = base.with_variant(variant);
    if !variant.is_conjugate_gradient() && options.baseline_mu_increase {
        cfg.mu_increase = true;
    }
    cfg.record_iterates = false;
    cfg
}

fn run_cell(spec: &ProblemSpec, rep: usize, variant: Variant, base: &SolverConfig, options: &SuiteOptions) -> RunRow {
    let seed = options.seed_base + rep as u64;
    let label = spec.to_string();
    let failed = |status: &str| RunRow {
        spec: label.clone(),
        repetition: rep,
        seed,
        solver: variant,
        status: status.into(),
        iterations: 0,
        wall_time: 0.0,
        f: f64::NAN,
        eta_norm: f64::NAN,
        switches: 0,
        switch_ratio: 0.0,
    };
    let inst = match spec.instance(seed) {
        Ok(i) => i,
        Err(_) => return failed("oracle-error"),
    };
    let cfg = suite_config(base, variant, options);
    match solve(&inst.problem, &inst.x0, &cfg) {
        Ok(report) => RunRow {
            spec: label,
            repetition: rep,
            seed,
            solver: variant,
            status: report.status.name().into(),
            iterations: report.iterations,
            wall_time: report.wall_time.as_secs_f64(),
            f: report.f,
            eta_norm: report.eta_norm,
            switches: report.switches,
            switch_ratio: report.switch_ratio(),
        },
        Err(_) => failed("rejected"),
    }
}

/// Solves every `(spec, repetition, variant)` cell. Repetition `r` uses seed
/// `seed_base + r`; instance generation is excluded from the timings.
pub fn run_suite(
    specs: &[ProblemSpec],
    variants: &[Variant],
    base: &SolverConfig,
    options: &SuiteOptions,
) -> Result<SuiteResult> {
    if options.repetitions == 0 {
        return Err(Error::InvalidParameter("repetitions must be at least 1".into()));
    }
    if specs.is_empty() || variants.is_empty() {
        return Err(Error::Empty("suite"));
    }
    base.validate()?;
    let cells: Vec<(usize, usize, usize)> = (0..specs.len())
        .flat_map(|p| (0..options.repetitions).flat_map(move |r| (0..variants.len()).map(move |v| (p, r, v))))
        .collect();
    let results: Mutex<Vec<Option<RunRow>>> = Mutex::new(vec![None; cells.len()]);
    let next = AtomicUsize::new(0);
    let workers = options.workers.clamp(1, cells.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(p, r, v)) = cells.get(i) else { break };
                let row = run_cell(&specs[p], r, variants[v], base, options);
                results.lock().expect("worker panicked")[i] = Some(row);
            });
        }
    });
    let runs: Vec<RunRow> = results
        .into_inner()
        .expect("worker panicked")
        .into_iter()
        .map(|r| r.expect("every cell is solved"))
        .collect();
    let aggregates = aggregate(&runs);
    Ok(SuiteResult { runs, aggregates })
}

/// Means per `(spec, solver)` in first-appearance order.
pub fn aggregate(runs: &[RunRow]) -> Vec<AggregateRow> {
    let mut keys: Vec<(String, Variant)> = Vec::new();
    for r in runs {
        let key = (r.spec.clone(), r.solver);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(spec, solver)| {
            let rows: Vec<&RunRow> = runs.iter().filter(|r| r.spec == spec && r.solver == solver).collect();
            let n = rows.len() as f64;
            let mean = |f: &dyn Fn(&RunRow) -> f64| rows.iter().map(|r| f(r)).sum::<f64>() / n;
            let mean_iterations = mean(&|r| r.iterations as f64);
            let mean_switches = mean(&|r| r.switches as f64);
            AggregateRow {
                spec,
                solver,
                runs: rows.len(),
                converged: rows.iter().filter(|r| r.converged()).count(),
                mean_time: mean(&|r| r.wall_time),
                mean_iterations,
                mean_switches,
                switch_ratio: if mean_iterations > 0.0 {
                    mean_switches / mean_iterations
                } else {
                    0.0
                },
                mean_f: mean(&|r| r.f),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMetric {
    Time,
    Iterations,
}

impl CostMetric {
    pub fn name(self) -> &'static str {
        match self {
            CostMetric::Time => "time",
            CostMetric::Iterations => "iterations",
        }
    }
}

impl std::str::FromStr for CostMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "time" => Ok(CostMetric::Time),
            "iterations" => Ok(CostMetric::Iterations),
            other => Err(Error::InvalidParameter(format!("unknown cost metric '{other}'"))),
        }
    }
}

/// Builds the cost matrix with one problem per `(spec, repetition)`.
///
/// Iteration costs are floored at 1 so that a start at a stationary point keeps a positive cost.
pub fn cost_matrix(runs: &[RunRow], metric: CostMetric) -> Result<CostMatrix> {
    let mut solvers: Vec<String> = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    for r in runs {
        let s = r.solver.name().to_string();
        if !solvers.contains(&s) {
            solvers.push(s);
        }
        let p = format!("{}#{}", r.spec, r.repetition);
        if !problems.contains(&p) {
            problems.push(p);
        }
    }
    let mut costs = vec![vec![None; solvers.len()]; problems.len()];
    for r in runs {
        let p = problems
            .iter()
            .position(|p| *p == format!("{}#{}", r.spec, r.repetition))
            .expect("problem registered");
        let s = solvers
            .iter()
            .position(|s| s == r.solver.name())
            .expect("solver registered");
        if r.converged() {
            costs[p][s] = Some(match metric {
                CostMetric::Time => r.wall_time.max(f64::MIN_POSITIVE),
                CostMetric::Iterations => (r.iterations.max(1)) as f64,
            });
        }
    }
    CostMatrix::new(solvers, problems, costs)
}
