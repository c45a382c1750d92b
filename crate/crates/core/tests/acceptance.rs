//! Acceptance suite: one PASS/FAIL line per criterion.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use proxcg::bench::{
    cost_matrix, dolan_more, rate_envelope, run_suite, CostMatrix, CostMetric, ProblemSpec, SuiteOptions,
};
use proxcg::nonsmooth::ProxOracle;
use proxcg::numerics::{norm, DctSubsample, DenseMatrix, LinearOperator, Rng};
use proxcg::problems::{gen_lasso, gen_mcp, parse_libsvm, LassoSpec, LibsvmDataset, McpSpec};
use proxcg::smooth::SmoothOracle;
use proxcg::{solve, Error, SolverConfig, Variant};

type Outcome = Result<String, String>;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

fn sample() -> LibsvmDataset {
    let text = fs::read_to_string(data_dir().join("sample.libsvm")).expect("bundled sample");
    parse_libsvm(&text, None).expect("sample parses")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn grid_argmin(h: &ProxOracle, v: f64, mu: f64) -> f64 {
    let step = 1e-5;
    let r = 3.0 * v.abs() + 1.0;
    let n = (2.0 * r / step).round() as usize;
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..=n {
        let x = -r + i as f64 * step;
        let obj = h.value(&[x]) + (x - v) * (x - v) / (2.0 * mu);
        if obj < best.0 {
            best = (obj, x);
        }
    }
    best.1
}

fn c1_prox_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = Rng::new(101);
    let mut worst: f64 = 0.0;
    for draw in 0..1000 {
        let v = rng.uniform_in(-3.0, 3.0);
        let lambda = rng.uniform_in(0.01, 1.5);
        let (h, mu) = if rng.index(2) == 0 {
            (ProxOracle::l1(lambda).unwrap(), rng.uniform_in(0.01, 3.0))
        } else {
            let c = rng.uniform_in(0.1, 10.0);
            (ProxOracle::mcp(lambda, c).unwrap(), c * rng.uniform_in(0.01, 0.95))
        };
        let closed = h.prox(&[v], mu).map_err(|e| format!("draw {draw}: {e}"))?[0];
        let err = (closed - grid_argmin(&h, v, mu)).abs();
        worst = worst.max(err);
        ensure(err <= 1e-4, || {
            format!("draw {draw}: {h:?} v={v} mu={mu} error {err:.2e}")
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s"))?;
    Ok(format!("1000 draws, max error {worst:.1e}, {secs:.1}s"))
}

fn random_dense(rng: &mut Rng, m: usize, n: usize) -> DenseMatrix {
    DenseMatrix::new(m, n, (0..m * n).map(|_| rng.normal()).collect()).unwrap()
}

fn fd_check(name: &str, g: &SmoothOracle, rng: &mut Rng) -> Result<f64, String> {
    let n = g.dim();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x: Vec<f64> = (0..n).map(|_| rng.normal()).collect();
        let grad = g.grad(&x).unwrap();
        let h = 1e-6 * (1.0 + norm(&x));
        let mut fd = vec![0.0; n];
        for i in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h;
            xm[i] -= h;
            fd[i] = (g.value(&xp).unwrap() - g.value(&xm).unwrap()) / (2.0 * h);
        }
        let diff: Vec<f64> = fd.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let rel = norm(&diff) / norm(&grad).max(1.0);
        worst = worst.max(rel);
        ensure(rel <= 1e-5, || format!("{name}: relative error {rel:.2e}"))?;
    }
    Ok(worst)
}

fn c2_gradients() -> Outcome {
    let start = Instant::now();
    let mut rng = Rng::new(202);
    let ls =
        SmoothOracle::least_squares(random_dense(&mut rng, 30, 12), (0..30).map(|_| rng.normal()).collect()).unwrap();
    let labels = (0..30).map(|_| rng.sign()).collect();
    let logistic = SmoothOracle::logistic(random_dense(&mut rng, 30, 12), labels).unwrap();
    let rows = rng.sample_indices(32, 12);
    let dct = DctSubsample::new(32, rows).unwrap();
    let student = SmoothOracle::student_t(dct, (0..12).map(|_| rng.normal()).collect(), 1e-3).unwrap();
    let mut worst: f64 = 0.0;
    for (name, g) in [("least-squares", &ls), ("logistic", &logistic), ("student-t", &student)] {
        worst = worst.max(fd_check(name, g, &mut rng)?);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s"))?;
    Ok(format!("3 oracles x 100 points, max relative error {worst:.1e}"))
}

fn c3_descent_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    for seed in 0..20 {
        let inst = gen_lasso(&LassoSpec::new(200, 60, 12, 0.1, seed)).unwrap();
        let r = solve(&inst.problem, &inst.x0, &SolverConfig::default()).unwrap();
        for row in &r.trace {
            if let Some(ed) = row.eta_dot_d {
                let e2 = row.eta_norm * row.eta_norm;
                let rel = (ed + e2).abs() / (1.0 + e2);
                worst = worst.max(rel);
                rows += 1;
                ensure(rel <= 1e-10, || format!("seed {seed} k={} violation {rel:.2e}", row.k))?;
            }
        }
    }
    Ok(format!("{rows} directions, max scaled violation {worst:.1e}"))
}

/// Three-term HS with Armijo backtracking on `sum_i (a_i x_i - b_i)^2`.
fn standalone_hs(a: &[f64], b: &[f64], iters: usize) -> Vec<Vec<f64>> {
    let (delta, tau, nu_hat) = (1e-4, 0.5, 1e-8);
    let f = |x: &[f64]| -> f64 {
        x.iter()
            .zip(a)
            .zip(b)
            .map(|((xi, ai), bi)| (ai * xi - bi).powi(2))
            .sum()
    };
    let grad = |x: &[f64]| -> Vec<f64> {
        x.iter()
            .zip(a)
            .zip(b)
            .map(|((xi, ai), bi)| 2.0 * (ai * (ai * xi - bi)))
            .collect()
    };
    let dot = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).map(|(p, q)| p * q).sum() };

    let mut x = vec![0.0; a.len()];
    let mut out = vec![x.clone()];
    let mut prev: Option<(Vec<f64>, Vec<f64>, Vec<f64>)> = None;
    for _ in 0..iters {
        let g = grad(&x);
        let d: Vec<f64> = match &prev {
            None => g.iter().map(|v| -v).collect(),
            Some((g_prev, d_prev, s)) => {
                let y: Vec<f64> = g.iter().zip(g_prev).map(|(p, q)| p - q).collect();
                let ss = dot(s, s);
                let sy = dot(s, &y);
                let nu = if sy >= nu_hat * ss {
                    0.0
                } else {
                    (-sy / ss).max(0.0) + nu_hat
                };
                let z: Vec<f64> = y.iter().zip(s).map(|(yi, si)| yi + nu * si).collect();
                let den = dot(d_prev, &z);
                let beta = dot(&g, &y) / den;
                let gamma = dot(&g, d_prev) / den;
                (0..g.len()).map(|i| -g[i] + beta * d_prev[i] - gamma * y[i]).collect()
            }
        };
        let fx = f(&x);
        let gg = dot(&g, &g);
        let mut alpha = 1.0;
        let x_new = loop {
            let trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + alpha * di).collect();
            if f(&trial) <= fx - delta * alpha * gg {
                break trial;
            }
            alpha *= tau;
        };
        let s = d.iter().map(|di| alpha * di).collect();
        prev = Some((g, d, s));
        x = x_new;
        out.push(x.clone());
    }
    out
}

fn c4_cg_reduction() -> Outcome {
    let n = 50;
    let a: Vec<f64> = (0..n).map(|i| 10f64.powf(i as f64 / (n - 1) as f64)).collect();
    let b: Vec<f64> = (0..n).map(|i| 1.0 + (i % 7) as f64 / 7.0).collect();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = a[i];
    }
    let g = SmoothOracle::least_squares(DenseMatrix::new(n, n, data).unwrap(), b.clone()).unwrap();
    let problem = proxcg::CompositeProblem::new(g, ProxOracle::Zero);
    let cfg = SolverConfig {
        tol: 0.0,
        max_iter: 100,
        record_iterates: true,
        ..Default::default()
    };
    let r = solve(&problem, &vec![0.0; n], &cfg).unwrap();
    ensure(r.iterations == 100, || {
        format!("alg31 took {} iterations", r.iterations)
    })?;
    ensure(r.switches == 0, || format!("{} prox-switches", r.switches))?;
    let reference = standalone_hs(&a, &b, 100);
    let mut worst: f64 = 0.0;
    for (k, (p, q)) in r.iterates.iter().zip(&reference).enumerate() {
        for (u, v) in p.iter().zip(q) {
            let e = (u - v).abs();
            worst = worst.max(e);
            ensure(e <= 1e-10, || format!("iterate {k} differs by {e:.2e}"))?;
        }
    }
    let final_grad = norm(&problem.smooth().grad(&r.x).unwrap());
    Ok(format!(
        "100 iterations, 0 switches, max coordinate gap {worst:.1e}, final |grad| {final_grad:.1e}"
    ))
}

fn monotone(label: &str, spec: &ProblemSpec, seed: u64, variants: &[Variant]) -> Result<usize, String> {
    let inst = spec.instance(seed).unwrap();
    let mut steps = 0;
    for &v in variants {
        let r = solve(&inst.problem, &inst.x0, &SolverConfig::default().with_variant(v)).unwrap();
        for w in r.trace.windows(2) {
            let (f0, f1) = (w[0].f, w[1].f);
            ensure(f1 <= f0 + 1e-10 * (1.0 + f0.abs()), || {
                format!("{label} {v} k={}: {f0} -> {f1}", w[0].k)
            })?;
        }
        steps += r.iterations;
    }
    Ok(steps)
}

fn c5_monotone() -> Outcome {
    let convex = Variant::ALL;
    let weak = [Variant::Alg41, Variant::Alg41Interp, Variant::Pgm];
    let mut steps = 0;
    let lasso = ProblemSpec::Lasso {
        m: 500,
        n: 150,
        s: 30,
        lambda: 0.1,
        sparse: false,
    };
    steps += monotone("lasso", &lasso, 0, &convex)?;
    let logistic = ProblemSpec::Logistic {
        name: "sample".into(),
        data: std::sync::Arc::new(sample()),
        lambda: 0.01,
    };
    steps += monotone("logistic", &logistic, 0, &convex)?;
    let student = ProblemSpec::StudentT {
        n: 128,
        dynamic_range: 20.0,
        lambda: 0.01,
        nu: 1e-3,
    };
    steps += monotone("student-t", &student, 0, &convex)?;
    for c in [0.1, 10.0] {
        let mcp = ProblemSpec::Mcp {
            m: 500,
            n: 150,
            s: 30,
            lambda: 0.1,
            c,
        };
        steps += monotone(&format!("mcp c={c}"), &mcp, 0, &weak)?;
    }
    Ok(format!("{steps} steps across lasso, logistic, student-t, mcp"))
}

struct Suites {
    lasso: proxcg::bench::SuiteResult,
    mcp: proxcg::bench::SuiteResult,
    lasso_secs: f64,
}

fn run_suites() -> Suites {
    let options = SuiteOptions {
        repetitions: 10,
        ..Default::default()
    };
    let lasso_spec = ProblemSpec::Lasso {
        m: 500,
        n: 150,
        s: 30,
        lambda: 0.1,
        sparse: false,
    };
    let start = Instant::now();
    let lasso = run_suite(
        &[lasso_spec],
        &[Variant::Alg31, Variant::Pgm],
        &SolverConfig::default(),
        &options,
    )
    .unwrap();
    let lasso_secs = start.elapsed().as_secs_f64();
    let mcp_specs: Vec<ProblemSpec> = [0.1, 10.0]
        .iter()
        .map(|&c| ProblemSpec::Mcp {
            m: 500,
            n: 150,
            s: 30,
            lambda: 0.1,
            c,
        })
        .collect();
    let mcp = run_suite(&mcp_specs, &[Variant::Alg41], &SolverConfig::default(), &options).unwrap();
    Suites { lasso, mcp, lasso_secs }
}

fn c6_iteration_efficiency(s: &Suites) -> Outcome {
    let mean = |v: Variant| s.lasso.aggregates.iter().find(|a| a.solver == v).unwrap();
    let (cg, pgm) = (mean(Variant::Alg31), mean(Variant::Pgm));
    ensure(cg.converged == 10 && pgm.converged == 10, || {
        "not every run converged".into()
    })?;
    let ratio = pgm.mean_iterations / cg.mean_iterations;
    ensure(ratio >= 5.0, || format!("ratio {ratio:.2}"))?;
    ensure(s.lasso_secs < 120.0, || format!("took {:.1}s", s.lasso_secs))?;
    Ok(format!(
        "alg31 {:.1} vs pgm {:.1} iterations, ratio {ratio:.1}, {:.1}s",
        cg.mean_iterations, pgm.mean_iterations, s.lasso_secs
    ))
}

fn c7_switch_ratio(s: &Suites) -> Outcome {
    let mean_ratio = |rows: Vec<f64>| rows.iter().sum::<f64>() / rows.len() as f64;
    let cg = mean_ratio(
        s.lasso
            .runs
            .iter()
            .filter(|r| r.solver == Variant::Alg31)
            .map(|r| r.switch_ratio)
            .collect(),
    );
    ensure(cg <= 0.20, || format!("alg31 switch ratio {cg:.3}"))?;
    let mut parts = vec![format!("alg31 {cg:.3}")];
    for agg in &s.mcp.aggregates {
        let r = mean_ratio(
            s.mcp
                .runs
                .iter()
                .filter(|r| r.spec == agg.spec)
                .map(|r| r.switch_ratio)
                .collect(),
        );
        ensure(r <= 0.25, || format!("alg41 on {} switch ratio {r:.3}", agg.spec))?;
        parts.push(format!("alg41 {} {r:.3}", agg.spec));
    }
    Ok(parts.join(", "))
}

fn c8_weakly_convex() -> Outcome {
    let mut worst_iter = 0;
    let mut worst_res: f64 = 0.0;
    for seed in 0..10 {
        let inst = gen_mcp(&McpSpec {
            data: LassoSpec::new(500, 150, 30, 0.1, seed),
            c: 10.0,
        })
        .unwrap();
        let base = SolverConfig::default().with_variant(Variant::Alg41);
        let r = solve(&inst.problem, &inst.x0, &base).unwrap();
        ensure(r.converged() && r.iterations <= 50_000, || {
            format!("seed {seed}: {:?} after {}", r.status, r.iterations)
        })?;
        worst_iter = worst_iter.max(r.iterations);
        // The residual bound is checked on a rerun to a tighter tolerance.
        let tight = SolverConfig { tol: 1e-12, ..base };
        let r = solve(&inst.problem, &inst.x0, &tight).unwrap();
        ensure(r.converged(), || format!("seed {seed}: tight run {:?}", r.status))?;
        let bound = 1e-6 * norm(&r.x).max(1.0);
        worst_res = worst_res.max(r.eta_norm / bound);
        ensure(r.eta_norm <= bound, || {
            format!("seed {seed}: |eta| {:.2e} > {bound:.2e}", r.eta_norm)
        })?;
    }
    Ok(format!(
        "10/10 converged, max {worst_iter} iterations, |eta|/bound <= {worst_res:.2}"
    ))
}

fn min_cholesky_pivot(a: &LinearOperator) -> f64 {
    let (m, n) = a.shape();
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            a.matvec(&e).unwrap()
        })
        .collect();
    let mut gram = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = (0..m).map(|r| cols[i][r] * cols[j][r]).sum();
        }
    }
    let mut min_pivot = f64::INFINITY;
    for k in 0..n {
        let pivot = gram[k][k];
        min_pivot = min_pivot.min(pivot);
        if pivot <= 0.0 {
            return pivot;
        }
        let (top, rest) = gram.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let l = row[k] / pivot;
            for (r, p) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                *r -= l * p;
            }
        }
    }
    min_pivot
}

fn c9_rate_envelope() -> Outcome {
    let inst = gen_lasso(&LassoSpec::new(300, 60, 12, 0.1, 0)).unwrap();
    let pivot = min_cholesky_pivot(inst.problem.smooth().operator());
    ensure(pivot > 1e-6, || format!("Gram matrix pivot {pivot:.2e}"))?;
    let reference = solve(
        &inst.problem,
        &inst.x0,
        &SolverConfig {
            tol: 1e-12,
            ..Default::default()
        },
    )
    .unwrap();
    ensure(reference.converged(), || "reference solve did not converge".into())?;
    let cfg = SolverConfig {
        record_iterates: true,
        ..Default::default()
    };
    let r = solve(&inst.problem, &inst.x0, &cfg).unwrap();
    let stat = rate_envelope(&r.iterates, &reference.x).unwrap();
    let e0 = norm(
        &r.iterates[0]
            .iter()
            .zip(&reference.x)
            .map(|(p, q)| p - q)
            .collect::<Vec<_>>(),
    );
    ensure(stat <= 10.0 * e0, || {
        format!("envelope {stat:.3} > 10 e0 = {:.3}", 10.0 * e0)
    })?;
    Ok(format!(
        "min Gram pivot {pivot:.1}, envelope {stat:.3} <= 10 e0 = {:.3}",
        10.0 * e0
    ))
}

fn profile_invariants(costs: &CostMatrix) -> Result<(), String> {
    let prof = dolan_more(costs).map_err(|e| e.to_string())?;
    ensure(prof.taus.windows(2).all(|w| w[0] < w[1]), || {
        "breakpoints not increasing".into()
    })?;
    ensure(prof.taus[0] >= 1.0, || "breakpoint below 1".into())?;
    for row in &prof.values {
        ensure(row.iter().all(|p| (0.0..=1.0).contains(p)), || {
            "value outside [0,1]".into()
        })?;
        ensure(row.windows(2).all(|w| w[0] <= w[1]), || "profile decreases".into())?;
    }
    Ok(())
}

fn c10_profiles(s: &Suites) -> Outcome {
    let labels = |p: &str| vec![format!("{p}0"), format!("{p}1")];
    let costs = CostMatrix::new(
        labels("s"),
        labels("p"),
        vec![vec![Some(1.0), Some(2.0)], vec![Some(2.0), Some(1.0)]],
    )
    .unwrap();
    let prof = dolan_more(&costs).unwrap();
    ensure(prof.taus == vec![1.0, 2.0, f64::INFINITY], || {
        format!("breakpoints {:?}", prof.taus)
    })?;
    for s in 0..2 {
        ensure(prof.values[s] == vec![0.5, 1.0, 1.0], || {
            format!("values {:?}", prof.values[s])
        })?;
    }
    let mut checked = 0;
    for suite in [&s.lasso, &s.mcp] {
        for metric in [CostMetric::Time, CostMetric::Iterations] {
            profile_invariants(&cost_matrix(&suite.runs, metric).unwrap())?;
            checked += 1;
        }
    }
    Ok(format!(
        "2x2 example exact, invariants hold on {checked} suite profiles"
    ))
}

/// CSV content with comment lines and the named columns removed.
fn strip_columns(path: &Path, drop: &[&str]) -> String {
    let text = fs::read_to_string(path).unwrap();
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let keep: Vec<usize> = (0..headers.len()).filter(|&i| !drop.contains(&&headers[i])).collect();
    let mut out = String::new();
    let mut push = |rec: &csv::StringRecord| {
        let cells: Vec<&str> = keep.iter().map(|&i| &rec[i]).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    };
    push(&headers);
    for rec in rdr.records() {
        push(&rec.unwrap());
    }
    out
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let sample_path = data_dir().join("sample.libsvm");
    let config = format!(
        r#"[suite]
repetitions = 2
seed_base = 5
variants = ["alg31", "alg31-interp", "alg41", "pgm", "apg"]

[[problem]]
family = "lasso"
m = 60
n = 20
s = 4

[[problem]]
family = "mcp"
m = 60
n = 20
s = 4
c = 10.0

[[problem]]
family = "student-t"
n = 64

[[problem]]
family = "logistic"
data = "{}"
"#,
        sample_path.display().to_string().replace('\\', "/")
    );
    let cfg_path = dir.path().join("suite.toml");
    fs::write(&cfg_path, config).unwrap();
    let run = |out: &str, workers: &str| {
        let out = dir.path().join(out);
        let args = [
            "proxcg",
            "suite",
            "--config",
            cfg_path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--workers",
            workers,
        ];
        (proxcg::cli::run(args), out)
    };
    let (code_a, a) = run("a", "1");
    let (code_b, b) = run("b", "3");
    ensure(code_a == 0 && code_b == 0, || format!("exit codes {code_a}, {code_b}"))?;
    let files: [(&str, &[&str]); 4] = [
        ("runs.csv", &["wall_time"]),
        ("aggregate.csv", &["mean_time"]),
        ("iterations.csv", &[]),
        ("switches.csv", &[]),
    ];
    for (name, drop) in files {
        let (x, y) = (strip_columns(&a.join(name), drop), strip_columns(&b.join(name), drop));
        ensure(x == y, || format!("{name} differs"))?;
        ensure(x.lines().count() > 1, || format!("{name} is empty"))?;
    }
    Ok("runs, aggregate, iterations and switches CSVs identical across two executions".into())
}

fn c12_libsvm() -> Outcome {
    let text = fs::read_to_string(data_dir().join("sample.libsvm")).unwrap();
    let ds = parse_libsvm(&text, None).map_err(|e| e.to_string())?;
    ensure(ds.len() == 100, || format!("{} rows", ds.len()))?;
    let written = ds.to_libsvm();
    ensure(written == text, || "written text differs from the sample".into())?;
    ensure(parse_libsvm(&written, None).unwrap() == ds, || "reparse differs".into())?;
    for (file, expected) in [
        ("bad_token.libsvm", 3),
        ("duplicate_index.libsvm", 5),
        ("descending_index.libsvm", 4),
    ] {
        let text = fs::read_to_string(data_dir().join(file)).unwrap();
        match parse_libsvm(&text, None) {
            Err(Error::Parse { line, .. }) if line == expected => {}
            other => return Err(format!("{file}: expected error on line {expected}, got {other:?}")),
        }
    }
    Ok("100-row sample round-trips, 3 malformed fixtures rejected at lines 3, 5, 4".into())
}

fn main() {
    let mut failures = 0;
    let mut report = |id: usize, name: &str, outcome: Outcome| match outcome {
        Ok(detail) => println!("PASS {id:>2} {name}: {detail}"),
        Err(detail) => {
            failures += 1;
            println!("FAIL {id:>2} {name}: {detail}");
        }
    };
    report(1, "prox oracle equivalence", c1_prox_oracle());
    report(2, "gradient correctness", c2_gradients());
    report(3, "descent identity", c3_descent_identity());
    report(4, "reduction to three-term HS", c4_cg_reduction());
    report(5, "monotone decrease", c5_monotone());
    let suites = run_suites();
    report(6, "iteration efficiency", c6_iteration_efficiency(&suites));
    report(7, "switch ratio", c7_switch_ratio(&suites));
    report(8, "weakly convex convergence", c8_weakly_convex());
    report(9, "rate envelope", c9_rate_envelope());
    report(10, "performance profiles", c10_profiles(&suites));
    report(11, "suite determinism", c11_determinism());
    report(12, "LIBSVM parser", c12_libsvm());
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
