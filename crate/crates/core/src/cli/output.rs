//! CSV schemas. Every file starts with the `# proxcg-csv v1` line; files with
//! wall-clock columns carry a second comment naming them.

use std::fs;
use std::path::Path;

use crate::bench::{AggregateRow, ProfileTable, RunRow};
use crate::error::{Error, Result};
use crate::solver::{SolveReport, Variant};

pub const CSV_VERSION_LINE: &str = "# proxcg-csv v1";

pub const TRACE_COLUMNS: [&str; 9] = [
    "k",
    "f",
    "eta_norm",
    "mu",
    "alpha",
    "step_kind",
    "g_evals",
    "h_evals",
    "prox_evals",
];
pub const RUN_COLUMNS: [&str; 11] = [
    "spec",
    "repetition",
    "seed",
    "solver",
    "status",
    "iterations",
    "wall_time",
    "f",
    "eta_norm",
    "switches",
    "switch_ratio",
];

fn write_csv(path: &Path, nondeterministic: &[&str], header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let mut buf = Vec::new();
    buf.extend_from_slice(CSV_VERSION_LINE.as_bytes());
    buf.push(b'\n');
    if !nondeterministic.is_empty() {
        buf.extend_from_slice(format!("# nondeterministic: {}\n", nondeterministic.join(",")).as_bytes());
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(header).map_err(csv_err)?;
        for row in rows {
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush()?;
    }
    fs::write(path, buf).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn num(v: f64) -> String {
    format!("{v}")
}

pub fn write_trace(path: &Path, report: &SolveReport) -> Result<()> {
    let rows = report
        .trace
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                num(r.f),
                num(r.eta_norm),
                num(r.mu),
                r.alpha.map(num).unwrap_or_default(),
                r.kind.name().to_string(),
                r.evals.g.to_string(),
                r.evals.h.to_string(),
                r.evals.prox.to_string(),
            ]
        })
        .collect();
    write_csv(path, &[], &TRACE_COLUMNS, rows)
}

/// Single-solve summary: one row.
pub fn write_summary(path: &Path, spec: &str, seed: u64, report: &SolveReport) -> Result<()> {
    let header = [
        "spec",
        "seed",
        "solver",
        "status",
        "iterations",
        "switches",
        "switch_ratio",
        "f",
        "eta_norm",
        "wall_time",
    ];
    let row = vec![
        spec.to_string(),
        seed.to_string(),
        report.variant.name().to_string(),
        report.status.name().to_string(),
        report.iterations.to_string(),
        report.switches.to_string(),
        num(report.switch_ratio()),
        num(report.f),
        num(report.eta_norm),
        num(report.wall_time.as_secs_f64()),
    ];
    write_csv(path, &["wall_time"], &header, vec![row])
}

pub fn write_runs(path: &Path, runs: &[RunRow]) -> Result<()> {
    let rows = runs
        .iter()
        .map(|r| {
            vec![
                r.spec.clone(),
                r.repetition.to_string(),
                r.seed.to_string(),
                r.solver.name().to_string(),
                r.status.clone(),
                r.iterations.to_string(),
                num(r.wall_time),
                num(r.f),
                num(r.eta_norm),
                r.switches.to_string(),
                num(r.switch_ratio),
            ]
        })
        .collect();
    write_csv(path, &["wall_time"], &RUN_COLUMNS, rows)
}

pub fn write_aggregates(path: &Path, aggs: &[AggregateRow]) -> Result<()> {
    let header = [
        "spec",
        "solver",
        "runs",
        "converged",
        "mean_time",
        "mean_iterations",
        "mean_switches",
        "switch_ratio",
        "mean_f",
    ];
    let rows = aggs
        .iter()
        .map(|a| {
            vec![
                a.spec.clone(),
                a.solver.name().to_string(),
                a.runs.to_string(),
                a.converged.to_string(),
                num(a.mean_time),
                num(a.mean_iterations),
                num(a.mean_switches),
                num(a.switch_ratio),
                num(a.mean_f),
            ]
        })
        .collect();
    write_csv(path, &["mean_time"], &header, rows)
}

/// Spec-by-solver table of one aggregate column.
pub fn write_wide(
    path: &Path,
    aggs: &[AggregateRow],
    value: fn(&AggregateRow) -> f64,
    nondeterministic: bool,
) -> Result<()> {
    let mut specs: Vec<&str> = Vec::new();
    let mut solvers: Vec<Variant> = Vec::new();
    for a in aggs {
        if !specs.contains(&a.spec.as_str()) {
            specs.push(&a.spec);
        }
        if !solvers.contains(&a.solver) {
            solvers.push(a.solver);
        }
    }
    let mut header = vec!["spec"];
    header.extend(solvers.iter().map(|s| s.name()));
    let rows = specs
        .iter()
        .map(|spec| {
            let mut row = vec![spec.to_string()];
            for s in &solvers {
                let cell = aggs.iter().find(|a| a.spec == *spec && a.solver == *s);
                row.push(cell.map(|a| num(value(a))).unwrap_or_default());
            }
            row
        })
        .collect();
    let nd: Vec<&str> = if nondeterministic {
        solvers.iter().map(|s| s.name()).collect()
    } else {
        Vec::new()
    };
    write_csv(path, &nd, &header, rows)
}

/// Switch count and ratio for the conjugate gradient solvers.
pub fn write_switches(path: &Path, aggs: &[AggregateRow]) -> Result<()> {
    let header = ["spec", "solver", "mean_iterations", "mean_switches", "switch_ratio"];
    let rows = aggs
        .iter()
        .filter(|a| a.solver.is_conjugate_gradient())
        .map(|a| {
            vec![
                a.spec.clone(),
                a.solver.name().to_string(),
                num(a.mean_iterations),
                num(a.mean_switches),
                num(a.switch_ratio),
            ]
        })
        .collect();
    write_csv(path, &[], &header, rows)
}

pub fn write_profile(path: &Path, profile: &ProfileTable) -> Result<()> {
    let mut rows = Vec::new();
    for (s, name) in profile.solvers.iter().enumerate() {
        for (i, tau) in profile.taus.iter().enumerate() {
            rows.push(vec![name.clone(), num(*tau), num(profile.values[s][i])]);
        }
    }
    write_csv(path, &[], &["solver", "tau", "P"], rows)
}

/// Reads a suite `runs.csv`. Errors carry the 1-based file line.
pub fn read_runs(path: &Path) -> Result<Vec<RunRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_runs(&text)
}

pub fn parse_runs(text: &str) -> Result<Vec<RunRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header_line = text.lines().position(|l| !l.starts_with('#')).map_or(1, |i| i + 1);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse {
            line: header_line,
            message: e.to_string(),
        })?
        .clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(Error::Empty("runs csv"));
    }
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            line: header_line,
            message: format!("missing column '{name}'"),
        })
    };
    let idx: Vec<usize> = RUN_COLUMNS.iter().map(|c| col(c)).collect::<Result<_>>()?;
    let mut runs = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize| rec.get(idx[i]).unwrap_or("");
        let bad = |name: &str| Error::Parse {
            line,
            message: format!(
                "invalid {name} '{}'",
                rec.get(idx[RUN_COLUMNS.iter().position(|c| *c == name).unwrap_or(0)])
                    .unwrap_or("")
            ),
        };
        let parse_f = |i: usize, name: &str| field(i).parse::<f64>().map_err(|_| bad(name));
        let parse_u = |i: usize, name: &str| field(i).parse::<usize>().map_err(|_| bad(name));
        let status = field(4).to_string();
        if !["converged", "max-iter", "oracle-error", "rejected"].contains(&status.as_str()) {
            return Err(bad("status"));
        }
        runs.push(RunRow {
            spec: field(0).to_string(),
            repetition: parse_u(1, "repetition")?,
            seed: field(2).parse().map_err(|_| bad("seed"))?,
            solver: field(3).parse().map_err(|_| bad("solver"))?,
            status,
            iterations: parse_u(5, "iterations")?,
            wall_time: parse_f(6, "wall_time")?,
            f: parse_f(7, "f")?,
            eta_norm: parse_f(8, "eta_norm")?,
            switches: parse_u(9, "switches")?,
            switch_ratio: parse_f(10, "switch_ratio")?,
        });
    }
    if runs.is_empty() {
        return Err(Error::Empty("runs csv"));
    }
    Ok(runs)
}
