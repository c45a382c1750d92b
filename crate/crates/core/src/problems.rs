//! Seeded instance generators and the LIBSVM text reader.

use crate::composite::CompositeProblem;
use crate::error::{Error, Result};
use crate::nonsmooth::ProxOracle;
use crate::numerics::{DctSubsample, DenseMatrix, LinearOperator, Rng, SparseMatrix};
use crate::smooth::{SmoothOracle, DEFAULT_STUDENT_NU};

/// Noise scale of the LASSO/MCP observation vector.
pub const LASSO_NOISE: f64 = 0.01;
/// Scale of the Student's t observation noise.
pub const STUDENT_NOISE: f64 = 0.1;
/// Degrees of freedom of the Student's t observation noise.
pub const STUDENT_NOISE_DOF: usize = 5;
/// Half-width of the uniform starting box for Student's t instances.
pub const STUDENT_START_RADIUS: f64 = 10.0;

/// A generated problem with its planted signal and starting point.
#[derive(Debug, Clone)]
pub struct Instance {
    pub problem: CompositeProblem,
    pub x_true: Vec<f64>,
    pub x0: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LassoSpec {
    pub m: usize,
    pub n: usize,
    /// Number of unit entries in the planted signal.
    pub s: usize,
    pub lambda: f64,
    /// Zero out each entry of `A` with probability 1/2 and store it sparse.
    pub sparse: bool,
    pub seed: u64,
}

impl LassoSpec {
    pub fn new(m: usize, n: usize, s: usize, lambda: f64, seed: u64) -> Self {
        Self {
            m,
            n,
            s,
            lambda,
            sparse: false,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidParameter("m and n must be positive".into()));
        }
        if self.s > self.n {
            return Err(Error::InvalidParameter(format!(
                "s = {} exceeds n = {}",
                self.s, self.n
            )));
        }
        Ok(())
    }
}

/// `A ~ U[0,1)^{m x n}`, planted `x` with `s` ones, `b = A x + 0.01 eps`.
pub fn lasso_data(spec: &LassoSpec) -> Result<(LinearOperator, Vec<f64>, Vec<f64>)> {
    spec.validate()?;
    let mut rng = Rng::new(spec.seed);
    let (m, n) = (spec.m, spec.n);
    let mut entries = Vec::with_capacity(m * n);
    for _ in 0..m * n {
        let a = rng.uniform();
        entries.push(a);
    }
    if spec.sparse {
        for a in entries.iter_mut() {
            if rng.uniform() < 0.5 {
                *a = 0.0;
            }
        }
    }
    let mut x_true = vec![0.0; n];
    for j in rng.sample_indices(n, spec.s) {
        x_true[j] = 1.0;
    }
    let dense = DenseMatrix::new(m, n, entries)?;
    let op: LinearOperator = if spec.sparse {
        SparseMatrix::from_dense(&dense).into()
    } else {
        dense.into()
    };
    let mut b = op.matvec(&x_true)?;
    for bi in b.iter_mut() {
        *bi += LASSO_NOISE * rng.normal();
    }
    Ok((op, b, x_true))
}

/// `||A x - b||^2 + lambda ||x||_1`, started at the origin.
pub fn gen_lasso(spec: &LassoSpec) -> Result<Instance> {
    let (op, b, x_true) = lasso_data(spec)?;
    let problem = CompositeProblem::new(SmoothOracle::least_squares(op, b)?, ProxOracle::l1(spec.lambda)?);
    Ok(Instance {
        problem,
        x0: vec![0.0; spec.n],
        x_true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McpSpec {
    pub data: LassoSpec,
    pub c: f64,
}

/// LASSO data with the MCP regularizer (`rho = 1/c`).
pub fn gen_mcp(spec: &McpSpec) -> Result<Instance> {
    let (op, b, x_true) = lasso_data(&spec.data)?;
    let h = ProxOracle::mcp(spec.data.lambda, spec.c)?;
    Ok(Instance {
        problem: CompositeProblem::new(SmoothOracle::least_squares(op, b)?, h),
        x0: vec![0.0; spec.data.n],
        x_true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StudentTSpec {
    /// Signal length, divisible by 8.
    pub n: usize,
    /// Dynamic range in dB.
    pub dynamic_range: f64,
    pub lambda: f64,
    pub nu: f64,
    pub seed: u64,
}

impl StudentTSpec {
    pub fn new(n: usize, dynamic_range: f64, seed: u64) -> Self {
        Self {
            n,
            dynamic_range,
            lambda: 0.01,
            nu: DEFAULT_STUDENT_NU,
            seed,
        }
    }

    /// Number of measurements, `n / 8`.
    pub fn m(&self) -> usize {
        self.n / 8
    }

    /// Number of nonzeros, `floor(n / 40)`.
    pub fn k(&self) -> usize {
        self.n / 40
    }
}

/// Sparse spikes `sign 10^{d u / 20}` observed through `|J| = n/8` random DCT rows
/// with scaled Student's t noise; the start is uniform on `[-10, 10]^n`.
pub fn gen_student_t(spec: &StudentTSpec) -> Result<Instance> {
    let n = spec.n;
    if n == 0 || !n.is_multiple_of(8) {
        return Err(Error::InvalidParameter(format!(
            "signal length {n} must be a positive multiple of 8"
        )));
    }
    let mut rng = Rng::new(spec.seed);
    let mut x_true = vec![0.0; n];
    for i in rng.sample_indices(n, spec.k()) {
        let sign = rng.sign();
        let u = rng.uniform();
        x_true[i] = sign * 10f64.powf(spec.dynamic_range * u / 20.0);
    }
    let mut rows = rng.sample_indices(n, spec.m());
    rows.sort_unstable();
    let op: LinearOperator = DctSubsample::new(n, rows)?.into();
    let mut b = op.matvec(&x_true)?;
    for bi in b.iter_mut() {
        *bi += STUDENT_NOISE * rng.student_t(STUDENT_NOISE_DOF);
    }
    let x0 = (0..n)
        .map(|_| rng.uniform_in(-STUDENT_START_RADIUS, STUDENT_START_RADIUS))
        .collect();
    let problem = CompositeProblem::new(SmoothOracle::student_t(op, b, spec.nu)?, ProxOracle::l1(spec.lambda)?);
    Ok(Instance { problem, x_true, x0 })
}

/// A binary classification dataset in LIBSVM layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LibsvmDataset {
    /// `+1` or `-1` per row.
    pub labels: Vec<f64>,
    /// `(1-based index, value)` per row, ascending, as read.
    pub rows: Vec<Vec<(usize, f64)>>,
    pub n_features: usize,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_label(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("malformed label '{tok}'")))?;
    if v == 1.0 {
        Ok(1.0)
    } else if v == -1.0 || v == 0.0 {
        Ok(-1.0)
    } else {
        Err(parse_err(line, format!("label '{tok}' is not binary")))
    }
}

/// Parses LIBSVM text: `<label> <idx>:<val> ...` per line, 1-based strictly
/// ascending indices, `#` comments. Labels `0`/`-1` map to `-1`, `1`/`+1` to `+1`.
///
/// `n_features` overrides the feature count; otherwise the largest index is used.
pub fn parse_libsvm(text: &str, n_features: Option<usize>) -> Result<LibsvmDataset> {
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    let mut max_index = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let label = parse_label(tokens.next().expect("nonempty line"), line)?;
        let mut row: Vec<(usize, f64)> = Vec::new();
        for tok in tokens {
            let (idx, val) = tok
                .split_once(':')
                .ok_or_else(|| parse_err(line, format!("malformed token '{tok}'")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| parse_err(line, format!("malformed index in '{tok}'")))?;
            if idx == 0 {
                return Err(parse_err(line, "feature indices are 1-based"));
            }
            let val: f64 = val
                .parse()
                .map_err(|_| parse_err(line, format!("non-numeric value in '{tok}'")))?;
            if !val.is_finite() {
                return Err(parse_err(line, format!("non-finite value in '{tok}'")));
            }
            if let Some(&(prev, _)) = row.last() {
                if idx == prev {
                    return Err(parse_err(line, format!("duplicate index {idx}")));
                }
                if idx < prev {
                    return Err(parse_err(line, format!("descending index {idx} after {prev}")));
                }
            }
            if let Some(limit) = n_features {
                if idx > limit {
                    return Err(parse_err(line, format!("index {idx} exceeds feature count {limit}")));
                }
            }
            max_index = max_index.max(idx);
            row.push((idx, val));
        }
        labels.push(label);
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Empty("libsvm dataset"));
    }
    Ok(LibsvmDataset {
        labels,
        rows,
        n_features: n_features.unwrap_or(max_index),
    })
}

impl LibsvmDataset {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Feature matrix with 0-based columns; explicit zeros are dropped.
    pub fn matrix(&self) -> Result<SparseMatrix> {
        let rows: Vec<Vec<(usize, f64)>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&(j, v)| (j - 1, v)).collect())
            .collect();
        SparseMatrix::from_row_entries(self.n_features, &rows)
    }

    /// Writes the dataset back in LIBSVM text form.
    pub fn to_libsvm(&self) -> String {
        let mut out = String::new();
        for (label, row) in self.labels.iter().zip(&self.rows) {
            out.push_str(if *label > 0.0 { "+1" } else { "-1" });
            for (j, v) in row {
                out.push_str(&format!(" {j}:{v}"));
            }
            out.push('\n');
        }
        out
    }

    /// `sum_i log(1 + exp(-b_i a_i^T x)) + lambda ||x||_1`, started at the origin.
    pub fn logistic_problem(&self, lambda: f64) -> Result<Instance> {
        let smooth = SmoothOracle::logistic(self.matrix()?, self.labels.clone())?;
        Ok(Instance {
            problem: CompositeProblem::new(smooth, ProxOracle::l1(lambda)?),
            x0: vec![0.0; self.n_features],
            x_true: Vec::new(),
        })
    }
}
