use std::f64::consts::PI;

use super::{DenseMatrix, SparseMatrix};
use crate::error::{Error, Result};

/// Orthonormal DCT-II matrix of size `n`: row `k` is
/// `s_k cos(pi (2j + 1) k / (2n))` with `s_0 = sqrt(1/n)` and `s_k = sqrt(2/n)` otherwise.
pub fn dct_matrix(n: usize) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = (0..n).map(|k| dct_row(n, k)).collect();
    DenseMatrix::from_rows(&rows).expect("dct rows are finite")
}

fn dct_row(n: usize, k: usize) -> Vec<f64> {
    let nf = n as f64;
    let s = if k == 0 { (1.0 / nf).sqrt() } else { (2.0 / nf).sqrt() };
    (0..n)
        .map(|j| s * (PI * (2 * j + 1) as f64 * k as f64 / (2.0 * nf)).cos())
        .collect()
}

/// Rows `J` of the orthonormal DCT-II of length `n`.
///
/// The selected rows are materialized once, so application costs `O(|J| n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DctSubsample {
    n: usize,
    indices: Vec<usize>,
    rows: DenseMatrix,
}

impl DctSubsample {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dct length must be positive".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&j| j >= n) {
            return Err(Error::InvalidParameter(format!(
                "dct row index {bad} out of range for length {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &j in &indices {
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameter(format!("duplicate dct row index {j}")));
            }
        }
        let rows: Vec<Vec<f64>> = indices.iter().map(|&k| dct_row(n, k)).collect();
        let rows = if rows.is_empty() {
            DenseMatrix::new(0, n, Vec::new())?
        } else {
            DenseMatrix::from_rows(&rows)?
        };
        Ok(Self { n, indices, rows })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }
}

/// A linear map `A: R^n -> R^m` with its adjoint.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearOperator {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
    DctSubsample(DctSubsample),
}

impl LinearOperator {
    /// `(rows, cols)`
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Self::Dense(m) => (m.rows(), m.cols()),
            Self::Sparse(m) => (m.rows(), m.cols()),
            Self::DctSubsample(d) => (d.indices.len(), d.n),
        }
    }

    pub fn rows(&self) -> usize {
        self.shape().0
    }

    pub fn cols(&self) -> usize {
        self.shape().1
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Self::Dense(m) => m.matvec(x),
            Self::Sparse(m) => m.matvec(x),
            Self::DctSubsample(d) => d.rows.matvec(x),
        }
    }

    pub fn matvec_t(&self, y: &[f64]) -> Result<Vec<f64>> {
        match self {
            Self::Dense(m) => m.matvec_t(y),
            Self::Sparse(m) => m.matvec_t(y),
            Self::DctSubsample(d) => d.rows.matvec_t(y),
        }
    }
}

impl From<DenseMatrix> for LinearOperator {
    fn from(m: DenseMatrix) -> Self {
        Self::Dense(m)
    }
}

impl From<SparseMatrix> for LinearOperator {
    fn from(m: SparseMatrix) -> Self {
        Self::Sparse(m)
    }
}

impl From<DctSubsample> for LinearOperator {
    fn from(d: DctSubsample) -> Self {
        Self::DctSubsample(d)
    }
}
