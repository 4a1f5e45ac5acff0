//! Minimal dense and column-compressed sparse complex matrices.

use num_complex::Complex64;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Square dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: C64) {
        self.data[row * self.dim + col] += value;
    }

    pub fn row(&self, row: usize) -> &[C64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self * rhs`. Zero entries of `self` are skipped, so products with
    /// mostly-empty left factors stay cheap.
    pub fn matmul(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            let out_row = &mut out.data[r * n..(r + 1) * n];
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> DenseMatrix {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    /// `alpha * self + beta * I`, in place.
    pub fn scale_shift(mut self, alpha: f64, beta: f64) -> DenseMatrix {
        for v in &mut self.data {
            *v *= alpha;
        }
        for i in 0..self.dim {
            self.data[i * self.dim + i] += beta;
        }
        self
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Drops exact zeros.
    pub fn to_sparse(&self) -> SparseMatrix {
        let n = self.dim;
        let mut triplets = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = self.get(r, c);
                if v != ZERO {
                    triplets.push((r, c, v));
                }
            }
        }
        SparseMatrix::from_triplets(n, triplets)
    }
}

/// Square sparse complex matrix in compressed-column form. Row indices are
/// sorted within each column. Explicitly stored zeros are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<C64>,
}

impl SparseMatrix {
    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let mut t: Vec<_> = triplets.into_iter().collect();
        t.sort_unstable_by_key(|&(r, c, _)| (c, r));
        let mut col_ptr = vec![0usize; dim + 1];
        let mut row_idx = Vec::with_capacity(t.len());
        let mut values: Vec<C64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in t {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside {dim}x{dim}");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            last = Some((r, c));
            row_idx.push(r);
            values.push(v);
            col_ptr[c + 1] += 1;
        }
        for c in 0..dim {
            col_ptr[c + 1] += col_ptr[c];
        }
        Self {
            dim,
            col_ptr,
            row_idx,
            values,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_triplets(dim, (0..dim).map(|i| (i, i, ONE)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Stored `(row, value)` pairs of one column.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let span = self.col_ptr[col]..self.col_ptr[col + 1];
        self.row_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    /// All stored entries as `(row, col, value)`, column-major.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dim).flat_map(move |c| self.column(c).map(move |(r, v)| (r, c, v)))
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![ZERO; self.dim];
        for (c, &xc) in x.iter().enumerate() {
            if xc == ZERO {
                continue;
            }
            for (r, v) in self.column(c) {
                y[r] += v * xc;
            }
        }
        y
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim);
        for (r, c, v) in self.triplets() {
            m.add_to(r, c, v);
        }
        m
    }

    pub fn adjoint(&self) -> SparseMatrix {
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.conj())))
    }

    pub fn matmul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut acc = vec![ZERO; n];
        let mut touched = vec![false; n];
        let mut rows: Vec<usize> = Vec::new();
        let mut triplets = Vec::new();
        for c in 0..n {
            for (k, b) in rhs.column(c) {
                for (r, a) in self.column(k) {
                    if !touched[r] {
                        touched[r] = true;
                        rows.push(r);
                    }
                    acc[r] += a * b;
                }
            }
            for &r in &rows {
                triplets.push((r, c, acc[r]));
                acc[r] = ZERO;
                touched[r] = false;
            }
            rows.clear();
        }
        Self::from_triplets(n, triplets)
    }

    /// `alpha * self + beta * other`.
    pub fn combine(&self, alpha: f64, other: &SparseMatrix, beta: f64) -> SparseMatrix {
        assert_eq!(self.dim, other.dim);
        Self::from_triplets(
            self.dim,
            self.triplets()
                .map(|(r, c, v)| (r, c, v * alpha))
                .chain(other.triplets().map(|(r, c, v)| (r, c, v * beta))),
        )
    }

    pub fn max_abs_diff(&self, other: &SparseMatrix) -> f64 {
        self.combine(1.0, other, -1.0)
            .values
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim)
            .flat_map(|c| self.column(c).filter(move |&(r, _)| r == c).map(|(_, v)| v))
            .sum()
    }
}
