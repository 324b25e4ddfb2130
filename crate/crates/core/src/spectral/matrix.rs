use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complex matrix in compressed sparse row form.
///
/// Entries are deduplicated (duplicates are summed on construction), sorted
/// within each row, and exact zeros are not stored, so two matrices with the
/// same entries compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            row_ptr: vec![0; rows + 1],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, Complex64)> = triplets.into_iter().collect();
        if let Some(&(i, j, _)) = entries.iter().find(|&&(i, j, _)| i >= rows || j >= cols) {
            return Err(Error::InvalidInput(format!(
                "entry ({i}, {j}) outside a {rows}x{cols} matrix"
            )));
        }
        entries.sort_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for (i, j, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += v,
                _ => merged.push((i, j, v)),
            }
        }
        merged.retain(|e| e.2 != Complex64::new(0.0, 0.0));
        Ok(Self::from_sorted(rows, cols, merged))
    }

    fn from_sorted(rows: usize, cols: usize, entries: Vec<(usize, usize, Complex64)>) -> Self {
        let mut row_ptr = vec![0; rows + 1];
        for &(i, _, _) in &entries {
            row_ptr[i + 1] += 1;
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        let (col_idx, values) = entries.into_iter().map(|(_, j, v)| (j, v)).unzip();
        Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    /// Row-major dense data.
    pub fn from_dense(rows: usize, cols: usize, data: &[Complex64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Self::from_triplets(
            rows,
            cols,
            data.iter()
                .enumerate()
                .map(|(idx, &v)| (idx / cols, idx % cols, v)),
        )
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        let (rows, cols) = m.shape();
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j, m[(i, j)])))
            .filter(|e| e.2 != Complex64::new(0.0, 0.0))
            .collect();
        Self::from_sorted(rows, cols, entries)
    }

    /// `u v*`.
    pub fn rank_one(u: &[Complex64], v: &[Complex64]) -> Self {
        let entries = u
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| v.iter().enumerate().map(move |(j, &b)| (i, j, a * b.conj())))
            .filter(|e| e.2 != Complex64::new(0.0, 0.0))
            .collect();
        Self::from_sorted(u.len(), v.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(p) => vals[p],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[Complex64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    /// Stored entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &v)| (i, j, v))
        })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut entries: Vec<(usize, usize, Complex64)> =
            self.triplets().map(|(i, j, v)| (j, i, v.conj())).collect();
        entries.sort_by_key(|&(i, j, _)| (i, j));
        Self::from_sorted(self.cols, self.rows, entries)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_triplets(self.rows, self.cols, self.triplets().map(|(i, j, v)| (i, j, v * s)))
            .expect("indices already in bounds")
    }

    /// `y = A x`, rows summed in stored order.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        debug_assert_eq!(x.len(), self.cols);
        debug_assert_eq!(y.len(), self.rows);
        for (i, out) in y.iter_mut().enumerate() {
            let (cols, vals) = self.row(i);
            *out = cols.iter().zip(vals).map(|(&j, &v)| v * x[j]).sum();
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut acc = vec![Complex64::new(0.0, 0.0); other.cols];
        let mut touched = Vec::new();
        let mut entries = Vec::new();
        for i in 0..self.rows {
            let (cols, vals) = self.row(i);
            for (&k, &a) in cols.iter().zip(vals) {
                let (ocols, ovals) = other.row(k);
                for (&j, &b) in ocols.iter().zip(ovals) {
                    if acc[j] == Complex64::new(0.0, 0.0) {
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            for &j in &touched {
                entries.push((i, j, acc[j]));
                acc[j] = Complex64::new(0.0, 0.0);
            }
            touched.clear();
        }
        entries.retain(|e| e.2 != Complex64::new(0.0, 0.0));
        Ok(Self::from_sorted(self.rows, other.cols, entries))
    }

    /// The sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let mut entries = Vec::new();
        for (new_i, &old_i) in rows.iter().enumerate() {
            let (cs, vs) = self.row(old_i);
            for (&j, &v) in cs.iter().zip(vs) {
                if col_map[j] != usize::MAX {
                    entries.push((new_i, col_map[j], v));
                }
            }
        }
        entries.sort_by_key(|&(i, j, _)| (i, j));
        Self::from_sorted(rows.len(), cols.len(), entries)
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    /// `A* A` as a dense matrix, accumulated row by row from the sparse
    /// structure.
    pub fn gram(&self) -> DMatrix<Complex64> {
        let mut g = DMatrix::zeros(self.cols, self.cols);
        for i in 0..self.rows {
            let (cols, vals) = self.row(i);
            for (&a, &va) in cols.iter().zip(vals) {
                let ca = va.conj();
                for (&b, &vb) in cols.iter().zip(vals) {
                    g[(a, b)] += ca * vb;
                }
            }
        }
        g
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&JsonMatrix::from(self)).expect("matrix serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: JsonMatrix = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_triplets(
            m.rows,
            m.cols,
            m.nz.into_iter().map(|(i, j, re, im)| (i, j, Complex64::new(re, im))),
        )
    }
}

/// `{"rows":..,"cols":..,"nz":[[i,j,re,im],...]}`
#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    nz: Vec<(usize, usize, f64, f64)>,
}

impl From<&ComplexMatrix> for JsonMatrix {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            nz: m.triplets().map(|(i, j, v)| (i, j, v.re, v.im)).collect(),
        }
    }
}
