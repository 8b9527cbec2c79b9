//! Dense linear algebra over a [`Field`]: row reduction, rank, nullspace,
//! Gram matrices and row-space intersection.
//!
//! Matrices are row-major and immutable; operations return fresh values.
//! Pivoting picks the first nonzero entry in column order — there is no
//! magnitude to compare in a finite field — so reduced forms, nullspace
//! bases and intersections are deterministic and reproducible when
//! serialized. Zero-row matrices are legal and represent the zero space.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, FieldElement, GfError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
}

impl From<GfError> for LinalgError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::LengthMismatch { left, right } => {
                LinalgError::ShapeMismatch(format!("vector lengths {left} vs {right}"))
            }
            other => LinalgError::ShapeMismatch(other.to_string()),
        }
    }
}

/// A row vector of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldVector {
    field: Field,
    entries: Vec<FieldElement>,
}

impl FieldVector {
    pub fn new(field: Field, entries: Vec<FieldElement>) -> Self {
        FieldVector { field, entries }
    }

    pub fn zero(field: Field, len: usize) -> Self {
        let z = field.zero();
        FieldVector {
            field,
            entries: vec![z; len],
        }
    }

    /// Builds a vector from canonical encodings. Panics on out-of-range values.
    pub fn from_encodings(field: &Field, values: &[u64]) -> Self {
        FieldVector {
            field: field.clone(),
            entries: values.iter().map(|&v| field.element(v)).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn dot(&self, other: &FieldVector) -> Result<FieldElement, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(self.field.dot(&self.entries, &other.entries)?)
    }

    /// self + c·other, entrywise.
    pub fn add_scaled(&self, other: &FieldVector, c: FieldElement) -> FieldVector {
        assert_eq!(self.len(), other.len());
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, f.mul(c, b)))
            .collect();
        FieldVector {
            field: f.clone(),
            entries,
        }
    }

    pub fn scale(&self, c: FieldElement) -> FieldVector {
        let f = &self.field;
        FieldVector {
            field: f.clone(),
            entries: self.entries.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }
}

/// A dense rectangular matrix of field elements, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    data: Vec<FieldElement>,
}

/// Result of Gaussian elimination: the reduced row echelon form, the pivot
/// columns in order, and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: FieldMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

/// Row-major encodings, the serialized form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixEncodings(pub Vec<Vec<u64>>);

impl FieldMatrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        let z = field.zero();
        FieldMatrix {
            field,
            nrows,
            ncols,
            data: vec![z; nrows * ncols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = FieldMatrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[FieldVector]) -> Result<Self, LinalgError> {
        let ncols = rows.first().map_or(0, FieldVector::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            if r.field() != field {
                return Err(LinalgError::FieldMismatch);
            }
            if r.len() != ncols {
                return Err(LinalgError::ShapeMismatch(format!(
                    "row length {} vs {}",
                    r.len(),
                    ncols
                )));
            }
            data.extend_from_slice(r.entries());
        }
        Ok(FieldMatrix {
            field: field.clone(),
            nrows: rows.len(),
            ncols,
            data,
        })
    }

    /// Builds a matrix from canonical encodings. Panics on out-of-range values.
    pub fn from_encodings(field: &Field, rows: &[Vec<u64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend(r.iter().map(|&v| field.element(v)));
        }
        FieldMatrix {
            field: field.clone(),
            nrows: rows.len(),
            ncols,
            data,
        }
    }

    pub fn to_encodings(&self) -> MatrixEncodings {
        MatrixEncodings(
            (0..self.nrows)
                .map(|i| self.row_slice(i).iter().map(|e| e.value()).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        assert!(i < self.nrows && j < self.ncols);
        self.data[i * self.ncols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert!(i < self.nrows && j < self.ncols);
        self.data[i * self.ncols + j] = v;
    }

    pub fn row_slice(&self, i: usize) -> &[FieldElement] {
        assert!(i < self.nrows);
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn row(&self, i: usize) -> FieldVector {
        FieldVector {
            field: self.field.clone(),
            entries: self.row_slice(i).to_vec(),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = FieldVector> + '_ {
        (0..self.nrows).map(|i| self.row(i))
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zero(self.field.clone(), self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn matmul(&self, other: &FieldMatrix) -> Result<FieldMatrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ncols != other.nrows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let f = &self.field;
        let mut out = FieldMatrix::zero(f.clone(), self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &FieldMatrix) -> Result<FieldMatrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.nrows != other.nrows {
            return Err(LinalgError::ShapeMismatch(format!(
                "row counts {} vs {}",
                self.nrows, other.nrows
            )));
        }
        let mut out = FieldMatrix::zero(self.field.clone(), self.nrows, self.ncols + other.ncols);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.ncols {
                out.set(i, self.ncols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation, self on top.
    pub fn vstack(&self, other: &FieldMatrix) -> Result<FieldMatrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ncols != other.ncols {
            return Err(LinalgError::ShapeMismatch(format!(
                "column counts {} vs {}",
                self.ncols, other.ncols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix {
            field: self.field.clone(),
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            data,
        })
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    pub fn rref(&self) -> Echelon {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.ncols {
            if pivot_row == m.nrows {
                break;
            }
            let Some(found) = (pivot_row..m.nrows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = f.inv(m.get(pivot_row, col)).expect("pivot is nonzero");
            m.scale_row(pivot_row, inv);
            for i in 0..m.nrows {
                if i != pivot_row && !m.get(i, col).is_zero() {
                    let c = f.neg(m.get(i, col));
                    m.add_scaled_row(i, pivot_row, c);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_cols.len();
        Echelon {
            matrix: m,
            pivot_cols,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel {v : M·vᵀ = 0}, one row per basis vector,
    /// ordered by ascending free column. Row count is ncols - rank.
    pub fn nullspace_basis(&self) -> FieldMatrix {
        let ech = self.rref();
        let f = self.field.clone();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.ncols];
            for (row, &col) in ech.pivot_cols.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let free_cols: Vec<usize> = (0..self.ncols)
            .filter(|&j| pivot_set[j].is_none())
            .collect();
        let mut out = FieldMatrix::zero(f.clone(), free_cols.len(), self.ncols);
        for (bi, &fc) in free_cols.iter().enumerate() {
            out.set(bi, fc, f.one());
            for (row, &pc) in ech.pivot_cols.iter().enumerate() {
                let coeff = ech.matrix.get(row, fc);
                if !coeff.is_zero() {
                    out.set(bi, pc, f.neg(coeff));
                }
            }
        }
        out
    }

    /// The Gram matrix M·Mᵀ; entry (i, j) is the dot product of rows i and j.
    pub fn gram(&self) -> FieldMatrix {
        let f = &self.field;
        let mut out = FieldMatrix::zero(f.clone(), self.nrows, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.nrows {
                let d = f
                    .dot(self.row_slice(i), self.row_slice(j))
                    .expect("rows have equal length");
                out.set(i, j, d);
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.nrows).all(|i| (0..self.ncols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Canonical basis of the row space: nonzero rows of the rref.
    pub fn rowspace_basis(&self) -> FieldMatrix {
        let ech = self.rref();
        let rows: Vec<FieldVector> = (0..ech.rank).map(|i| ech.matrix.row(i)).collect();
        FieldMatrix::from_rows(&self.field, &rows).expect("rows share field and length")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            let (x, y) = (self.get(a, j), self.get(b, j));
            self.set(a, j, y);
            self.set(b, j, x);
        }
    }

    fn scale_row(&mut self, i: usize, c: FieldElement) {
        let f = self.field.clone();
        for j in 0..self.ncols {
            let v = f.mul(c, self.get(i, j));
            self.set(i, j, v);
        }
    }

    /// row_i += c · row_src
    fn add_scaled_row(&mut self, i: usize, src: usize, c: FieldElement) {
        let f = self.field.clone();
        for j in 0..self.ncols {
            let v = f.add(self.get(i, j), f.mul(c, self.get(src, j)));
            self.set(i, j, v);
        }
    }
}

/// Basis of rowspace(A) ∩ rowspace(B) by the kernel-of-stacked-coefficients
/// method: coefficient pairs (x, y) with x·A = y·B are the left kernel of
/// the stacked matrix [A; B], and the intersection is the image of x·A over
/// that kernel.
pub fn intersect_rowspaces(a: &FieldMatrix, b: &FieldMatrix) -> Result<FieldMatrix, LinalgError> {
    if a.field != b.field {
        return Err(LinalgError::FieldMismatch);
    }
    if a.ncols != b.ncols {
        return Err(LinalgError::ShapeMismatch(format!(
            "column counts {} vs {}",
            a.ncols, b.ncols
        )));
    }
    let f = a.field.clone();
    if a.nrows == 0 || b.nrows == 0 {
        return Ok(FieldMatrix::zero(f, 0, a.ncols));
    }
    let stacked = a.vstack(b)?;
    // left kernel of S = right kernel of Sᵀ
    let kernel = stacked.transpose().nullspace_basis();
    let mut candidates = FieldMatrix::zero(f.clone(), kernel.nrows(), a.ncols);
    for (ki, krow) in kernel.rows().enumerate() {
        // v = x·A where x is the first nrows(A) coefficients
        for (ai, &coeff) in krow.entries()[..a.nrows].iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for j in 0..a.ncols {
                let v = f.add(candidates.get(ki, j), f.mul(coeff, a.get(ai, j)));
                candidates.set(ki, j, v);
            }
        }
    }
    Ok(candidates.rowspace_basis())
}

/// True iff the vectors are linearly independent (the empty set vacuously is).
pub fn is_linearly_independent(rows: &[FieldVector]) -> bool {
    if rows.is_empty() {
        return true;
    }
    let field = rows[0].field().clone();
    let m = FieldMatrix::from_rows(&field, rows).expect("rows share field and length");
    m.rank() == rows.len()
}
