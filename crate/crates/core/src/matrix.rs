//! Dense matrices over an exact field.
//!
//! Row-major storage. Zero-row and zero-column matrices are ordinary values:
//! coinvariant spaces vanish regularly and every routine here accepts them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer entries, convenient for fixtures.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<S>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| S::from_i64(x)).collect())
            .collect();
        Self::from_rows(data).expect("rectangular fixture")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| S::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn scalar(s: S) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            data: vec![s],
        }
    }

    /// The matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.matmul_sparse(&other.nonzero_rows(), other.cols))
    }

    /// The nonzero entries of each row, for repeated right multiplication.
    pub(crate) fn nonzero_rows(&self) -> Vec<Vec<(usize, &S)>> {
        (0..self.rows)
            .map(|k| self.row(k).iter().enumerate().filter(|(_, b)| !b.is_zero()).collect())
            .collect()
    }

    /// `self · B` with `B` given by its nonzero rows; most matrices here are
    /// block-monomial.
    pub(crate) fn matmul_sparse(&self, nonzero: &[Vec<(usize, &S)>], cols: usize) -> Self {
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for (k, row) in nonzero.iter().enumerate() {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in row {
                    out.data[i * cols + j].add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, S::add_ref)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, S::sub_ref)
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(s)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add_ref(self.get(i, i));
        }
        acc
    }

    /// Kronecker product; basis order is lexicographic with `self` major.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] =
                            a.mul_ref(other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r + i) * self.cols + c + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r + i, c + j).clone();
            }
        }
        out
    }

    /// Columns side by side; all parts must share a row count.
    pub fn hstack(rows: usize, parts: &[Self]) -> Result<Self> {
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for p in parts {
            out.set_block(0, c, p);
            c += p.cols;
        }
        Ok(out)
    }

    /// Rows on top of each other; all parts must share a column count.
    pub fn vstack(cols: usize, parts: &[Self]) -> Result<Self> {
        if parts.iter().any(|p| p.cols != cols) {
            return Err(Error::DimensionMismatch("vstack column counts".into()));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r = 0;
        for p in parts {
            out.set_block(r, 0, p);
            r += p.rows;
        }
        Ok(out)
    }

    pub fn direct_sum(parts: &[Self]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Reduced row echelon form with leftmost pivots, plus the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j).mul_ref(&inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = m.get(r, j).sub_ref(&factor.mul_ref(m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis read off the reduced echelon form: one column
    /// per free variable, in increasing order of the free column.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, S::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, k, -r.get(i, f).clone());
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let aug = Self::hstack(n, &[self.clone(), Self::identity(n)])?;
        let (r, pivots) = aug.rref();
        if (0..n).any(|i| pivots.get(i) != Some(&i)) {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// A left inverse `L` with `L * self = I`, for matrices of full column rank.
    pub fn left_inverse(&self) -> Result<Self> {
        let (_, rows) = self.transpose().rref();
        if rows.len() != self.cols {
            return Err(Error::Singular);
        }
        let mut square = Self::zeros(self.cols, self.cols);
        for (k, &r) in rows.iter().enumerate() {
            for j in 0..self.cols {
                square.set(k, j, self.get(r, j).clone());
            }
        }
        let inv = square.inverse()?;
        let mut out = Self::zeros(self.cols, self.rows);
        for (k, &r) in rows.iter().enumerate() {
            for i in 0..self.cols {
                out.set(i, r, inv.get(i, k).clone());
            }
        }
        Ok(out)
    }
}

/// Projection onto `ambient / span(subspace)` and a section back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient<S: Scalar> {
    pub projection: Matrix<S>,
    pub section: Matrix<S>,
}

/// Quotient of `k^ambient_dim` by the column span of `subspace`.
///
/// The quotient basis is the set of standard vectors at the non-pivot
/// columns of the echelon form of `subspaceᵀ`, so `projection * section = I`
/// and the kernel of `projection` is exactly the span.
pub fn quotient_basis<S: Scalar>(ambient_dim: usize, subspace: &Matrix<S>) -> Result<Quotient<S>> {
    if subspace.rows() != ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "subspace has {} rows, ambient dimension {ambient_dim}",
            subspace.rows()
        )));
    }
    let (r, pivots) = subspace.transpose().rref();
    let kept: Vec<usize> = (0..ambient_dim).filter(|c| !pivots.contains(c)).collect();
    let q = kept.len();
    let mut section = Matrix::zeros(ambient_dim, q);
    let mut projection = Matrix::zeros(q, ambient_dim);
    for (k, &c) in kept.iter().enumerate() {
        section.set(c, k, S::one());
        projection.set(k, c, S::one());
    }
    for (i, &p) in pivots.iter().enumerate() {
        for (k, &c) in kept.iter().enumerate() {
            let v = r.get(i, c);
            if !v.is_zero() {
                projection.set(k, p, -v.clone());
            }
        }
    }
    Ok(Quotient { projection, section })
}

pub fn kernel_basis<S: Scalar>(m: &Matrix<S>) -> Matrix<S> {
    m.kernel_basis()
}

pub fn kronecker<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    a.kronecker(b)
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(S::to_exact_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl<S: Scalar> Serialize for Matrix<S> {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        MatrixWire {
            field: S::field(),
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|r| self.row(r).iter().map(S::to_exact_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

/// Entries tagged `"Q"` may be read into a prime field (denominators must be
/// invertible there); any other field disagreement is rejected.
impl<'de, S: Scalar> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = MatrixWire::deserialize(d)?;
        if w.field != S::field() && w.field != Field::Rationals {
            return Err(D::Error::custom(Error::FieldMismatch {
                expected: S::field().to_string(),
                found: w.field.to_string(),
            }));
        }
        if w.entries.len() != w.rows || w.entries.iter().any(|r| r.len() != w.cols) {
            return Err(D::Error::custom("matrix entries do not match rows/cols"));
        }
        let data = w
            .entries
            .iter()
            .flatten()
            .map(|e| S::parse_exact(e))
            .collect::<Result<Vec<S>>>()
            .map_err(D::Error::custom)?;
        Ok(Matrix {
            rows: w.rows,
            cols: w.cols,
            data,
        })
    }
}
