//! Dense matrices over a single finite field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Row-major dense matrix. Entries are raw field encodings.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FieldMatrix,
    pub pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from raw encodings, checking every entry is `< q`.
    pub fn from_raw(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::ElementOutOfRange {
                value: bad as u64,
                q: field.q(),
            });
        }
        Ok(FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_raw(field, rows.len(), cols, rows.concat())
    }

    pub fn from_elements(field: &FieldSpec, rows: usize, cols: usize, entries: &[FieldElement]) -> Result<Self> {
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Self::from_raw(field, rows, cols, entries.iter().map(FieldElement::value).collect())
    }

    /// `rows x alpha.len()` matrix with entry `(i, j) = alpha_j^i`.
    pub fn vandermonde(field: &FieldSpec, alpha: &[u32], rows: usize) -> Self {
        let cols = alpha.len();
        let mut m = Self::zeros(field, rows, cols);
        for (j, &a) in alpha.iter().enumerate() {
            let mut x = 1;
            for i in 0..rows {
                m.data[i * cols + j] = x;
                x = field.mul(x, a);
            }
        }
        m
    }

    /// Parses the text format: one row per line, entries separated by spaces.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| field.parse_element(tok).map(|e| e.value()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, &rows)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn raw(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        debug_assert!(self.field.contains(value));
        self.data[r * self.cols + c] = value;
    }

    pub fn entry(&self, r: usize, c: usize) -> Result<FieldElement> {
        if r >= self.rows {
            return Err(Error::IndexOutOfRange { index: r, bound: self.rows });
        }
        if c >= self.cols {
            return Err(Error::IndexOutOfRange { index: c, bound: self.cols });
        }
        self.field.element(self.get(r, c))
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::IndexOutOfRange { index: r, bound: self.rows });
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange { index: c, bound: self.cols });
        }
        Ok(self.select_unchecked(rows, cols))
    }

    pub(crate) fn select_unchecked(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c));
            }
        }
        FieldMatrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// All rows, chosen columns.
    pub fn select_cols(&self, cols: &[usize]) -> Result<Self> {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hconcat of {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn vconcat(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vconcat of {} columns with {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Right-multiplication by `diag(weights)`.
    pub fn scale_cols(&self, weights: &[u32]) -> Result<Self> {
        if weights.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} columns",
                weights.len(),
                self.cols
            )));
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            for (c, &w) in weights.iter().enumerate() {
                let i = r * self.cols + c;
                out.data[i] = self.field.mul(self.data[i], w);
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let i = r * other.cols + c;
                    out.data[i] = f.add(out.data[i], f.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// `M · x` for a column vector `x`.
    pub fn matvec(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// `x · M` for a row vector `x`.
    pub fn vecmat(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} rows",
                x.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan elimination. Pivots are taken column by column, using
    /// the first nonzero entry at or below the current row, so the result
    /// is fully deterministic.
    pub fn echelon(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let i = row * m.cols + c;
                m.data[i] = f.mul(m.data[i], inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rref(&self) -> Self {
        self.echelon().matrix
    }

    pub fn rank(&self) -> usize {
        rank_raw(&self.field, self.rows, self.cols, &mut self.data.clone())
    }

    pub fn det(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.field.element(det_raw(&self.field, self.rows, &mut self.data.clone()))
    }

    /// Basis of `{x : M xᵀ = 0}` as rows, read off the reduced form: one row
    /// per free column, with a 1 in that column.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let Echelon { matrix: r, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        out
    }

    /// One solution of `M x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[u32]) -> Result<Vec<u32>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: 1,
            data: b.to_vec(),
        };
        let Echelon { matrix: aug, pivots } = self.hconcat(&rhs)?.echelon();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::InconsistentSystem);
        }
        let mut x = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Ok(x)
    }

    /// Whether two matrices have the same row space.
    pub fn same_row_space(&self, other: &Self) -> bool {
        if self.field != other.field || self.cols != other.cols {
            return false;
        }
        let a = nonzero_rows(self.rref());
        let b = nonzero_rows(other.rref());
        a == b
    }

    /// Renders in the text format accepted by [`FieldMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

fn nonzero_rows(m: FieldMatrix) -> Vec<Vec<u32>> {
    m.row_vecs()
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect()
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_text().trim_end())
    }
}

/// Rank of a row-major buffer, destroying it.
pub(crate) fn rank_raw(f: &FieldSpec, rows: usize, cols: usize, a: &mut [u32]) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if pr != rank {
            for c in col..cols {
                a.swap(pr * cols + c, rank * cols + c);
            }
        }
        let inv = f.inv(a[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let factor = f.mul(a[r * cols + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                a[r * cols + c] = f.sub(a[r * cols + c], f.mul(factor, a[rank * cols + c]));
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square row-major buffer, destroying it.
pub(crate) fn det_raw(f: &FieldSpec, n: usize, a: &mut [u32]) -> u32 {
    let mut det = 1;
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if pr != col {
            for c in 0..n {
                a.swap(pr * n + c, col * n + c);
            }
            det = f.neg(det);
        }
        let pivot = a[col * n + col];
        det = f.mul(det, pivot);
        let inv = f.inv(pivot).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = f.mul(a[r * n + col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                a[r * n + c] = f.sub(a[r * n + c], f.mul(factor, a[col * n + c]));
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf13() -> FieldSpec {
        FieldSpec::prime(13).unwrap()
    }

    #[test]
    fn vandermonde_det() {
        let f = gf13();
        let v = FieldMatrix::vandermonde(&f, &[1, 2, 5], 3);
        assert_eq!(v.det().unwrap().value(), 12);
        let v2 = FieldMatrix::vandermonde(&f, &[1, 2], 2);
        assert_eq!(v2.row_vecs(), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(FieldMatrix::vandermonde(&f, &[5], 1).row_vecs(), vec![vec![1]]);
    }

    #[test]
    fn rank_examples() {
        let f = gf13();
        assert_eq!(FieldMatrix::identity(&f, 4).rank(), 4);
        let m = FieldMatrix::from_rows(&f, &[vec![1, 1, 1, 1], vec![1, 2, 5, 6], vec![2, 3, 6, 7]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn det_rejects_non_square() {
        let f = gf13();
        assert_eq!(
            FieldMatrix::zeros(&f, 2, 3).det().unwrap_err(),
            Error::NotSquare { rows: 2, cols: 3 }
        );
    }

    #[test]
    fn kernel_examples() {
        let f = gf13();
        let m = FieldMatrix::from_rows(&f, &[vec![1, 1]]).unwrap();
        assert_eq!(m.kernel().row_vecs(), vec![vec![12, 1]]);
        assert_eq!(FieldMatrix::identity(&f, 3).kernel().rows(), 0);
    }

    #[test]
    fn select_and_scale() {
        let f = gf13();
        let m = FieldMatrix::from_rows(&f, &[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!(m.select(&[0, 1], &[0, 1, 2]).unwrap(), m);
        assert_eq!(m.scale_cols(&[1, 1, 1]).unwrap(), m);
        assert_eq!(m.select(&[1], &[2, 0]).unwrap().row_vecs(), vec![vec![6, 4]]);
        assert!(m.select(&[2], &[0]).is_err());
        assert_eq!(m.hconcat(&m).unwrap().cols(), 6);
        assert!(m.hconcat(&FieldMatrix::zeros(&f, 3, 1)).is_err());
    }

    #[test]
    fn solve_and_inconsistency() {
        let f = gf13();
        let m = FieldMatrix::from_rows(&f, &[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(m.solve(&[3, 1]).unwrap_err(), Error::InconsistentSystem);
        let x = m.solve(&[3, 6]).unwrap();
        assert_eq!(m.matvec(&x).unwrap(), vec![3, 6]);
    }

    #[test]
    fn text_roundtrip() {
        let f = gf13();
        let m = FieldMatrix::from_rows(&f, &[vec![1, 12, 0], vec![4, 5, 6]]).unwrap();
        assert_eq!(m.to_text(), "1 12 0\n4 5 6\n");
        assert_eq!(FieldMatrix::parse(&f, &m.to_text()).unwrap(), m);
    }
}
