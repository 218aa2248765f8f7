//! Dense exact linear algebra over GF(q).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Dense row-major matrix over a single [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    /// One row per line, space-separated encodings.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::ElementOutOfRange {
                value: bad,
                q: field.q(),
            });
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::diag(field, &vec![1; n])
    }

    pub fn diag(field: &Field, u: &[Elem]) -> Self {
        let n = u.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &v) in u.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
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

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c) == 0))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(t, c)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "matrix sum of different shapes".into(),
            ));
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    /// Row vector times matrix: `y · A`.
    pub fn left_mul_vec(&self, y: &[Elem]) -> Result<Vec<Elem>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                y.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &a) in y.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// `G · diag(u) · Gᵀ`.
    pub fn gram_scaled(&self, u: &[Elem]) -> Result<Matrix> {
        if u.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "scaling vector of length {} for {} columns",
                u.len(),
                self.cols
            )));
        }
        let f = &self.field;
        let k = self.rows;
        let mut out = Matrix::zeros(f, k, k);
        for i in 0..k {
            let ri = self.row(i);
            for j in i..k {
                let rj = self.row(j);
                let mut s = 0;
                for t in 0..self.cols {
                    if u[t] != 0 && ri[t] != 0 && rj[t] != 0 {
                        s = f.add(s, f.mul(u[t], f.mul(ri[t], rj[t])));
                    }
                }
                out.data[i * k + j] = s;
                out.data[j * k + i] = s;
            }
        }
        Ok(out)
    }

    /// `G · Gᵀ`.
    pub fn gram(&self) -> Matrix {
        self.gram_scaled(&vec![1; self.cols])
            .expect("all-ones vector has matching length")
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Matrix> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: c,
                bound: self.cols,
            });
        }
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data,
        })
    }

    /// Reduced row echelon form with pivot columns and rank.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.axpy_row(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: Elem) {
        let f = self.field.clone();
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, s);
        }
    }

    /// row[dst] += s · row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, s: Elem) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = f.mul(s, self.data[src * self.cols + c]);
            let d = &mut self.data[dst * self.cols + c];
            *d = f.add(*d, v);
        }
    }

    /// Exact determinant by Gaussian elimination. The 0×0 determinant is 1.
    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        match n {
            0 => return Ok(1),
            1 => return Ok(self.data[0]),
            2 => {
                return Ok(f.sub(
                    f.mul(self.data[0], self.data[3]),
                    f.mul(self.data[1], self.data[2]),
                ))
            }
            _ => {}
        }
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = m.get(i, c);
                if factor != 0 {
                    m.axpy_row(i, c, f.neg(f.mul(factor, inv)));
                }
            }
        }
        Ok(det)
    }

    /// Rows form a basis of the left kernel `{y : y·A = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let t = self.transpose();
        let Rref { matrix, pivots, .. } = t.rref();
        let f = &self.field;
        let n = t.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut data = Vec::with_capacity(free.len() * n);
        for &fc in &free {
            let mut y = vec![0; n];
            y[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                y[pc] = f.neg(matrix.get(i, fc));
            }
            data.extend(y);
        }
        Matrix {
            field: f.clone(),
            rows: free.len(),
            cols: n,
            data,
        }
    }

    /// `M_I`: delete the rows and columns listed in `removed` (0-based).
    pub fn minor_complement(&self, removed: &[usize]) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if let Some(&i) = removed.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.rows,
            });
        }
        let keep: Vec<usize> = (0..self.rows).filter(|i| !removed.contains(i)).collect();
        let mut data = Vec::with_capacity(keep.len() * keep.len());
        for &r in &keep {
            data.extend(keep.iter().map(|&c| self.get(r, c)));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: keep.len(),
            cols: keep.len(),
            data,
        })
    }

    /// `det(M_I)`, equal to 1 when every index is removed.
    pub fn det_minor_complement(&self, removed: &[usize]) -> Result<Elem> {
        self.minor_complement(removed)?.det()
    }

    /// `M + diag(u)`.
    pub fn add_diag(&self, u: &[Elem]) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "diagonal of length {} for a {}x{} matrix",
                u.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut m = self.clone();
        for (i, &v) in u.iter().enumerate() {
            let idx = i * m.cols + i;
            m.data[idx] = f.add(m.data[idx], v);
        }
        Ok(m)
    }

    /// `det(M + diag(u))` evaluated directly.
    pub fn det_diag_shift(&self, u: &[Elem]) -> Result<Elem> {
        self.add_diag(u)?.det()
    }

    /// True iff `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[Elem]) -> bool {
        if v.len() != self.cols {
            return false;
        }
        let base = self.rank();
        let mut data = self.data.clone();
        data.extend_from_slice(v);
        let stacked = Matrix {
            field: self.field.clone(),
            rows: self.rows + 1,
            cols: self.cols,
            data,
        };
        stacked.rank() == base
    }

    /// Mutual row-space containment.
    pub fn same_row_space(&self, other: &Matrix) -> bool {
        self.field == other.field
            && self.cols == other.cols
            && (0..other.rows).all(|r| self.row_space_contains(other.row(r)))
            && (0..self.rows).all(|r| other.row_space_contains(self.row(r)))
    }
}
