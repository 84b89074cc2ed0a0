use std::fmt;

use rand::Rng;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: Field,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols], field: field.clone() }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| x % field.order()));
        }
        Matrix { rows: rows.len(), cols, data, field: field.clone() }
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data, field: field.clone() }
    }

    pub fn random<R: Rng>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let q = field.order();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
        Matrix { rows, cols, data, field: field.clone() }
    }

    /// Permutation matrix for the right action `e_i ↦ e_{images[i]}` (0-based).
    pub fn permutation(field: &Field, images: &[u32]) -> Self {
        let n = images.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &j) in images.iter().enumerate() {
            m.data[i * n + j as usize] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        debug_assert!(self.field == other.field);
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        let f = &self.field;
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                if f.is_prime() {
                    f.fp().axpy(dst, a, src);
                } else {
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d = f.add(*d, f.mul(a, s));
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        let f = &self.field;
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let src = self.row(k);
            if f.is_prime() {
                f.fp().axpy(&mut out, a, src);
            } else {
                for (d, &s) in out.iter_mut().zip(src) {
                    *d = f.add(*d, f.mul(a, s));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    pub fn scale(&self, a: u32) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&x| f.mul(a, x)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    /// `self += a·other`.
    pub fn add_scaled(&mut self, a: u32, other: &Matrix) {
        let f = self.field.clone();
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            *x = f.add(*x, f.mul(a, y));
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    /// Rows with the given indices.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<u32>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows(&self.field, self.cols, &rows)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() }
    }

    /// Horizontal concatenation.
    pub fn augment(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { rows: self.rows, cols, data, field: self.field.clone() }
    }

    /// Reduced row echelon form with rank and strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        let rank = pivots.len();
        (m, rank, pivots)
    }

    /// Gauss–Jordan over the first `limit` columns; returns pivot columns.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for j in 0..cols {
                    self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
                }
            }
            let pivot_row: Vec<u32> = self.row(r).to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let a = self.data[i * cols + c];
                if a == 0 {
                    continue;
                }
                let na = f.neg(a);
                let dst = &mut self.data[i * cols..(i + 1) * cols];
                if f.is_prime() {
                    f.fp().axpy(dst, na, &pivot_row);
                } else {
                    for (d, &s) in dst.iter_mut().zip(&pivot_row) {
                        *d = f.add(*d, f.mul(na, s));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of {v : M·vᵀ = 0}, returned in reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, rank, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            return basis;
        }
        let m = Matrix::from_rows(f, self.cols, &basis);
        let (e, rank, _) = m.rref();
        (0..rank).map(|i| e.row(i).to_vec()).collect()
    }

    /// Basis of {v : v·M = 0}.
    pub fn left_nullspace(&self) -> Vec<Vec<u32>> {
        self.transpose().nullspace()
    }

    /// Solves A·x = b; `Ok(None)` when b is not in the column space.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("rhs length {} for {} rows", b.len(), self.rows)));
        }
        let bm = Matrix::from_flat(&self.field, self.rows, 1, b.to_vec());
        let mut aug = self.augment(&bm);
        let pivots = aug.rref_in_place(self.cols);
        for i in pivots.len()..self.rows {
            if aug.get(i, self.cols) != 0 {
                return Ok(None);
            }
        }
        let mut x = vec![0u32; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Solves x·A = b for a row vector x.
    pub fn solve_left(&self, b: &[u32]) -> Result<Option<Vec<u32>>> {
        self.transpose().solve(b)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.augment(&Matrix::identity(&self.field, n));
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        let mut out = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            out.row_mut(r).copy_from_slice(&aug.row(r)[n..]);
        }
        Some(out)
    }

    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let f = &self.field;
        let (ra, ca, rb, cb) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Matrix::zeros(f, ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        out.set(i * rb + k, j * cb + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Embeds a matrix over F_p into the given extension of F_p.
    pub fn extend_to(&self, target: &Field) -> Result<Matrix> {
        if !self.field.is_prime() || self.field.p() != target.p() {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.clone(), field: target.clone() })
    }

    /// Embeds a matrix over F_p into F_{p^k} (default modulus).
    pub fn extend_scalars(&self, k: u32) -> Result<Matrix> {
        let target = Field::extension(self.field.p(), k)?;
        self.extend_to(&target)
    }

    /// Replaces every F_{p^k} entry by its k×k multiplication matrix over F_p.
    pub fn blow_up(&self) -> Result<Matrix> {
        let k = self.field.degree() as usize;
        let base = Field::prime(self.field.p())?;
        let mut out = Matrix::zeros(&base, self.rows * k, self.cols * k);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mm = self.field.mult_matrix(self.get(i, j));
                for (a, row) in mm.iter().enumerate() {
                    for (b, &x) in row.iter().enumerate() {
                        out.set(i * k + a, j * k + b, x);
                    }
                }
            }
        }
        Ok(out)
    }
}
