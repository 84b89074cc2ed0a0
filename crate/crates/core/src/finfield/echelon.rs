use super::field::Field;
use super::matrix::Matrix;

/// Incrementally built semi-echelon basis of a row space.
///
/// Each stored row has a distinct pivot column holding 1, and each row is
/// zero at the pivots of all rows inserted before it. Reducing a vector
/// against the rows in insertion order therefore clears every pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, dim: usize) -> Self {
        Echelon { field: field.clone(), dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(field: &Field, dim: usize, rows: impl IntoIterator<Item = &'a Vec<u32>>) -> Self {
        let mut e = Self::new(field, dim);
        for r in rows {
            e.insert(r.clone());
        }
        e
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn len(&self) -> usize {
        self.rows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn axpy(&self, y: &mut [u32], a: u32, x: &[u32]) {
        let f = &self.field;
        if f.is_prime() {
            f.fp().axpy(y, a, x);
        } else {
            for (d, &s) in y.iter_mut().zip(x) {
                *d = f.add(*d, f.mul(a, s));
            }
        }
    }

    /// Reduces `v` in place against the basis.
    pub fn reduce(&self, v: &mut [u32]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let nc = self.field.neg(c);
                self.axpy(v, nc, row);
            }
        }
    }

    /// Reduces `v` and returns the coefficients `c` with v = rem + Σ c_i·row_i.
    pub fn reduce_coeffs(&self, v: &mut [u32]) -> Vec<u32> {
        let mut coeffs = vec![0; self.rows.len()];
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[pc];
            if c != 0 {
                coeffs[i] = c;
                let nc = self.field.neg(c);
                self.axpy(v, nc, row);
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates with respect to the stored rows, if `v` is in the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let mut w = v.to_vec();
        let c = self.reduce_coeffs(&mut w);
        w.iter().all(|&x| x == 0).then_some(c)
    }

    /// Inserts the reduction of `v`; returns its index when it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<u32>) -> Option<usize> {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(&mut v);
        self.push_reduced(v)
    }

    /// Adds an already reduced vector (no-op on zero).
    pub fn push_reduced(&mut self, mut v: Vec<u32>) -> Option<usize> {
        let pc = v.iter().position(|&x| x != 0)?;
        let inv = self.field.inv(v[pc]);
        if inv != 1 {
            for x in v.iter_mut() {
                *x = self.field.mul(*x, inv);
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        Some(self.rows.len() - 1)
    }

    /// Reduced row echelon basis of the span (pivots increasing).
    pub fn to_rref(&self) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::zeros(&self.field, 0, self.dim);
        }
        let m = Matrix::from_rows(&self.field, self.dim, &self.rows);
        let (r, rank, _) = m.rref();
        r.select_rows(&(0..rank).collect::<Vec<_>>())
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.dim).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis matrix with the rows as stored.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, self.dim, &self.rows)
    }
}

/// Projection onto a quotient F^n / U along the standard complement.
///
/// The complement is spanned by the unit vectors at the non-pivot columns of
/// the reduced echelon basis of U, so the projection of v is v reduced modulo
/// U and restricted to those columns.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub sub: Echelon,
    pub free: Vec<usize>,
}

impl QuotientMap {
    pub fn new(sub: &Echelon) -> Self {
        let rref = sub.to_rref();
        let e = Echelon::from_rows(sub.field(), sub.dim(), &rref.to_rows());
        let free = e.free_columns();
        QuotientMap { sub: e, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.sub.reduce(&mut w);
        self.free.iter().map(|&c| w[c]).collect()
    }

    /// Lift of a quotient vector to the complement representative.
    pub fn lift(&self, v: &[u32]) -> Vec<u32> {
        let mut w = vec![0; self.sub.dim()];
        for (&c, &x) in self.free.iter().zip(v) {
            w[c] = x;
        }
        w
    }

    /// Matrix of the projection (rows = ambient basis vectors).
    pub fn matrix(&self) -> Matrix {
        let n = self.sub.dim();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                self.project(&e)
            })
            .collect();
        Matrix::from_rows(self.sub.field(), self.dim(), &rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn echelon_matches_rank() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let m = Matrix::random(&f, rng.gen_range(1..8), 6, &mut rng);
            let e = Echelon::from_rows(&f, 6, &m.to_rows());
            assert_eq!(e.len(), m.rank());
            for r in m.to_rows() {
                assert!(e.contains(&r));
                let c = e.coords(&r).unwrap();
                let mut s = vec![0; 6];
                for (ci, row) in c.iter().zip(e.rows()) {
                    f.fp().axpy(&mut s, *ci, row);
                }
                assert_eq!(s, r);
            }
        }
    }

    #[test]
    fn quotient_projection_kills_sub() {
        let f = Field::prime(2).unwrap();
        let e = Echelon::from_rows(&f, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        let q = QuotientMap::new(&e);
        assert_eq!(q.dim(), 2);
        assert_eq!(q.project(&[1, 1, 0, 0]), vec![0, 0]);
        assert_eq!(q.project(&q.lift(&[1, 0])), vec![1, 0]);
    }
}
