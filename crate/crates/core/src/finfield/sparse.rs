use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Fp;

/// Sparse row: `(column, value)` pairs with strictly increasing columns and
/// nonzero values.
pub type SparseRow = Vec<(u32, u32)>;

/// Normalizes an unsorted list of `(column, value)` contributions.
pub fn sparse_from_terms(fp: Fp, mut terms: Vec<(u32, u32)>) -> SparseRow {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: SparseRow = Vec::with_capacity(terms.len());
    for (c, v) in terms {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = fp.add(last.1, v),
            _ => out.push((c, v % fp.p)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// Homogeneous linear system over F_p in sparse semi-echelon form.
///
/// Rows are reduced on insertion against existing pivot rows (leading
/// coefficient 1, distinct leading columns); fill-in stays local because
/// subtraction only touches columns to the right of the current one.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    fp: Fp,
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<u32>,
    scratch: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl SparseEchelon {
    pub fn new(fp: Fp, ncols: usize) -> Self {
        SparseEchelon { fp, ncols, rows: Vec::new(), pivot_row: vec![NONE; ncols], scratch: vec![0; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Reduces a row against the pivots; returns the (unnormalized) remainder.
    pub fn reduce(&mut self, row: &[(u32, u32)]) -> SparseRow {
        let fp = self.fp;
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::with_capacity(row.len() * 2);
        for &(c, v) in row {
            if v != 0 {
                self.scratch[c as usize] = fp.add(self.scratch[c as usize], v);
                heap.push(Reverse(c));
            }
        }
        let mut out = SparseRow::new();
        let mut last = NONE;
        while let Some(Reverse(c)) = heap.pop() {
            if c == last {
                continue;
            }
            last = c;
            let v = self.scratch[c as usize];
            if v == 0 {
                continue;
            }
            let pr = self.pivot_row[c as usize];
            if pr == NONE {
                out.push((c, v));
                self.scratch[c as usize] = 0;
                continue;
            }
            let nv = fp.neg(v);
            self.scratch[c as usize] = 0;
            for &(c2, v2) in &self.rows[pr as usize][1..] {
                let s = &mut self.scratch[c2 as usize];
                if *s == 0 {
                    heap.push(Reverse(c2));
                }
                *s = fp.add(*s, fp.mul(nv, v2));
            }
        }
        out
    }

    /// Adds an equation; returns whether the rank grew.
    pub fn insert(&mut self, row: &[(u32, u32)]) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        let inv = self.fp.inv(r[0].1);
        if inv != 1 {
            for t in r.iter_mut() {
                t.1 = self.fp.mul(t.1, inv);
            }
        }
        self.pivot_row[r[0].0 as usize] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    /// Whether a dense vector satisfies every equation.
    pub fn satisfied_by(&self, x: &[u32]) -> bool {
        let fp = self.fp;
        self.rows.iter().all(|row| row.iter().fold(0, |acc, &(c, v)| fp.add(acc, fp.mul(v, x[c as usize]))) == 0)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c] == NONE).collect()
    }

    /// Basis of the solution space, one vector per free column (value 1 there,
    /// 0 at the other free columns).
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let fp = self.fp;
        let free = self.free_columns();
        let nf = free.len();
        // values[c] = vector over the free basis
        let mut values = vec![0u32; self.ncols * nf];
        for (j, &c) in free.iter().enumerate() {
            values[c * nf + j] = 1;
        }
        for c in (0..self.ncols).rev() {
            let pr = self.pivot_row[c];
            if pr == NONE {
                continue;
            }
            let mut acc = vec![0u32; nf];
            for &(c2, v2) in &self.rows[pr as usize][1..] {
                let src = &values[c2 as usize * nf..(c2 as usize + 1) * nf];
                fp.axpy(&mut acc, fp.neg(v2), src);
            }
            values[c * nf..(c + 1) * nf].copy_from_slice(&acc);
        }
        (0..nf).map(|j| (0..self.ncols).map(|c| values[c * nf + j]).collect()).collect()
    }
}
