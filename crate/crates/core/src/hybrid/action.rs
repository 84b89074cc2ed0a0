use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finfield::{Echelon, Field, Matrix, QuotientMap};
use crate::groups::FiniteGroupData;
use crate::modrep::Representation;

/// Action of the root group H on an F_p-space N, tabulated per element.
///
/// Every module in a quotient tower is inflated from H, so actions on all
/// kernel layers factor through the root group.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    h0: Arc<FiniteGroupData>,
    field: Field,
    d: usize,
    gens: Vec<Matrix>,
    mats: Vec<Matrix>,
}

impl ModuleAction {
    /// Builds the element table from generator matrices.
    pub fn from_gens(h0: &Arc<FiniteGroupData>, field: &Field, gens: Vec<Matrix>) -> Result<Self> {
        if !field.is_prime() {
            return Err(Error::InvalidInput("kernel modules must be over a prime field".into()));
        }
        if gens.len() != h0.num_gens() {
            return Err(Error::Dimension("one action matrix per root generator required".into()));
        }
        let d = gens.first().map(|m| m.rows()).unwrap_or(0);
        let m = h0.order();
        let mut mats: Vec<Option<Matrix>> = vec![None; m];
        mats[0] = Some(Matrix::identity(field, d));
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let y = h0.mul_idx(x, h0.gen_idx(i));
                if mats[y as usize].is_none() {
                    mats[y as usize] = Some(mats[x as usize].as_ref().unwrap().mul(g));
                    queue.push_back(y);
                }
            }
        }
        let mats = mats.into_iter().map(|m| m.expect("generators generate the root group")).collect();
        Ok(ModuleAction { h0: h0.clone(), field: field.clone(), d, gens, mats })
    }

    pub fn from_rep(rep: &Representation) -> Result<Self> {
        Self::from_gens(rep.group(), rep.field(), rep.gens().to_vec())
    }

    /// The zero module.
    pub fn zero(h0: &Arc<FiniteGroupData>, field: &Field) -> Self {
        let gens = vec![Matrix::zeros(field, 0, 0); h0.num_gens()];
        Self::from_gens(h0, field, gens).expect("zero module")
    }

    pub fn root(&self) -> &Arc<FiniteGroupData> {
        &self.h0
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.d
    }
    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }
    pub fn matrix(&self, h: u32) -> &Matrix {
        &self.mats[h as usize]
    }

    /// v acted on by root element h.
    #[inline]
    pub fn act(&self, v: &[u32], h: u32) -> Vec<u32> {
        if h == 0 {
            return v.to_vec();
        }
        self.mats[h as usize].vec_mul(v)
    }

    /// acc += v·h.
    #[inline]
    pub fn act_add(&self, acc: &mut [u32], v: &[u32], h: u32) {
        let fp = self.field.fp();
        if h == 0 {
            for (a, &b) in acc.iter_mut().zip(v) {
                *a = fp.add(*a, b);
            }
            return;
        }
        let m = &self.mats[h as usize];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                fp.axpy(acc, c, m.row(k));
            }
        }
    }

    pub fn to_rep(&self) -> Representation {
        Representation::new_unchecked(self.h0.clone(), self.field.clone(), self.gens.clone())
            .expect("consistent module")
    }

    pub fn is_invariant(&self, sub: &Echelon) -> bool {
        self.gens.iter().all(|g| sub.rows().iter().all(|v| sub.contains(&g.vec_mul(v))))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[&ModuleAction]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidInput("empty direct sum".into()))?;
        let h0 = first.h0.clone();
        let field = first.field.clone();
        let d: usize = parts.iter().map(|p| p.d).sum();
        let mut gens = Vec::with_capacity(h0.num_gens());
        for i in 0..h0.num_gens() {
            let mut m = Matrix::zeros(&field, d, d);
            let mut off = 0;
            for p in parts {
                let g = &p.gens[i];
                for r in 0..p.d {
                    for c in 0..p.d {
                        m.set(off + r, off + c, g.get(r, c));
                    }
                }
                off += p.d;
            }
            gens.push(m);
        }
        Self::from_gens(&h0, &field, gens)
    }

    /// Action on an invariant subspace in the coordinates of its stored basis.
    pub fn restrict(&self, sub: &Echelon) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows = sub
                    .rows()
                    .iter()
                    .map(|v| {
                        sub.coords(&g.vec_mul(v)).ok_or_else(|| Error::InvalidInput("subspace is not invariant".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_rows(&self.field, sub.len(), &rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_gens(&self.h0, &self.field, gens)
    }

    /// Action on N/U.
    pub fn quotient(&self, q: &QuotientMap) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<u32>> = q.free.iter().map(|&c| q.project(g.row(c))).collect();
                Matrix::from_rows(&self.field, q.dim(), &rows)
            })
            .collect();
        Self::from_gens(&self.h0, &self.field, gens)
    }

    /// r-fold diagonal sum.
    pub fn power(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Ok(Self::zero(&self.h0, &self.field));
        }
        let parts: Vec<&ModuleAction> = std::iter::repeat(self).take(r).collect();
        Self::direct_sum(&parts)
    }
}
