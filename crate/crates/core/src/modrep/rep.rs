use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finfield::{Echelon, Field, Matrix, QuotientMap};
use crate::groups::FiniteGroupData;

/// Default cap on |H| for building the regular module.
pub const REGULAR_MODULE_CAP: usize = 1000;

/// A finite-dimensional F H-module: one matrix per generator of H acting on
/// row vectors.
#[derive(Clone)]
pub struct Representation {
    group: Arc<FiniteGroupData>,
    field: Field,
    dim: usize,
    gens: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Representation(dim {} over {:?} for {})", self.dim, self.field, self.group.name())
    }
}

impl Representation {
    /// Checks invertibility and that every relator acts trivially.
    pub fn new(group: Arc<FiniteGroupData>, field: Field, gens: Vec<Matrix>) -> Result<Self> {
        let rep = Self::new_unchecked(group, field, gens)?;
        let mut invs = Vec::with_capacity(rep.gens.len());
        for g in &rep.gens {
            invs.push(g.inverse().ok_or_else(|| Error::InvalidInput("singular generator matrix".into()))?);
        }
        for r in rep.group.presentation().relators() {
            let m = r.syms.iter().fold(Matrix::identity(&rep.field, rep.dim), |acc, s| {
                acc.mul(if s.inv { &invs[s.gen as usize] } else { &rep.gens[s.gen as usize] })
            });
            if !m.is_identity() {
                return Err(Error::InvalidInput("generator matrices do not satisfy the relators".into()));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(group: Arc<FiniteGroupData>, field: Field, gens: Vec<Matrix>) -> Result<Self> {
        if gens.len() != group.num_gens() {
            return Err(Error::InvalidInput(format!("{} matrices for {} generators", gens.len(), group.num_gens())));
        }
        let dim = gens.first().map(|m| m.rows()).unwrap_or(0);
        if gens.iter().any(|m| m.rows() != dim || m.cols() != dim || *m.field() != field) {
            return Err(Error::Dimension("generator matrices must be square of equal size over one field".into()));
        }
        Ok(Representation { group, field, dim, gens })
    }

    pub fn trivial(group: &Arc<FiniteGroupData>, field: &Field) -> Self {
        let gens = (0..group.num_gens()).map(|_| Matrix::identity(field, 1)).collect();
        Representation { group: group.clone(), field: field.clone(), dim: 1, gens }
    }

    /// Natural permutation module on the points of H's permutation action.
    pub fn permutation_module(group: &Arc<FiniteGroupData>, field: &Field) -> Self {
        let gens = group.gens().iter().map(|g| Matrix::permutation(field, g.images())).collect();
        Representation { group: group.clone(), field: field.clone(), dim: group.degree(), gens }
    }

    /// F_p H with basis indexed by elements and generators acting by right multiplication.
    pub fn regular(group: &Arc<FiniteGroupData>, field: &Field, cap: usize) -> Result<Self> {
        let m = group.order();
        if m > cap {
            return Err(Error::Limit(format!("regular module of dimension {m} exceeds cap {cap}")));
        }
        let gens = (0..group.num_gens())
            .map(|i| {
                let g = group.gen_idx(i);
                let images: Vec<u32> = (0..m as u32).map(|x| group.mul_idx(x, g)).collect();
                Matrix::permutation(field, &images)
            })
            .collect();
        Ok(Representation { group: group.clone(), field: field.clone(), dim: m, gens })
    }

    pub fn group(&self) -> &Arc<FiniteGroupData> {
        &self.group
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn transpose(&self) -> Self {
        Representation {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            gens: self.gens.iter().map(|m| m.transpose()).collect(),
        }
    }

    pub fn tensor(&self, other: &Representation) -> Result<Self> {
        let gens = self.gens.iter().zip(&other.gens).map(|(a, b)| a.kronecker(b)).collect::<Result<Vec<_>>>()?;
        Ok(Representation { group: self.group.clone(), field: self.field.clone(), dim: self.dim * other.dim, gens })
    }

    pub fn direct_sum(&self, other: &Representation) -> Self {
        let n = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(&self.field, n, n);
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m.set(r, c, a.get(r, c));
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(self.dim + r, self.dim + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        Representation { group: self.group.clone(), field: self.field.clone(), dim: n, gens }
    }

    /// r-fold direct sum with diagonal action.
    pub fn power(&self, r: usize) -> Self {
        let mut out = Representation {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: 0,
            gens: vec![Matrix::zeros(&self.field, 0, 0); self.gens.len()],
        };
        for _ in 0..r {
            out = out.direct_sum(self);
        }
        out
    }

    pub fn extend_scalars(&self, target: &Field) -> Result<Self> {
        let gens = self.gens.iter().map(|m| m.extend_to(target)).collect::<Result<Vec<_>>>()?;
        Ok(Representation { group: self.group.clone(), field: target.clone(), dim: self.dim, gens })
    }

    /// Action on a submodule in the coordinates of its stored basis.
    pub fn restrict(&self, sub: &Echelon) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|m| {
                let rows = sub
                    .rows()
                    .iter()
                    .map(|b| {
                        sub.coords(&m.vec_mul(b)).ok_or_else(|| Error::InvalidInput("subspace is not invariant".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Matrix::from_rows(&self.field, sub.len(), &rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation { group: self.group.clone(), field: self.field.clone(), dim: sub.len(), gens })
    }

    /// Action on the quotient by an invariant subspace, with its projection.
    pub fn quotient(&self, sub: &Echelon) -> Result<(Self, QuotientMap)> {
        let q = QuotientMap::new(sub);
        let gens = self
            .gens
            .iter()
            .map(|m| {
                let rows: Vec<Vec<u32>> = q.free.iter().map(|&c| q.project(m.row(c))).collect();
                Matrix::from_rows(&self.field, q.dim(), &rows)
            })
            .collect();
        Ok((Representation { group: self.group.clone(), field: self.field.clone(), dim: q.dim(), gens }, q))
    }

    /// Whether a subspace is invariant under every generator.
    pub fn is_invariant(&self, sub: &Echelon) -> bool {
        self.gens.iter().all(|m| sub.rows().iter().all(|b| sub.contains(&m.vec_mul(b))))
    }

    /// Matrix of every group element, indexed like the group's elements.
    pub fn element_matrices(&self) -> Vec<Matrix> {
        let g = &self.group;
        let m = g.order();
        let mut mats: Vec<Option<Matrix>> = vec![None; m];
        mats[0] = Some(Matrix::identity(&self.field, self.dim));
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (i, gen) in self.gens.iter().enumerate() {
                let y = g.mul_idx(x, g.gen_idx(i));
                if mats[y as usize].is_none() {
                    mats[y as usize] = Some(mats[x as usize].as_ref().unwrap().mul(gen));
                    queue.push_back(y);
                }
            }
        }
        mats.into_iter().map(|m| m.expect("generators generate the group")).collect()
    }
}

/// Smallest invariant subspace containing the seeds.
pub fn spin(rep: &Representation, seeds: &[Vec<u32>]) -> Echelon {
    spin_with(rep.field(), rep.dim(), rep.gens(), seeds)
}

pub(crate) fn spin_with(field: &Field, dim: usize, gens: &[Matrix], seeds: &[Vec<u32>]) -> Echelon {
    let mut e = Echelon::new(field, dim);
    let mut queue = VecDeque::new();
    for s in seeds {
        if let Some(i) = e.insert(s.clone()) {
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        if e.is_full() {
            break;
        }
        let v = e.rows()[i].clone();
        for g in gens {
            if let Some(j) = e.insert(g.vec_mul(&v)) {
                queue.push_back(j);
            }
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn spin_examples() {
        let h = fixtures::s3();
        let f3 = Field::prime(3).unwrap();
        let perm = Representation::permutation_module(&h, &f3);
        assert_eq!(spin(&perm, &[vec![0, 0, 0]]).len(), 0);
        assert_eq!(spin(&perm, &[vec![1, 1, 1]]).len(), 1);
        assert_eq!(spin(&perm, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).len(), 3);
    }

    #[test]
    fn regular_dims() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Representation::regular(&fixtures::c2(), &f2, 1000).unwrap().dim(), 2);
        assert!(Representation::regular(&fixtures::a5(), &f2, 10).is_err());
        let r = Representation::regular(&fixtures::a5(), &f2, 1000).unwrap();
        assert!(Representation::new(r.group().clone(), f2, r.gens().to_vec()).is_ok());
    }

    #[test]
    fn element_matrices_are_homomorphic() {
        let h = fixtures::a5();
        let f2 = Field::prime(2).unwrap();
        let perm = Representation::permutation_module(&h, &f2);
        let mats = perm.element_matrices();
        for a in [3u32, 17, 42] {
            for b in [5u32, 29] {
                assert_eq!(mats[a as usize].mul(&mats[b as usize]), mats[h.mul_idx(a, b) as usize]);
            }
        }
    }

    #[test]
    fn quotient_and_restrict() {
        let h = fixtures::s3();
        let f3 = Field::prime(3).unwrap();
        let perm = Representation::permutation_module(&h, &f3);
        let fixed = spin(&perm, &[vec![1, 1, 1]]);
        let sub = perm.restrict(&fixed).unwrap();
        assert_eq!(sub.dim(), 1);
        let (q, _) = perm.quotient(&fixed).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(Representation::new(q.group().clone(), f3, q.gens().to_vec()).is_ok());
    }
}
