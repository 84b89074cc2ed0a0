//! Classification of simple modules, radicals and homogeneous quotients.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::hom::{end_degree, hom_space, is_isomorphic};
use super::meataxe::chop;
use super::rep::Representation;
use crate::error::{Error, Result};
use crate::finfield::{Echelon, Field, Matrix, QuotientMap};
use crate::groups::FiniteGroupData;
use crate::par;

/// A simple module with its endomorphism-field degree k and multiplicity
/// r = dim/k in the top of the regular module.
#[derive(Clone, Debug)]
pub struct SimpleModule {
    pub rep: Representation,
    pub k: usize,
    pub r: usize,
}

impl SimpleModule {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }
}

/// Pairwise non-isomorphic simples, trivial module first, ordered by
/// (dimension, discovery).
#[derive(Clone, Debug)]
pub struct SimpleCatalog {
    group: Arc<FiniteGroupData>,
    field: Field,
    entries: Vec<SimpleModule>,
}

impl SimpleCatalog {
    pub fn group(&self) -> &Arc<FiniteGroupData> {
        &self.group
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn entries(&self) -> &[SimpleModule] {
        &self.entries
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn get(&self, i: usize) -> &SimpleModule {
        &self.entries[i]
    }
    pub fn iter(&self) -> impl Iterator<Item = &SimpleModule> {
        self.entries.iter()
    }

    /// Catalog index of a simple module isomorphic to `v`.
    pub fn index_of(&self, v: &Representation) -> Result<Option<usize>> {
        for (i, e) in self.entries.iter().enumerate() {
            if e.dim() == v.dim() && is_isomorphic(&e.rep, v, 0)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Catalog indices of the composition factors of a module, with multiplicity.
    pub fn factor_indices(&self, rep: &Representation, seed: u64) -> Result<Vec<usize>> {
        chop(rep, seed)?
            .iter()
            .map(|f| {
                self.index_of(f)?.ok_or_else(|| Error::Inconsistent("composition factor missing from catalog".into()))
            })
            .collect()
    }
}

/// Conjugacy classes as lists of element indices.
pub fn conjugacy_classes(h: &FiniteGroupData) -> Vec<Vec<u32>> {
    let m = h.order();
    let mut seen = vec![false; m];
    let mut classes = Vec::new();
    for x in 0..m as u32 {
        if seen[x as usize] {
            continue;
        }
        let mut class = vec![x];
        seen[x as usize] = true;
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            for j in 0..h.num_gens() {
                let g = h.gen_idx(j);
                let z = h.mul_idx(h.mul_idx(h.inv_idx(g), y), g);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    class.push(z);
                }
            }
            i += 1;
        }
        classes.push(class);
    }
    classes
}

/// Number of simple F_qH-modules: orbits of g ↦ g^q on the classes of
/// elements of order prime to p.
pub fn simple_module_count(h: &FiniteGroupData, field: &Field) -> usize {
    let classes = conjugacy_classes(h);
    let mut class_of = vec![0usize; h.order()];
    for (c, cl) in classes.iter().enumerate() {
        for &x in cl {
            class_of[x as usize] = c;
        }
    }
    let p = field.p() as usize;
    let q = field.order() as usize;
    let power = |x: u32| (0..q).fold(0u32, |acc, _| h.mul_idx(acc, x));
    let mut done = vec![false; classes.len()];
    let mut count = 0;
    for (c, cl) in classes.iter().enumerate() {
        if done[c] || h.elem_order(cl[0]) % p == 0 {
            continue;
        }
        count += 1;
        let mut x = cl[0];
        while !done[class_of[x as usize]] {
            done[class_of[x as usize]] = true;
            x = power(x);
        }
    }
    count
}

fn add_new(found: &mut Vec<Representation>, cand: Representation) -> Result<bool> {
    for f in found.iter() {
        if f.dim() == cand.dim() && is_isomorphic(f, &cand, 0)?.is_some() {
            return Ok(false);
        }
    }
    found.push(cand);
    Ok(true)
}

/// Simple modules reachable from the trivial and permutation modules by
/// chopping tensor products, stopping once the class count is met.
pub fn classify_simples(h: &Arc<FiniteGroupData>, field: &Field, seed: u64) -> Result<SimpleCatalog> {
    let target = simple_module_count(h, field);
    let mut found = vec![Representation::trivial(h, field)];
    for f in chop(&Representation::permutation_module(h, field), seed)? {
        add_new(&mut found, f)?;
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while found.len() < target {
        let pairs: Vec<(usize, usize)> = (1..found.len())
            .flat_map(|i| (i..found.len()).map(move |j| (i, j)))
            .filter(|pr| !done.contains(pr))
            .collect();
        if pairs.is_empty() {
            return Err(Error::Verification(format!(
                "tensor closure found {} simple modules, expected {target}",
                found.len()
            )));
        }
        let chopped = par::map(&pairs, |&(i, j)| {
            let t = found[i].tensor(&found[j])?;
            chop(&t, seed ^ ((i as u64) << 32 | j as u64))
        });
        for (pr, res) in pairs.iter().zip(chopped) {
            done.insert(*pr);
            for f in res? {
                add_new(&mut found, f)?;
            }
        }
    }
    // stable sort keeps discovery order within a dimension
    found.sort_by_key(|r| r.dim());
    let entries = found
        .into_iter()
        .map(|rep| {
            let k = end_degree(&rep)?;
            Ok(SimpleModule { r: rep.dim() / k, k, rep })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimpleCatalog { group: h.clone(), field: field.clone(), entries })
}

/// Left kernel of the horizontally concatenated homomorphism matrices.
fn common_kernel(rep: &Representation, homs: &[Matrix]) -> Echelon {
    let n = rep.dim();
    let mut e = Echelon::new(rep.field(), n);
    if homs.is_empty() {
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 1;
            e.insert(v);
        }
        return e;
    }
    let mut cat = homs[0].clone();
    for h in &homs[1..] {
        cat = cat.augment(h);
    }
    for v in cat.left_nullspace() {
        e.insert(v);
    }
    e
}

/// Intersection of the kernels of all maps to simple modules.
pub fn radical(rep: &Representation, catalog: &SimpleCatalog) -> Result<Echelon> {
    let mut homs = Vec::new();
    for s in catalog.iter() {
        homs.extend(hom_space(rep, &s.rep)?);
    }
    Ok(common_kernel(rep, &homs))
}

/// V(A): the smallest submodule with V-homogeneous quotient. Returns the
/// quotient module and the projection.
pub fn homogeneous_quotient(rep: &Representation, v: &Representation) -> Result<(Representation, QuotientMap)> {
    let homs = hom_space(rep, v)?;
    let kernel = common_kernel(rep, &homs);
    rep.quotient(&kernel)
}

/// Embeddings V → Q whose images form a direct decomposition of a
/// V-homogeneous module Q.
pub fn decompose_homogeneous(q: &Representation, v: &Representation) -> Result<Vec<Matrix>> {
    let homs = hom_space(v, q)?;
    let mut sum = Echelon::new(q.field(), q.dim());
    let mut out = Vec::new();
    for h in homs {
        if sum.is_full() {
            break;
        }
        let before = sum.len();
        let mut probe = sum.clone();
        for row in h.to_rows() {
            probe.insert(row);
        }
        if probe.len() == before + v.dim() {
            sum = probe;
            out.push(h);
        }
    }
    if !sum.is_full() {
        return Err(Error::Inconsistent(format!(
            "module of dimension {} is not a sum of copies of a {}-dimensional simple",
            q.dim(),
            v.dim()
        )));
    }
    Ok(out)
}

/// Whether a module is a direct sum of simples (its radical vanishes).
pub fn is_semisimple(rep: &Representation, catalog: &SimpleCatalog) -> Result<bool> {
    Ok(radical(rep, catalog)?.is_empty())
}
