use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::group::{HybridElement, HybridGroup};
use crate::error::{Error, Result};
use crate::finfield::Echelon;
use crate::groups::Letter;
use crate::par;

/// How a spanning vector of a kernel arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// r(l)⁻¹·l(l) for a rule l → r of the base, evaluated on the lifts.
    Rule(u32),
    /// u_j(l)⁻¹·s_j for the j-th subgroup generator.
    Generator(usize),
    /// A spanning vector acted on by a root generator.
    Conjugate { of: usize, gen: usize },
}

/// S ∩ N for a subgroup S of a hybrid group E that maps onto E's base.
#[derive(Clone, Debug)]
pub struct KernelData {
    /// The kernel, in N's coordinates.
    pub basis: Echelon,
    /// Independent vectors spanning the kernel, with their origin.
    pub spanning: Vec<(Vec<u32>, Provenance)>,
    /// Per base rule, r(l)⁻¹·l(l) ∈ N.
    pub rule_tails: Vec<Vec<u32>>,
    /// Per subgroup generator, u_j(l)⁻¹·s_j ∈ N.
    pub gen_parts: Vec<Vec<u32>>,
    /// Lift in S of every base letter.
    pub lifts: Vec<HybridElement>,
}

impl KernelData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a kernel vector in the stored basis.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.basis.coords(v)
    }

    /// The vector of N with the given basis coordinates.
    pub fn ambient(&self, coords: &[u32]) -> Vec<u32> {
        let f = self.basis.field().clone();
        let mut v = vec![0; self.basis.dim()];
        for (&c, row) in coords.iter().zip(self.basis.rows()) {
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.add(*a, f.mul(c, b));
                }
            }
        }
        v
    }

    /// Coefficients expressing `v` in the spanning vectors.
    pub fn combination(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.basis.field();
        let d = self.basis.dim();
        let m = self.spanning.len();
        let mut aug = Echelon::new(f, d + m);
        for (i, (raw, _)) in self.spanning.iter().enumerate() {
            let mut row = raw.clone();
            row.resize(d + m, 0);
            row[d + i] = 1;
            aug.insert(row);
        }
        let mut x = v.to_vec();
        x.resize(d + m, 0);
        aug.reduce(&mut x);
        if x[..d].iter().any(|&c| c != 0) {
            return None;
        }
        Some(x[d..].iter().map(|&c| f.neg(c)).collect())
    }
}

/// Extends lifts of the generator letters to every base letter: inverse
/// letters get inverses and reducible letters the lift of their normal form.
pub fn complete_lifts(e: &HybridGroup, gen_lifts: &[HybridElement]) -> Result<Vec<HybridElement>> {
    let base = e.base();
    let rws = base.rws();
    let gl = base.gen_letters();
    if gen_lifts.len() != gl.len() {
        return Err(Error::Dimension(format!("{} lifts for {} generator letters", gen_lifts.len(), gl.len())));
    }
    let a = base.alphabet_len();
    let mut lifts: Vec<Option<HybridElement>> = vec![None; a];
    for (&l, x) in gl.iter().zip(gen_lifts) {
        lifts[l as usize] = Some(x.clone());
    }
    for l in 0..a as Letter {
        if lifts[l as usize].is_some() || !rws.is_irreducible(&[l]) {
            continue;
        }
        let partner = rws.letters()[l as usize].inverse.expect("non-generator irreducible letters have partners");
        let x = lifts[partner as usize].as_ref().expect("partner lifted first");
        lifts[l as usize] = Some(e.inv(x));
    }
    for l in 0..a as Letter {
        if lifts[l as usize].is_none() {
            let nf = rws.reduce(&[l]);
            let x = nf
                .iter()
                .fold(e.identity(), |acc, &t| e.mul(&acc, lifts[t as usize].as_ref().expect("irreducible lift")));
            lifts[l as usize] = Some(x);
        }
    }
    Ok(lifts.into_iter().map(|x| x.unwrap()).collect())
}

fn eval_letters(e: &HybridGroup, lifts: &[HybridElement], w: &[Letter]) -> HybridElement {
    w.iter().fold(e.identity(), |acc, &l| e.mul(&acc, &lifts[l as usize]))
}

/// The kernel part of x⁻¹·y for elements over the same base word.
fn difference(e: &HybridGroup, x: &HybridElement, y: &HybridElement) -> Result<Vec<u32>> {
    let d = e.mul(&e.inv(x), y);
    if !d.word.is_empty() {
        return Err(Error::Inconsistent("lifts lie over different base elements".into()));
    }
    Ok(d.n)
}

/// S ∩ N where S = ⟨gens⟩ and `gen_lifts` are elements of S lifting the
/// base's generator letters.
pub fn subgroup_kernel_with_lifts(
    e: &HybridGroup,
    gens: &[HybridElement],
    gen_lifts: &[HybridElement],
) -> Result<KernelData> {
    let lifts = complete_lifts(e, gen_lifts)?;
    let rules = e.base().rws().rules();
    let rule_tails = par::map(rules, |r| {
        let l = eval_letters(e, &lifts, &r.lhs);
        let rr = eval_letters(e, &lifts, &r.rhs);
        difference(e, &rr, &l)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let gen_parts = par::map(gens, |s| difference(e, &eval_letters(e, &lifts, &s.word), s))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let f = e.field();
    let mut basis = Echelon::new(f, e.dim());
    let mut spanning = Vec::new();
    let seeds = rule_tails
        .iter()
        .enumerate()
        .map(|(i, t)| (t, Provenance::Rule(i as u32)))
        .chain(gen_parts.iter().enumerate().map(|(j, t)| (t, Provenance::Generator(j))));
    let mut queue = VecDeque::new();
    for (v, prov) in seeds {
        if basis.insert(v.clone()).is_some() {
            queue.push_back(spanning.len());
            spanning.push((v.clone(), prov));
        }
    }
    let action = e.action();
    while let Some(i) = queue.pop_front() {
        if basis.is_full() {
            break;
        }
        for (g, m) in action.gens().iter().enumerate() {
            let w = m.vec_mul(&spanning[i].0);
            if basis.insert(w.clone()).is_some() {
                queue.push_back(spanning.len());
                spanning.push((w, Provenance::Conjugate { of: i, gen: g }));
            }
        }
    }
    Ok(KernelData { basis, spanning, rule_tails, gen_parts, lifts })
}

/// Lifts of the generator letters of a root-group base, as words in `gens`.
pub fn bfs_lifts(e: &HybridGroup, gens: &[HybridElement]) -> Result<Vec<HybridElement>> {
    let base = e.base();
    if base.parent().is_some() {
        return Err(Error::InvalidInput("word lifts need the root group as base".into()));
    }
    let h0 = base.root_group();
    let roots: Vec<u32> = gens.iter().map(|s| base.word_root(&s.word)).collect();
    let words = h0.bfs_words(&roots)?;
    Ok(base.gen_letters().iter().map(|&l| e.eval_word(gens, &words[base.letter_root(l) as usize])).collect())
}

/// S ∩ N for S = ⟨gens⟩ over the root-group base.
pub fn subgroup_kernel(e: &HybridGroup, gens: &[HybridElement]) -> Result<KernelData> {
    let gl = bfs_lifts(e, gens)?;
    subgroup_kernel_with_lifts(e, gens, &gl)
}

/// S ∩ N by Schreier generators over a transversal; only for small bases.
pub fn schreier_kernel(e: &HybridGroup, gens: &[HybridElement], cap: usize) -> Result<Echelon> {
    let mut reps: HashMap<Vec<Letter>, HybridElement> = HashMap::new();
    let mut order: Vec<Vec<Letter>> = Vec::new();
    let id = e.identity();
    reps.insert(id.word.clone(), id.clone());
    order.push(id.word.clone());
    let mut i = 0;
    while i < order.len() {
        let t = reps[&order[i]].clone();
        for s in gens {
            let x = e.mul(&t, s);
            if !reps.contains_key(&x.word) {
                if reps.len() >= cap {
                    return Err(Error::Limit(format!("transversal exceeds {cap}")));
                }
                order.push(x.word.clone());
                reps.insert(x.word.clone(), x);
            }
        }
        i += 1;
    }
    let mut basis = Echelon::new(e.field(), e.dim());
    for w in &order {
        let t = &reps[w];
        for s in gens {
            let x = e.mul(t, s);
            let k = e.mul(&x, &e.inv(&reps[&x.word]));
            debug_assert!(k.word.is_empty());
            basis.insert(k.n);
        }
    }
    Ok(basis)
}

/// S as an extension of the base by S ∩ N, with the images of `gens`.
pub fn sub_hybrid(
    e: &HybridGroup,
    kd: &KernelData,
    gens: &[HybridElement],
) -> Result<(HybridGroup, Vec<HybridElement>)> {
    let action = Arc::new(e.action().restrict(&kd.basis)?);
    let coords = |v: &Vec<u32>| kd.coords(v).ok_or_else(|| Error::Inconsistent("vector outside the kernel".into()));
    let tails = kd.rule_tails.iter().map(coords).collect::<Result<Vec<_>>>()?;
    let g = HybridGroup::new(e.base().clone(), action, tails)?;
    let images = gens
        .iter()
        .zip(&kd.gen_parts)
        .map(|(s, v)| Ok(HybridElement { word: s.word.clone(), n: coords(v)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok((g, images))
}
