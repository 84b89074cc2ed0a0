use std::collections::HashMap;
use std::fmt;

use super::kb::{knuth_bendix, KbLimits};
use super::perm::{closure, Permutation};
use super::presentation::Presentation;
use super::rws::{Letter, Roots, Rws};
use super::word::Word;
use crate::error::{Error, Result};

/// Largest finite group we tabulate.
pub const MAX_FINITE_ORDER: usize = 20_000;

/// A finite group H given by a presentation and faithful permutation images,
/// with its confluent rewriting system and a full multiplication table.
///
/// Elements are indexed by their normal forms in shortlex order, so the
/// identity is element 0.
pub struct FiniteGroupData {
    name: String,
    pres: Presentation,
    rws: Rws,
    gens: Vec<Permutation>,
    degree: usize,
    elements: Vec<Permutation>,
    normal_forms: Vec<Vec<Letter>>,
    nf_index: HashMap<Vec<Letter>, u32>,
    perm_index: HashMap<Permutation, u32>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    letter_root: Vec<u32>,
}

impl fmt::Debug for FiniteGroupData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroupData({}, order {})", self.name, self.order())
    }
}

/// Right-action evaluation of a free word on permutation images.
pub fn eval_word(gens: &[Permutation], w: &Word) -> Permutation {
    let degree = gens.iter().map(|g| g.degree()).max().unwrap_or(0);
    let mut r = Permutation::identity(degree);
    for s in &w.syms {
        let g = &gens[s.gen as usize];
        r = if s.inv { r.mul(&g.inverse()) } else { r.mul(g) };
    }
    r
}

impl FiniteGroupData {
    pub fn new(name: &str, pres: Presentation, gens: Vec<Permutation>) -> Result<Self> {
        Self::with_limits(name, pres, gens, KbLimits::default())
    }

    pub fn with_limits(name: &str, pres: Presentation, gens: Vec<Permutation>, limits: KbLimits) -> Result<Self> {
        if gens.len() != pres.num_gens() {
            return Err(Error::InvalidInput(format!(
                "{} permutation images for {} generators",
                gens.len(),
                pres.num_gens()
            )));
        }
        let degree = gens.iter().map(|g| g.degree()).max().unwrap_or(1).max(1);
        let gens: Vec<Permutation> = gens.iter().map(|g| g.extend(degree)).collect();
        for (i, r) in pres.relators().iter().enumerate() {
            if !eval_word(&gens, r).is_identity() {
                return Err(Error::Verification(format!(
                    "relator {} ({}) is not the identity on the permutation images of {name}",
                    i + 1,
                    r.display(pres.names())
                )));
            }
        }
        let m = closure(&gens, degree, MAX_FINITE_ORDER)?.len();
        let rws = knuth_bendix(&pres, limits)?;
        let normal_forms = rws.enumerate(m + 1).map_err(|_| {
            Error::Verification(format!(
                "presentation of {name} defines a group larger than its permutation image ({m})"
            ))
        })?;
        if normal_forms.len() != m {
            return Err(Error::Verification(format!(
                "{name}: {} normal forms but permutation closure has {m} elements",
                normal_forms.len()
            )));
        }
        let letter_perm: Vec<Permutation> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
        let mut elements = Vec::with_capacity(m);
        let mut perm_index = HashMap::with_capacity(m);
        let mut nf_index = HashMap::with_capacity(m);
        for (i, nf) in normal_forms.iter().enumerate() {
            let p = nf.iter().fold(Permutation::identity(degree), |acc, &l| acc.mul(&letter_perm[l as usize]));
            if perm_index.insert(p.clone(), i as u32).is_some() {
                return Err(Error::Verification(format!("{name}: two normal forms map to the same permutation")));
            }
            nf_index.insert(nf.clone(), i as u32);
            elements.push(p);
        }
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = perm_index[&elements[i].mul(&elements[j])];
            }
        }
        let inverse = (0..m).map(|i| perm_index[&elements[i].inverse()]).collect();
        let letter_root = letter_perm.iter().map(|p| perm_index[p]).collect();
        Ok(FiniteGroupData {
            name: name.to_string(),
            pres,
            rws,
            gens,
            degree,
            elements,
            normal_forms,
            nf_index,
            perm_index,
            table,
            inverse,
            letter_root,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }
    pub fn rws(&self) -> &Rws {
        &self.rws
    }
    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }
    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }
    pub fn normal_form(&self, i: u32) -> &[Letter] {
        &self.normal_forms[i as usize]
    }
    pub fn normal_forms(&self) -> &[Vec<Letter>] {
        &self.normal_forms
    }
    pub fn index_of_perm(&self, p: &Permutation) -> Option<u32> {
        self.perm_index.get(&p.extend(self.degree)).copied()
    }
    pub fn index_of_nf(&self, w: &[Letter]) -> Option<u32> {
        self.nf_index.get(w).copied()
    }
    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.elements.len() + b as usize]
    }
    pub fn inv_idx(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }
    pub fn letter_root(&self, l: Letter) -> u32 {
        self.letter_root[l as usize]
    }
    /// Element index of the i-th generator.
    pub fn gen_idx(&self, i: usize) -> u32 {
        self.letter_root[2 * i]
    }

    /// Element of a monoid word over the letters.
    pub fn word_idx(&self, w: &[Letter]) -> u32 {
        w.iter().fold(0, |acc, &l| self.mul_idx(acc, self.letter_root[l as usize]))
    }

    /// Element of a free word in the generators.
    pub fn free_word_idx(&self, w: &Word) -> u32 {
        self.word_idx(&w.letters())
    }

    /// Element order.
    pub fn elem_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul_idx(x, a);
            k += 1;
        }
        k
    }

    /// Words in the generators for every element, found breadth first from
    /// the identity using generators and inverses in letter order.
    pub fn bfs_words(&self, images: &[u32]) -> Result<Vec<Word>> {
        let m = self.order();
        let mut words: Vec<Option<Word>> = vec![None; m];
        words[0] = Some(Word::identity());
        let mut queue = std::collections::VecDeque::from([0u32]);
        let steps: Vec<(u32, u32, bool)> = images
            .iter()
            .enumerate()
            .flat_map(|(j, &g)| [(j as u32, g, false), (j as u32, self.inv_idx(g), true)])
            .collect();
        while let Some(x) = queue.pop_front() {
            for &(j, g, inv) in &steps {
                let y = self.mul_idx(x, g);
                if words[y as usize].is_none() {
                    let w =
                        words[x as usize].as_ref().unwrap().mul(&Word::from_syms(vec![super::word::Sym::new(j, inv)]));
                    words[y as usize] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::Verification("images do not generate the group".into())))
            .collect()
    }
}

impl Roots for FiniteGroupData {
    #[inline]
    fn root(&self, l: Letter) -> u32 {
        self.letter_root[l as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_idx(a, b)
    }
}

/// Why a proposed epimorphism was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    RelatorFails { index: usize, relator: String },
    NotSurjective { generated: usize, order: usize },
    WrongArity { expected: usize, got: usize },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::RelatorFails { index, relator } => {
                write!(f, "relator {} ({relator}) is not mapped to the identity", index + 1)
            }
            Rejection::NotSurjective { generated, order } => {
                write!(f, "images generate a subgroup of order {generated}, not {order}")
            }
            Rejection::WrongArity { expected, got } => write!(f, "expected {expected} images, got {got}"),
        }
    }
}

/// Von Dyck check: relators map to the identity and the images generate H.
pub fn verify_epimorphism(
    h: &FiniteGroupData,
    g: &Presentation,
    images: &[Permutation],
) -> std::result::Result<(), Rejection> {
    if images.len() != g.num_gens() {
        return Err(Rejection::WrongArity { expected: g.num_gens(), got: images.len() });
    }
    let images: Vec<Permutation> = images.iter().map(|p| p.extend(h.degree())).collect();
    for (i, r) in g.relators().iter().enumerate() {
        if !eval_word(&images, r).is_identity() {
            return Err(Rejection::RelatorFails { index: i, relator: r.display(g.names()).to_string() });
        }
    }
    let generated = closure(&images, h.degree(), h.order() + 1).map(|c| c.len()).unwrap_or(h.order() + 1);
    let in_h = images.iter().all(|p| h.index_of_perm(p).is_some());
    if generated != h.order() || !in_h {
        return Err(Rejection::NotSurjective { generated, order: h.order() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::parse::parse_cycles;

    #[test]
    fn a5_tables() {
        let h = fixtures::a5();
        assert_eq!(h.order(), 60);
        for a in 0..60 {
            assert_eq!(h.mul_idx(a, h.inv_idx(a)), 0);
        }
        let ab = h.free_word_idx(&Word::from_signed(&[1, 2]));
        assert_eq!(h.element(ab).cycles_string(), "(1,2,3,4,5)");
    }

    #[test]
    fn normal_forms_multiply() {
        let h = fixtures::s3();
        let rws = h.rws();
        for i in 0..6u32 {
            for j in 0..6u32 {
                let mut w = h.normal_form(i).to_vec();
                w.extend_from_slice(h.normal_form(j));
                assert_eq!(h.index_of_nf(&rws.reduce(&w)), Some(h.mul_idx(i, j)));
            }
        }
    }

    #[test]
    fn epimorphism_checks() {
        let h = fixtures::a5();
        let hei = fixtures::heineken2();
        let imgs = fixtures::heineken_images();
        assert_eq!(verify_epimorphism(&h, &hei, &imgs), Ok(()));
        let id = vec![Permutation::identity(5), Permutation::identity(5)];
        assert!(matches!(verify_epimorphism(&h, &hei, &id), Err(Rejection::NotSurjective { .. })));
        let s3 = fixtures::s3();
        let a5p = h.presentation().clone();
        let s3imgs = vec![parse_cycles("(1,2)", Some(3)).unwrap(), parse_cycles("(1,2,3)", Some(3)).unwrap()];
        assert!(matches!(verify_epimorphism(&s3, &a5p, &s3imgs), Err(Rejection::RelatorFails { index: 2, .. })));
    }

    #[test]
    fn eval_inverse_pairs() {
        let h = fixtures::a5();
        let w = Word::from_signed(&[1, 2, -1, 2, 2]);
        assert!(eval_word(h.gens(), &w.mul(&w.inverse())).is_identity());
        assert!(eval_word(h.gens(), &Word::identity()).is_identity());
    }
}
