use std::sync::Arc;

use super::group::HybridGroup;
use crate::groups::{FiniteGroupData, Letter, Roots, Rws};

/// A group given by a confluent rewriting system whose letters map into the
/// root group H: either H itself or the combined system of a hybrid group.
#[derive(Debug)]
pub struct Base {
    rws: Rws,
    h0: Arc<FiniteGroupData>,
    letter_root: Vec<u32>,
    letter_inverse: Vec<Vec<Letter>>,
    gen_letters: Vec<Letter>,
    parent: Option<Arc<HybridGroup>>,
}

impl Base {
    /// H with its own rewriting system.
    pub fn finite(h0: &Arc<FiniteGroupData>) -> Arc<Self> {
        let rws = h0.rws().clone();
        let n = rws.alphabet_len() as Letter;
        let letter_root: Vec<u32> = (0..n).map(|l| h0.letter_root(l)).collect();
        let letter_inverse = letter_root.iter().map(|&r| h0.normal_form(h0.inv_idx(r)).to_vec()).collect();
        let gen_letters = generator_letters(&rws);
        Arc::new(Base { rws, h0: h0.clone(), letter_root, letter_inverse, gen_letters, parent: None })
    }

    pub(crate) fn from_parts(
        rws: Rws,
        h0: Arc<FiniteGroupData>,
        letter_root: Vec<u32>,
        letter_inverse: Vec<Vec<Letter>>,
        parent: Arc<HybridGroup>,
    ) -> Self {
        let gen_letters = generator_letters(&rws);
        Base { rws, h0, letter_root, letter_inverse, gen_letters, parent: Some(parent) }
    }

    pub fn rws(&self) -> &Rws {
        &self.rws
    }
    pub fn root_group(&self) -> &Arc<FiniteGroupData> {
        &self.h0
    }
    pub fn parent(&self) -> Option<&Arc<HybridGroup>> {
        self.parent.as_ref()
    }
    pub fn alphabet_len(&self) -> usize {
        self.rws.alphabet_len()
    }
    pub fn letter_root(&self, l: Letter) -> u32 {
        self.letter_root[l as usize]
    }

    /// Letters that are independent generators: irreducible and not the
    /// formal inverse of another irreducible letter.
    pub fn gen_letters(&self) -> &[Letter] {
        &self.gen_letters
    }

    /// Root-group image of a word.
    pub fn word_root(&self, w: &[Letter]) -> u32 {
        w.iter().fold(0, |acc, &l| self.h0.mul_idx(acc, self.letter_root[l as usize]))
    }

    pub fn reduce(&self, w: &[Letter]) -> Vec<Letter> {
        self.rws.reduce(w)
    }

    /// A word for the inverse (not reduced).
    pub fn inverse_word(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        for &l in w.iter().rev() {
            out.extend_from_slice(&self.letter_inverse[l as usize]);
        }
        out
    }

    /// Number of hybrid layers below this base.
    pub fn depth(&self) -> usize {
        self.parent.as_ref().map_or(0, |p| p.base().depth() + 1)
    }

    /// Exponent s with |base| = |H|·p^s.
    pub fn kernel_exponent(&self) -> usize {
        self.parent.as_ref().map_or(0, |p| p.kernel_exponent())
    }
}

fn generator_letters(rws: &Rws) -> Vec<Letter> {
    let n = rws.alphabet_len() as Letter;
    (0..n)
        .filter(|&l| {
            if !rws.is_irreducible(&[l]) {
                return false;
            }
            match rws.letters()[l as usize].inverse {
                Some(partner) if partner < l => !rws.is_irreducible(&[partner]),
                _ => true,
            }
        })
        .collect()
}

impl Roots for Base {
    #[inline]
    fn root(&self, l: Letter) -> u32 {
        self.letter_root[l as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.h0.mul_idx(a, b)
    }
}
