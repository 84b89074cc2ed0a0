use std::collections::BTreeMap;

use crate::finfield::Fp;
use crate::groups::{FiniteGroupData, Word};

/// Finitely supported F_p-combination of elements of H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElement {
    fp: Fp,
    coeffs: BTreeMap<u32, u32>,
}

impl GroupRingElement {
    pub fn zero(fp: Fp) -> Self {
        GroupRingElement { fp, coeffs: BTreeMap::new() }
    }

    pub fn basis(fp: Fp, g: u32) -> Self {
        let mut x = Self::zero(fp);
        x.add_term(g, 1);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, g: u32) -> u32 {
        self.coeffs.get(&g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.coeffs.iter().map(|(&g, &c)| (g, c))
    }

    pub fn add_term(&mut self, g: u32, c: u32) {
        let v = self.fp.add(self.coeff(g), c % self.fp.p);
        if v == 0 {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut x = self.clone();
        for (g, c) in other.terms() {
            x.add_term(g, c);
        }
        x
    }

    pub fn neg(&self) -> Self {
        let mut x = Self::zero(self.fp);
        for (g, c) in self.terms() {
            x.add_term(g, self.fp.neg(c));
        }
        x
    }

    /// Right multiplication by a group element.
    pub fn mul_elem(&self, h: &FiniteGroupData, k: u32) -> Self {
        let mut x = Self::zero(self.fp);
        for (g, c) in self.terms() {
            x.add_term(h.mul_idx(g, k), c);
        }
        x
    }

    /// Coefficient vector indexed by element.
    pub fn to_vector(&self, m: usize) -> Vec<u32> {
        let mut v = vec![0; m];
        for (g, c) in self.terms() {
            v[g as usize] = c;
        }
        v
    }
}

/// Image in F_p H of the Fox derivative ∂w/∂x_i, with x_j ↦ images[j]:
/// an occurrence w = a·x_i·b contributes ψ(b) and w = a·x_i⁻¹·b contributes
/// −ψ(x_i⁻¹·b).
pub fn fox_derivative(h: &FiniteGroupData, fp: Fp, images: &[u32], w: &Word, i: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero(fp);
    let mut suffix = 0u32;
    for s in w.syms.iter().rev() {
        let x = images[s.gen as usize];
        let xi = if s.inv { h.inv_idx(x) } else { x };
        if s.gen as usize == i {
            if s.inv {
                out.add_term(h.mul_idx(xi, suffix), fp.neg(1));
            } else {
                out.add_term(suffix, 1);
            }
        }
        suffix = h.mul_idx(xi, suffix);
    }
    out
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::finfield::Field;
    use crate::fixtures;
    use crate::groups::Sym;

    fn random_word<R: Rng>(rng: &mut R, e: usize, len: usize) -> Word {
        Word::from_syms((0..len).map(|_| Sym::new(rng.gen_range(0..e as u32), rng.gen_bool(0.5))).collect())
    }

    #[test]
    fn leibniz_and_inverse() {
        let h = fixtures::s3();
        let fp = Field::prime(3).unwrap().fp();
        let images = [h.gen_idx(0), h.gen_idx(1)];
        assert!(fox_derivative(&h, fp, &images, &Word::identity(), 0).is_zero());
        assert_eq!(fox_derivative(&h, fp, &images, &Word::gen(0), 0), GroupRingElement::basis(fp, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (lu, lv) = (rng.gen_range(0..8), rng.gen_range(0..8));
            let u = random_word(&mut rng, 2, lu);
            let v = random_word(&mut rng, 2, lv);
            let psi = |w: &Word| {
                w.syms.iter().fold(0, |acc, s| {
                    let x = images[s.gen as usize];
                    h.mul_idx(acc, if s.inv { h.inv_idx(x) } else { x })
                })
            };
            for i in 0..2 {
                let lhs = fox_derivative(&h, fp, &images, &u.mul(&v), i);
                let rhs = fox_derivative(&h, fp, &images, &u, i)
                    .mul_elem(&h, psi(&v))
                    .add(&fox_derivative(&h, fp, &images, &v, i));
                assert_eq!(lhs, rhs);
                let inv = fox_derivative(&h, fp, &images, &u.inverse(), i);
                let expect = fox_derivative(&h, fp, &images, &u, i).mul_elem(&h, h.inv_idx(psi(&u))).neg();
                assert_eq!(inv, expect);
            }
        }
    }
}
