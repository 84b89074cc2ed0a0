//! Hybrid groups: extensions of a rewriting-system group by an elementary
//! abelian p-group N, with arithmetic, kernels of generated subgroups,
//! quotients, diagonal products and structure strings.

mod action;
mod base;
mod group;
mod kernel;
mod slp;
mod structure;

pub use action::ModuleAction;
pub use base::Base;
pub use group::{diagonal_element, diagonal_product, n_ops, reset_n_ops, HybridElement, HybridGroup};
pub use kernel::{
    bfs_lifts, complete_lifts, schreier_kernel, sub_hybrid, subgroup_kernel, subgroup_kernel_with_lifts, KernelData,
    Provenance,
};
pub use slp::{LetterLifts, Slp, SlpGroup, SlpNode};
pub use structure::{layer_components, Component, Structure};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::finfield::{Echelon, Field};
    use crate::fixtures;
    use crate::groups::{FiniteGroupData, RuleKind};
    use crate::modrep::Representation;

    fn c4() -> HybridGroup {
        let h = fixtures::c2();
        let f2 = Field::prime(2).unwrap();
        let base = Base::finite(&h);
        let action = Arc::new(ModuleAction::from_rep(&Representation::trivial(&h, &f2)).unwrap());
        let tails = base.rws().rules().iter().map(|r| vec![(r.kind == RuleKind::Tilde) as u32]).collect();
        HybridGroup::new(base, action, tails).unwrap()
    }

    fn random_element<R: Rng>(e: &HybridGroup, rng: &mut R) -> HybridElement {
        let a = e.base().alphabet_len() as u32;
        let w: Vec<u32> = (0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..a)).collect();
        let mut g = e.from_word(&w);
        let p = e.field().p();
        for x in g.n.iter_mut() {
            *x = rng.gen_range(0..p);
        }
        g
    }

    fn check_axioms(e: &HybridGroup, trials: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let id = e.identity();
        let order = e.order().unwrap() as u64;
        for _ in 0..trials {
            let (x, y, z) = (random_element(e, &mut rng), random_element(e, &mut rng), random_element(e, &mut rng));
            assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
            assert_eq!(e.mul(&x, &e.inv(&x)), id);
            assert_eq!(e.mul(&e.inv(&x), &x), id);
            assert_eq!(e.mul(&id, &x), x);
            assert_eq!(order % e.element_order(&x, order).unwrap(), 0);
        }
    }

    fn split_regular(h: &Arc<FiniteGroupData>, p: u32) -> HybridGroup {
        let f = Field::prime(p).unwrap();
        let reg = Representation::regular(h, &f, 1000).unwrap();
        HybridGroup::split(Base::finite(h), Arc::new(ModuleAction::from_rep(&reg).unwrap()))
    }

    #[test]
    fn c4_square() {
        let e = c4();
        let a = e.letter(0);
        assert_eq!(e.mul(&a, &a), e.kernel_element(vec![1]));
        assert_eq!(e.element_order(&a, 4).unwrap(), 4);
        assert_eq!(e.inv(&e.identity()), e.identity());
        assert_eq!(e.order(), Some(4));
        check_axioms(&e, 50);
    }

    #[test]
    fn combined_normal_forms() {
        let h = fixtures::c2();
        let f2 = Field::prime(2).unwrap();
        let triv = Arc::new(ModuleAction::from_rep(&Representation::trivial(&h, &f2)).unwrap());
        let split = HybridGroup::split(Base::finite(&h), triv);
        for e in [split, c4()] {
            let rws = e.combined_rws();
            rws.check_confluent().unwrap();
            let nfs = rws.enumerate(100).unwrap();
            assert_eq!(nfs.len(), 4);
            for w in &nfs {
                let g = e.from_base_word(w);
                assert_eq!(e.to_base_word(&g), *w);
            }
        }
        let e = split_regular(&fixtures::s3(), 3);
        let rws = e.combined_rws();
        rws.check_confluent().unwrap();
        assert_eq!(rws.enumerate(10_000).unwrap().len() as u128, e.order().unwrap());
    }

    #[test]
    fn split_axioms_and_kernels() {
        for (h, p) in [(fixtures::s3(), 2), (fixtures::s3(), 3), (fixtures::c3(), 3)] {
            let e = split_regular(&h, p);
            check_axioms(&e, 40);
            // standard lifts with zero kernel parts: a complement
            let gens: Vec<HybridElement> = (0..h.num_gens()).map(|i| e.letter(2 * i as u32)).collect();
            let kd = subgroup_kernel(&e, &gens).unwrap();
            assert_eq!(kd.dim(), 0);
            // one generator pushed into the kernel
            let mut gens2 = gens.clone();
            gens2[0].n[0] = 1;
            let kd = subgroup_kernel(&e, &gens2).unwrap();
            let oracle = schreier_kernel(&e, &gens2, 1000).unwrap();
            assert_eq!(kd.dim(), oracle.len());
            for v in kd.basis.rows() {
                assert!(oracle.contains(v));
            }
            assert!(e.action().is_invariant(&kd.basis));
            for (v, _) in &kd.spanning {
                let c = kd.combination(v).unwrap();
                assert_eq!(c.iter().filter(|&&x| x != 0).count(), 1);
            }
        }
    }

    #[test]
    fn sub_hybrid_matches_subgroup() {
        let h = fixtures::s3();
        let e = split_regular(&h, 2);
        let mut gens: Vec<HybridElement> = (0..h.num_gens()).map(|i| e.letter(2 * i as u32)).collect();
        gens[1].n[2] = 1;
        let kd = subgroup_kernel(&e, &gens).unwrap();
        let (s, images) = sub_hybrid(&e, &kd, &gens).unwrap();
        check_axioms(&s, 30);
        assert_eq!(s.order().unwrap(), 6 * (1u128 << kd.dim()));
        // relators of the root presentation evaluate consistently in both groups
        for r in h.presentation().relators() {
            let x = e.eval_word(&gens, r);
            let y = s.eval_word(&images, r);
            assert_eq!(kd.ambient(&y.n), x.n);
        }
    }

    #[test]
    fn quotients_and_products() {
        let h = fixtures::s3();
        let e = split_regular(&h, 3);
        let zero = Echelon::new(e.field(), e.dim());
        let (q0, _) = e.quotient(&zero).unwrap();
        assert_eq!(q0.order(), e.order());
        let mut full = Echelon::new(e.field(), e.dim());
        for i in 0..e.dim() {
            let mut v = vec![0; e.dim()];
            v[i] = 1;
            full.insert(v);
        }
        let (q1, _) = e.quotient(&full).unwrap();
        assert_eq!(q1.order(), Some(6));
        let mut line = Echelon::new(e.field(), e.dim());
        line.insert(vec![1, 0, 0, 0, 0, 0]);
        assert!(e.quotient(&line).is_err());

        let c = c4();
        let d = diagonal_product(&[&c, &c]).unwrap();
        assert_eq!(d.order(), Some(8));
        check_axioms(&d, 30);
        let a = d.letter(0);
        assert_eq!(d.mul(&a, &a).n, vec![1, 1]);
        assert!(diagonal_product(&[&c, &e]).is_err());
    }

    #[test]
    fn promoted_base() {
        let c = Arc::new(c4());
        let base = c.promote();
        assert_eq!(base.depth(), 1);
        assert_eq!(base.kernel_exponent(), 1);
        let h = fixtures::c2();
        let f2 = Field::prime(2).unwrap();
        let triv = Arc::new(ModuleAction::from_rep(&Representation::trivial(&h, &f2)).unwrap());
        // C4 ⋉ F2 and the extension with tail on the power rule of the old kernel letter
        let split = HybridGroup::split(base.clone(), triv.clone());
        assert_eq!(split.order(), Some(8));
        check_axioms(&split, 40);
        let tails = base
            .rws()
            .rules()
            .iter()
            .map(|r| vec![(r.lhs.len() == 2 && r.lhs.iter().all(|&l| l == c.kernel_letter(0))) as u32])
            .collect();
        let c8 = HybridGroup::new(base.clone(), triv, tails).unwrap();
        assert_eq!(c8.element_order(&c8.letter(0), 8).unwrap(), 8);
        check_axioms(&c8, 40);
        for l in 0..base.alphabet_len() as u32 {
            let x = c.from_base_word(&base.reduce(&[l]));
            let y = c.from_base_word(&base.reduce(&base.inverse_word(&[l])));
            assert_eq!(c.mul(&x, &y), c.identity());
        }
    }
}
