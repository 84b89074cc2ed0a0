//! Second cohomology through parametrized rewriting: every rule that may
//! carry a tail gets d variables, confluence of the critical pairs gives the
//! cocycles, substituting a ↦ a·λ(a) gives the coboundaries.

mod oracle;
mod param;
mod space;

pub use oracle::{cocycle_oracle, ORACLE_MAX_DIM, ORACLE_MAX_ORDER};
pub use param::{AffineForm, ParamRws, TailedWord, Token};
pub use space::{
    coboundary_space, coboundary_vector, coboundary_vectors, cocycle_space, extension, h2_basis, has_complement,
    rule_tails, tails_vector, CocycleSpace, H2Basis,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::finfield::Field;
    use crate::fixtures;
    use crate::groups::{FiniteGroupData, RuleKind};
    use crate::hybrid::{diagonal_product, Base, HybridGroup, ModuleAction};
    use crate::modrep::{classify_simples, Representation};
    use crate::DEFAULT_SEED;

    fn trivial(h: &Arc<FiniteGroupData>, p: u32) -> Arc<ModuleAction> {
        Arc::new(ModuleAction::from_rep(&Representation::trivial(h, &Field::prime(p).unwrap())).unwrap())
    }

    fn prws(h: &Arc<FiniteGroupData>, v: Arc<ModuleAction>) -> ParamRws {
        ParamRws::new(Base::finite(h), v).unwrap()
    }

    /// Every element of F_p^n, for exhaustive checks.
    fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|v| (0..p).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }

    fn span(basis: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
        let fp = Field::prime(p).unwrap().fp();
        all_vectors(p, basis.len())
            .into_iter()
            .map(|c| {
                let mut v = vec![0; basis.first().map_or(0, |b| b.len())];
                for (&ci, b) in c.iter().zip(basis) {
                    fp.axpy(&mut v, ci, b);
                }
                v
            })
            .collect()
    }

    /// Whether some choice of lifts over the transversal of N gives a complement.
    fn brute_force_splits(e: &HybridGroup) -> bool {
        let p = e.field().p();
        let gl = e.base().gen_letters().to_vec();
        let choices = all_vectors(p, gl.len() * e.dim());
        choices.into_iter().any(|x| {
            let lifts: Vec<_> = gl
                .iter()
                .enumerate()
                .map(|(i, &l)| {
                    let mut g = e.letter(l);
                    g.n = x[i * e.dim()..(i + 1) * e.dim()].to_vec();
                    g
                })
                .collect();
            let all = crate::hybrid::complete_lifts(e, &lifts).unwrap();
            e.base().rws().rules().iter().all(|r| {
                let ev = |w: &[u32]| w.iter().fold(e.identity(), |acc, &l| e.mul(&acc, &all[l as usize]));
                ev(&r.lhs) == ev(&r.rhs)
            })
        })
    }

    #[test]
    fn c2_trivial() {
        let h = fixtures::c2();
        let pr = prws(&h, trivial(&h, 2));
        assert_eq!(pr.num_vars(), 1);
        // a·a → (ε, x1)
        let a2 = pr.clean_reduce(&[Token::Letter(0), Token::Letter(0)]);
        assert!(a2.word.is_empty());
        assert_eq!(a2.form.blocks.len(), 1);
        let a4 = pr.clean_reduce(&vec![Token::Letter(0); 4]);
        assert!(a4.word.is_empty() && a4.form.blocks.is_empty());
        let b = pr.clean_reduce(&[Token::Vector(vec![1]), Token::Letter(0), Token::Vector(vec![1])]);
        assert_eq!(b.word, vec![0]);
        assert_eq!(b.form.constant, vec![0]);
        let h2 = h2_basis(&pr).unwrap();
        assert_eq!(h2.cocycles.dim(), 1);
        assert_eq!(h2.coboundaries.len(), 0);
        assert_eq!(h2.reps, vec![vec![1]]);
        let e = extension(&pr, &h2.cocycles, &h2.reps[0]).unwrap();
        assert_eq!(e.element_order(&e.letter(0), 8).unwrap(), 4);
        assert!(has_complement(&e).unwrap().is_none());
        assert!(!brute_force_splits(&e));
        let rws = e.combined_rws();
        rws.check_confluent().unwrap();
        // R_M for the kernel letter: b·a → a·b
        let bl = e.kernel_letter(0);
        assert!(rws.rules().iter().any(|r| r.lhs == vec![bl, 0] && r.rhs == vec![0, bl]));
        assert!(rws.rules().iter().any(|r| r.lhs == vec![bl, bl] && r.rhs.is_empty()));
    }

    #[test]
    fn oracle_small_groups() {
        assert_eq!(cocycle_oracle(&trivial(&fixtures::c2(), 2)).unwrap(), 1);
        assert_eq!(cocycle_oracle(&trivial(&fixtures::c3(), 3)).unwrap(), 1);
        assert_eq!(cocycle_oracle(&trivial(&fixtures::s3(), 3)).unwrap(), 0);
        assert_eq!(cocycle_oracle(&trivial(&fixtures::s3(), 2)).unwrap(), 1);
    }

    #[test]
    fn agrees_with_oracle() {
        for h in [fixtures::c2(), fixtures::c3(), fixtures::s3()] {
            for p in [2u32, 3] {
                let cat = classify_simples(&h, &Field::prime(p).unwrap(), DEFAULT_SEED).unwrap();
                for s in cat.iter() {
                    let v = Arc::new(ModuleAction::from_rep(&s.rep).unwrap());
                    let pr = prws(&h, v.clone());
                    let h2 = h2_basis(&pr).unwrap();
                    assert_eq!(h2.dim(), cocycle_oracle(&v).unwrap(), "{} p={p} dim {}", h.name(), s.dim());
                    for b in h2.coboundaries.rows() {
                        assert!(h2.cocycles.contains(b));
                    }
                    assert!(h2.coboundaries.len() <= pr.base().gen_letters().len() * pr.dim());
                }
            }
        }
    }

    #[test]
    fn complements_exhaustive() {
        for (h, p) in [(fixtures::c2(), 2), (fixtures::c3(), 3), (fixtures::s3(), 2), (fixtures::s3(), 3)] {
            let cat = classify_simples(&h, &Field::prime(p).unwrap(), DEFAULT_SEED).unwrap();
            for s in cat.iter().filter(|s| s.dim() <= 2) {
                let pr = prws(&h, Arc::new(ModuleAction::from_rep(&s.rep).unwrap()));
                let h2 = h2_basis(&pr).unwrap();
                for y in span(&h2.cocycles.basis, p) {
                    let e = extension(&pr, &h2.cocycles, &y).unwrap();
                    e.combined_rws().check_confluent().unwrap();
                    let splits = has_complement(&e).unwrap().is_some();
                    assert_eq!(splits, h2.coboundaries.contains(&y));
                    if e.dim() * e.base().gen_letters().len() <= 4 {
                        assert_eq!(splits, brute_force_splits(&e));
                    }
                }
            }
        }
    }

    #[test]
    fn non_cocycle_rejected() {
        let h = fixtures::s3();
        let pr = prws(&h, trivial(&h, 3));
        let cs = cocycle_space(&pr).unwrap();
        let bad = (0..pr.num_vars()).map(|i| (i == 0) as u32).collect::<Vec<_>>();
        if !cs.contains(&bad) {
            assert!(extension(&pr, &cs, &bad).is_err());
        }
        assert_eq!(pr.num_vars(), pr.base().rws().rules_of_kind(RuleKind::Tilde).len());
    }

    #[test]
    fn sum_law() {
        // extension(β) and extension(γ) glued along the anti-diagonal behave like extension(β+γ)
        let h = fixtures::c2();
        let pr = prws(&h, trivial(&h, 2));
        let cs = cocycle_space(&pr).unwrap();
        let fp = pr.field().fp();
        for beta in span(&cs.basis, 2) {
            for gamma in span(&cs.basis, 2) {
                let eb = extension(&pr, &cs, &beta).unwrap();
                let eg = extension(&pr, &cs, &gamma).unwrap();
                let prod = diagonal_product(&[&eb, &eg]).unwrap();
                let mut anti = crate::finfield::Echelon::new(pr.field(), 2);
                anti.insert(vec![1, fp.neg(1)]);
                let (q, _) = prod.quotient(&anti).unwrap();
                let sum: Vec<u32> = beta.iter().zip(&gamma).map(|(&a, &b)| fp.add(a, b)).collect();
                let es = extension(&pr, &cs, &sum).unwrap();
                assert_eq!(q.order(), es.order());
                assert_eq!(has_complement(&q).unwrap().is_some(), has_complement(&es).unwrap().is_some());
            }
        }
    }

    #[test]
    fn a5_trivial_f2() {
        let h = fixtures::a5();
        let pr = prws(&h, trivial(&h, 2));
        let h2 = h2_basis(&pr).unwrap();
        assert_eq!(h2.dim(), 1);
        let e = extension(&pr, &h2.cocycles, &h2.reps[0]).unwrap();
        assert_eq!(e.order(), Some(120));
        assert!(has_complement(&e).unwrap().is_none());
        let split = extension(&pr, &h2.cocycles, &vec![0; pr.num_vars()]).unwrap();
        assert!(has_complement(&split).unwrap().is_some());
    }
}
