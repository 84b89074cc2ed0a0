//! Randomized algebraic laws across the public API.

use std::sync::OnceLock;

use proptest::prelude::*;
use unicover::cover::{cover_ve, default_images, CoverResult, Target};
use unicover::finfield::{Field, Matrix};
use unicover::fixtures;
use unicover::groups::{eval_word, Sym, Word};
use unicover::modrep::classify_simples;
use unicover::DEFAULT_SEED;

fn word(max_gen: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..max_gen, any::<bool>()), 0..12)
        .prop_map(|v| Word::from_syms(v.into_iter().map(|(g, i)| Sym::new(g, i)).collect()))
}

/// The (V,2)-cover of A5 for the absolutely simple 4-dimensional F_2-module.
fn a5_cover() -> &'static CoverResult {
    static CELL: OnceLock<CoverResult> = OnceLock::new();
    CELL.get_or_init(|| {
        let h = fixtures::a5();
        let cat = classify_simples(&h, &Field::prime(2).unwrap(), DEFAULT_SEED).unwrap();
        let abs = cat.iter().position(|m| m.dim() == 4 && m.k == 1).unwrap();
        let target = Target::finite(&h, &default_images(&h, 2)).unwrap();
        cover_ve(&target, &cat, abs, DEFAULT_SEED).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hybrid_group_laws(x in word(2), y in word(2), z in word(2)) {
        let c = a5_cover();
        let g = &c.group;
        let (a, b, d) = (g.eval_word(&c.images, &x), g.eval_word(&c.images, &y), g.eval_word(&c.images, &z));
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &d), g.mul(&a, &g.mul(&b, &d)));
        prop_assert!(g.is_identity(&g.mul(&a, &g.inv(&a))));
        prop_assert_eq!(g.eval_word(&c.images, &x.mul(&y)), g.mul(&a, &b));
    }

    #[test]
    fn permutation_words_are_homomorphic(x in word(2), y in word(2)) {
        let h = fixtures::a5();
        let gens = h.gens();
        prop_assert_eq!(eval_word(gens, &x.mul(&y)), eval_word(gens, &x).mul(&eval_word(gens, &y)));
        prop_assert!(eval_word(gens, &x.mul(&x.inverse())).is_identity());
    }

    #[test]
    fn matrix_inverse_and_rank(seed in any::<u64>(), n in 1usize..7, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        use rand::SeedableRng;
        let f = Field::prime(p).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = Matrix::random(&f, n, n, &mut rng);
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert_eq!(m.rank(), n);
            }
            None => prop_assert!(m.rank() < n),
        }
        prop_assert_eq!(m.rank() + m.nullspace().len(), n);
    }
}

#[test]
fn cover_kernel_is_full() {
    let c = a5_cover();
    assert_eq!(c.kernel_dim(), 16);
    assert_eq!(c.order(), Some(60 << 16));
}
