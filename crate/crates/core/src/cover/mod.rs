//! Covers of H: the wreath construction of the p-cover of rank e (a small
//! group oracle), the split cover for one simple module, and the full
//! (V,e)-cover including one nonsplit block per H² class.

mod fox;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use fox::{fox_derivative, GroupRingElement};

use crate::cohomology::{extension, h2_basis, ParamRws};
use crate::error::{Error, Result};
use crate::finfield::Field;
use crate::groups::{FiniteGroupData, Letter, Sym, Word};
use crate::hybrid::{
    diagonal_product, sub_hybrid, subgroup_kernel_with_lifts, Base, HybridElement, HybridGroup, KernelData,
    LetterLifts, ModuleAction,
};
use crate::modrep::{cyclic_generator, Representation, SimpleCatalog};

/// Default cap on |H| for the wreath construction.
pub const WREATH_CAP: usize = 200;

/// An epimorphism from a finitely presented group with e generators onto a
/// base group, with straight-line lifts of the base's generator letters.
#[derive(Clone, Debug)]
pub struct Target {
    pub base: Arc<Base>,
    /// Normal-form image of each presentation generator.
    pub images: Vec<Vec<Letter>>,
    pub lifts: LetterLifts,
}

impl Target {
    /// Onto the root group, generator j mapping to element `images[j]`.
    pub fn finite(h: &Arc<FiniteGroupData>, images: &[u32]) -> Result<Self> {
        let base = Base::finite(h);
        let lifts = LetterLifts::bfs(&base, images)?;
        let images = images.iter().map(|&g| h.normal_form(g).to_vec()).collect();
        Ok(Target { base, images, lifts })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }
}

/// A cover as the subgroup generated by the images inside an ambient hybrid
/// group, re-expressed as an extension of the base by that kernel.
#[derive(Clone, Debug)]
pub struct CoverResult {
    pub group: HybridGroup,
    pub images: Vec<HybridElement>,
    /// The kernel inside the ambient group.
    pub kernel: KernelData,
    pub ambient_dim: usize,
    /// Dimension of the split blocks (V^r)^e.
    pub split_dim: usize,
    /// Number of nonsplit V blocks.
    pub nonsplit_blocks: usize,
}

impl CoverResult {
    pub fn kernel_dim(&self) -> usize {
        self.group.dim()
    }
    pub fn order(&self) -> Option<u128> {
        self.group.order()
    }
}

fn finish(
    target: &Target,
    ambient: &HybridGroup,
    images: Vec<HybridElement>,
    split_dim: usize,
    nonsplit_blocks: usize,
) -> Result<CoverResult> {
    let gen_lifts = target.lifts.eval(ambient, &images);
    let kernel = subgroup_kernel_with_lifts(ambient, &images, &gen_lifts)?;
    let (group, images) = sub_hybrid(ambient, &kernel, &images)?;
    Ok(CoverResult { group, images, kernel, ambient_dim: ambient.dim(), split_dim, nonsplit_blocks })
}

/// H ⋉ (F_p H)^e with generator j ↦ (ψ(x_j), the identity in block j).
pub fn wreath_p_cover(h: &Arc<FiniteGroupData>, p: u32, images: &[u32], cap: usize) -> Result<CoverResult> {
    let m = h.order();
    if m > cap {
        return Err(Error::Limit(format!("wreath cover needs |H| ≤ {cap}")));
    }
    let field = Field::prime(p)?;
    let target = Target::finite(h, images)?;
    let e = images.len();
    let reg = Representation::regular(h, &field, cap)?;
    let action = Arc::new(ModuleAction::from_rep(&reg)?.power(e)?);
    let ambient = HybridGroup::split(target.base.clone(), action);
    let imgs = target
        .images
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let mut n = vec![0; m * e];
            n[j * m] = 1;
            HybridElement { word: w.clone(), n }
        })
        .collect();
    finish(&target, &ambient, imgs, m * e, 0)
}

/// Number of seeded random words w (length < 10) for which some block of
/// the wreath image of w differs from the image of ∂w/∂x_i in F_p H.
pub fn fox_wreath_failures(h: &Arc<FiniteGroupData>, p: u32, e: usize, words: usize, seed: u64) -> Result<usize> {
    let m = h.order();
    if m > WREATH_CAP {
        return Err(Error::Limit(format!("Fox check needs |H| ≤ {WREATH_CAP}")));
    }
    let imgs = default_images(h, e);
    let target = Target::finite(h, &imgs)?;
    let f = Field::prime(p)?;
    let reg = Representation::regular(h, &f, WREATH_CAP)?;
    let ambient = HybridGroup::split(target.base.clone(), Arc::new(ModuleAction::from_rep(&reg)?.power(e)?));
    let gens: Vec<HybridElement> = target
        .images
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let mut n = vec![0; e * m];
            n[j * m] = 1;
            HybridElement { word: w.clone(), n }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..words {
        let len = rng.gen_range(0..10);
        let w = Word::from_syms((0..len).map(|_| Sym::new(rng.gen_range(0..e as u32), rng.gen_bool(0.5))).collect());
        let x = ambient.eval_word(&gens, &w);
        let bad = (0..e).any(|i| x.n[i * m..(i + 1) * m] != fox_derivative(h, f.fp(), &imgs, &w, i).to_vector(m)[..]);
        failures += bad as usize;
    }
    Ok(failures)
}

/// Default images for the wreath oracle: x_j ↦ the j-th generator of H, and
/// the identity past the generator count.
pub fn default_images(h: &FiniteGroupData, e: usize) -> Vec<u32> {
    (0..e).map(|j| if j < h.num_gens() { h.gen_idx(j) } else { 0 }).collect()
}

struct SplitPart {
    ambient: HybridGroup,
    images: Vec<HybridElement>,
    dim: usize,
}

fn split_part(target: &Target, catalog: &SimpleCatalog, index: usize, seed: u64) -> Result<SplitPart> {
    let s = catalog.get(index);
    let z = cyclic_generator(catalog, index, seed)?;
    let e = target.rank();
    let block = z.len();
    let action = Arc::new(ModuleAction::from_rep(&s.rep)?.power(s.r * e)?);
    let ambient = HybridGroup::split(target.base.clone(), action);
    let images = target
        .images
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let mut n = vec![0; block * e];
            n[j * block..(j + 1) * block].copy_from_slice(&z);
            HybridElement { word: w.clone(), n }
        })
        .collect();
    Ok(SplitPart { ambient, images, dim: block * e })
}

/// The split cover: the subgroup of the base ⋉ (V^r)^e generated by
/// (ψ(x_j), z in block j) for a cyclic generator z of V^r.
pub fn split_cover(target: &Target, catalog: &SimpleCatalog, index: usize, seed: u64) -> Result<CoverResult> {
    let sp = split_part(target, catalog, index, seed)?;
    finish(target, &sp.ambient, sp.images, sp.dim, 0)
}

/// The (V,e)-cover: the split cover glued over the base with one extension
/// per basis element of H²(base, V).
pub fn cover_ve(target: &Target, catalog: &SimpleCatalog, index: usize, seed: u64) -> Result<CoverResult> {
    let sp = split_part(target, catalog, index, seed)?;
    let v = Arc::new(ModuleAction::from_rep(&catalog.get(index).rep)?);
    let prws = ParamRws::new(target.base.clone(), v)?;
    let h2 = h2_basis(&prws)?;
    let exts = h2.reps.iter().map(|y| extension(&prws, &h2.cocycles, y)).collect::<Result<Vec<_>>>()?;
    let mut parts: Vec<&HybridGroup> = vec![&sp.ambient];
    parts.extend(exts.iter());
    let ambient = diagonal_product(&parts)?;
    let pad = ambient.dim() - sp.dim;
    let images = sp
        .images
        .into_iter()
        .map(|mut g| {
            g.n.extend(std::iter::repeat(0).take(pad));
            g
        })
        .collect();
    finish(target, &ambient, images, sp.dim, exts.len())
}
