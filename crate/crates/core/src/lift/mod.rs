//! Lifting an epimorphism G → H to larger quotients whose kernels are
//! elementary abelian p-groups: one simple module at a time through its
//! cover, all modules at once as a subdirect product, and iterated rounds.

mod slps;

use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::cover::{cover_ve, Target};
use crate::error::{Error, Result};
use crate::finfield::{Echelon, Field};
use crate::groups::{verify_epimorphism, FiniteGroupData, Permutation, Presentation};
use crate::hybrid::{
    diagonal_element, diagonal_product, layer_components, n_ops, reset_n_ops, sub_hybrid, subgroup_kernel_with_lifts,
    Component, HybridElement, HybridGroup, Structure,
};
use crate::modrep::{classify_simples, spin, SimpleCatalog};
use crate::par;

/// Default bound on the dimension of the modules tried in each round.
pub const DEFAULT_MAX_DIM: usize = 8;

/// Which simple modules a round tries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleFilter {
    MaxDim(usize),
    Indices(Vec<usize>),
}

impl Default for ModuleFilter {
    fn default() -> Self {
        ModuleFilter::MaxDim(DEFAULT_MAX_DIM)
    }
}

impl ModuleFilter {
    pub fn select(&self, catalog: &SimpleCatalog) -> Vec<usize> {
        match self {
            ModuleFilter::MaxDim(d) => (0..catalog.len()).filter(|&i| catalog.get(i).dim() <= *d).collect(),
            ModuleFilter::Indices(v) => v.iter().copied().filter(|&i| i < catalog.len()).collect(),
        }
    }
}

/// One completed round.
#[derive(Clone, Debug, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    /// |quotient| in decimal (exact, arbitrary size).
    pub order: String,
    pub kernel_exponent: usize,
    pub structure: String,
    pub canonical: String,
    pub alias: String,
    pub layer: Vec<Component>,
    /// Catalog indices of the modules that lifted.
    pub lifted: Vec<usize>,
    pub seconds: f64,
    pub n_ops: u64,
    pub fixed_point: bool,
}

/// An epimorphism from G onto the current quotient.
#[derive(Clone, Debug)]
pub struct EpiState {
    pub presentation: Presentation,
    pub p: u32,
    pub catalog: Arc<SimpleCatalog>,
    pub target: Target,
    /// The current quotient as an extension of the previous one; `None` in round 0.
    pub quotient: Option<Arc<HybridGroup>>,
    pub round: usize,
    pub structure: Structure,
    pub history: Vec<RoundRecord>,
    pub seed: u64,
}

/// The lift of the current quotient by one module.
#[derive(Clone, Debug)]
pub struct ModuleLift {
    pub module: usize,
    pub group: HybridGroup,
    pub images: Vec<HybridElement>,
    pub cover_dim: usize,
}

/// |H|·p^s in decimal.
pub fn order_string(h_order: usize, p: u32, s: usize) -> String {
    let mut digits: Vec<u32> = h_order.to_string().bytes().rev().map(|b| (b - b'0') as u32).collect();
    for _ in 0..s {
        let mut carry = 0;
        for d in digits.iter_mut() {
            let x = *d * p + carry;
            *d = x % 10;
            carry = x / 10;
        }
        while carry > 0 {
            digits.push(carry % 10);
            carry /= 10;
        }
    }
    digits.iter().rev().map(|d| char::from(b'0' + *d as u8)).collect()
}

impl EpiState {
    /// Round 0: checks that the images define an epimorphism onto H and
    /// classifies the simple F_pH-modules.
    pub fn new(
        presentation: Presentation,
        h: &Arc<FiniteGroupData>,
        images: &[Permutation],
        p: u32,
        seed: u64,
    ) -> Result<Self> {
        verify_epimorphism(h, &presentation, images).map_err(|r| Error::Verification(r.to_string()))?;
        let field = Field::prime(p)?;
        let catalog = Arc::new(classify_simples(h, &field, seed)?);
        Self::with_catalog(presentation, h, images, catalog, seed)
    }

    pub fn with_catalog(
        presentation: Presentation,
        h: &Arc<FiniteGroupData>,
        images: &[Permutation],
        catalog: Arc<SimpleCatalog>,
        seed: u64,
    ) -> Result<Self> {
        verify_epimorphism(h, &presentation, images).map_err(|r| Error::Verification(r.to_string()))?;
        let idx = images
            .iter()
            .map(|g| h.index_of_perm(g).ok_or_else(|| Error::InvalidInput("image outside H".into())))
            .collect::<Result<Vec<_>>>()?;
        let target = Target::finite(h, &idx)?;
        let p = catalog.field().p();
        Ok(EpiState {
            presentation,
            p,
            catalog,
            target,
            quotient: None,
            round: 0,
            structure: Structure::new(p, h.name()),
            history: Vec::new(),
            seed,
        })
    }

    pub fn root_group(&self) -> &Arc<FiniteGroupData> {
        self.target.base.root_group()
    }

    pub fn kernel_exponent(&self) -> usize {
        self.target.base.kernel_exponent()
    }

    pub fn order(&self) -> String {
        order_string(self.root_group().order(), self.p, self.kernel_exponent())
    }

    pub fn order_u128(&self) -> Option<u128> {
        let mut o = self.root_group().order() as u128;
        for _ in 0..self.kernel_exponent() {
            o = o.checked_mul(self.p as u128)?;
        }
        Some(o)
    }
}

/// Largest quotient of the (V,e)-cover through which G maps: the cover
/// modulo the module generated by the relator values. `None` when nothing
/// survives.
pub fn lift_by_module(state: &EpiState, module: usize) -> Result<Option<ModuleLift>> {
    let cover = cover_ve(&state.target, &state.catalog, module, state.seed)?;
    let g = &cover.group;
    let mut seeds = Vec::new();
    for r in state.presentation.relators() {
        let x = g.eval_word(&cover.images, r);
        if !x.word.is_empty() {
            return Err(Error::Inconsistent("a relator does not vanish in the current quotient".into()));
        }
        seeds.push(x.n);
    }
    let u = if g.dim() == 0 { Echelon::new(g.field(), 0) } else { spin(&g.action().to_rep(), &seeds) };
    if u.len() == g.dim() {
        return Ok(None);
    }
    let (q, map) = g.quotient(&u)?;
    let images = cover.images.iter().map(|x| g.project(&map, x)).collect();
    Ok(Some(ModuleLift { module, group: q, images, cover_dim: g.dim() }))
}

/// Checks that every relator is trivial at the images and that the images
/// generate the quotient.
pub fn verify_quotient(pres: &Presentation, q: &HybridGroup, images: &[HybridElement], target: &Target) -> Result<()> {
    for r in pres.relators() {
        if !q.is_identity(&q.eval_word(images, r)) {
            return Err(Error::Verification("a relator is nontrivial in the lifted quotient".into()));
        }
    }
    let lifts = target.lifts.eval(q, images);
    let kd = subgroup_kernel_with_lifts(q, images, &lifts)?;
    if kd.dim() != q.dim() {
        return Err(Error::Verification("images do not generate the lifted quotient".into()));
    }
    Ok(())
}

/// Outcome of one semisimple step.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub state: EpiState,
    pub fixed_point: bool,
}

/// Lifts by every selected module and combines the survivors into their
/// subdirect product over the current quotient.
pub fn semisimple_step(state: &EpiState, filter: &ModuleFilter) -> Result<StepOutcome> {
    let start = Instant::now();
    reset_n_ops();
    let modules = filter.select(&state.catalog);
    let lifts: Vec<ModuleLift> = par::map(&modules, |&i| lift_by_module(state, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let round = state.round + 1;
    if lifts.is_empty() {
        let mut next = state.clone();
        next.history.push(RoundRecord {
            round,
            order: state.order(),
            kernel_exponent: state.kernel_exponent(),
            structure: state.structure.compact(),
            canonical: state.structure.canonical(),
            alias: state.structure.alias(),
            layer: Vec::new(),
            lifted: Vec::new(),
            seconds: start.elapsed().as_secs_f64(),
            n_ops: n_ops(),
            fixed_point: true,
        });
        return Ok(StepOutcome { state: next, fixed_point: true });
    }
    let groups: Vec<&HybridGroup> = lifts.iter().map(|l| &l.group).collect();
    let d = diagonal_product(&groups)?;
    let e = state.target.rank();
    let images = (0..e)
        .map(|j| diagonal_element(&lifts.iter().map(|l| &l.images[j]).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    let gen_lifts = state.target.lifts.eval(&d, &images);
    let kd = subgroup_kernel_with_lifts(&d, &images, &gen_lifts)?;
    let (q, qimages) = sub_hybrid(&d, &kd, &images)?;
    verify_quotient(&state.presentation, &q, &qimages, &state.target)?;
    let layer = layer_components(q.action(), &state.catalog, state.seed)?;
    let q = Arc::new(q);
    let target = slps::promote_target(&state.target, &q, &qimages, &images, &kd)?;
    let mut structure = state.structure.clone();
    structure.push_layer(layer.clone());
    let mut next = EpiState {
        presentation: state.presentation.clone(),
        p: state.p,
        catalog: state.catalog.clone(),
        target,
        quotient: Some(q),
        round,
        structure,
        history: state.history.clone(),
        seed: state.seed,
    };
    next.history.push(RoundRecord {
        round,
        order: next.order(),
        kernel_exponent: next.kernel_exponent(),
        structure: next.structure.compact(),
        canonical: next.structure.canonical(),
        alias: next.structure.alias(),
        layer,
        lifted: lifts.iter().map(|l| l.module).collect(),
        seconds: start.elapsed().as_secs_f64(),
        n_ops: n_ops(),
        fixed_point: false,
    });
    Ok(StepOutcome { state: next, fixed_point: false })
}

/// Runs up to `rounds` semisimple steps, stopping at a fixed point.
pub fn iterate(state: &EpiState, rounds: usize, filter: &ModuleFilter) -> Result<EpiState> {
    iterate_with(state, rounds, filter, |_| {})
}

/// As [`iterate`], reporting each round as it completes.
pub fn iterate_with(
    state: &EpiState,
    rounds: usize,
    filter: &ModuleFilter,
    mut on_round: impl FnMut(&RoundRecord),
) -> Result<EpiState> {
    let mut cur = state.clone();
    for _ in 0..rounds {
        let out =
            semisimple_step(&cur, filter).map_err(|e| Error::Inconsistent(format!("round {}: {e}", cur.round + 1)))?;
        cur = out.state;
        on_round(cur.history.last().expect("round recorded"));
        if out.fixed_point {
            break;
        }
    }
    Ok(cur)
}

/// Text reported when a round finds no larger quotient.
pub fn fixed_point_message(p: u32) -> String {
    format!("No larger quotient for p={p}")
}

/// Per-round orders and structures of several presentations of one group
/// must agree.
pub fn presentation_invariance_check(
    states: &[EpiState],
    rounds: usize,
    filter: &ModuleFilter,
) -> Result<Vec<Vec<(String, String)>>> {
    let runs = states
        .iter()
        .map(|s| {
            iterate(s, rounds, filter)
                .map(|f| f.history.iter().map(|r| (r.order.clone(), r.structure.clone())).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = runs.first() {
        for (i, r) in runs.iter().enumerate().skip(1) {
            if r != first {
                return Err(Error::Verification(format!(
                    "presentation {} lifts differently: {:?} vs {:?}",
                    i + 1,
                    r,
                    first
                )));
            }
        }
    }
    Ok(runs)
}
