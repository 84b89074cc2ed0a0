use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use super::action::ModuleAction;
use super::base::Base;
use crate::error::{Error, Result};
use crate::finfield::{Echelon, Field, QuotientMap};
use crate::groups::{Letter, LetterInfo, Rule, RuleKind, Rws, Sink, Word};

static N_OPS: AtomicU64 = AtomicU64::new(0);

/// Vector-by-matrix operations on kernel vectors performed by hybrid
/// multiplication since the last reset.
pub fn n_ops() -> u64 {
    N_OPS.load(Ordering::Relaxed)
}

pub fn reset_n_ops() {
    N_OPS.store(0, Ordering::Relaxed);
}

/// An extension E of a base group B by an elementary abelian p-group N.
///
/// Each rule of B's rewriting system carries a tail in N; applying the rule
/// inside a word contributes its tail acted on by the image of the word to
/// its right.
#[derive(Clone, Debug)]
pub struct HybridGroup {
    base: Arc<Base>,
    action: Arc<ModuleAction>,
    tails: Vec<Vec<u32>>,
    nonzero: Vec<bool>,
}

/// Element (w, n): w an irreducible word of the base, n ∈ N.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HybridElement {
    pub word: Vec<Letter>,
    pub n: Vec<u32>,
}

struct TailSink<'a> {
    g: &'a HybridGroup,
    acc: Vec<u32>,
}

impl Sink for TailSink<'_> {
    #[inline]
    fn rule(&mut self, rule: u32, ctx: u32) {
        if self.g.nonzero[rule as usize] {
            N_OPS.fetch_add(1, Ordering::Relaxed);
            self.g.action.act_add(&mut self.acc, &self.g.tails[rule as usize], ctx);
        }
    }
}

impl HybridGroup {
    pub fn new(base: Arc<Base>, action: Arc<ModuleAction>, tails: Vec<Vec<u32>>) -> Result<Self> {
        let rules = base.rws().rules();
        if tails.len() != rules.len() {
            return Err(Error::Dimension(format!("{} tails for {} rules", tails.len(), rules.len())));
        }
        if !Arc::ptr_eq(action.root(), base.root_group()) && action.root().order() != base.root_group().order() {
            return Err(Error::InvalidInput("module and base have different root groups".into()));
        }
        let d = action.dim();
        let mut nonzero = Vec::with_capacity(tails.len());
        for (t, r) in tails.iter().zip(rules) {
            if t.len() != d {
                return Err(Error::Dimension("tail length differs from the kernel dimension".into()));
            }
            let nz = t.iter().any(|&x| x != 0);
            if nz && r.kind == RuleKind::Cancel {
                return Err(Error::InvalidInput("free-cancellation rules carry no tails".into()));
            }
            nonzero.push(nz);
        }
        Ok(HybridGroup { base, action, tails, nonzero })
    }

    /// Semidirect product B ⋉ N.
    pub fn split(base: Arc<Base>, action: Arc<ModuleAction>) -> Self {
        let d = action.dim();
        let tails = vec![vec![0; d]; base.rws().rules().len()];
        Self::new(base, action, tails).expect("split extension")
    }

    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }
    pub fn action(&self) -> &Arc<ModuleAction> {
        &self.action
    }
    pub fn field(&self) -> &Field {
        self.action.field()
    }
    pub fn dim(&self) -> usize {
        self.action.dim()
    }
    pub fn tails(&self) -> &[Vec<u32>] {
        &self.tails
    }

    /// Exponent s with |E| = |H|·p^s.
    pub fn kernel_exponent(&self) -> usize {
        self.base.kernel_exponent() + self.dim()
    }

    /// |E|, if it fits.
    pub fn order(&self) -> Option<u128> {
        let p = self.field().p() as u128;
        let mut o = self.base.root_group().order() as u128;
        for _ in 0..self.kernel_exponent() {
            o = o.checked_mul(p)?;
        }
        Some(o)
    }

    pub fn identity(&self) -> HybridElement {
        HybridElement { word: Vec::new(), n: vec![0; self.dim()] }
    }

    pub fn is_identity(&self, g: &HybridElement) -> bool {
        g.word.is_empty() && g.n.iter().all(|&x| x == 0)
    }

    /// Product of the letters of `w`, each letter standing for (letter, 0).
    pub fn from_word(&self, w: &[Letter]) -> HybridElement {
        let mut word = Vec::with_capacity(w.len());
        let mut sink = TailSink { g: self, acc: vec![0; self.dim()] };
        self.base.rws().reduce_onto(&mut word, w, &*self.base, &mut sink);
        HybridElement { word, n: sink.acc }
    }

    pub fn letter(&self, l: Letter) -> HybridElement {
        self.from_word(&[l])
    }

    /// Element (1, n).
    pub fn kernel_element(&self, n: Vec<u32>) -> HybridElement {
        debug_assert_eq!(n.len(), self.dim());
        HybridElement { word: Vec::new(), n }
    }

    pub fn mul(&self, g: &HybridElement, h: &HybridElement) -> HybridElement {
        let mut word = g.word.clone();
        let mut sink = TailSink { g: self, acc: vec![0; self.dim()] };
        self.base.rws().reduce_onto(&mut word, &h.word, &*self.base, &mut sink);
        let mut n = sink.acc;
        let fp = self.field().fp();
        if self.dim() > 0 {
            N_OPS.fetch_add(1, Ordering::Relaxed);
            self.action.act_add(&mut n, &g.n, self.base.word_root(&h.word));
            for (a, &b) in n.iter_mut().zip(&h.n) {
                *a = fp.add(*a, b);
            }
        }
        HybridElement { word, n }
    }

    pub fn inv(&self, g: &HybridElement) -> HybridElement {
        // (w,n) = (1,n)·(w,0); (w,0)⁻¹ = x·(1,−Γ) where x is the element of
        // an inverse word and (w,0)·x = (1,Γ)
        let x = self.from_word(&self.base.inverse_word(&g.word));
        let w0 = HybridElement { word: g.word.clone(), n: vec![0; self.dim()] };
        let gamma = self.mul(&w0, &x);
        debug_assert!(gamma.word.is_empty());
        let fp = self.field().fp();
        let root = self.base.word_root(&x.word);
        let mut n = self.action.act(&g.n, root);
        for ((a, &b), &c) in n.iter_mut().zip(&x.n).zip(&gamma.n) {
            *a = fp.sub(fp.sub(b, *a), c);
        }
        HybridElement { word: x.word, n }
    }

    pub fn pow(&self, g: &HybridElement, mut e: u64) -> HybridElement {
        let mut base = g.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Element order; fails past `cap`.
    pub fn element_order(&self, g: &HybridElement, cap: u64) -> Result<u64> {
        let mut x = g.clone();
        let mut k = 1;
        while !self.is_identity(&x) {
            x = self.mul(&x, g);
            k += 1;
            if k > cap {
                return Err(Error::Limit(format!("element order exceeds {cap}")));
            }
        }
        Ok(k)
    }

    /// Value of a free word at the given generator images.
    pub fn eval_word(&self, images: &[HybridElement], w: &Word) -> HybridElement {
        let invs: Vec<HybridElement> = images.iter().map(|g| self.inv(g)).collect();
        w.syms.iter().fold(self.identity(), |acc, s| {
            let g = if s.inv { &invs[s.gen as usize] } else { &images[s.gen as usize] };
            self.mul(&acc, g)
        })
    }

    /// Kernel letters of the combined system, in coordinate order.
    pub fn kernel_letter(&self, i: usize) -> Letter {
        (self.base.alphabet_len() + i) as Letter
    }

    fn kernel_word(&self, n: &[u32]) -> Vec<Letter> {
        let mut w = Vec::new();
        for (i, &c) in n.iter().enumerate() {
            for _ in 0..c {
                w.push(self.kernel_letter(i));
            }
        }
        w
    }

    /// The element as a normal form of the combined system.
    pub fn to_base_word(&self, g: &HybridElement) -> Vec<Letter> {
        let mut w = g.word.clone();
        w.extend(self.kernel_word(&g.n));
        w
    }

    /// Inverse of [`to_base_word`](Self::to_base_word) on normal forms.
    pub fn from_base_word(&self, w: &[Letter]) -> HybridElement {
        let a = self.base.alphabet_len() as Letter;
        let split = w.iter().position(|&l| l >= a).unwrap_or(w.len());
        let mut n = vec![0; self.dim()];
        let fp = self.field().fp();
        for &l in &w[split..] {
            let i = (l - a) as usize;
            n[i] = fp.add(n[i], 1);
        }
        HybridElement { word: w[..split].to_vec(), n }
    }

    /// Confluent rewriting system for E as a whole: the base rules with
    /// their tails appended, power and commutation rules for the kernel
    /// letters, and rules moving kernel letters to the right.
    pub fn combined_rws(&self) -> Rws {
        let brws = self.base.rws();
        let a = brws.alphabet_len();
        let d = self.dim();
        let p = self.field().p();
        let depth = self.base.depth() + 1;
        let mut letters: Vec<LetterInfo> = brws.letters().to_vec();
        for i in 0..d {
            letters.push(LetterInfo { name: format!("n{depth}_{}", i + 1), inverse: None });
        }
        let mut rules = Vec::new();
        for (r, t) in brws.rules().iter().zip(&self.tails) {
            let mut rhs = r.rhs.clone();
            rhs.extend(self.kernel_word(t));
            rules.push(Rule { lhs: r.lhs.clone(), rhs, kind: r.kind });
        }
        for i in 0..d {
            let b = self.kernel_letter(i);
            rules.push(Rule { lhs: vec![b; p as usize], rhs: vec![], kind: RuleKind::Tilde });
            for j in 0..i {
                let c = self.kernel_letter(j);
                rules.push(Rule { lhs: vec![b, c], rhs: vec![c, b], kind: RuleKind::Tilde });
            }
            for x in 0..a as Letter {
                if !brws.is_irreducible(&[x]) {
                    continue;
                }
                let mut e = vec![0; d];
                e[i] = 1;
                let mut rhs = vec![x];
                rhs.extend(self.kernel_word(&self.action.act(&e, self.base.letter_root(x))));
                rules.push(Rule { lhs: vec![b, x], rhs, kind: RuleKind::Tilde });
            }
        }
        Rws::new(letters, rules)
    }

    /// E as the base of the next extension.
    pub fn promote(self: &Arc<Self>) -> Arc<Base> {
        let rws = self.combined_rws();
        let a = self.base.alphabet_len();
        let p = self.field().p() as usize;
        let mut letter_root: Vec<u32> = (0..a as Letter).map(|l| self.base.letter_root(l)).collect();
        letter_root.extend(std::iter::repeat(0).take(self.dim()));
        let mut letter_inverse: Vec<Vec<Letter>> =
            (0..a as Letter).map(|l| self.to_base_word(&self.inv(&self.letter(l)))).collect();
        for i in 0..self.dim() {
            letter_inverse.push(vec![self.kernel_letter(i); p - 1]);
        }
        Arc::new(Base::from_parts(rws, self.base.root_group().clone(), letter_root, letter_inverse, self.clone()))
    }

    /// E/U for an invariant subspace U of N.
    pub fn quotient(&self, u: &Echelon) -> Result<(HybridGroup, QuotientMap)> {
        if !self.action.is_invariant(u) {
            return Err(Error::InvalidInput("subspace is not invariant".into()));
        }
        let q = QuotientMap::new(u);
        let action = Arc::new(self.action.quotient(&q)?);
        let tails = self.tails.iter().map(|t| q.project(t)).collect();
        Ok((HybridGroup::new(self.base.clone(), action, tails)?, q))
    }

    /// Image of an element in E/U.
    pub fn project(&self, q: &QuotientMap, g: &HybridElement) -> HybridElement {
        HybridElement { word: g.word.clone(), n: q.project(&g.n) }
    }
}

/// Subdirect product over a common base: kernels summed, tails concatenated.
pub fn diagonal_product(parts: &[&HybridGroup]) -> Result<HybridGroup> {
    let first = parts.first().ok_or_else(|| Error::InvalidInput("empty product".into()))?;
    if parts.iter().any(|g| !Arc::ptr_eq(g.base(), first.base())) {
        return Err(Error::InvalidInput("diagonal product needs a common base".into()));
    }
    let actions: Vec<&ModuleAction> = parts.iter().map(|g| &**g.action()).collect();
    let action = Arc::new(ModuleAction::direct_sum(&actions)?);
    let nrules = first.tails().len();
    let tails = (0..nrules).map(|r| parts.iter().flat_map(|g| g.tails()[r].iter().copied()).collect()).collect();
    HybridGroup::new(first.base().clone(), action, tails)
}

/// The element of a diagonal product with the given components.
pub fn diagonal_element(parts: &[&HybridElement]) -> Result<HybridElement> {
    let first = parts.first().ok_or_else(|| Error::InvalidInput("empty product".into()))?;
    if parts.iter().any(|g| g.word != first.word) {
        return Err(Error::InvalidInput("components lie over different base elements".into()));
    }
    Ok(HybridElement { word: first.word.clone(), n: parts.iter().flat_map(|g| g.n.iter().copied()).collect() })
}
