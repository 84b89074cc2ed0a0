use super::base::Base;
use super::group::{HybridElement, HybridGroup};
use crate::error::Result;
use crate::groups::{Letter, Word};

/// A group in which straight-line programs can be evaluated.
pub trait SlpGroup {
    type Elem: Clone;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

impl SlpGroup for HybridGroup {
    type Elem = HybridElement;
    fn one(&self) -> HybridElement {
        self.identity()
    }
    fn mul(&self, a: &HybridElement, b: &HybridElement) -> HybridElement {
        HybridGroup::mul(self, a, b)
    }
    fn inv(&self, a: &HybridElement) -> HybridElement {
        HybridGroup::inv(self, a)
    }
}

/// Normal-form words of a base.
impl SlpGroup for Base {
    type Elem = Vec<Letter>;
    fn one(&self) -> Vec<Letter> {
        Vec::new()
    }
    fn mul(&self, a: &Vec<Letter>, b: &Vec<Letter>) -> Vec<Letter> {
        let mut w = a.clone();
        self.rws().reduce_onto(&mut w, b, &crate::groups::NoRoots, &mut ());
        w
    }
    fn inv(&self, a: &Vec<Letter>) -> Vec<Letter> {
        self.reduce(&self.inverse_word(a))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlpNode {
    One,
    Gen(usize),
    Mul(u32, u32),
    Inv(u32),
    Pow(u32, u64),
}

/// Straight-line program over the generators of a finitely presented group;
/// nodes refer only to earlier nodes.
#[derive(Clone, Debug)]
pub struct Slp {
    nodes: Vec<SlpNode>,
}

impl Default for Slp {
    fn default() -> Self {
        Self::new()
    }
}

impl Slp {
    pub fn new() -> Self {
        Slp { nodes: vec![SlpNode::One] }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
    pub fn node(&self, i: u32) -> SlpNode {
        self.nodes[i as usize]
    }

    pub fn one(&self) -> u32 {
        0
    }

    fn push(&mut self, n: SlpNode) -> u32 {
        self.nodes.push(n);
        (self.nodes.len() - 1) as u32
    }

    pub fn gen(&mut self, j: usize) -> u32 {
        self.push(SlpNode::Gen(j))
    }

    pub fn mul(&mut self, a: u32, b: u32) -> u32 {
        match (self.nodes[a as usize], self.nodes[b as usize]) {
            (SlpNode::One, _) => b,
            (_, SlpNode::One) => a,
            _ => self.push(SlpNode::Mul(a, b)),
        }
    }

    pub fn inv(&mut self, a: u32) -> u32 {
        match self.nodes[a as usize] {
            SlpNode::One => a,
            SlpNode::Inv(x) => x,
            _ => self.push(SlpNode::Inv(a)),
        }
    }

    pub fn pow(&mut self, a: u32, e: u64) -> u32 {
        match e {
            0 => 0,
            1 => a,
            _ => self.push(SlpNode::Pow(a, e)),
        }
    }

    pub fn product(&mut self, items: &[u32]) -> u32 {
        items.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    /// Adds a free word in the generators.
    pub fn word(&mut self, w: &Word) -> u32 {
        let mut acc = 0;
        for s in &w.syms {
            let g = self.gen(s.gen as usize);
            let x = if s.inv { self.inv(g) } else { g };
            acc = self.mul(acc, x);
        }
        acc
    }

    /// Values of the requested nodes at the given generator images.
    pub fn eval<G: SlpGroup>(&self, g: &G, gens: &[G::Elem], targets: &[u32]) -> Vec<G::Elem> {
        let top = targets.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut needed = vec![false; top];
        let mut stack: Vec<u32> = targets.to_vec();
        while let Some(i) = stack.pop() {
            if needed[i as usize] {
                continue;
            }
            needed[i as usize] = true;
            match self.nodes[i as usize] {
                SlpNode::Mul(a, b) => stack.extend([a, b]),
                SlpNode::Inv(a) | SlpNode::Pow(a, _) => stack.push(a),
                _ => {}
            }
        }
        let mut vals: Vec<Option<G::Elem>> = vec![None; top];
        for i in 0..top {
            if !needed[i] {
                continue;
            }
            let get = |k: u32| vals[k as usize].as_ref().expect("operand evaluated");
            let v = match self.nodes[i] {
                SlpNode::One => g.one(),
                SlpNode::Gen(j) => gens[j].clone(),
                SlpNode::Mul(a, b) => g.mul(get(a), get(b)),
                SlpNode::Inv(a) => g.inv(get(a)),
                SlpNode::Pow(a, e) => {
                    let (mut base, mut e, mut acc) = (get(a).clone(), e, g.one());
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = g.mul(&acc, &base);
                        }
                        e >>= 1;
                        if e > 0 {
                            base = g.mul(&base, &base);
                        }
                    }
                    acc
                }
            };
            vals[i] = Some(v);
        }
        targets.iter().map(|&t| vals[t as usize].clone().expect("target evaluated")).collect()
    }
}

/// SLPs evaluating to each generator letter of a base at the images of the
/// presentation's generators.
#[derive(Clone, Debug)]
pub struct LetterLifts {
    pub slp: Slp,
    /// One node per entry of the base's generator letters.
    pub nodes: Vec<u32>,
}

impl LetterLifts {
    /// Breadth-first words for the generator letters of a root-group base,
    /// given the root images of the presentation's generators.
    pub fn bfs(base: &Base, images: &[u32]) -> Result<Self> {
        let words = base.root_group().bfs_words(images)?;
        let mut slp = Slp::new();
        let gens: Vec<u32> = (0..images.len()).map(|j| slp.gen(j)).collect();
        let nodes = base
            .gen_letters()
            .iter()
            .map(|&l| {
                let w = &words[base.letter_root(l) as usize];
                let items: Vec<u32> = w
                    .syms
                    .iter()
                    .map(|s| if s.inv { slp.inv(gens[s.gen as usize]) } else { gens[s.gen as usize] })
                    .collect();
                slp.product(&items)
            })
            .collect();
        Ok(LetterLifts { slp, nodes })
    }

    /// Node of every base letter, derived like the kernel lifts: inverse
    /// letters invert their partner, reducible letters use their normal form.
    pub fn all_letter_nodes(&mut self, base: &Base) -> Vec<u32> {
        let rws = base.rws();
        let a = base.alphabet_len();
        let mut nodes: Vec<Option<u32>> = vec![None; a];
        for (&l, &n) in base.gen_letters().iter().zip(&self.nodes) {
            nodes[l as usize] = Some(n);
        }
        for l in 0..a as Letter {
            if nodes[l as usize].is_none() && rws.is_irreducible(&[l]) {
                let partner = rws.letters()[l as usize].inverse.expect("partner");
                let x = nodes[partner as usize].expect("partner lifted");
                nodes[l as usize] = Some(self.slp.inv(x));
            }
        }
        for l in 0..a {
            if nodes[l].is_none() {
                let items: Vec<u32> = rws.reduce(&[l as Letter]).iter().map(|&t| nodes[t as usize].unwrap()).collect();
                nodes[l] = Some(self.slp.product(&items));
            }
        }
        nodes.into_iter().map(|x| x.unwrap()).collect()
    }

    /// Lifts of the generator letters evaluated in a group over the base.
    pub fn eval<G: SlpGroup>(&self, g: &G, gens: &[G::Elem]) -> Vec<G::Elem> {
        self.slp.eval(g, gens, &self.nodes)
    }
}
