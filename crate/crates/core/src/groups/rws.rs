//! String rewriting systems and the tracked reduction engine.
//!
//! Reduction is stack based: letters move from an input stack onto an output
//! word, and whenever a left side appears as a suffix of the output it is
//! replaced by pushing the right side back onto the input. Every application
//! is reported to a [`Sink`] together with the image in a root group of the
//! word still to the right of it. That image is what an extension's tails are
//! acted on by when pushed to the end of the word.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

pub type Letter = u32;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterInfo {
    pub name: String,
    /// Formal inverse letter, if the alphabet has one.
    pub inverse: Option<Letter>,
}

/// Free-cancellation rules (`x x⁻¹ → ε` and the order-2 merge `a⁻¹ → a`)
/// never carry tails; every other rule does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Cancel,
    Tilde,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
    pub kind: RuleKind,
}

/// Maps letters into a finite root group with a multiplication table.
pub trait Roots {
    fn identity(&self) -> u32 {
        0
    }
    fn root(&self, l: Letter) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
}

/// Root group of order one.
pub struct NoRoots;

impl Roots for NoRoots {
    fn root(&self, _: Letter) -> u32 {
        0
    }
    fn mul(&self, _: u32, _: u32) -> u32 {
        0
    }
}

/// Receives rule applications during reduction.
pub trait Sink {
    /// Rule `rule` was applied with right context of root image `ctx`.
    fn rule(&mut self, rule: u32, ctx: u32);
    /// An external marker (letter index ≥ alphabet size) was consumed.
    fn external(&mut self, _marker: u32, _ctx: u32) {}
}

impl Sink for () {
    fn rule(&mut self, _: u32, _: u32) {}
}

/// Counts rule applications.
#[derive(Default, Debug)]
pub struct CountSink(pub u64);

impl Sink for CountSink {
    fn rule(&mut self, _: u32, _: u32) {
        self.0 += 1;
    }
}

#[derive(Clone, Debug)]
struct Trie {
    alpha: usize,
    next: Vec<u32>,
    term: Vec<u32>,
}

impl Trie {
    fn build(alpha: usize, rules: &[Rule]) -> Self {
        let mut t = Trie { alpha, next: vec![NONE; alpha], term: vec![NONE] };
        for (ri, r) in rules.iter().enumerate() {
            let mut node = 0usize;
            for &l in r.lhs.iter().rev() {
                let slot = node * alpha + l as usize;
                if t.next[slot] == NONE {
                    let id = t.term.len() as u32;
                    t.next[slot] = id;
                    t.next.extend(std::iter::repeat(NONE).take(alpha));
                    t.term.push(NONE);
                }
                node = t.next[slot] as usize;
            }
            if t.term[node] == NONE {
                t.term[node] = ri as u32;
            }
        }
        t
    }

    /// Rule whose left side is a suffix of `w` (shortest first).
    #[inline]
    fn match_suffix(&self, w: &[Letter]) -> Option<u32> {
        let mut node = 0usize;
        for &l in w.iter().rev() {
            if l as usize >= self.alpha {
                return None;
            }
            let nx = self.next[node * self.alpha + l as usize];
            if nx == NONE {
                return None;
            }
            node = nx as usize;
            if self.term[node] != NONE {
                return Some(self.term[node]);
            }
        }
        None
    }
}

/// A word that contains two left sides: rule `i` at position 0 and rule `j`
/// at position `pos_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub i: u32,
    pub j: u32,
    pub word: Vec<Letter>,
    pub pos_j: usize,
}

/// Ordered rewriting system over a finite alphabet.
#[derive(Clone, Debug)]
pub struct Rws {
    letters: Vec<LetterInfo>,
    rules: Vec<Rule>,
    trie: Trie,
}

/// Shortlex comparison by letter index.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Rws {
    pub fn new(letters: Vec<LetterInfo>, rules: Vec<Rule>) -> Self {
        let trie = Trie::build(letters.len(), &rules);
        Rws { letters, rules, trie }
    }

    pub fn letters(&self) -> &[LetterInfo] {
        &self.letters
    }
    pub fn alphabet_len(&self) -> usize {
        self.letters.len()
    }
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
    pub fn rule(&self, i: u32) -> &Rule {
        &self.rules[i as usize]
    }

    pub fn max_lhs(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0)
    }

    /// Indices of rules of the given kind.
    pub fn rules_of_kind(&self, kind: RuleKind) -> Vec<u32> {
        (0..self.rules.len() as u32).filter(|&i| self.rules[i as usize].kind == kind).collect()
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        (1..=w.len()).all(|end| self.trie.match_suffix(&w[..end]).is_none())
    }

    /// Plain normal form.
    pub fn reduce(&self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        self.reduce_onto(&mut out, w, &NoRoots, &mut ());
        out
    }

    /// Reduces `prefix · input` where `out` already holds an irreducible
    /// prefix; the normal form is left in `out`.
    pub fn reduce_onto<R: Roots, S: Sink>(&self, out: &mut Vec<Letter>, input: &[Letter], roots: &R, sink: &mut S) {
        let alpha = self.letters.len() as u32;
        let id = roots.identity();
        let root_of = |l: Letter| if l < alpha { roots.root(l) } else { id };
        let mut stk: Vec<Letter> = Vec::with_capacity(input.len() + 16);
        let mut cum: Vec<u32> = Vec::with_capacity(input.len() + 16);
        for &l in input.iter().rev() {
            let below = cum.last().copied().unwrap_or(id);
            stk.push(l);
            cum.push(roots.mul(root_of(l), below));
        }
        while let Some(l) = stk.pop() {
            cum.pop();
            if l >= alpha {
                sink.external(l, cum.last().copied().unwrap_or(id));
                continue;
            }
            out.push(l);
            if let Some(ri) = self.trie.match_suffix(out) {
                let rule = &self.rules[ri as usize];
                out.truncate(out.len() - rule.lhs.len());
                sink.rule(ri, cum.last().copied().unwrap_or(id));
                for &r in rule.rhs.iter().rev() {
                    let below = cum.last().copied().unwrap_or(id);
                    stk.push(r);
                    cum.push(roots.mul(root_of(r), below));
                }
            }
        }
    }

    /// Normal form of `w` with events reported.
    pub fn reduce_tracked<R: Roots, S: Sink>(&self, w: &[Letter], roots: &R, sink: &mut S) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        self.reduce_onto(&mut out, w, roots, sink);
        out
    }

    /// Image of a word in the root group.
    pub fn word_root<R: Roots>(&self, w: &[Letter], roots: &R) -> u32 {
        let alpha = self.letters.len() as u32;
        w.iter().fold(roots.identity(), |acc, &l| if l < alpha { roots.mul(acc, roots.root(l)) } else { acc })
    }

    /// Applies rule `ri` at `pos`, reports it, then reduces to normal form.
    pub fn rewrite_at<R: Roots, S: Sink>(
        &self,
        word: &[Letter],
        ri: u32,
        pos: usize,
        roots: &R,
        sink: &mut S,
    ) -> Vec<Letter> {
        let rule = &self.rules[ri as usize];
        let end = pos + rule.lhs.len();
        debug_assert_eq!(&word[pos..end], &rule.lhs[..]);
        sink.rule(ri, self.word_root(&word[end..], roots));
        let mut w = Vec::with_capacity(word.len() + rule.rhs.len());
        w.extend_from_slice(&word[..pos]);
        w.extend_from_slice(&rule.rhs);
        w.extend_from_slice(&word[end..]);
        self.reduce_tracked(&w, roots, sink)
    }

    /// All critical overlaps between rules accepted by `filter`, in canonical
    /// order (i, j, position).
    pub fn overlaps(&self, filter: impl Fn(u32) -> bool) -> Vec<Overlap> {
        let ids: Vec<u32> = (0..self.rules.len() as u32).filter(|&i| filter(i)).collect();
        // proper prefixes of left sides → rules
        let mut by_prefix: HashMap<&[Letter], Vec<u32>> = HashMap::new();
        for &j in &ids {
            let l = &self.rules[j as usize].lhs;
            for k in 1..l.len() {
                by_prefix.entry(&l[..k]).or_default().push(j);
            }
        }
        let mut out = Vec::new();
        for &i in &ids {
            let li = &self.rules[i as usize].lhs;
            let mut found: Vec<Overlap> = Vec::new();
            for k in 1..li.len() {
                let suffix = &li[li.len() - k..];
                if let Some(js) = by_prefix.get(suffix) {
                    for &j in js {
                        let lj = &self.rules[j as usize].lhs;
                        let mut word = li.clone();
                        word.extend_from_slice(&lj[k..]);
                        found.push(Overlap { i, j, word, pos_j: li.len() - k });
                    }
                }
            }
            for &j in &ids {
                if i == j {
                    continue;
                }
                let lj = &self.rules[j as usize].lhs;
                if lj.len() > li.len() {
                    continue;
                }
                for s in 0..=li.len() - lj.len() {
                    if &li[s..s + lj.len()] == lj.as_slice() {
                        found.push(Overlap { i, j, word: li.clone(), pos_j: s });
                    }
                }
            }
            found.sort_by(|a, b| (a.j, a.pos_j).cmp(&(b.j, b.pos_j)));
            out.extend(found);
        }
        out
    }

    /// Checks that every critical pair resolves.
    pub fn check_confluent(&self) -> Result<()> {
        for ov in self.overlaps(|_| true) {
            let a = self.rewrite_at(&ov.word, ov.i, 0, &NoRoots, &mut ());
            let b = self.rewrite_at(&ov.word, ov.j, ov.pos_j, &NoRoots, &mut ());
            if a != b {
                return Err(Error::Inconsistent(format!(
                    "critical pair of rules {} and {} on {} does not resolve",
                    ov.i,
                    ov.j,
                    self.format_word(&ov.word)
                )));
            }
        }
        Ok(())
    }

    /// Irreducible words in shortlex order, failing past `cap`.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Vec<Letter>>> {
        let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
        let mut frontier = 0;
        while frontier < out.len() {
            let w = out[frontier].clone();
            frontier += 1;
            for l in 0..self.letters.len() as u32 {
                let mut v = w.clone();
                v.push(l);
                if self.trie.match_suffix(&v).is_none() {
                    if out.len() >= cap {
                        return Err(Error::Limit(format!("more than {cap} normal forms")));
                    }
                    out.push(v);
                }
            }
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.iter()
            .map(|&l| self.letters.get(l as usize).map(|x| x.name.clone()).unwrap_or_else(|| format!("#{l}")))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Formal inverse of a word, using `inverse` letters; fails on letters without one.
    pub fn formal_inverse(&self, w: &[Letter]) -> Option<Vec<Letter>> {
        w.iter().rev().map(|&l| self.letters[l as usize].inverse).collect()
    }
}
