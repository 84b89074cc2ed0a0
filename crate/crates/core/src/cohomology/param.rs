use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finfield::{Field, Matrix};
use crate::groups::{Letter, RuleKind, Sink};
use crate::hybrid::{Base, ModuleAction};

/// An item of a word to be cleaned: a base letter, a concrete module vector,
/// or the symbolic tail of a parametrized rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Letter(Letter),
    Vector(Vec<u32>),
    Tail(u32),
}

/// c + Σ_s x_s·M_s for row vectors x_s of tail variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub constant: Vec<u32>,
    pub blocks: BTreeMap<u32, Matrix>,
}

/// A word a·b with a irreducible in the base and b an affine module vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailedWord {
    pub word: Vec<Letter>,
    pub form: AffineForm,
}

/// The base rewriting system with one block of d tail variables per rule
/// that may carry a tail, acting on a module V of the root group.
#[derive(Debug)]
pub struct ParamRws {
    base: Arc<Base>,
    action: Arc<ModuleAction>,
    slots: Vec<Option<u32>>,
    tilde: Vec<u32>,
}

struct SymSink<'a> {
    prws: &'a ParamRws,
    tokens: &'a [Token],
    symbolic: bool,
    constant: Vec<u32>,
    blocks: BTreeMap<u32, Matrix>,
}

impl SymSink<'_> {
    fn add_block(&mut self, slot: u32, ctx: u32) {
        let a = self.prws.action.matrix(ctx);
        match self.blocks.get_mut(&slot) {
            Some(m) => m.add_scaled(1, a),
            None => {
                self.blocks.insert(slot, a.clone());
            }
        }
    }
}

impl Sink for SymSink<'_> {
    fn rule(&mut self, rule: u32, ctx: u32) {
        if self.symbolic {
            if let Some(s) = self.prws.slots[rule as usize] {
                self.add_block(s, ctx);
            }
        }
    }

    fn external(&mut self, marker: u32, ctx: u32) {
        let i = marker as usize - self.prws.base.alphabet_len();
        match &self.tokens[i] {
            Token::Vector(v) => self.prws.action.act_add(&mut self.constant, v, ctx),
            Token::Tail(s) => {
                if self.symbolic {
                    self.add_block(*s, ctx)
                }
            }
            Token::Letter(_) => unreachable!("letters are not markers"),
        }
    }
}

impl ParamRws {
    pub fn new(base: Arc<Base>, action: Arc<ModuleAction>) -> Result<Self> {
        if action.root().order() != base.root_group().order() || action.gens().len() != base.root_group().num_gens() {
            return Err(Error::InvalidInput("module is not a module of the base's root group".into()));
        }
        let mut slots = Vec::new();
        let mut tilde = Vec::new();
        for (i, r) in base.rws().rules().iter().enumerate() {
            if r.kind == RuleKind::Tilde {
                slots.push(Some(tilde.len() as u32));
                tilde.push(i as u32);
            } else {
                slots.push(None);
            }
        }
        Ok(ParamRws { base, action, slots, tilde })
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

    /// Tail slot of a rule, if it carries one.
    pub fn slot(&self, rule: u32) -> Option<u32> {
        self.slots[rule as usize]
    }

    /// Rules with tail slots, in slot order.
    pub fn tilde_rules(&self) -> &[u32] {
        &self.tilde
    }

    pub fn num_vars(&self) -> usize {
        self.tilde.len() * self.dim()
    }

    fn encode(&self, tokens: &[Token]) -> Vec<Letter> {
        let a = self.base.alphabet_len() as Letter;
        tokens
            .iter()
            .enumerate()
            .map(|(i, t)| match t {
                Token::Letter(l) => *l,
                _ => a + i as Letter,
            })
            .collect()
    }

    fn sink<'a>(&'a self, tokens: &'a [Token], symbolic: bool) -> SymSink<'a> {
        SymSink { prws: self, tokens, symbolic, constant: vec![0; self.dim()], blocks: BTreeMap::new() }
    }

    fn finish(word: Vec<Letter>, sink: SymSink<'_>) -> TailedWord {
        let mut blocks = sink.blocks;
        blocks.retain(|_, m| !m.is_zero());
        TailedWord { word, form: AffineForm { constant: sink.constant, blocks } }
    }

    /// Normal form a·b of a mixed word, every rule contributing its symbolic
    /// tail pushed through the context to its right.
    pub fn clean_reduce(&self, tokens: &[Token]) -> TailedWord {
        let enc = self.encode(tokens);
        let mut sink = self.sink(tokens, true);
        let word = self.base.rws().reduce_tracked(&enc, &*self.base, &mut sink);
        Self::finish(word, sink)
    }

    /// As [`clean_reduce`](Self::clean_reduce) with every tail set to zero.
    pub fn reduce_untailed(&self, tokens: &[Token]) -> TailedWord {
        let enc = self.encode(tokens);
        let mut sink = self.sink(tokens, false);
        let word = self.base.rws().reduce_tracked(&enc, &*self.base, &mut sink);
        Self::finish(word, sink)
    }

    /// Applies rule `ri` at `pos` of a letter word, then cleans.
    pub fn rewrite_clean(&self, word: &[Letter], ri: u32, pos: usize) -> TailedWord {
        let mut sink = self.sink(&[], true);
        let w = self.base.rws().rewrite_at(word, ri, pos, &*self.base, &mut sink);
        Self::finish(w, sink)
    }
}
