use std::fmt;

use super::parse::parse_word;
use super::word::{CommutatorConvention, Word};
use crate::error::{Error, Result};

/// Finite presentation ⟨X | R⟩ with freely reduced relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let e = names.len() as u32;
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            if r.max_gen().is_some_and(|g| g >= e) {
                return Err(Error::InvalidInput("relator uses an undeclared generator".into()));
            }
            let r = r.free_reduce();
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation { names, relators: rels })
    }

    /// Parses relators written in the word syntax.
    pub fn parse(names: &[&str], relators: &[&str], conv: CommutatorConvention) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = relators.iter().map(|r| parse_word(r, &names, conv)).collect::<Result<Vec<_>>>()?;
        Self::new(names, rels)
    }

    /// The free group of rank e.
    pub fn free(names: Vec<String>) -> Self {
        Presentation { names, relators: Vec::new() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn num_gens(&self) -> usize {
        self.names.len()
    }
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn with_relator(&self, w: Word) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.push(w);
        Self::new(self.names.clone(), rels)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| r.display(&self.names).to_string()).collect();
        write!(f, "< {} | {} >", self.names.join(", "), rels.join(", "))
    }
}
