use std::fmt;

/// One letter of a free-group word: generator index with an inversion flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub gen: u32,
    pub inv: bool,
}

impl Sym {
    pub fn new(gen: u32, inv: bool) -> Self {
        Sym { gen, inv }
    }
    pub fn inverse(self) -> Self {
        Sym { gen: self.gen, inv: !self.inv }
    }
    /// Monoid letter index: `2·gen` for the generator, `2·gen+1` for its inverse.
    pub fn letter(self) -> u32 {
        2 * self.gen + self.inv as u32
    }
    pub fn from_letter(l: u32) -> Self {
        Sym { gen: l / 2, inv: l % 2 == 1 }
    }
}

/// Commutator convention used when expanding `[x,y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CommutatorConvention {
    /// `[x,y] = x⁻¹y⁻¹xy`
    #[default]
    LeftInverse,
    /// `[x,y] = xyx⁻¹y⁻¹`
    RightInverse,
}

/// Element of a free group written as a sequence of signed generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    pub syms: Vec<Sym>,
}

impl Word {
    pub fn identity() -> Self {
        Word { syms: Vec::new() }
    }

    pub fn gen(i: u32) -> Self {
        Word { syms: vec![Sym::new(i, false)] }
    }

    pub fn from_syms(syms: Vec<Sym>) -> Self {
        Word { syms }
    }

    /// From signed 1-based indices: `2` is x₂, `-1` is x₁⁻¹.
    pub fn from_signed(idx: &[i32]) -> Self {
        Word {
            syms: idx
                .iter()
                .map(|&i| {
                    assert!(i != 0);
                    Sym::new(i.unsigned_abs() - 1, i < 0)
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word { syms: self.syms.iter().rev().map(|s| s.inverse()).collect() }
    }

    pub fn mul(&self, other: &Word) -> Self {
        let mut syms = self.syms.clone();
        syms.extend_from_slice(&other.syms);
        Word { syms }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut syms = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            syms.extend_from_slice(&base.syms);
        }
        Word { syms }
    }

    pub fn commutator(x: &Word, y: &Word, conv: CommutatorConvention) -> Self {
        match conv {
            CommutatorConvention::LeftInverse => x.inverse().mul(&y.inverse()).mul(x).mul(y),
            CommutatorConvention::RightInverse => x.mul(y).mul(&x.inverse()).mul(&y.inverse()),
        }
    }

    /// Cancels adjacent inverse pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Sym> = Vec::with_capacity(self.syms.len());
        for &s in &self.syms {
            if out.last() == Some(&s.inverse()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        Word { syms: out }
    }

    pub fn max_gen(&self) -> Option<u32> {
        self.syms.iter().map(|s| s.gen).max()
    }

    /// Monoid letters (see [`Sym::letter`]).
    pub fn letters(&self) -> Vec<u32> {
        self.syms.iter().map(|s| s.letter()).collect()
    }

    /// Renders with the given generator names, e.g. `a*b^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let syms = &self.word.syms;
        let mut i = 0;
        let mut first = true;
        while i < syms.len() {
            let mut j = i;
            while j < syms.len() && syms[j] == syms[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.names.get(syms[i].gen as usize).cloned().unwrap_or_else(|| format!("x{}", syms[i].gen + 1));
            let run = (j - i) as i64 * if syms[i].inv { -1 } else { 1 };
            if run == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_reduce() {
        let w = Word::from_signed(&[1, 2, -1]);
        assert!(w.mul(&w.inverse()).free_reduce().is_empty());
        assert_eq!(Word::from_signed(&[1, -1, 2]).free_reduce(), Word::gen(1));
    }

    #[test]
    fn commutator_conventions() {
        let a = Word::gen(0);
        let b = Word::gen(1);
        assert_eq!(Word::commutator(&a, &b, CommutatorConvention::LeftInverse), Word::from_signed(&[-1, -2, 1, 2]));
        assert_eq!(Word::commutator(&a, &b, CommutatorConvention::RightInverse), Word::from_signed(&[1, 2, -1, -2]));
    }

    #[test]
    fn display_runs() {
        let names = vec!["a".to_string(), "b".to_string()];
        let w = Word::from_signed(&[1, 1, -2]);
        assert_eq!(w.display(&names).to_string(), "a^2*b^-1");
        assert_eq!(Word::identity().display(&names).to_string(), "1");
    }
}
