//! Text syntax for words and permutations.
//!
//! Words: generator names, `*` (optional between atoms), `^k` with signed
//! integer k, parentheses, commutators `[x,y]`, and `1` for the identity.
//! A token such as `ab` that is not itself a generator name is read as the
//! product of single-letter generators when every character is one.
//! Permutations use cycle notation on points 1..n: `(1,2)(3,4)`, `()`.

use super::perm::Permutation;
use super::word::{CommutatorConvention, Word};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    names: &'a [String],
    conv: CommutatorConvention,
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, col: col + 1, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(err(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Word> {
        let mut w = self.term()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    w = w.mul(&self.term()?);
                }
                Some(c) if c == b'(' || c == b'[' || c.is_ascii_alphabetic() || c == b'_' || c == b'1' => {
                    w = w.mul(&self.term()?);
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            w = w.pow(k);
        }
        Ok(w)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if self.src.get(self.pos) == Some(&b'-') {
            neg = true;
            self.pos += 1;
        } else if self.src.get(self.pos) == Some(&b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(err(start, "expected integer exponent"));
        }
        let v: i64 = std::str::from_utf8(&self.src[digits_start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| err(start, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(b',')?;
                let y = self.expr()?;
                self.expect(b']')?;
                Ok(Word::commutator(&x, &y, self.conv))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let tok = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(i) = self.names.iter().position(|n| n == tok) {
                    return Ok(Word::gen(i as u32));
                }
                let mut syms = Vec::new();
                for (k, ch) in tok.chars().enumerate() {
                    let s = ch.to_string();
                    match self.names.iter().position(|n| *n == s) {
                        Some(i) => syms.push(Word::gen(i as u32)),
                        None => return Err(err(start + k, format!("unknown generator '{tok}'"))),
                    }
                }
                Ok(syms.iter().fold(Word::identity(), |a, b| a.mul(b)))
            }
            Some(c) => Err(err(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(err(self.pos, "unexpected end of word")),
        }
    }
}

/// Parses a word over the named generators.
pub fn parse_word(text: &str, names: &[String], conv: CommutatorConvention) -> Result<Word> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, names, conv };
    let w = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("trailing '{}'", c as char)));
    }
    Ok(w)
}

/// Whether a text looks like cycle notation rather than a word.
pub fn looks_like_cycles(text: &str) -> bool {
    let t = text.trim();
    t.starts_with('(') && t.chars().all(|c| c.is_ascii_digit() || "(), ".contains(c))
}

/// Parses cycle notation; the degree is the largest point mentioned unless given.
pub fn parse_cycles(text: &str, degree: Option<usize>) -> Result<Permutation> {
    let b = text.as_bytes();
    let mut pos = 0;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let skip = |pos: &mut usize| {
        while *pos < b.len() && b[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip(&mut pos);
    while pos < b.len() {
        if b[pos] != b'(' {
            return Err(err(pos, "expected '(' in cycle notation"));
        }
        let open = pos;
        pos += 1;
        let mut cyc = Vec::new();
        loop {
            skip(&mut pos);
            if pos >= b.len() {
                return Err(err(open, "unterminated cycle"));
            }
            if b[pos] == b')' {
                pos += 1;
                break;
            }
            let start = pos;
            while pos < b.len() && b[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(err(pos, "expected point number"));
            }
            let pt: usize =
                std::str::from_utf8(&b[start..pos]).unwrap().parse().map_err(|_| err(start, "bad point"))?;
            if pt == 0 {
                return Err(err(start, "points are numbered from 1"));
            }
            cyc.push(pt);
            skip(&mut pos);
            if pos < b.len() && b[pos] == b',' {
                pos += 1;
            } else if pos < b.len() && b[pos] == b')' {
                continue;
            } else if pos >= b.len() {
                return Err(err(open, "unterminated cycle"));
            } else {
                return Err(err(pos, "expected ',' or ')'"));
            }
        }
        cycles.push(cyc);
        skip(&mut pos);
    }
    let max_pt = cycles.iter().flatten().copied().max().unwrap_or(0);
    let n = degree.unwrap_or(max_pt).max(max_pt);
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut seen = vec![false; n];
    for cyc in &cycles {
        for (k, &pt) in cyc.iter().enumerate() {
            if seen[pt - 1] {
                return Err(err(0, format!("point {pt} repeated in cycle notation")));
            }
            seen[pt - 1] = true;
            images[pt - 1] = (cyc[(k + 1) % cyc.len()] - 1) as u32;
        }
    }
    Permutation::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn words() {
        let n = names(&["a", "b"]);
        let c = CommutatorConvention::LeftInverse;
        assert_eq!(parse_word("a*b^-1", &n, c).unwrap(), Word::from_signed(&[1, -2]));
        assert_eq!(parse_word("(ab)^2", &n, c).unwrap(), Word::from_signed(&[1, 2, 1, 2]));
        assert_eq!(parse_word("[a,b]", &n, c).unwrap(), Word::from_signed(&[-1, -2, 1, 2]));
        assert_eq!(parse_word("1", &n, c).unwrap(), Word::identity());
        assert_eq!(parse_word("a^3 b", &n, c).unwrap(), Word::from_signed(&[1, 1, 1, 2]));
        assert!(matches!(parse_word("a*c", &n, c), Err(Error::Parse { col: 3, .. })));
        assert!(parse_word("(a", &n, c).is_err());
    }

    #[test]
    fn long_names() {
        let n = names(&["x1", "x2"]);
        let w = parse_word("x1*x2^-1", &n, CommutatorConvention::LeftInverse).unwrap();
        assert_eq!(w, Word::from_signed(&[1, -2]));
    }

    #[test]
    fn cycles() {
        let p = parse_cycles("(1,2)(3,4)", Some(5)).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2, 4]);
        assert_eq!(parse_cycles("()", Some(3)).unwrap().images(), &[0, 1, 2]);
        assert!(matches!(parse_cycles("(1,2", None), Err(Error::Parse { .. })));
        assert!(parse_cycles("(1,1)", None).is_err());
        assert!(looks_like_cycles("(1,2,3)"));
        assert!(!looks_like_cycles("(ab)^2"));
    }
}
