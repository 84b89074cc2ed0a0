use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Permutation of {0..n-1} acting on the right: `(g*h)(i) = h(g(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::InvalidInput(format!("not a permutation: {images:?}")));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    /// Pads to degree `n` with fixed points.
    pub fn extend(&self, n: usize) -> Self {
        let mut images = self.images.clone();
        for i in images.len()..n {
            images.push(i as u32);
        }
        Permutation { images }
    }

    /// First `self`, then `other`.
    pub fn mul(&self, other: &Permutation) -> Self {
        let n = self.degree().max(other.degree());
        let a = self.extend(n);
        let b = other.extend(n);
        Permutation { images: a.images.iter().map(|&i| b.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut r = Permutation::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut l = 1u64;
        for s in 0..self.degree() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            l = lcm(l, len);
        }
        l
    }

    /// Cycle notation with 1-based points; `()` for the identity.
    pub fn cycles_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for s in 0..self.degree() {
            if seen[s] || self.images[s] as usize == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.images[i] as usize;
            }
            out.push('(');
            out.push_str(&cyc.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

/// Elements of the group generated by `gens`, breadth first from the identity,
/// or an error when more than `cap` elements appear.
pub fn closure(gens: &[Permutation], degree: usize, cap: usize) -> Result<Vec<Permutation>> {
    let gens: Vec<Permutation> = gens.iter().map(|g| g.extend(degree)).collect();
    let id = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elems = vec![id.clone()];
    index.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let h = elems[i].mul(g);
            if !index.contains_key(&h) {
                if elems.len() >= cap {
                    return Err(Error::Limit(format!("permutation closure exceeds {cap} elements")));
                }
                index.insert(h.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(h);
            }
        }
    }
    Ok(elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse::parse_cycles;

    #[test]
    fn right_action_composition() {
        let a = parse_cycles("(1,2)(3,4)", Some(5)).unwrap();
        let b = parse_cycles("(1,3,5)", Some(5)).unwrap();
        assert_eq!(a.mul(&b).cycles_string(), "(1,2,3,4,5)");
    }

    #[test]
    fn order_and_inverse() {
        let c = parse_cycles("(1,2,3)(4,5)", None).unwrap();
        assert_eq!(c.order(), 6);
        assert!(c.mul(&c.inverse()).is_identity());
        assert_eq!(c.pow(6), Permutation::identity(5));
    }

    #[test]
    fn closure_sizes() {
        let a = parse_cycles("(1,2)(3,4)", Some(5)).unwrap();
        let b = parse_cycles("(1,3,5)", Some(5)).unwrap();
        assert_eq!(closure(&[a.clone(), b], 5, 1000).unwrap().len(), 60);
        assert!(closure(&[a], 5, 1).is_err());
    }
}
