use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::action::ModuleAction;
use crate::error::Result;
use crate::modrep::SimpleCatalog;

/// A homogeneous piece of a kernel layer: `mult` copies of a simple module
/// of F_p-dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub module: usize,
    pub dim: usize,
    pub mult: usize,
}

/// Composition factors of a layer grouped by isomorphism type, ordered by
/// dimension and catalog index.
pub fn layer_components(action: &ModuleAction, catalog: &SimpleCatalog, seed: u64) -> Result<Vec<Component>> {
    if action.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for i in catalog.factor_indices(&action.to_rep(), seed)? {
        *counts.entry((catalog.get(i).dim(), i)).or_default() += 1;
    }
    Ok(counts.into_iter().map(|((dim, module), mult)| Component { module, dim, mult }).collect())
}

/// Shape of a quotient: elementary abelian layers over the root group,
/// newest layer first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Structure {
    pub p: u32,
    pub layers: Vec<Vec<Component>>,
    pub top: String,
}

#[derive(Clone, Copy)]
enum Style {
    Canonical,
    Compact,
    Alias,
}

impl Structure {
    pub fn new(p: u32, top: &str) -> Self {
        Structure { p, layers: Vec::new(), top: top.to_string() }
    }

    /// Adds a layer on the left; empty layers are skipped.
    pub fn push_layer(&mut self, layer: Vec<Component>) {
        if !layer.is_empty() {
            self.layers.insert(0, layer);
        }
    }

    pub fn kernel_exponent(&self) -> usize {
        self.layers.iter().flatten().map(|c| c.dim * c.mult).sum()
    }

    fn piece(&self, c: &Component, style: Style) -> Vec<String> {
        let p = self.p;
        let single = |d: usize| if d == 1 { p.to_string() } else { format!("{p}^{d}") };
        match style {
            Style::Alias => vec![single(c.dim); c.mult],
            _ if c.mult == 1 => vec![single(c.dim)],
            Style::Compact if c.dim == 1 => vec![single(c.mult)],
            _ => vec![format!("{p}^{{{}·{}}}", c.dim, c.mult)],
        }
    }

    fn render(&self, style: Style) -> String {
        let mut parts: Vec<String> = self
            .layers
            .iter()
            .map(|layer| {
                let pieces: Vec<String> = layer.iter().flat_map(|c| self.piece(c, style)).collect();
                if pieces.len() > 1 {
                    format!("({})", pieces.join("×"))
                } else {
                    pieces.join("")
                }
            })
            .collect();
        parts.push(self.top.clone());
        parts.join(".")
    }

    /// Every homogeneous component as p^{d·k}, with k = 1 printed p^d.
    pub fn canonical(&self) -> String {
        self.render(Style::Canonical)
    }

    /// As canonical, but k copies of a one-dimensional module print p^k.
    pub fn compact(&self) -> String {
        self.render(Style::Compact)
    }

    /// Every copy written out as a separate factor.
    pub fn alias(&self) -> String {
        self.render(Style::Alias)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.compact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(module: usize, dim: usize, mult: usize) -> Component {
        Component { module, dim, mult }
    }

    #[test]
    fn renderings() {
        let mut s = Structure::new(2, "A5");
        assert_eq!(s.canonical(), "A5");
        s.push_layer(vec![comp(0, 1, 2)]);
        assert_eq!(s.canonical(), "2^{1·2}.A5");
        assert_eq!(s.compact(), "2^2.A5");
        assert_eq!(s.alias(), "(2×2).A5");
        let mut t = Structure::new(2, "A5");
        t.push_layer(vec![comp(0, 1, 1), comp(1, 4, 1)]);
        t.push_layer(vec![comp(0, 1, 1)]);
        assert_eq!(t.compact(), "2.(2×2^4).A5");
        assert_eq!(t.canonical(), "2.(2×2^4).A5");
        assert_eq!(t.kernel_exponent(), 6);
        let mut u = Structure::new(2, "A5");
        u.push_layer(vec![comp(1, 4, 4)]);
        assert_eq!(u.compact(), "2^{4·4}.A5");
        assert_eq!(u.alias(), "(2^4×2^4×2^4×2^4).A5");
        let mut v = Structure::new(3, "A6");
        v.push_layer(vec![comp(1, 4, 1), comp(2, 6, 2), comp(3, 9, 1)]);
        assert_eq!(v.compact(), "(3^4×3^{6·2}×3^9).A6");
    }
}
