use crate::error::{Error, Result};
use crate::finfield::{sparse_from_terms, SparseEchelon};
use crate::hybrid::ModuleAction;

/// Largest group order the oracle accepts.
pub const ORACLE_MAX_ORDER: usize = 60;
/// Largest module dimension the oracle accepts.
pub const ORACLE_MAX_DIM: usize = 4;

/// dim H²(H, V) from the multiplication table: normalized 2-cocycles modulo
/// the coboundaries of all functions H → V.
pub fn cocycle_oracle(v: &ModuleAction) -> Result<usize> {
    let h = v.root();
    let m = h.order();
    let d = v.dim();
    if m > ORACLE_MAX_ORDER || d > ORACLE_MAX_DIM {
        return Err(Error::Limit(format!("oracle limited to |H| ≤ {ORACLE_MAX_ORDER} and dim ≤ {ORACLE_MAX_DIM}")));
    }
    let fp = v.field().fp();
    // γ(g,h) for g,h ≠ 1, coordinate c
    let var = |g: u32, k: u32, c: usize| -> Option<u32> {
        (g != 0 && k != 0).then(|| (((g as usize - 1) * (m - 1) + (k as usize - 1)) * d + c) as u32)
    };
    let nvars = (m - 1) * (m - 1) * d;
    let mut z = SparseEchelon::new(fp, nvars);
    for g in 1..m as u32 {
        for x in 1..m as u32 {
            let gx = h.mul_idx(g, x);
            for k in 1..m as u32 {
                let xk = h.mul_idx(x, k);
                let a = v.matrix(k);
                // γ(g,x)·A(k) + γ(gx,k) − γ(x,k) − γ(g,xk) = 0
                for c in 0..d {
                    let mut terms = Vec::new();
                    for i in 0..d {
                        let coeff = a.get(i, c);
                        if coeff != 0 {
                            terms.push((var(g, x, i).unwrap(), coeff));
                        }
                    }
                    if let Some(t) = var(gx, k, c) {
                        terms.push((t, 1));
                    }
                    terms.push((var(x, k, c).unwrap(), fp.neg(1)));
                    if let Some(t) = var(g, xk, c) {
                        terms.push((t, fp.neg(1)));
                    }
                    z.insert(&sparse_from_terms(fp, terms));
                }
            }
        }
    }
    let dim_z = nvars - z.rank();
    // δλ(g,x) = λ(g)·A(x) + λ(x) − λ(gx), λ(1) = 0
    let mut b = SparseEchelon::new(fp, nvars);
    for g in 1..m as u32 {
        for j in 0..d {
            let mut terms = Vec::new();
            for x in 1..m as u32 {
                // contributions of λ(g) = e_j at the pairs (g,x), (x,g) and (y,x) with yx = g
                let a = v.matrix(x);
                for c in 0..d {
                    let coeff = a.get(j, c);
                    if coeff != 0 {
                        terms.push((var(g, x, c).unwrap(), coeff));
                    }
                }
                terms.push((var(x, g, j).unwrap(), 1));
                let y = h.mul_idx(g, h.inv_idx(x));
                if let Some(t) = var(y, x, j) {
                    terms.push((t, fp.neg(1)));
                }
            }
            b.insert(&sparse_from_terms(fp, terms));
        }
    }
    Ok(dim_z - b.rank())
}
