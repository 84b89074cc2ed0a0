//! Norton/Holt–Rees irreducibility test and composition series.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rep::{spin, spin_with, Representation};
use crate::error::{Error, Result};
use crate::finfield::{Echelon, Field, Matrix};

/// Random algebra elements tried before giving up.
pub const MEATAXE_RETRIES: usize = 50;

/// Largest number of candidate polynomials enumerated per degree.
const FACTOR_SEARCH_LIMIT: u64 = 20_000;

/// Outcome of one irreducibility test.
#[derive(Clone, Debug)]
pub enum Split {
    Irreducible,
    /// A proper nonzero invariant subspace.
    Reducible(Echelon),
}

// Polynomials over a general finite field, lowest degree first.

fn ptrim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn pdivrem(f: &Field, a: &[u32], m: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let dm = m.len() - 1;
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - dm];
    let li = f.inv(m[dm]);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = f.mul(*r.last().unwrap(), li);
        q[shift] = c;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
        }
        ptrim(&mut r);
    }
    (q, r)
}

fn pmul(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    r
}

/// Characteristic polynomial as the product of relative minimal polynomials
/// of a cyclic decomposition.
pub fn char_poly(theta: &Matrix) -> Vec<u32> {
    let f = theta.field().clone();
    let n = theta.rows();
    let mut global = Echelon::new(&f, n);
    let mut result = vec![1u32];
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        if global.contains(&e) {
            continue;
        }
        // local rows: (reduced vector, polynomial with vector = poly(θ)·e mod global)
        let mut local: Vec<(Vec<u32>, usize, Vec<u32>)> = Vec::new();
        let mut cur = e;
        let mut k = 0usize;
        loop {
            let mut v = cur.clone();
            global.reduce(&mut v);
            let mut poly = vec![0u32; k + 1];
            poly[k] = 1;
            for (row, pc, rp) in &local {
                let c = v[*pc];
                if c != 0 {
                    let nc = f.neg(c);
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(nc, y));
                    }
                    for (j, &y) in rp.iter().enumerate() {
                        poly[j] = f.add(poly[j], f.mul(nc, y));
                    }
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => {
                    result = pmul(&f, &result, &poly);
                    break;
                }
                Some(pc) => {
                    let inv = f.inv(v[pc]);
                    for x in v.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    for x in poly.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    local.push((v, pc, poly));
                    cur = theta.vec_mul(&cur);
                    k += 1;
                }
            }
        }
        for (row, _, _) in local {
            global.insert(row);
        }
    }
    result
}

/// Distinct monic irreducible factors of small degree, in increasing degree.
fn small_factors(f: &Field, c: &[u32]) -> Vec<Vec<u32>> {
    let q = f.order() as u64;
    let mut rem = c.to_vec();
    let mut out = Vec::new();
    let mut d = 1usize;
    while rem.len() > 1 {
        let count = match q.checked_pow(d as u32) {
            Some(c) if c <= FACTOR_SEARCH_LIMIT => c,
            _ => break,
        };
        if d >= rem.len() {
            break;
        }
        for code in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                cand.push((x % q) as u32);
                x /= q;
            }
            cand.push(1);
            let mut found = false;
            loop {
                let (quo, r) = pdivrem(f, &rem, &cand);
                if !r.is_empty() {
                    break;
                }
                rem = quo;
                found = true;
            }
            if found {
                out.push(cand);
            }
            if rem.len() <= 1 {
                break;
            }
        }
        d += 1;
    }
    out
}

fn eval_poly(poly: &[u32], m: &Matrix) -> Matrix {
    let f = m.field();
    let n = m.rows();
    let mut acc = Matrix::zeros(f, n, n);
    for &c in poly.iter().rev() {
        acc = acc.mul(m);
        if c != 0 {
            acc.add_scaled(c, &Matrix::identity(f, n));
        }
    }
    acc
}

fn random_algebra_element<R: Rng>(gens: &[Matrix], rng: &mut R) -> Matrix {
    let f = gens[0].field().clone();
    let mut words: Vec<Matrix> = gens.to_vec();
    for _ in 0..6 {
        let a = rng.gen_range(0..words.len());
        let b = rng.gen_range(0..words.len());
        let p = words[a].mul(&words[b]);
        words.push(p);
    }
    let n = gens[0].rows();
    let mut theta = Matrix::zeros(&f, n, n);
    for w in &words {
        if rng.gen_bool(0.6) {
            theta.add_scaled(rng.gen_range(1..f.order()), w);
        }
    }
    theta
}

/// One irreducibility decision with a certificate either way.
pub fn split(rep: &Representation, seed: u64) -> Result<Split> {
    let n = rep.dim();
    if n <= 1 || rep.gens().is_empty() {
        if n > 1 {
            // no generators: any line is invariant
            let mut e = Echelon::new(rep.field(), n);
            let mut v = vec![0; n];
            v[0] = 1;
            e.insert(v);
            return Ok(Split::Reducible(e));
        }
        return Ok(Split::Irreducible);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dual = rep.transpose();
    for _ in 0..MEATAXE_RETRIES {
        let theta = random_algebra_element(rep.gens(), &mut rng);
        let cp = char_poly(&theta);
        for fac in small_factors(rep.field(), &cp) {
            let ft = eval_poly(&fac, &theta);
            let kernel = ft.left_nullspace();
            if kernel.is_empty() {
                continue;
            }
            let s = spin(rep, &kernel[..1]);
            if s.len() < n {
                return Ok(Split::Reducible(s));
            }
            if kernel.len() != fac.len() - 1 {
                continue;
            }
            let dk = ft.nullspace();
            let sd = spin_with(dual.field(), n, dual.gens(), &dk[..1]);
            if sd.len() < n {
                // annihilator of an invariant subspace of the dual
                let b = sd.basis_matrix();
                let ann = b.nullspace();
                let e = Echelon::from_rows(rep.field(), n, &ann);
                return Ok(Split::Reducible(e));
            }
            return Ok(Split::Irreducible);
        }
    }
    Err(Error::Limit(format!("irreducibility test inconclusive after {MEATAXE_RETRIES} attempts (dim {n})")))
}

/// Composition factors, submodule side first.
pub fn chop(rep: &Representation, seed: u64) -> Result<Vec<Representation>> {
    let mut out = Vec::new();
    let mut stack = vec![rep.clone()];
    let mut counter = 0u64;
    while let Some(m) = stack.pop() {
        if m.dim() == 0 {
            continue;
        }
        counter += 1;
        match split(&m, seed.wrapping_add(counter.wrapping_mul(0x9E37_79B9_7F4A_7C15)))? {
            Split::Irreducible => out.push(m),
            Split::Reducible(sub) => {
                let s = m.restrict(&sub)?;
                let (q, _) = m.quotient(&sub)?;
                // process the submodule before the quotient
                stack.push(q);
                stack.push(s);
            }
        }
    }
    Ok(out)
}

pub fn is_irreducible(rep: &Representation, seed: u64) -> Result<bool> {
    Ok(matches!(split(rep, seed)?, Split::Irreducible))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::DEFAULT_SEED;

    /// All invariant subspaces by brute force (tiny modules only).
    pub(crate) fn brute_force_invariant_dims(rep: &Representation) -> Vec<usize> {
        let n = rep.dim();
        let q = rep.field().order() as usize;
        let total = q.pow(n as u32);
        let mut dims = std::collections::BTreeSet::new();
        for code in 1..total {
            let mut v = vec![0u32; n];
            let mut x = code;
            for slot in v.iter_mut() {
                *slot = (x % q) as u32;
                x /= q;
            }
            dims.insert(spin(rep, &[v]).len());
        }
        dims.into_iter().collect()
    }

    #[test]
    fn char_poly_of_companion() {
        let f = Field::prime(5).unwrap();
        // companion of x^2 - 2x - 3
        let m = Matrix::from_rows(&f, 2, &[vec![0, 1], vec![3, 2]]);
        let cp = char_poly(&m);
        assert_eq!(cp, vec![f.fp().neg(3), f.fp().neg(2), 1]);
        // (x - 1)^3 = x^3 - 3x^2 + 3x - 1
        let id = Matrix::identity(&f, 3);
        assert_eq!(char_poly(&id), vec![4, 3, 2, 1]);
    }

    #[test]
    fn s3_perm_mod2() {
        let h = fixtures::s3();
        let f2 = Field::prime(2).unwrap();
        let perm = Representation::permutation_module(&h, &f2);
        let mut dims: Vec<usize> = chop(&perm, DEFAULT_SEED).unwrap().iter().map(|r| r.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        // brute force: invariant subspaces of dims 1 (all-ones), 2 (sum zero) and 3
        let bf = brute_force_invariant_dims(&perm);
        assert_eq!(bf, vec![1, 2, 3]);
    }

    #[test]
    fn a5_perm_mod2() {
        let h = fixtures::a5();
        let f2 = Field::prime(2).unwrap();
        let perm = Representation::permutation_module(&h, &f2);
        let factors = chop(&perm, DEFAULT_SEED).unwrap();
        let mut dims: Vec<usize> = factors.iter().map(|r| r.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
        // spin each of the 15 nonzero vectors of the 4-dim factor
        let four = factors.iter().find(|r| r.dim() == 4).unwrap();
        assert_eq!(brute_force_invariant_dims(four), vec![4]);
    }

    #[test]
    fn chop_agrees_with_brute_force_small() {
        for h in [fixtures::s3(), fixtures::c3()] {
            for p in [2u32, 3] {
                let f = Field::prime(p).unwrap();
                let reg = Representation::regular(&h, &f, 1000).unwrap();
                if reg.dim() > 6 {
                    continue;
                }
                for fac in chop(&reg, 3).unwrap() {
                    assert_eq!(brute_force_invariant_dims(&fac), vec![fac.dim()]);
                }
            }
        }
    }
}
