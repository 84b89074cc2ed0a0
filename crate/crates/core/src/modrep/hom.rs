//! Module homomorphisms and isomorphism testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rep::Representation;
use crate::error::{Error, Result};
use crate::finfield::{Echelon, Matrix};

/// Random combinations tried when searching for an invertible intertwiner.
pub const ISO_TRIALS: usize = 200;

fn check_compatible(a: &Representation, b: &Representation) -> Result<()> {
    if a.field() != b.field() || a.gens().len() != b.gens().len() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Spin a single vector recording, for each new basis vector, the basis
/// vector and generator that produced it.
fn spin_tracked(rep: &Representation, v: Vec<u32>) -> (Vec<Vec<u32>>, Vec<Option<(usize, usize)>>) {
    let mut e = Echelon::new(rep.field(), rep.dim());
    let mut basis = Vec::new();
    let mut from = Vec::new();
    if e.insert(v.clone()).is_none() {
        return (basis, from);
    }
    basis.push(v);
    from.push(None);
    let mut i = 0;
    while i < basis.len() && !e.is_full() {
        for (j, g) in rep.gens().iter().enumerate() {
            let w = g.vec_mul(&basis[i]);
            if e.insert(w.clone()).is_some() {
                basis.push(w);
                from.push(Some((i, j)));
            }
        }
        i += 1;
    }
    (basis, from)
}

/// All X with A_g·X = X·B_g for every generator g; an echelonized basis of
/// the solution space, each as a dim(a)×dim(b) matrix.
pub fn hom_space(a: &Representation, b: &Representation) -> Result<Vec<Matrix>> {
    check_compatible(a, b)?;
    let (da, db) = (a.dim(), b.dim());
    let f = a.field();
    if da == 0 || db == 0 {
        return Ok(Vec::new());
    }
    // try to find a cyclic vector among the standard basis vectors
    for start in 0..da.min(4) {
        let mut v = vec![0u32; da];
        v[start] = 1;
        let (basis, from) = spin_tracked(a, v);
        if basis.len() == da {
            return Ok(hom_from_cyclic(a, b, &basis, &from));
        }
    }
    // general fallback: the full Kronecker system
    let n = da * db;
    let mut eqs = Echelon::new(f, n);
    for (ga, gb) in a.gens().iter().zip(b.gens()) {
        for i in 0..da {
            for j in 0..db {
                let mut row = vec![0u32; n];
                for k in 0..da {
                    let c = ga.get(i, k);
                    if c != 0 {
                        row[k * db + j] = f.add(row[k * db + j], c);
                    }
                }
                for k in 0..db {
                    let c = gb.get(k, j);
                    if c != 0 {
                        row[i * db + k] = f.sub(row[i * db + k], c);
                    }
                }
                eqs.insert(row);
            }
        }
    }
    let sol = eqs.basis_matrix().nullspace();
    Ok(sol.into_iter().map(|v| Matrix::from_flat(f, da, db, v)).collect())
}

fn hom_from_cyclic(
    a: &Representation,
    b: &Representation,
    basis: &[Vec<u32>],
    from: &[Option<(usize, usize)>],
) -> Vec<Matrix> {
    let (da, db) = (a.dim(), b.dim());
    let f = a.field();
    // φ(basis_t) = w·M_t
    let mut mats: Vec<Matrix> = Vec::with_capacity(da);
    for src in from {
        let m = match src {
            None => Matrix::identity(f, db),
            Some((s, j)) => mats[*s].mul(&b.gens()[*j]),
        };
        mats.push(m);
    }
    let coords_basis = Matrix::from_rows(f, da, basis);
    let to_basis = coords_basis.inverse().expect("spin basis is a basis");
    // constraints: w·(M_t B_g − Σ_k c_k M_k) = 0 where basis_t·A_g = Σ c_k basis_k
    let mut cons = Echelon::new(f, db);
    'outer: for t in 0..da {
        for (ga, gb) in a.gens().iter().zip(b.gens()) {
            let img = ga.vec_mul(&basis[t]);
            let c = to_basis.vec_mul(&img);
            let mut m = mats[t].mul(gb);
            for (k, &ck) in c.iter().enumerate() {
                if ck != 0 {
                    m.add_scaled(f.neg(ck), &mats[k]);
                }
            }
            for col in m.transpose().to_rows() {
                cons.insert(col);
                if cons.is_full() {
                    break 'outer;
                }
            }
        }
    }
    let ws = cons.basis_matrix().nullspace();
    let mut out = Echelon::new(f, da * db);
    for w in ws {
        let rows: Vec<Vec<u32>> = mats.iter().map(|m| m.vec_mul(&w)).collect();
        let phi_b = Matrix::from_rows(f, db, &rows);
        let phi = to_basis.mul(&phi_b);
        out.insert(phi.data().to_vec());
    }
    out.to_rref().to_rows().into_iter().map(|v| Matrix::from_flat(f, da, db, v)).collect()
}

/// Dimension over the base field of End(V).
pub fn end_degree(v: &Representation) -> Result<usize> {
    Ok(hom_space(v, v)?.len())
}

/// An invertible intertwiner a → b, or None when none was found.
///
/// For simple modules the answer is exact (any nonzero homomorphism is an
/// isomorphism); otherwise basis elements and then seeded random
/// combinations are tried.
pub fn is_isomorphic(a: &Representation, b: &Representation, seed: u64) -> Result<Option<Matrix>> {
    check_compatible(a, b)?;
    if a.dim() != b.dim() {
        return Ok(None);
    }
    if a.dim() == 0 {
        return Ok(Some(Matrix::zeros(a.field(), 0, 0)));
    }
    let homs = hom_space(a, b)?;
    if homs.is_empty() {
        return Ok(None);
    }
    for h in &homs {
        if h.inverse().is_some() {
            return Ok(Some(h.clone()));
        }
    }
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ISO_TRIALS {
        let mut m = Matrix::zeros(f, a.dim(), b.dim());
        for h in &homs {
            m.add_scaled(rng.gen_range(0..f.order()), h);
        }
        if m.inverse().is_some() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finfield::Field;
    use crate::fixtures;
    use crate::modrep::chop;
    use crate::DEFAULT_SEED;

    fn kron_hom_dim(a: &Representation, b: &Representation) -> usize {
        // the Kronecker system directly, as an oracle
        let (da, db) = (a.dim(), b.dim());
        let f = a.field();
        let n = da * db;
        let mut rows = Vec::new();
        for (ga, gb) in a.gens().iter().zip(b.gens()) {
            for i in 0..da {
                for j in 0..db {
                    let mut row = vec![0u32; n];
                    for k in 0..da {
                        row[k * db + j] = f.add(row[k * db + j], ga.get(i, k));
                    }
                    for k in 0..db {
                        row[i * db + k] = f.sub(row[i * db + k], gb.get(k, j));
                    }
                    rows.push(row);
                }
            }
        }
        n - Matrix::from_rows(f, n, &rows).rank()
    }

    #[test]
    fn intertwiners_commute() {
        let h = fixtures::s3();
        let f3 = Field::prime(3).unwrap();
        let perm = Representation::permutation_module(&h, &f3);
        let homs = hom_space(&perm, &perm).unwrap();
        assert_eq!(homs.len(), kron_hom_dim(&perm, &perm));
        for x in &homs {
            for g in perm.gens() {
                assert_eq!(g.mul(x), x.mul(g));
            }
        }
        let triv = Representation::trivial(&h, &f3);
        assert_eq!(hom_space(&perm, &triv).unwrap().len(), 1);
        assert_eq!(hom_space(&triv, &perm).unwrap().len(), 1);
    }

    #[test]
    fn a5_fours() {
        let h = fixtures::a5();
        let f2 = Field::prime(2).unwrap();
        let perm = Representation::permutation_module(&h, &f2);
        let four = chop(&perm, DEFAULT_SEED).unwrap().into_iter().find(|r| r.dim() == 4).unwrap();
        assert_eq!(end_degree(&four).unwrap(), 1);
        let sq = four.tensor(&four).unwrap();
        let other = chop(&sq, DEFAULT_SEED)
            .unwrap()
            .into_iter()
            .find(|r| r.dim() == 4 && is_isomorphic(r, &four, 1).unwrap().is_none())
            .expect("second 4-dimensional simple");
        assert_eq!(end_degree(&other).unwrap(), 2);
        assert_eq!(kron_hom_dim(&other, &other), 2);
        assert!(is_isomorphic(&four, &four, 1).unwrap().is_some());
        assert!(is_isomorphic(&four, &Representation::trivial(&h, &f2), 1).unwrap().is_none());
    }
}
