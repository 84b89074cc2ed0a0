//! A cyclic generator of V^r, the V-homogeneous top of the regular module.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::catalog::{decompose_homogeneous, homogeneous_quotient, SimpleCatalog};
use super::hom::hom_space;
use super::meataxe::chop;
use super::rep::{spin, Representation};
use crate::error::{Error, Result};
use crate::finfield::{Echelon, Field, Matrix};

/// Largest |H| for which the regular-module route is used.
pub const REGULAR_ROUTE_CAP: usize = 200;

/// Random candidates tried when both constructions fail the certificate.
const RANDOM_TRIALS: usize = 200;

/// Whether z spins up the whole of V^r.
pub fn generates(v: &Representation, r: usize, z: &[u32]) -> bool {
    let vr = v.power(r);
    z.len() == vr.dim() && spin(&vr, &[z.to_vec()]).is_full()
}

/// z ∈ V^r with spin(V^r, z) = V^r for catalog entry `index`.
pub fn cyclic_generator(catalog: &SimpleCatalog, index: usize, seed: u64) -> Result<Vec<u32>> {
    let s = catalog.get(index);
    let (v, r) = (&s.rep, s.r);
    if r == 1 {
        let mut z = vec![0; v.dim()];
        z[0] = 1;
        return Ok(z);
    }
    let mut attempts: Vec<Vec<u32>> = Vec::new();
    if catalog.group().order() <= REGULAR_ROUTE_CAP {
        attempts.push(regular_route(catalog, index)?);
    }
    if let Ok(z) = synthetic_route(catalog, index, seed) {
        attempts.push(z);
    }
    for z in attempts {
        if generates(v, r, &z) {
            return Ok(z);
        }
    }
    let vr = v.power(r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let z = Matrix::random(v.field(), 1, vr.dim(), &mut rng).row(0).to_vec();
        if spin(&vr, &[z.clone()]).is_full() {
            return Ok(z);
        }
    }
    Err(Error::Limit("no cyclic generator found".into()))
}

/// Image of the identity of F_pH in V^r via its V-homogeneous quotient.
pub fn regular_route(catalog: &SimpleCatalog, index: usize) -> Result<Vec<u32>> {
    let s = catalog.get(index);
    let reg = Representation::regular(catalog.group(), catalog.field(), REGULAR_ROUTE_CAP)?;
    let (q, map) = homogeneous_quotient(&reg, &s.rep)?;
    let embeds = decompose_homogeneous(&q, &s.rep)?;
    let mut stacked = embeds[0].clone();
    for e in &embeds[1..] {
        stacked = stacked.stack(e);
    }
    let inv = stacked.inverse().ok_or_else(|| Error::Inconsistent("homogeneous decomposition is not direct".into()))?;
    let mut one = vec![0; reg.dim()];
    one[0] = 1;
    Ok(inv.vec_mul(&map.project(&one)))
}

/// Splitting-field construction: choose basis vectors w_1..w_r whose images
/// in an absolutely simple constituent form a basis, and return
/// [w_1]_1 + … + [w_r]_r.
pub fn synthetic_route(catalog: &SimpleCatalog, index: usize, seed: u64) -> Result<Vec<u32>> {
    let s = catalog.get(index);
    let (v, r, d) = (&s.rep, s.r, s.dim());
    let f = catalog.field();
    let big = Field::extension_seeded(f.p(), f.degree() * s.k as u32, seed)?;
    let ext = v.extend_scalars(&big)?;
    let u = chop(&ext, seed)?.into_iter().next().ok_or_else(|| Error::Inconsistent("empty module".into()))?;
    let nu = hom_space(&ext, &u)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Inconsistent("no projection onto a constituent".into()))?;
    let mut chosen = Echelon::new(&big, u.dim());
    let mut idx = Vec::new();
    for i in 0..d {
        if chosen.insert(nu.row(i).to_vec()).is_some() {
            idx.push(i);
        }
    }
    if idx.len() != r {
        return Err(Error::Inconsistent("constituent dimension differs from the multiplicity".into()));
    }
    let mut z = vec![0; r * d];
    for (t, &i) in idx.iter().enumerate() {
        z[t * d + i] = 1;
    }
    Ok(z)
}
