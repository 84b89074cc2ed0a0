use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::DEFAULT_SEED;

/// Arithmetic in the prime field F_p on raw residues.
///
/// This is the hot-path type: vectors and kernels of hybrid groups are
/// plain `u32` slices and every kernel operation goes through it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// Reduce a signed integer into [0, p).
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// `y += a·x` componentwise.
    #[inline]
    pub fn axpy(self, y: &mut [u32], a: u32, x: &[u32]) {
        debug_assert_eq!(y.len(), x.len());
        if a == 0 {
            return;
        }
        if a == 1 {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = self.add(*yi, xi);
            }
        } else {
            for (yi, &xi) in y.iter_mut().zip(x) {
                if xi != 0 {
                    *yi = self.add(*yi, self.mul(a, xi));
                }
            }
        }
    }

    pub fn scale(self, v: &mut [u32], a: u32) {
        for x in v.iter_mut() {
            *x = self.mul(*x, a);
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over F_p, coefficients low degree first, no trailing zeros.
pub(crate) mod poly {
    use super::Fp;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut r: Vec<u32> = (0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        trim(&mut r);
        r
    }

    pub fn mul(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(x, y));
            }
        }
        trim(&mut r);
        r
    }

    /// Remainder of `a` modulo nonzero `m`.
    pub fn rem(f: Fp, a: &[u32], m: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = f.inv(m[dm]);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let c = f.mul(*r.last().unwrap(), lead_inv);
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, mi));
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(f: Fp, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
        rem(f, &mul(f, a, b), m)
    }

    pub fn powmod(f: Fp, a: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut base = rem(f, a, m);
        let mut r = rem(f, &[1], m);
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(f, &r, &base, m);
            }
            base = mulmod(f, &base, &base, m);
            e >>= 1;
        }
        r
    }

    pub fn gcd(f: Fp, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        if let Some(&l) = a.last() {
            let li = f.inv(l);
            for x in a.iter_mut() {
                *x = f.mul(*x, li);
            }
        }
        a
    }

    /// Rabin's irreducibility test for a monic polynomial of degree k ≥ 1.
    pub fn is_irreducible(f: Fp, m: &[u32]) -> bool {
        let k = m.len() - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let p = f.p as u64;
        // x^(p^k) ≡ x mod m
        let mut xp = x.clone();
        for _ in 0..k {
            xp = powmod(f, &xp, p, m);
        }
        if sub(f, &xp, &x) != Vec::<u32>::new() {
            return false;
        }
        for r in super::prime_factors(k as u64) {
            let mut t = x.clone();
            for _ in 0..(k as u64 / r) {
                t = powmod(f, &t, p, m);
            }
            let g = gcd(f, &sub(f, &t, &x), m);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

struct ExtTables {
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Field descriptor for F_q with q = p^k.
///
/// Elements are encoded as integers in [0, q): the residue polynomial
/// Σ c_i x^i modulo the descriptor's irreducible modulus maps to Σ c_i p^i.
/// For k = 1 the encoding is the residue itself.
#[derive(Clone)]
pub struct Field {
    fp: Fp,
    k: u32,
    q: u32,
    ext: Option<Arc<ExtTables>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.fp.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.fp.p, self.k, self.modulus())
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.fp == other.fp && self.k == other.k && self.modulus() == other.modulus()
    }
}
impl Eq for Field {}

/// Largest extension field we build lookup tables for.
const MAX_EXT_ORDER: u64 = 1 << 20;

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        Ok(Field { fp: Fp::new(p)?, k: 1, q: p, ext: None })
    }

    /// F_{p^k} with the modulus found by the default seed.
    pub fn extension(p: u32, k: u32) -> Result<Self> {
        Self::extension_seeded(p, k, DEFAULT_SEED)
    }

    /// F_{p^k}; the irreducible modulus comes from a seeded random search
    /// with a deterministic enumeration as fallback.
    pub fn extension_seeded(p: u32, k: u32, seed: u64) -> Result<Self> {
        let fp = Fp::new(p)?;
        if k == 0 {
            return Err(Error::InvalidInput("extension degree must be ≥ 1".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_EXT_ORDER)
            .ok_or_else(|| Error::Limit(format!("field of order {p}^{k} exceeds the table limit")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((p as u64) << 32 | k as u64));
        let mut modulus = None;
        for _ in 0..64 {
            let mut m: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            m.push(1);
            if poly::is_irreducible(fp, &m) {
                modulus = Some(m);
                break;
            }
        }
        let modulus = match modulus {
            Some(m) => m,
            None => (0..q)
                .map(|code| {
                    let mut m = decode(code as u32, p, k);
                    m.push(1);
                    m
                })
                .find(|m| poly::is_irreducible(fp, m))
                .expect("an irreducible polynomial of every degree exists"),
        };
        Self::with_modulus(p, modulus)
    }

    /// F_{p^k} for an explicit monic modulus (low degree first, leading 1 included).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let fp = Fp::new(p)?;
        let k = modulus.len() as u32 - 1;
        if modulus.last() != Some(&1) || !poly::is_irreducible(fp, &modulus) {
            return Err(Error::InvalidInput(format!("modulus {modulus:?} is not monic irreducible over F_{p}")));
        }
        if k == 1 {
            return Self::prime(p);
        }
        let q = (p as u64).pow(k);
        if q > MAX_EXT_ORDER {
            return Err(Error::Limit(format!("field of order {q} exceeds the table limit")));
        }
        let q = q as u32;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        // find a primitive element by increasing code
        let mut gen = None;
        for code in 2..q {
            let g = decode(code, p, k);
            let ok = factors.iter().all(|&r| {
                let t = poly::powmod(fp, &g, order / r, &modulus);
                t != vec![1]
            });
            if ok {
                gen = Some(g);
                break;
            }
        }
        let g = gen.unwrap_or_else(|| vec![0, 1]);
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![1u32];
        for (i, slot) in exp.iter_mut().enumerate() {
            let c = encode(&cur, p);
            *slot = c;
            log[c as usize] = i as u32;
            cur = poly::mulmod(fp, &cur, &g, &modulus);
        }
        Ok(Field { fp, k, q, ext: Some(Arc::new(ExtTables { modulus, exp, log })) })
    }

    pub fn p(&self) -> u32 {
        self.fp.p
    }
    pub fn degree(&self) -> u32 {
        self.k
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn fp(&self) -> Fp {
        self.fp
    }
    pub fn is_prime(&self) -> bool {
        self.k == 1
    }

    /// Monic modulus polynomial; `[0, 1]` (the polynomial x) for prime fields.
    pub fn modulus(&self) -> Vec<u32> {
        match &self.ext {
            Some(t) => t.modulus.clone(),
            None => vec![0, 1],
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return self.fp.add(a, b);
        }
        let p = self.fp.p;
        let (mut a, mut b, mut r, mut place) = (a, b, 0u32, 1u32);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return self.fp.neg(a);
        }
        let p = self.fp.p;
        let (mut a, mut r, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            r += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return self.fp.sub(a, b);
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.ext {
            None => self.fp.mul(a, b),
            Some(t) => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let s = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % (self.q as u64 - 1);
                t.exp[s as usize]
            }
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        match &self.ext {
            None => self.fp.inv(a),
            Some(t) => {
                let l = t.log[a as usize];
                t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
            }
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// Coefficient vector (length k) of an encoded element.
    pub fn to_coeffs(&self, a: u32) -> Vec<u32> {
        let mut c = decode(a, self.fp.p, self.k);
        c.resize(self.k as usize, 0);
        c
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        encode(c, self.fp.p)
    }

    /// A primitive element (generator of the multiplicative group).
    pub fn primitive(&self) -> u32 {
        match &self.ext {
            Some(t) => t.exp[1 % t.exp.len()],
            None => {
                let f = self.fp;
                let order = (f.p - 1) as u64;
                let factors = prime_factors(order);
                (1..f.p).find(|&g| factors.iter().all(|&r| f.pow(g, order / r) != 1)).unwrap_or(1)
            }
        }
    }

    /// Embeds a prime-field residue.
    #[inline]
    pub fn embed(&self, a: u32) -> u32 {
        a % self.fp.p
    }

    /// Whether an encoded element lies in the prime subfield.
    pub fn in_prime_field(&self, a: u32) -> bool {
        a < self.fp.p
    }

    /// Matrix of multiplication by `a` on the F_p-basis 1, x, …, x^{k-1},
    /// acting on coefficient row vectors.
    pub fn mult_matrix(&self, a: u32) -> Vec<Vec<u32>> {
        let p = self.fp.p;
        let mut basis = 1u32;
        let mut rows = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            rows.push(self.to_coeffs(self.mul(basis, a)));
            basis *= p;
        }
        rows
    }
}

fn decode(mut code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(k as usize);
    for _ in 0..k {
        c.push(code % p);
        code /= p;
    }
    c
}

fn encode(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &x| acc * p + x)
}

/// A residue modulo p carried with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpScalar {
    pub value: u32,
    pub p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Self {
        FpScalar { value: value.rem_euclid(p as i64) as u32, p }
    }
    pub fn inv(self) -> Self {
        FpScalar { value: Fp { p: self.p }.inv(self.value), p: self.p }
    }
}

impl std::ops::Add for FpScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FpScalar { value: Fp { p: self.p }.add(self.value, o.value), p: self.p }
    }
}
impl std::ops::Sub for FpScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        FpScalar { value: Fp { p: self.p }.sub(self.value, o.value), p: self.p }
    }
}
impl std::ops::Mul for FpScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        FpScalar { value: Fp { p: self.p }.mul(self.value, o.value), p: self.p }
    }
}
impl std::ops::Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FpScalar { value: Fp { p: self.p }.neg(self.value), p: self.p }
    }
}

/// An element of F_{p^k} carried with its field descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtScalar {
    pub field: Field,
    pub value: u32,
}

impl ExtScalar {
    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Self {
        ExtScalar { value: field.from_coeffs(coeffs), field: field.clone() }
    }
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.to_coeffs(self.value)
    }
    pub fn inv(&self) -> Self {
        ExtScalar { field: self.field.clone(), value: self.field.inv(self.value) }
    }
    pub fn add(&self, o: &Self) -> Self {
        ExtScalar { field: self.field.clone(), value: self.field.add(self.value, o.value) }
    }
    pub fn mul(&self, o: &Self) -> Self {
        ExtScalar { field: self.field.clone(), value: self.field.mul(self.value, o.value) }
    }
    pub fn neg(&self) -> Self {
        ExtScalar { field: self.field.clone(), value: self.field.neg(self.value) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(Fp::new(2).is_ok());
        assert!(Fp::new(9).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn known_irreducibles() {
        let f2 = Fp { p: 2 };
        assert!(poly::is_irreducible(f2, &[1, 1, 1]));
        assert!(!poly::is_irreducible(f2, &[1, 0, 1]));
        assert!(poly::is_irreducible(f2, &[1, 1, 0, 1]));
        let f3 = Fp { p: 3 };
        assert!(poly::is_irreducible(f3, &[1, 0, 1]));
        assert!(!poly::is_irreducible(f3, &[2, 0, 1]));
    }

    #[test]
    fn gf4_table() {
        let f = Field::with_modulus(2, vec![1, 1, 1]).unwrap();
        // x·x = x + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
        for a in 1..4 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(p, k) in &[(2u32, 3u32), (3, 2), (5, 2), (2, 4), (7, 1)] {
            let f = Field::extension(p, k).unwrap();
            let q = f.order();
            for _ in 0..300 {
                let a = rng.gen_range(0..q);
                let b = rng.gen_range(0..q);
                let c = rng.gen_range(0..q);
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn extension_is_reproducible() {
        let a = Field::extension_seeded(3, 4, 11).unwrap();
        let b = Field::extension_seeded(3, 4, 11).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert!(poly::is_irreducible(a.fp(), &a.modulus()));
    }

    #[test]
    fn primitive_generates() {
        let f = Field::extension(3, 2).unwrap();
        let g = f.primitive();
        let mut seen = std::collections::HashSet::new();
        let mut x = 1;
        for _ in 0..8 {
            seen.insert(x);
            x = f.mul(x, g);
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn scalar_wrappers() {
        let a = FpScalar::new(-1, 5);
        assert_eq!(a.value, 4);
        assert_eq!((a * a.inv()).value, 1);
        assert_eq!((a + FpScalar::new(1, 5)).value, 0);
        let f = Field::extension(2, 2).unwrap();
        let x = ExtScalar::from_coeffs(&f, &[0, 1]);
        assert_eq!(x.mul(&x.inv()).value, 1);
        assert_eq!(x.coeffs(), vec![0, 1]);
    }
}
