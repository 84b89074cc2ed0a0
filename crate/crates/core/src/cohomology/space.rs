use super::param::{ParamRws, TailedWord, Token};
use crate::error::{Error, Result};
use crate::finfield::{sparse_from_terms, Echelon, Matrix, SparseEchelon, SparseRow};
use crate::groups::Letter;
use crate::hybrid::{complete_lifts, HybridElement, HybridGroup};
use crate::par;

/// The tail assignments y for which the instantiated system is confluent.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub equations: SparseEchelon,
    pub basis: Vec<Vec<u32>>,
}

impl CocycleSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn contains(&self, y: &[u32]) -> bool {
        y.len() == self.equations.ncols() && self.equations.satisfied_by(y)
    }
}

/// Basis of H² as coset representatives of the coboundary image in X.
#[derive(Clone, Debug)]
pub struct H2Basis {
    pub cocycles: CocycleSpace,
    pub coboundaries: Echelon,
    pub reps: Vec<Vec<u32>>,
}

impl H2Basis {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

fn pair_equations(prws: &ParamRws, a: &TailedWord, b: &TailedWord) -> Result<Vec<SparseRow>> {
    if a.word != b.word {
        return Err(Error::Inconsistent("critical pair resolves to different base words".into()));
    }
    let d = prws.dim();
    let f = prws.field();
    let fp = f.fp();
    let mut rows = Vec::with_capacity(d);
    for k in 0..d {
        let mut terms = Vec::new();
        for (side, sign) in [(a, false), (b, true)] {
            for (&s, m) in &side.form.blocks {
                for i in 0..d {
                    let v = m.get(i, k);
                    if v != 0 {
                        terms.push(((s as usize * d + i) as u32, if sign { fp.neg(v) } else { v }));
                    }
                }
            }
        }
        let row = sparse_from_terms(fp, terms);
        if !row.is_empty() {
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Solves the confluence equations of all critical pairs of the base rules.
pub fn cocycle_space(prws: &ParamRws) -> Result<CocycleSpace> {
    let rws = prws.base().rws();
    let overlaps = rws.overlaps(|_| true);
    let per_pair = par::map(&overlaps, |ov| {
        let a = prws.rewrite_clean(&ov.word, ov.i, 0);
        let b = prws.rewrite_clean(&ov.word, ov.j, ov.pos_j);
        pair_equations(prws, &a, &b)
    });
    let mut eqs = SparseEchelon::new(prws.field().fp(), prws.num_vars());
    for rows in per_pair {
        for r in rows? {
            eqs.insert(&r);
        }
    }
    let basis = eqs.nullspace();
    Ok(CocycleSpace { equations: eqs, basis })
}

/// Tokens substituting a·λ(a) for a generator letter and the matching
/// inverse-consistent images for its inverse and merged letters.
fn substitution(prws: &ParamRws, gen: Letter, lambda: &[u32]) -> Vec<Vec<Token>> {
    let base = prws.base();
    let rws = base.rws();
    let a = base.alphabet_len();
    let fp = prws.field().fp();
    let mut subst: Vec<Option<Vec<Token>>> =
        (0..a as Letter).map(|l| rws.is_irreducible(&[l]).then(|| vec![Token::Letter(l)])).collect();
    subst[gen as usize] = Some(vec![Token::Letter(gen), Token::Vector(lambda.to_vec())]);
    if let Some(partner) = rws.letters()[gen as usize].inverse {
        if partner != gen && rws.is_irreducible(&[partner]) {
            let mut v = prws.action().act(lambda, base.letter_root(partner));
            for x in v.iter_mut() {
                *x = fp.neg(*x);
            }
            subst[partner as usize] = Some(vec![Token::Letter(partner), Token::Vector(v)]);
        }
    }
    for l in 0..a {
        if subst[l].is_none() {
            let nf = rws.reduce(&[l as Letter]);
            let toks = nf.iter().flat_map(|&t| subst[t as usize].clone().expect("irreducible letter")).collect();
            subst[l] = Some(toks);
        }
    }
    subst.into_iter().map(|s| s.unwrap()).collect()
}

/// Image of λ under the coboundary map, in tail coordinates.
pub fn coboundary_vector(prws: &ParamRws, gen: Letter, lambda: &[u32]) -> Result<Vec<u32>> {
    let subst = substitution(prws, gen, lambda);
    let rws = prws.base().rws();
    let d = prws.dim();
    let fp = prws.field().fp();
    let mut out = vec![0; prws.num_vars()];
    let expand = |w: &[Letter]| -> Vec<Token> { w.iter().flat_map(|&l| subst[l as usize].iter().cloned()).collect() };
    for (s, &ri) in prws.tilde_rules().iter().enumerate() {
        let r = rws.rule(ri);
        let l = prws.reduce_untailed(&expand(&r.lhs));
        let rr = prws.reduce_untailed(&expand(&r.rhs));
        if l.word != rr.word {
            return Err(Error::Inconsistent("substituted rule sides reduce to different words".into()));
        }
        for k in 0..d {
            out[s * d + k] = fp.sub(l.form.constant[k], rr.form.constant[k]);
        }
    }
    Ok(out)
}

/// Coboundary images of λ = e_j at each generator letter, in (letter, j) order.
pub fn coboundary_vectors(prws: &ParamRws) -> Result<Vec<Vec<u32>>> {
    let d = prws.dim();
    let items: Vec<(Letter, usize)> =
        prws.base().gen_letters().iter().flat_map(|&g| (0..d).map(move |j| (g, j))).collect();
    par::map(&items, |&(g, j)| {
        let mut e = vec![0; d];
        e[j] = 1;
        coboundary_vector(prws, g, &e)
    })
    .into_iter()
    .collect()
}

/// Span of the coboundary images.
pub fn coboundary_space(prws: &ParamRws) -> Result<Echelon> {
    let mut e = Echelon::new(prws.field(), prws.num_vars());
    for v in coboundary_vectors(prws)? {
        e.insert(v);
    }
    Ok(e)
}

/// Cocycles, coboundaries and representatives of H².
pub fn h2_basis(prws: &ParamRws) -> Result<H2Basis> {
    let cocycles = cocycle_space(prws)?;
    let coboundaries = coboundary_space(prws)?;
    let mut span = coboundaries.clone();
    let mut reps = Vec::new();
    for x in &cocycles.basis {
        let mut v = x.clone();
        coboundaries.reduce(&mut v);
        if span.insert(v.clone()).is_some() {
            reps.push(v);
        }
    }
    Ok(H2Basis { cocycles, coboundaries, reps })
}

/// Per-rule tails of the extension with tail assignment y.
pub fn rule_tails(prws: &ParamRws, y: &[u32]) -> Vec<Vec<u32>> {
    let d = prws.dim();
    (0..prws.base().rws().rules().len() as u32)
        .map(|ri| match prws.slot(ri) {
            Some(s) => y[s as usize * d..(s as usize + 1) * d].to_vec(),
            None => vec![0; d],
        })
        .collect()
}

/// The extension of the base by V defined by a cocycle.
pub fn extension(prws: &ParamRws, space: &CocycleSpace, y: &[u32]) -> Result<HybridGroup> {
    if !space.contains(y) {
        return Err(Error::InvalidInput("tail assignment is not a cocycle".into()));
    }
    HybridGroup::new(prws.base().clone(), prws.action().clone(), rule_tails(prws, y))
}

/// Tail assignment of a hybrid group in the coordinates of its own parametrization.
pub fn tails_vector(prws: &ParamRws, e: &HybridGroup) -> Vec<u32> {
    let mut y = Vec::with_capacity(prws.num_vars());
    for &ri in prws.tilde_rules() {
        y.extend_from_slice(&e.tails()[ri as usize]);
    }
    y
}

/// Lifts of the generator letters generating a complement of N, if one exists.
pub fn has_complement(e: &HybridGroup) -> Result<Option<Vec<HybridElement>>> {
    let prws = ParamRws::new(e.base().clone(), e.action().clone())?;
    let d = prws.dim();
    let gl = e.base().gen_letters().to_vec();
    if d == 0 || prws.num_vars() == 0 {
        return Ok(Some(gl.iter().map(|&l| e.letter(l)).collect()));
    }
    let fp = prws.field().fp();
    let y: Vec<u32> = tails_vector(&prws, e).into_iter().map(|x| fp.neg(x)).collect();
    let cob = coboundary_vectors(&prws)?;
    let m = Matrix::from_rows(prws.field(), prws.num_vars(), &cob);
    let Some(x) = m.solve_left(&y)? else {
        return Ok(None);
    };
    let lifts: Vec<HybridElement> = gl
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let mut g = e.letter(l);
            for (a, &b) in g.n.iter_mut().zip(&x[i * d..(i + 1) * d]) {
                *a = fp.add(*a, b);
            }
            g
        })
        .collect();
    let all = complete_lifts(e, &lifts)?;
    for r in e.base().rws().rules() {
        let ev = |w: &[Letter]| w.iter().fold(e.identity(), |acc, &l| e.mul(&acc, &all[l as usize]));
        if ev(&r.lhs) != ev(&r.rhs) {
            return Err(Error::Inconsistent("complement witness violates a rule".into()));
        }
    }
    Ok(Some(lifts))
}
