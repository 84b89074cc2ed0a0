//! Straight-line lifts carried from one round to the next.

use std::sync::Arc;

use crate::cover::Target;
use crate::error::{Error, Result};
use crate::groups::Letter;
use crate::hybrid::{HybridElement, HybridGroup, KernelData, LetterLifts, Provenance, Slp};

fn word_node(slp: &mut Slp, letter_nodes: &[u32], w: &[Letter]) -> u32 {
    let items: Vec<u32> = w.iter().map(|&l| letter_nodes[l as usize]).collect();
    slp.product(&items)
}

fn combination_node(slp: &mut Slp, nodes: &[u32], coeffs: &[u32]) -> u32 {
    let items: Vec<u32> =
        nodes.iter().zip(coeffs).filter(|(_, &c)| c != 0).map(|(&n, &c)| slp.pow(n, c as u64)).collect();
    slp.product(&items)
}

/// The quotient q (a subgroup of the diagonal product, with spanning data
/// `kd`) promoted to the next base, with SLPs for its generator letters.
pub(super) fn promote_target(
    old: &Target,
    q: &Arc<HybridGroup>,
    qimages: &[HybridElement],
    dimages: &[HybridElement],
    kd: &KernelData,
) -> Result<Target> {
    let old_base = &old.base;
    let mut ll = old.lifts.clone();
    let letter_nodes = ll.all_letter_nodes(old_base);
    let mut span_nodes: Vec<u32> = Vec::with_capacity(kd.spanning.len());
    for (_, prov) in &kd.spanning {
        let slp = &mut ll.slp;
        let node = match *prov {
            Provenance::Rule(ri) => {
                let r = old_base.rws().rule(ri);
                let l = word_node(slp, &letter_nodes, &r.lhs);
                let rr = word_node(slp, &letter_nodes, &r.rhs);
                let ri = slp.inv(rr);
                slp.mul(ri, l)
            }
            Provenance::Generator(j) => {
                let u = word_node(slp, &letter_nodes, &dimages[j].word);
                let ui = slp.inv(u);
                let g = slp.gen(j);
                slp.mul(ui, g)
            }
            Provenance::Conjugate { of, gen } => {
                let l = letter_nodes[2 * gen];
                let li = slp.inv(l);
                let x = slp.mul(li, span_nodes[of]);
                slp.mul(x, l)
            }
        };
        span_nodes.push(node);
    }
    let mut kernel_nodes = Vec::with_capacity(q.dim());
    for i in 0..q.dim() {
        let mut e = vec![0; q.dim()];
        e[i] = 1;
        let c = kd
            .combination(&kd.ambient(&e))
            .ok_or_else(|| Error::Inconsistent("kernel basis vector outside the spanning set".into()))?;
        kernel_nodes.push(combination_node(&mut ll.slp, &span_nodes, &c));
    }
    // old generator letters evaluate to (t, n_t) in q; divide off n_t
    let vals = ll.slp.eval(&**q, qimages, &old.lifts.nodes);
    let mut corrected = Vec::with_capacity(vals.len());
    for ((&t, &node), v) in old_base.gen_letters().iter().zip(&old.lifts.nodes).zip(vals) {
        if v.word != [t] {
            return Err(Error::Inconsistent("letter lift lies over the wrong element".into()));
        }
        let k = combination_node(&mut ll.slp, &kernel_nodes, &v.n);
        let ki = ll.slp.inv(k);
        corrected.push((t, ll.slp.mul(node, ki)));
    }
    let base = q.promote();
    let old_alpha = old_base.alphabet_len() as Letter;
    let nodes = base
        .gen_letters()
        .iter()
        .map(|&l| {
            if l >= old_alpha {
                Ok(kernel_nodes[(l - old_alpha) as usize])
            } else {
                corrected
                    .iter()
                    .find(|(t, _)| *t == l)
                    .map(|&(_, n)| n)
                    .ok_or_else(|| Error::Inconsistent("generator letters changed under promotion".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let images: Vec<Vec<Letter>> = qimages.iter().map(|g| q.to_base_word(g)).collect();
    let lifts = LetterLifts { slp: ll.slp, nodes };
    for (&l, w) in base.gen_letters().iter().zip(lifts.eval(&*base, &images)) {
        if w != [l] {
            return Err(Error::Inconsistent("straight-line lift does not evaluate to its letter".into()));
        }
    }
    Ok(Target { base, images, lifts })
}
