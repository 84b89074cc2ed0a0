use std::collections::VecDeque;

use super::presentation::Presentation;
use super::rws::{shortlex, Letter, LetterInfo, Rule, RuleKind, Rws};
use crate::error::{Error, Result};

/// Divergence guards for completion.
#[derive(Clone, Copy, Debug)]
pub struct KbLimits {
    pub max_rules: usize,
    pub max_lhs: usize,
}

impl Default for KbLimits {
    fn default() -> Self {
        KbLimits { max_rules: 5000, max_lhs: 50 }
    }
}

/// Monoid alphabet of a presentation: letter `2i` is generator i, `2i+1` its inverse.
pub fn group_alphabet(names: &[String]) -> Vec<LetterInfo> {
    let mut letters = Vec::with_capacity(2 * names.len());
    for (i, n) in names.iter().enumerate() {
        let i = i as u32;
        letters.push(LetterInfo { name: n.clone(), inverse: Some(2 * i + 1) });
        letters.push(LetterInfo { name: format!("{n}^-1"), inverse: Some(2 * i) });
    }
    letters
}

fn contains(hay: &[Letter], needle: &[Letter]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Classifies a rule of a group rewriting system.
fn classify(letters: &[LetterInfo], lhs: &[Letter], rhs: &[Letter]) -> RuleKind {
    if rhs.is_empty() && lhs.len() == 2 && letters[lhs[0] as usize].inverse == Some(lhs[1]) {
        return RuleKind::Cancel;
    }
    if lhs.len() == 1 && rhs.len() == 1 && lhs[0] % 2 == 1 && rhs[0] == lhs[0] - 1 {
        return RuleKind::Cancel;
    }
    RuleKind::Tilde
}

/// Shortlex Knuth–Bendix completion of a group presentation.
///
/// The result is inter-reduced and sorted by left side, so it does not depend
/// on the order in which critical pairs were discovered.
pub fn knuth_bendix(pres: &Presentation, limits: KbLimits) -> Result<Rws> {
    let letters = group_alphabet(pres.names());
    let alpha = letters.len();
    let mut pending: VecDeque<(Vec<Letter>, Vec<Letter>)> = VecDeque::new();
    for i in 0..alpha as u32 / 2 {
        pending.push_back((vec![2 * i, 2 * i + 1], vec![]));
        pending.push_back((vec![2 * i + 1, 2 * i], vec![]));
    }
    for r in pres.relators() {
        pending.push_back((r.letters(), vec![]));
    }
    let mut rules: Vec<(Vec<Letter>, Vec<Letter>)> = Vec::new();
    let build = |rules: &[(Vec<Letter>, Vec<Letter>)]| {
        Rws::new(
            letters.clone(),
            rules.iter().map(|(l, r)| Rule { lhs: l.clone(), rhs: r.clone(), kind: RuleKind::Tilde }).collect(),
        )
    };
    let mut rws = build(&rules);
    loop {
        while let Some((u, v)) = pending.pop_front() {
            let u = rws.reduce(&u);
            let v = rws.reduce(&v);
            if u == v {
                continue;
            }
            let (l, r) = if shortlex(&u, &v) == std::cmp::Ordering::Greater { (u, v) } else { (v, u) };
            if l.len() > limits.max_lhs {
                return Err(Error::Limit(format!(
                    "completion produced a left side of length {} (cap {})",
                    l.len(),
                    limits.max_lhs
                )));
            }
            let mut kept = Vec::with_capacity(rules.len() + 1);
            for (ol, or) in rules.drain(..) {
                if contains(&ol, &l) {
                    pending.push_back((ol, or));
                } else {
                    kept.push((ol, or));
                }
            }
            kept.push((l, r));
            rules = kept;
            if rules.len() > limits.max_rules {
                return Err(Error::Limit(format!("completion exceeded {} rules", limits.max_rules)));
            }
            rws = build(&rules);
            let reduced: Vec<_> = rules.iter().map(|(l, r)| (l.clone(), rws.reduce(r))).collect();
            rules = reduced;
            rws = build(&rules);
        }
        for ov in rws.overlaps(|_| true) {
            let a = rws.rewrite_at(&ov.word, ov.i, 0, &super::rws::NoRoots, &mut ());
            let b = rws.rewrite_at(&ov.word, ov.j, ov.pos_j, &super::rws::NoRoots, &mut ());
            if a != b {
                pending.push_back((a, b));
            }
        }
        if pending.is_empty() {
            break;
        }
    }
    rules.sort_by(|a, b| shortlex(&a.0, &b.0));
    let final_rules: Vec<Rule> = rules
        .into_iter()
        .map(|(l, r)| {
            let kind = classify(&letters, &l, &r);
            Rule { lhs: l, rhs: r, kind }
        })
        .collect();
    let rws = Rws::new(letters, final_rules);
    rws.check_confluent()?;
    Ok(rws)
}

/// Splits rule indices into (free-cancellation, tailed) sets.
pub fn partition_rules(rws: &Rws) -> (Vec<u32>, Vec<u32>) {
    (rws.rules_of_kind(RuleKind::Cancel), rws.rules_of_kind(RuleKind::Tilde))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::word::Word;

    fn pres(names: &[&str], rels: &[&[i32]]) -> Presentation {
        Presentation::new(
            names.iter().map(|s| s.to_string()).collect(),
            rels.iter().map(|r| Word::from_signed(r)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn c2_completion() {
        let rws = knuth_bendix(&pres(&["a"], &[&[1, 1]]), KbLimits::default()).unwrap();
        let rules: Vec<(Vec<u32>, Vec<u32>)> = rws.rules().iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect();
        assert_eq!(rules, vec![(vec![1], vec![0]), (vec![0, 0], vec![])]);
        let (bar, tilde) = partition_rules(&rws);
        assert_eq!(bar, vec![0]);
        assert_eq!(tilde, vec![1]);
        assert_eq!(rws.enumerate(100).unwrap().len(), 2);
    }

    #[test]
    fn s3_completion() {
        let rws = knuth_bendix(&pres(&["a", "b"], &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]), KbLimits::default()).unwrap();
        assert_eq!(rws.enumerate(100).unwrap().len(), 6);
        assert_eq!(rws.reduce(&[2, 2, 2, 2]), vec![2]);
        let (bar, tilde) = partition_rules(&rws);
        assert_eq!(bar.len() + tilde.len(), rws.rules().len());
        // a⁻¹ → a is a cancellation rule, a² → ε is tailed
        assert!(bar.iter().any(|&i| rws.rule(i).lhs == vec![1] && rws.rule(i).rhs == vec![0]));
        assert!(tilde.iter().any(|&i| rws.rule(i).lhs == vec![0, 0]));
        assert!(bar.iter().any(|&i| rws.rule(i).lhs == vec![2, 3]));
    }

    #[test]
    fn a5_completion() {
        let rws = knuth_bendix(
            &pres(&["a", "b"], &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]]),
            KbLimits::default(),
        )
        .unwrap();
        assert_eq!(rws.enumerate(1000).unwrap().len(), 60);
    }

    #[test]
    fn limits_trigger() {
        // the free group on two generators with a commutator relator is infinite
        let p = pres(&["a", "b"], &[&[-1, -2, 1, 2]]);
        let res = knuth_bendix(&p, KbLimits { max_rules: 50, max_lhs: 12 });
        assert!(matches!(res, Err(Error::Limit(_))) || res.unwrap().enumerate(200).is_err());
    }
}
