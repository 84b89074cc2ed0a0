//! Small groups used by tests, benches and the CLI examples.
//!
//! Each finite group is built once per process and shared.

use std::sync::{Arc, OnceLock};

use crate::groups::{
    eval_word, parse_cycles, verify_epimorphism, CommutatorConvention, FiniteGroupData, Permutation, Presentation,
};

fn build(name: &str, names: &[&str], rels: &[&str], perms: &[&str], degree: usize) -> Arc<FiniteGroupData> {
    let pres = Presentation::parse(names, rels, CommutatorConvention::LeftInverse).expect("fixture presentation");
    let gens = perms.iter().map(|c| parse_cycles(c, Some(degree)).expect("fixture cycles")).collect();
    Arc::new(FiniteGroupData::new(name, pres, gens).expect("fixture group"))
}

macro_rules! fixture {
    ($fn:ident, $name:expr, $names:expr, $rels:expr, $perms:expr, $deg:expr) => {
        pub fn $fn() -> Arc<FiniteGroupData> {
            static CELL: OnceLock<Arc<FiniteGroupData>> = OnceLock::new();
            CELL.get_or_init(|| build($name, &$names, &$rels, &$perms, $deg)).clone()
        }
    };
}

fixture!(c2, "C2", ["a"], ["a^2"], ["(1,2)"], 2);
fixture!(c3, "C3", ["a"], ["a^3"], ["(1,2,3)"], 3);
fixture!(s3, "S3", ["a", "b"], ["a^2", "b^3", "(a*b)^2"], ["(1,2)", "(1,2,3)"], 3);
fixture!(a5, "A5", ["a", "b"], ["a^2", "b^3", "(a*b)^5"], ["(1,2)(3,4)", "(1,3,5)"], 5);
fixture!(a6, "A6", ["a", "b"], ["a^2", "b^4", "(a*b)^5", "(a*b^2)^5"], ["(1,2)(3,4)", "(1,2,3,5)(4,6)"], 6);

/// The free group of rank e with generators x1..xe.
pub fn free_group(e: usize) -> Presentation {
    Presentation::free((1..=e).map(|i| format!("x{i}")).collect())
}

/// Heineken group relators ⟨a,b,c | [a,[a,b]]=c, [b,[b,c]]=a, [c,[c,a]]=b⟩.
pub fn heineken3_with(conv: CommutatorConvention) -> Presentation {
    Presentation::parse(&["a", "b", "c"], &["[a,[a,b]]*c^-1", "[b,[b,c]]*a^-1", "[c,[c,a]]*b^-1"], conv)
        .expect("heineken presentation")
}

/// Two-generator form with c = [a,[a,b]] substituted.
pub fn heineken2_with(conv: CommutatorConvention) -> Presentation {
    let c = "[a,[a,b]]";
    Presentation::parse(&["a", "b"], &[&format!("[b,[b,{c}]]*a^-1"), &format!("[{c},[{c},a]]*b^-1")], conv)
        .expect("heineken presentation")
}

/// φ(a) = (1,2,4,5,3), φ(b) = (1,2,3,4,5).
pub fn heineken_images() -> Vec<Permutation> {
    vec![parse_cycles("(1,2,4,5,3)", Some(5)).unwrap(), parse_cycles("(1,2,3,4,5)", Some(5)).unwrap()]
}

/// The commutator convention under which φ is an epimorphism onto A5.
pub fn heineken_convention() -> CommutatorConvention {
    static CELL: OnceLock<CommutatorConvention> = OnceLock::new();
    *CELL.get_or_init(|| {
        let h = a5();
        [CommutatorConvention::LeftInverse, CommutatorConvention::RightInverse]
            .into_iter()
            .find(|&conv| verify_epimorphism(&h, &heineken2_with(conv), &heineken_images()).is_ok())
            .expect("neither commutator convention yields an epimorphism")
    })
}

pub fn heineken2() -> Presentation {
    heineken2_with(heineken_convention())
}

pub fn heineken3() -> Presentation {
    heineken3_with(heineken_convention())
}

/// Images for the three-generator form: c ↦ φ([a,[a,b]]).
pub fn heineken3_images() -> Vec<Permutation> {
    let mut imgs = heineken_images();
    let conv = heineken_convention();
    let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
    let c = crate::groups::parse_word("[a,[a,b]]", &names, conv).unwrap();
    imgs.push(eval_word(&imgs, &c));
    imgs
}

/// G(3,4,15;2) = ⟨a,b | a³, b⁴, (ab)¹⁵, [a,b]²⟩.
pub fn g3_4_15_2() -> Presentation {
    Presentation::parse(&["a", "b"], &["a^3", "b^4", "(a*b)^15", "[a,b]^2"], CommutatorConvention::LeftInverse)
        .expect("presentation")
}

/// An epimorphism G(3,4,15;2) → A6: the first pair (in element order of the
/// A6 fixture) of an order-3 and an order-4 element satisfying the relators
/// and generating A6.
pub fn g3_4_15_2_images() -> Vec<Permutation> {
    static CELL: OnceLock<Vec<Permutation>> = OnceLock::new();
    CELL.get_or_init(|| {
        let h = a6();
        let g = g3_4_15_2();
        let m = h.order() as u32;
        for x in 0..m {
            if h.elem_order(x) != 3 {
                continue;
            }
            for y in 0..m {
                if h.elem_order(y) != 4 {
                    continue;
                }
                let imgs = vec![h.element(x).clone(), h.element(y).clone()];
                if verify_epimorphism(&h, &g, &imgs).is_ok() {
                    return imgs;
                }
            }
        }
        panic!("no epimorphism G(3,4,15;2) → A6 found")
    })
    .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(c2().order(), 2);
        assert_eq!(c3().order(), 3);
        assert_eq!(s3().order(), 6);
        assert_eq!(a5().order(), 60);
    }

    #[test]
    fn heineken_lengths() {
        let p = heineken2();
        assert_eq!(p.num_gens(), 2);
        assert_eq!(p.relators().len(), 2);
        assert!(verify_epimorphism(&a5(), &heineken3(), &heineken3_images()).is_ok());
    }
}
