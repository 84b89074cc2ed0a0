//! Free-group words, permutations, presentations, Knuth–Bendix completion
//! and finite groups with tabulated multiplication.

mod finite;
mod kb;
pub mod parse;
mod perm;
mod presentation;
mod rws;
mod word;

pub use finite::{eval_word, verify_epimorphism, FiniteGroupData, Rejection, MAX_FINITE_ORDER};
pub use kb::{group_alphabet, knuth_bendix, partition_rules, KbLimits};
pub use parse::{looks_like_cycles, parse_cycles, parse_word};
pub use perm::{closure, Permutation};
pub use presentation::Presentation;
pub use rws::{shortlex, CountSink, Letter, LetterInfo, NoRoots, Overlap, Roots, Rule, RuleKind, Rws, Sink};
pub use word::{CommutatorConvention, Sym, Word};
