//! Modular representation theory over finite fields: spinning, composition
//! factors, homomorphism spaces, classification of simple modules, radicals,
//! homogeneous quotients and cyclic generators of V^r.

mod catalog;
mod cyclic;
mod hom;
mod meataxe;
mod rep;

pub use catalog::{
    classify_simples, conjugacy_classes, decompose_homogeneous, homogeneous_quotient, is_semisimple, radical,
    simple_module_count, SimpleCatalog, SimpleModule,
};
pub use cyclic::{cyclic_generator, generates, regular_route, synthetic_route, REGULAR_ROUTE_CAP};
pub use hom::{end_degree, hom_space, is_isomorphic, ISO_TRIALS};
pub use meataxe::{char_poly, chop, is_irreducible, split, Split, MEATAXE_RETRIES};
pub use rep::{spin, Representation, REGULAR_MODULE_CAP};
