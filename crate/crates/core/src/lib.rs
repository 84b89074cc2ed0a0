//! Quotient engine for finitely presented groups.
//!
//! Given a finitely presented group G, an epimorphism onto a finite
//! permutation group H and a prime p, the crate classifies the simple
//! F_pH-modules, computes second cohomology through parametrized confluent
//! rewriting, builds (V,e)-covers of H, and lifts G → H step by step to larger
//! quotients whose kernels are elementary abelian p-groups.

pub mod cohomology;
pub mod cover;
mod error;
pub mod finfield;
pub mod fixtures;
pub mod groups;
pub mod hybrid;
pub mod job;
pub mod lift;
pub mod modrep;
pub mod par;

pub use error::{Error, Result};

/// Default seed for every randomized routine.
pub const DEFAULT_SEED: u64 = 0x5EED;
