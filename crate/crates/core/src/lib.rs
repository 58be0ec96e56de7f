//! Complete Coxeter graphs and the galaxy of Coxeter generating sets.
//!
//! A Coxeter system is stored as a [`CoxeterMatrix`]; [`canonical_form`]
//! turns it into a [`GalaxyVertex`]. Blow-ups, blow-downs and elementary
//! twists live in [`moves`], exploration and isomorphism decisions in
//! [`galaxy`], and [`oracle`] solves the word problem for verification.

mod error;
mod util;

pub mod classify;
pub mod coxsys;
pub mod galaxy;
pub mod moves;
pub mod oracle;

#[cfg(test)]
mod testutil;

pub use coxsys::{
    abelianization_rank, are_graph_isomorphic, canonical_form, irreducible_components, parse_system, subsystem,
    CoxeterMatrix, GalaxyVertex, GeneratorSubset, Label,
};
pub use error::{Error, Result};
