//! Exact finite-field machinery for two wildness reductions: matrix pairs
//! under simultaneous similarity against pairs of forms under *congruence,
//! and against local algebras with `(Rad)^3 = 0` and `dim (Rad)^2 = 2`.
//!
//! Every claim of relatedness comes with a witness that can be replayed.

pub mod algebras;
pub mod bruteforce;
pub mod error;
pub mod field;
pub mod gadgets;
pub mod harness;
pub mod homspace;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod tuples;

pub use error::{Error, Result};
pub use field::{Elem, Field, Scalar};
pub use linalg::{Mat, Subspace};
pub use tuples::{
    verify_witness, CongruenceWitness, EquivalenceWitness, MatTuple, PairClassWitness, SimilarityWitness,
    SubstitutionMatrix, Witness,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/tuples.md")]
    mod tuples {}
    #[doc = include_str!("../../../book/src/homspace.md")]
    mod homspace {}
    #[doc = include_str!("../../../book/src/gadgets.md")]
    mod gadgets {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/bruteforce.md")]
    mod bruteforce {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
