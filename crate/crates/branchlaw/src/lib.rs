//! Exact branching multiplicity series for finite subgroups of SL(4,C).
//!
//! Given a finite group of unimodular 4x4 matrices over a cyclotomic field,
//! this crate computes, for every irreducible character of the group, the
//! three-variable generating series whose coefficient at (p,q,r) is the
//! multiplicity of that character in the restriction of the SL(4) irreducible
//! with highest weight p*w1 + q*w2 + r*w3. All arithmetic is exact; results
//! come out as rational functions with factored denominators and are
//! cross-checked against two independent oracles.

pub mod branching;
pub mod chartab;
pub mod doc;
pub mod error;
pub mod exactnum;
pub mod matgroup;
pub mod oracle;
pub mod pipeline;
pub mod polyrat;
pub mod tensorrep;
pub mod verify;

pub use error::{Error, Result};
