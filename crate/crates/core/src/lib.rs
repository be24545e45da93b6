//! Numerically trivial automorphisms of threefolds isogenous to a product
//! of curves (unmixed type, abelian group).
//!
//! The library takes an algebraic datum `(G, K1, K2, K3, V1, V2, V3)`,
//! validates it, computes the Hodge diamond of `X = (C1 x C2 x C3) / G`
//! through Chevalley–Weil eigenspace tables, and computes the group of
//! automorphisms acting trivially on cohomology as an explicit finite
//! abelian group. Everything is exact integer and rational arithmetic.

pub mod abelian;
pub mod aut0;
pub mod builtins;
pub mod cli;
pub mod covering;
pub mod datum;
pub mod document;
pub mod hodge;
pub mod oracle;
pub mod report;
pub mod search;
pub mod error;

pub use error::{Error, Result};
