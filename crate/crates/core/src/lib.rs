//! Covers of the right simplex `S^{n+δ}` by unit right simplices.
//!
//! With `δ = 1/(n+2)`, the right `d`-simplex with shortest side `n + δ` is
//! covered by `(n+1)^d + (n-1)^d - n^d` unit right `d`-simplices. This crate
//! builds that cover explicitly, locates a covering simplex for any point of
//! the target, and checks coverage with exact rational arithmetic.

pub mod arith;
pub mod simplex;
pub mod triangulation;
pub mod cover;
pub mod witness;
pub mod verify;
pub mod record;
pub mod svg;
pub mod cli;
