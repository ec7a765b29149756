//! Finite categories, simplicial sets and integral homology, with
//! combinatorial models of the posets of special open sets of a manifold and
//! executable checks of the homotopy equivalences relating them.
//!
//! - [`fincat`]: finite categories, functors, comma and Grothendieck
//!   constructions, isomorphism search.
//! - [`sset`]: simplicial sets, nerves, homotopy colimits, discrete limits.
//! - [`homology`]: chain complexes, coreduction, Smith normal form.
//! - [`manifolds`]: interval, circle and grid models, balls, `B_k` and `A_k`.
//! - [`theorems`]: checks returning structured reports.

pub mod fincat;
pub mod sset;
pub mod homology;
pub mod manifolds;
pub mod theorems;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/categories.md")]
    mod categories {}
    #[doc = include_str!("../../../book/src/simplicial.md")]
    mod simplicial {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/manifolds.md")]
    mod manifolds {}
    #[doc = include_str!("../../../book/src/checks.md")]
    mod checks {}
}
