//! Simplicial sets in Eilenberg–Zilber normal form, nerves of finite
//! categories, bisimplicial sets and their diagonals, simplicial and
//! cosimplicial replacements, and discrete limits.

mod bisimplicial;
mod discrete;
mod hocolim;
mod map;
mod nerve;
mod simplicial;
pub mod text;

pub use bisimplicial::{diagonal, BiFace, BiSimplex, BisimplicialSet, Diagonal};
pub use discrete::{crep_describe, limit_discrete, tot_discrete, Assignment, CosimplicialDescriptor, Factor, SetFunctor};
pub use hocolim::{hocolim, pi0_colimit, srep, vertex_fiber, Hocolim, SimplicialFunctor, Srep};
pub use map::{find_isomorphism, SimplicialMap};
pub use nerve::{nerve, nerve_exact, nerve_map, Nerve};
pub use simplicial::{coface, mask_of, surjection, FaceRef, Simplex, SimplicialSet};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SsetError {
    #[error("malformed simplicial data: {0}")]
    Malformed(String),
    #[error("simplicial identity fails on {dim}-simplex {simplex}: d_{i} d_{j}")]
    IdentityViolation { dim: usize, simplex: u32, i: usize, j: usize },
    #[error("bisimplicial identity fails on ({p}, {q})-cell {cell} at ({i}, {j})")]
    BiIdentityViolation { p: usize, q: usize, cell: u32, i: usize, j: usize },
    #[error("not a simplicial map: {0}")]
    NotAMap(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("truncation below requested degree: simplices above dimension {top} exist")]
    Truncated { top: usize },
    #[error("vertex not in target: {0}")]
    VertexNotInTarget(u32),
    #[error("search exceeded budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
