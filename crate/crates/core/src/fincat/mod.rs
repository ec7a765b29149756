//! Finite categories, posets, functors, and the constructions built on them:
//! comma categories, Grothendieck constructions, initial objects and
//! isomorphism search.

mod category;
mod constructions;
mod functor;
mod iso;
mod poset;
pub mod text;

pub use category::{FinCategory, MorId, ObjId, ValidationReport, Violation, DENSE_LIMIT};
pub use constructions::{comma_category, grothendieck, grothendieck_fiber, CommaCategory, Grothendieck};
pub use functor::{CatFunctor, CatValuedFunctor};
pub use iso::{categories_isomorphic, Isomorphism, DEFAULT_ISO_BUDGET};
pub use poset::FinPoset;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinCatError {
    #[error("malformed category data: {0}")]
    Malformed(String),
    #[error("not a poset: {0}")]
    NotAPoset(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not closed under composition: {g} . {f} leaves the kept morphisms")]
    NotClosed { g: MorId, f: MorId },
    #[error("identity of object {0} is not kept")]
    IdentityDropped(ObjId),
    #[error("search exceeded budget of {0} nodes")]
    BudgetExceeded(u64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
