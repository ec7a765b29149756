//! Combinatorial manifold models, basis balls, the special open set posets
//! `B_k` and `A_k`, the string categories built from them, and discrete
//! configuration complexes.
//!
//! Open sets are point sets. Two balls may be combined into one special open
//! set only when they are separated (disjoint and not adjacent), so every
//! object's components are exactly the balls it was built from. An inclusion
//! counts as an isotopy equivalence when it induces a bijection on
//! components; balls are convex, so this is the combinatorial stand-in for
//! the smooth notion.

mod ball;
mod bundle;
mod config;
mod model;
mod openset;
mod strings;

pub use ball::{enumerate_balls, parse_ball_list, stride_family, validate_basis, Ball, BallShape};
pub use bundle::{build_bk, PosetBundle};
pub use config::{config_complex, configuration_cells};
pub use model::ManifoldModel;
pub use openset::{is_isotopy_equiv, OpenSetRep};
pub use strings::{build_ak_bkp, build_akq_bk, StringCategory};

use thiserror::Error;

use crate::fincat::FinCatError;
use crate::sset::SsetError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("{0}")]
    Parse(String),
    #[error("model too small: {0}")]
    TooSmall(String),
    #[error("model too small for j = {j}: {model} needs at least {} vertices", 3 * j)]
    TooSmallForJ { model: String, j: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("ball outside the model: {0}")]
    BallOutside(String),
    #[error("not a subset: {0}")]
    NotASubset(String),
    #[error("family is not a basis")]
    NotABasis,
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error(transparent)]
    Simplicial(#[from] SsetError),
}

/// The family selected by a sub-basis spec: `full`, `stride:s`, or a ball
/// list (see [`parse_ball_list`]) given as text.
pub fn family_from_spec(model: &ManifoldModel, spec: &str) -> Result<Vec<Ball>, ManifoldError> {
    match spec.trim() {
        "full" | "" => Ok(enumerate_balls(model)),
        s => match s.strip_prefix("stride:") {
            Some(n) => stride_family(model, n.parse().map_err(|_| ManifoldError::Parse(format!("bad stride `{n}`")))?),
            None => Err(ManifoldError::Parse(format!("unknown sub-basis `{s}` (expected full or stride:S)"))),
        },
    }
}
