//! Executable checks of the main results at small scale. Each check returns a
//! [`CheckReport`] with both sides of the comparison and a verdict.

mod bary;
mod categorical;
mod engine_check;
mod nerve_ak;
pub mod random;
mod refinement;
mod report;
mod suite;

pub use bary::{bary_homotopy, bary_retract, verify_bary, BarycentricPoint, TOLERANCE};
pub use categorical::{
    fiber_instance, semidirect_functor, thomason_instance, verify_grothendieck_decomposition,
    verify_homotopy_terminal_j, verify_semidirect, verify_thomason, verify_vertex_fiber,
};
pub use engine_check::verify_engine;
pub use nerve_ak::verify_nerve_ak;
pub use refinement::{component_labelings, kan_extend_discrete, verify_refinement};
pub use report::{CheckReport, Stabilization, SweepEntry, Verdict, ISOTOPY_NOTE, REPORT_VERSION};
pub use suite::{acceptance_plan, run, CheckSpec, PlannedCheck};

use thiserror::Error;

use crate::fincat::FinCatError;
use crate::homology::HomologyError;
use crate::manifolds::ManifoldError;
use crate::sset::SsetError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoremError {
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Category(#[from] FinCatError),
    #[error(transparent)]
    Simplicial(#[from] SsetError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("model too small: {0}")]
    TooSmall(String),
    #[error("truncation insufficient: {0}")]
    Truncation(String),
    #[error("zero tail: the point has no weight on covering vertices")]
    ZeroTail,
    #[error("subfamily not a basis")]
    SubfamilyNotBasis,
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
}
