//! Integral homology of simplicial sets: sparse boundary matrices, Smith
//! normal form with an arbitrary-precision fallback, ranks over the
//! two-element field, and homology-preserving reduction.

mod chain;
mod engine;
mod matrix;
mod reduce;
mod smith;
mod summary;

pub use chain::{normalized_chains, ChainComplex};
pub use engine::{cache_key, CoeffMode, Engine, EngineStats, HomologyCache};
pub use matrix::IntMatrix;
pub use reduce::{coreduce, ReductionLog, ReductionStep, StepKind};
pub use smith::{smith, smith_bigint};
pub use summary::{betti_f2, homology, homology_upto, rank_f2, Coefficient, HomologySummary};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("malformed chain data: {0}")]
    Malformed(String),
    #[error("boundary squares to a nonzero map in degree {0}")]
    NotAComplex(usize),
    #[error("insufficient top dimension: need {requested}, have {available}")]
    InsufficientTop { requested: usize, available: usize },
    #[error("degree {requested} beyond validity range (valid through {valid:?})")]
    DegreeBeyondValidity { requested: usize, valid: Option<usize> },
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
