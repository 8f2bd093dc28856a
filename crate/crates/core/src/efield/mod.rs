//! Finitely presented partial exponential fields.
//!
//! A presentation lists generators `g` of the domain of `ex`, declared
//! Q-linear relations among them, and polynomial relations over the ring
//! `Q[x_g, y_g]` where `y_g` stands for `ex(g)`. On top of that this module
//! computes the predimension
//!
//! ```text
//! δ(S) = tr.deg(x_S ∪ y_S) − lin.dim(S)
//! ```
//!
//! its minimum over supersets, hulls, strong embeddings, free amalgams,
//! iterated strong extensions ("forging") and automorphism counts of
//! division-point presentations.

mod aut;
mod embedding;
mod forge;
mod predim;
mod presentation;
mod qftp;

use thiserror::Error;

use crate::poly::PolyError;

pub use aut::{aut_count, kummer_degree, kummer_degree_over, AutCount};
pub use embedding::{free_amalgam, is_strong, Amalgam, GenMap, PresentationEmbedding, StrongCheck};
pub use forge::{apply_step, forge, ForgeStage, ForgeTrace, ResolvedStep, Step};
pub use predim::{d_min, delta_table, hrushovski_check, hull, predimension, Check, Hull};
pub use presentation::{EFieldPresentation, PresentationFile, RawPresentation, ValidateOptions};
pub use qftp::{qftp_eq, restrict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EFieldError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("relation ideal contains 1")]
    ImproperIdeal,
    #[error("linear relation {row} lacks its multiplicative counterpart `{binomial}`")]
    IncoherentLinearRelation { row: usize, binomial: String },
    #[error("kernel generator `{0}` is forced algebraic")]
    KernelCollapsed(String),
    #[error("subset lattice of 2^{free} elements exceeds the budget of 2^{budget}")]
    SubsetLatticeTooLarge { free: usize, budget: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("strongness violated on {witness:?}")]
    StrongnessViolated { witness: Vec<String> },
    #[error("Hrushovski inequality fails on {witness:?} (delta = {delta})")]
    HrushovskiViolated { witness: Vec<String>, delta: i64 },
    #[error("step `{0}` is not applicable")]
    StepInapplicable(String),
    #[error("generator `{0}` is unconstrained; the automorphism group is infinite")]
    InfiniteAutomorphismGroup(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
}

pub type Result<T> = std::result::Result<T, EFieldError>;

/// Exhaustive checks refuse to enumerate more than `2^max_free` subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetBudget {
    pub max_free: usize,
}

impl Default for SubsetBudget {
    fn default() -> Self {
        SubsetBudget { max_free: 16 }
    }
}

impl SubsetBudget {
    pub fn new(max_free: usize) -> Self {
        SubsetBudget {
            max_free: max_free.min(40),
        }
    }

    pub(crate) fn check(&self, free: usize) -> Result<()> {
        if free > self.max_free {
            return Err(EFieldError::SubsetLatticeTooLarge {
                free,
                budget: self.max_free,
            });
        }
        Ok(())
    }
}
