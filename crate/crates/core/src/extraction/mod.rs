//! Constructive kernels: each takes a structure, follows the corresponding
//! argument step by step, and hands back a witness that the independent
//! checkers in `asterism` and `detectors` can re-validate.
//!
//! Everything is total. Below the proven size bounds the procedures may
//! answer [`ExtractionOutcome::Insufficient`]; the trace says where they
//! got stuck.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asterism::OrderedAsterism;
use crate::detectors::structures::Constellation;
use crate::graph::{CycleWitness, PathWitness, Vertex};

pub mod cycles;
pub mod interval;
pub mod matching;
pub mod occultation;
pub mod syzygy;

pub use cycles::{build_transition_cycles, gemini_to_cycles};
pub use interval::{interval_split, IntervalSplit};
pub use matching::{matching_or_cover, MatchingOrCover};
pub use occultation::{cherry_extend, interrupted_to_occultation, occultation_top};
pub use syzygy::asterism_to_syzygy_or_constellation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ExtractionOutcome {
    Syzygy { asterism: OrderedAsterism },
    PlainConstellation { constellation: Constellation },
    FullOccultation { witness: OrderedAsterism, o: usize },
    CyclePacking { cycles: Vec<CycleWitness> },
    Insufficient { reason: String },
}

/// An outcome plus the decisions that led to it, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extraction {
    pub outcome: ExtractionOutcome,
    pub trace: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    /// Base of the constellation recursion: `(S, {L*})`.
    SinglePath { depth: usize, s: usize },
    Split { depth: usize, family: usize, stable_target: usize, clique_target: usize, result: String },
    /// Clique side: cut `L` at `point`, dropping its S-neighbours.
    Cut { depth: usize, point: Vertex, dropped: Vec<Vertex>, kept: usize },
    /// `s <= 1`: the prefix is already a full occultation.
    Immediate { s: usize, c: usize },
    /// The top vertex meets every long closed piece of the `r'`-prefix.
    Descend { s: usize, c: usize, r: usize, r_prime: usize },
    ExtendAndTop { top: Vertex, path_before: usize, path_after: usize },
    /// A long closed piece of the `r'`-prefix missed by the top vertex.
    MissedPiece { s: usize, c: usize, top: Vertex, z: Vertex, piece: Vec<Vertex> },
    /// The smaller asterism carved from a `y`–`z` route.
    Carve { y: Vertex, z: Vertex, route: PathWitness, order: Vec<Vertex>, path: Vec<Vertex> },
    Stuck { reason: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractionError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An intermediate or final witness failed its checker. This means the
    /// implementation (or the argument it follows) is wrong.
    #[error("produced witness rejected: {0}")]
    Rejected(String),
}

pub(crate) fn pre(ok: bool, clause: impl FnOnce() -> String) -> Result<(), ExtractionError> {
    if ok {
        Ok(())
    } else {
        Err(ExtractionError::Precondition(clause()))
    }
}
