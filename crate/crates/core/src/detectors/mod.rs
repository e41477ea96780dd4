//! Exact searches and validators for the substructures the theory forbids
//! or asks for.

pub mod cliques;
pub mod perforation;
pub mod structures;

pub use cliques::{contains_biclique, contains_clique};
pub use perforation::{is_perforated, verify_cycle_packing, PerforationVerdict};
