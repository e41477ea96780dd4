//! Occultations and the structures around them: asterisms, syzygies,
//! geminis, constellations, transition graphs, plus the small exact
//! searches (treewidth, cycle packings, cliques) used to check claims about
//! them on concrete graphs.

pub mod asterism;
pub mod detectors;
pub mod extraction;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod seed;
pub mod treewidth;

pub use asterism::OrderedAsterism;
pub use graph::{CycleWitness, Graph, PathWitness, Vertex};
