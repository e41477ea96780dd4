//! Matching of size `c`, or a vertex cover of fewer than `2c` vertices.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MatchingOrCover {
    Matching { edges: Vec<(Vertex, Vertex)> },
    VertexCover { vertices: Vec<Vertex> },
}

/// Greedy maximal matching over the edges in sorted order. A maximal
/// matching's ends cover every edge, so a short matching gives a small
/// cover.
pub fn matching_or_cover(t: &Graph, c: usize) -> MatchingOrCover {
    assert!(c >= 1, "c must be positive");
    let mut used = vec![false; t.n()];
    let mut m = Vec::new();
    for (u, v) in t.edges() {
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            m.push((u, v));
        }
    }
    if m.len() >= c {
        m.truncate(c);
        return MatchingOrCover::Matching { edges: m };
    }
    let mut vertices: Vec<Vertex> = m.iter().flat_map(|&(u, v)| [u, v]).collect();
    vertices.sort_unstable();
    MatchingOrCover::VertexCover { vertices }
}
