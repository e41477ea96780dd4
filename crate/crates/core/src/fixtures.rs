//! Hand-built instances with known answers.
//!
//! The five-vertex asterism has `S = x1..x5` (vertices `0..5`) over the path
//! `v1..v25` (vertices `5..30`). Only part of its adjacency is pinned down
//! by the facts it has to exhibit, so the neighbourhoods below are one
//! choice that exhibits all of them:
//!
//! - 15 pieces, 13 internal, the external ones `v1v2v3` and `v22..v25`;
//! - `v17v18v19` open, `v5..v8` closed;
//! - `x2 - v13 - v14 - x3` a minimal route, `x2 - v13..v16 - x4` a
//!   non-minimal one;
//! - transition edges exactly `x1x2, x2x3, x2x5, x3x4, x3x5, x4x5`, with
//!   `x1 - v11 - v12 - x3` the only `x1`-`x3` route and `x2, x4` adjacent to
//!   `v11`.
//!
//! The cherry vertex (30) sits on top of it: it misses both ends and meets
//! every open piece.

use std::collections::BTreeSet;

use crate::asterism::OrderedAsterism;
use crate::generators::from_spots;
use crate::graph::{Graph, Vertex};
use crate::treewidth::TreeDecomposition;

/// `v_j` positions (1-based) adjacent to `x1..x5`.
pub const FIGURE5_NEIGHBOURS: [&[usize]; 5] = [&[5, 8, 10, 11], &[3, 8, 11, 13, 20], &[12, 14, 19], &[11, 16], &[17, 20, 21, 22]];

/// `v_j` positions adjacent to the cherry.
pub const CHERRY_NEIGHBOURS: [usize; 7] = [2, 4, 12, 14, 17, 20, 24];

/// Vertex id of `x_i`, `i` in `1..=5`.
pub fn x(i: usize) -> Vertex {
    assert!((1..=5).contains(&i));
    i - 1
}

/// Vertex id of `v_j`, `j` in `1..=25`.
pub fn v(j: usize) -> Vertex {
    assert!((1..=25).contains(&j));
    4 + j
}

pub fn figure5() -> (Graph, OrderedAsterism) {
    let spots: Vec<BTreeSet<usize>> = FIGURE5_NEIGHBOURS.iter().map(|ns| ns.iter().map(|j| j - 1).collect()).collect();
    from_spots(25, &spots)
}

/// The five-vertex asterism plus a cherry on top; returns the cherry too.
pub fn figure5_with_cherry() -> (Graph, OrderedAsterism, Vertex) {
    let (mut g, a) = figure5();
    let c = g.add_vertex();
    for j in CHERRY_NEIGHBOURS {
        g.add_edge(c, v(j)).expect("fresh edge");
    }
    (g, a, c)
}

/// A width-3 decomposition of `wall(3)` in PACE form, from the exact solver.
pub const WALL3_TD: &str = include_str!("../fixtures/wall3.td");

pub fn wall3_decomposition() -> TreeDecomposition {
    TreeDecomposition::from_pace(WALL3_TD).expect("shipped fixture parses").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asterism::PieceKind;
    use crate::generators::wall;
    use crate::treewidth::verify_decomposition;

    fn span(a: usize, b: usize) -> Vec<Vertex> {
        (a..=b).map(v).collect()
    }

    #[test]
    fn figure5_pieces() {
        let (g, a) = figure5();
        a.validate(&g).unwrap();
        let pieces = a.pieces(&g);
        assert_eq!(pieces.len(), 15);
        let external: Vec<_> = pieces.iter().filter(|p| p.kind == PieceKind::External).map(|p| p.vertices.clone()).collect();
        assert_eq!(external, [span(1, 3), span(22, 25)]);
        let find = |vs: Vec<Vertex>| pieces.iter().find(|p| p.vertices == vs).unwrap().is_open();
        assert!(find(span(17, 19)));
        assert!(!find(span(5, 8)));
    }

    #[test]
    fn figure5_routes_and_transitions() {
        let (g, a) = figure5();
        let routes = a.routes(&g);
        let has = |x_: Vertex, y: Vertex, vs: Vec<Vertex>, minimal: bool| routes.iter().any(|r| r.interior() == vs && r.minimal == minimal && [r.x, r.y] == [x_, y]);
        assert!(has(x(2), x(3), span(13, 14), true));
        assert!(has(x(2), x(4), span(13, 16), false));
        let t = a.transition_graph(&g);
        let edges: Vec<(usize, usize)> = t.edges.keys().map(|&(i, j)| (i + 1, j + 1)).collect();
        assert_eq!(edges, [(1, 2), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)]);
        assert!(routes.iter().filter(|r| [r.x, r.y] == [x(1), x(3)]).all(|r| r.interior() == span(11, 12)));
    }

    #[test]
    fn cherry() {
        let (g, a, c) = figure5_with_cherry();
        assert_eq!(a.is_cherry(&g, c), Ok(true));
    }

    #[test]
    fn shipped_json_matches() {
        let (g, a) = figure5();
        assert_eq!(Graph::from_json(include_str!("../fixtures/figure5.graph.json")).unwrap(), g);
        let shipped: OrderedAsterism = serde_json::from_str(include_str!("../fixtures/figure5.asterism.json")).unwrap();
        assert_eq!(shipped, a);
    }

    #[test]
    fn wall3_fixture_verifies() {
        assert_eq!(verify_decomposition(&wall(3), &wall3_decomposition()), Ok(3));
    }
}
