//! Multi-path structures (bundles, constellations, geminis, patches,
//! matches) and their validators, plus strong blocks and `d`-stable sets.
//!
//! A "path" is always an induced path of the host graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asterism::OrderedAsterism;
use crate::graph::{Graph, PathWitness, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    #[serde(rename = "S")]
    pub s: Vec<Vertex>,
    pub paths: Vec<PathWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constellation {
    #[serde(rename = "S")]
    pub s: Vec<Vertex>,
    pub paths: Vec<PathWitness>,
}

/// Two ordered asterisms joined by connector paths; `connectors[i]` runs
/// from `first.order[i]` to `second.order[i]` and is a single vertex when
/// they coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gemini {
    pub first: OrderedAsterism,
    pub second: OrderedAsterism,
    pub connectors: Vec<PathWitness>,
}

impl Gemini {
    /// Keep the indices in `js` (ascending, 0-based).
    pub fn restrict(&self, js: &[usize]) -> Gemini {
        let pick = |a: &OrderedAsterism| OrderedAsterism::new(js.iter().map(|&j| a.order[j]).collect(), a.path.clone());
        Gemini {
            first: pick(&self.first),
            second: pick(&self.second),
            connectors: js.iter().map(|&j| self.connectors[j].clone()).collect(),
        }
    }
}

/// A `(1, r)`-bundle `({z}, paths)` used as a patch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Patch {
    pub z: Vertex,
    pub paths: Vec<PathWitness>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolypathViolation {
    #[error("path {index}: {reason}")]
    Path { index: usize, reason: String },
    #[error("paths {a} and {b} share vertex {vertex}")]
    Overlap { a: usize, b: usize, vertex: Vertex },
}

fn check_polypath(g: &Graph, paths: &[PathWitness]) -> Result<(), PolypathViolation> {
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        p.validate(g).map_err(|e| PolypathViolation::Path { index: i, reason: e.to_string() })?;
        for &v in &p.0 {
            if let Some(&a) = owner.get(&v) {
                return Err(PolypathViolation::Overlap { a, b: i, vertex: v });
            }
            owner.insert(v, i);
        }
    }
    Ok(())
}

/// First pair of paths joined by an edge.
fn first_touching_pair(g: &Graph, paths: &[PathWitness]) -> Option<(usize, usize)> {
    for a in 0..paths.len() {
        for b in a + 1..paths.len() {
            if paths[a].0.iter().any(|&u| g.has_neighbor_in(u, &paths[b].0)) {
                return Some((a, b));
            }
        }
    }
    None
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleViolation {
    #[error(transparent)]
    Polypath(#[from] PolypathViolation),
    #[error("vertex {0} listed twice in S")]
    Repeated(Vertex),
    #[error("paths {a} and {b} are not anticomplete")]
    NotPlain { a: usize, b: usize },
}

pub fn validate_bundle(g: &Graph, b: &Bundle, require_plain: bool) -> Result<(), BundleViolation> {
    check_polypath(g, &b.paths)?;
    let mut seen = BTreeSet::new();
    if let Some(&v) = b.s.iter().find(|&&v| !seen.insert(v)) {
        return Err(BundleViolation::Repeated(v));
    }
    if require_plain {
        if let Some((a, b)) = first_touching_pair(g, &b.paths) {
            return Err(BundleViolation::NotPlain { a, b });
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstellationViolation {
    #[error(transparent)]
    Polypath(#[from] PolypathViolation),
    #[error("vertex {0} of S lies on a path or repeats")]
    SOnPath(Vertex),
    #[error("{x} and {y} in S are adjacent")]
    NotStable { x: Vertex, y: Vertex },
    #[error("{vertex} has no neighbour in path {path}")]
    NoNeighbor { vertex: Vertex, path: usize },
    #[error("paths {a} and {b} are not anticomplete")]
    NotPlain { a: usize, b: usize },
}

/// Clauses in order: polypath, `S` off the paths, `S` stable, every
/// S-vertex meets every path, plainness (only when asked).
pub fn validate_constellation(g: &Graph, s: &[Vertex], paths: &[PathWitness], require_plain: bool) -> Result<(), ConstellationViolation> {
    check_polypath(g, paths)?;
    let on: BTreeSet<Vertex> = paths.iter().flat_map(|p| p.0.iter().copied()).collect();
    let mut seen = BTreeSet::new();
    for &x in s {
        if on.contains(&x) || !seen.insert(x) {
            return Err(ConstellationViolation::SOnPath(x));
        }
    }
    for (i, &x) in s.iter().enumerate() {
        if let Some(&y) = s[i + 1..].iter().find(|&&y| g.has_edge(x, y)) {
            return Err(ConstellationViolation::NotStable { x, y });
        }
    }
    for &x in s {
        if let Some(path) = paths.iter().position(|p| !g.has_neighbor_in(x, &p.0)) {
            return Err(ConstellationViolation::NoNeighbor { vertex: x, path });
        }
    }
    if require_plain {
        if let Some((a, b)) = first_touching_pair(g, paths) {
            return Err(ConstellationViolation::NotPlain { a, b });
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeminiViolation {
    #[error("first asterism: {0}")]
    First(String),
    #[error("second asterism: {0}")]
    Second(String),
    #[error("sizes differ: {0} vs {1} vs {2} connectors")]
    Size(usize, usize, usize),
    #[error("(G1) vertex {0} is shared but not in both S")]
    SharedOutsideS(Vertex),
    #[error("(G2) edge {0}-{1} between the two private parts")]
    CrossEdge(Vertex, Vertex),
    #[error("(G3) connector {0}: {1}")]
    Connector(usize, String),
    #[error("(G3) connectors {0} and {1} are not disjoint and anticomplete")]
    ConnectorsTouch(usize, usize),
}

/// (G1), (G2), and (G3) read as: `Q_i` minus `π_1(i)` misses `L_1`, and
/// `Q_i` minus `π_2(i)` misses `L_2`.
pub fn validate_gemini(g: &Graph, gem: &Gemini) -> Result<(), GeminiViolation> {
    let (a, b) = (&gem.first, &gem.second);
    a.validate(g).map_err(|e| GeminiViolation::First(e.to_string()))?;
    b.validate(g).map_err(|e| GeminiViolation::Second(e.to_string()))?;
    let k = a.s();
    if b.s() != k || gem.connectors.len() != k {
        return Err(GeminiViolation::Size(k, b.s(), gem.connectors.len()));
    }
    let va: BTreeSet<Vertex> = a.vertex_set().into_iter().collect();
    let vb: BTreeSet<Vertex> = b.vertex_set().into_iter().collect();
    for &v in va.intersection(&vb) {
        if !(a.order.contains(&v) && b.order.contains(&v)) {
            return Err(GeminiViolation::SharedOutsideS(v));
        }
    }
    let only_a: Vec<Vertex> = va.difference(&vb).copied().collect();
    let only_b: Vec<Vertex> = vb.difference(&va).copied().collect();
    for &u in &only_a {
        if let Some(&v) = only_b.iter().find(|&&v| g.has_edge(u, v)) {
            return Err(GeminiViolation::CrossEdge(u, v));
        }
    }
    let on_l: BTreeSet<Vertex> = a.path.iter().chain(&b.path).copied().collect();
    for (i, q) in gem.connectors.iter().enumerate() {
        let bad = |m: &str| GeminiViolation::Connector(i, m.to_string());
        let (x, y) = (a.order[i], b.order[i]);
        if q.0.is_empty() {
            return Err(bad("empty"));
        }
        if q.0.len() == 1 {
            if x != y || q.0[0] != x {
                return Err(bad("single vertex but the ends differ"));
            }
        } else {
            q.validate(g).map_err(|e| bad(&e.to_string()))?;
            let ends = q.ends();
            if !(ends.contains(&x) && ends.contains(&y)) || x == y {
                return Err(bad("ends are not the matching S-vertices"));
            }
        }
        if q.0.iter().any(|v| on_l.contains(v)) {
            return Err(bad("meets a path"));
        }
        let rest_a: Vec<Vertex> = q.0.iter().copied().filter(|&v| v != x).collect();
        let rest_b: Vec<Vertex> = q.0.iter().copied().filter(|&v| v != y).collect();
        if rest_a.iter().any(|&v| g.has_neighbor_in(v, &a.path)) {
            return Err(bad("touches the first path away from its first-side end"));
        }
        if rest_b.iter().any(|&v| g.has_neighbor_in(v, &b.path)) {
            return Err(bad("touches the second path away from its second-side end"));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let (p, q) = (&gem.connectors[i].0, &gem.connectors[j].0);
            if p.iter().any(|&u| q.contains(&u) || g.has_neighbor_in(u, q)) {
                return Err(GeminiViolation::ConnectorsTouch(i, j));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatchViolation {
    #[error(transparent)]
    Polypath(#[from] PolypathViolation),
    #[error("(P1) z = {0} lies on a path")]
    P1(Vertex),
    #[error("(P2) path {index} has length {length} < {d}")]
    P2 { index: usize, length: usize, d: usize },
    #[error("(P3) path {0} does not meet X in one end and z in the other")]
    P3(usize),
}

pub fn validate_patch(g: &Graph, x: &[Vertex], patch: &Patch, d: usize) -> Result<(), PatchViolation> {
    check_polypath(g, &patch.paths)?;
    if patch.paths.iter().any(|p| p.0.contains(&patch.z)) {
        return Err(PatchViolation::P1(patch.z));
    }
    for (index, p) in patch.paths.iter().enumerate() {
        if p.length() < d {
            return Err(PatchViolation::P2 { index, length: p.length(), d });
        }
    }
    for (i, p) in patch.paths.iter().enumerate() {
        let in_x: Vec<Vertex> = p.0.iter().copied().filter(|v| x.contains(v)).collect();
        let near_z: Vec<Vertex> = p.0.iter().copied().filter(|&v| g.has_edge(v, patch.z)).collect();
        let (first, last) = (p.0[0], *p.0.last().unwrap());
        let fits = |xl: Vertex, yl: Vertex| in_x == [xl] && near_z == [yl];
        if !(fits(first, last) || fits(last, first)) {
            return Err(PatchViolation::P3(i));
        }
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchViolation {
    #[error(transparent)]
    Polypath(#[from] PolypathViolation),
    #[error("(M1) path {index} has length {length} < {d}")]
    M1 { index: usize, length: usize, d: usize },
    #[error("(M2) vertex {0} breaks V(M) ∩ X = ends of M")]
    M2(Vertex),
}

pub fn validate_match(g: &Graph, x: &[Vertex], paths: &[PathWitness], d: usize) -> Result<(), MatchViolation> {
    check_polypath(g, paths)?;
    for (index, p) in paths.iter().enumerate() {
        if p.length() < d {
            return Err(MatchViolation::M1 { index, length: p.length(), d });
        }
    }
    let ends: BTreeSet<Vertex> = paths.iter().flat_map(|p| p.ends()).collect();
    let all: BTreeSet<Vertex> = paths.iter().flat_map(|p| p.0.iter().copied()).collect();
    let xs: BTreeSet<Vertex> = x.iter().copied().collect();
    let meet: BTreeSet<Vertex> = all.intersection(&xs).copied().collect();
    if let Some(&v) = meet.symmetric_difference(&ends).next() {
        return Err(MatchViolation::M2(v));
    }
    Ok(())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrongBlockViolation {
    #[error("malformed witness: {0}")]
    Malformed(String),
    #[error("|B| = {0} < {1}")]
    TooSmall(usize, usize),
    #[error("pair {0:?}: only {1} paths")]
    TooFewPaths((Vertex, Vertex), usize),
    #[error("pair {0:?}: path {1} is not an induced path between the pair")]
    BadPath((Vertex, Vertex), usize),
    #[error("pair {0:?}: paths are not distinct and internally disjoint")]
    NotInternallyDisjoint((Vertex, Vertex)),
    #[error("pairs {0:?} and {1:?} share vertex {2} outside their common ends")]
    CrossOverlap((Vertex, Vertex), (Vertex, Vertex), Vertex),
}

/// Every 2-subset `{x, y}` of `B` needs at least `k` distinct, internally
/// disjoint `x`–`y` paths, and the vertex sets of two different pairs' path
/// systems meet only in the pairs' common vertices. Keys are `(x, y)` with
/// `x < y`.
pub fn verify_strong_block(
    g: &Graph,
    block: &[Vertex],
    k: usize,
    witness: &BTreeMap<(Vertex, Vertex), Vec<PathWitness>>,
) -> Result<(), StrongBlockViolation> {
    let bset: BTreeSet<Vertex> = block.iter().copied().collect();
    if bset.len() != block.len() {
        return Err(StrongBlockViolation::Malformed("B repeats a vertex".into()));
    }
    for &(x, y) in witness.keys() {
        if x >= y || !bset.contains(&x) || !bset.contains(&y) {
            return Err(StrongBlockViolation::Malformed(format!("key ({x}, {y}) is not a sorted pair of B")));
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = bset.iter().flat_map(|&x| bset.range(x + 1..).map(move |&y| (x, y))).collect();
    if let Some(p) = pairs.iter().find(|p| !witness.contains_key(p)) {
        return Err(StrongBlockViolation::Malformed(format!("no paths for pair {p:?}")));
    }
    if block.len() < k {
        return Err(StrongBlockViolation::TooSmall(block.len(), k));
    }
    let mut span: BTreeMap<(Vertex, Vertex), BTreeSet<Vertex>> = BTreeMap::new();
    for &(x, y) in &pairs {
        let coll = &witness[&(x, y)];
        let distinct: BTreeSet<&Vec<Vertex>> = coll.iter().map(|p| &p.0).collect();
        if distinct.len() < k {
            return Err(StrongBlockViolation::TooFewPaths((x, y), distinct.len()));
        }
        let mut inner = BTreeSet::new();
        let mut all = BTreeSet::new();
        for (i, p) in coll.iter().enumerate() {
            let ends = p.ends();
            if p.validate(g).is_err() || ends.len() != 2 || !(ends.contains(&x) && ends.contains(&y)) {
                return Err(StrongBlockViolation::BadPath((x, y), i));
            }
            for &v in p.interior() {
                if !inner.insert(v) {
                    return Err(StrongBlockViolation::NotInternallyDisjoint((x, y)));
                }
            }
            all.extend(p.0.iter().copied());
        }
        if coll.len() != distinct.len() {
            return Err(StrongBlockViolation::NotInternallyDisjoint((x, y)));
        }
        span.insert((x, y), all);
    }
    for (i, &p) in pairs.iter().enumerate() {
        for &q in &pairs[i + 1..] {
            let common: BTreeSet<Vertex> = [p.0, p.1].into_iter().filter(|v| *v == q.0 || *v == q.1).collect();
            if let Some(&v) = span[&p].intersection(&span[&q]).find(|v| !common.contains(v)) {
                return Err(StrongBlockViolation::CrossOverlap(p, q, v));
            }
        }
    }
    Ok(())
}

/// No two distinct vertices of `s` are joined by a path of length at most
/// `d`, i.e. all pairwise distances exceed `d`.
pub fn is_d_stable(g: &Graph, s: &[Vertex], d: usize) -> bool {
    s.iter().all(|&u| {
        let dist = g.distances(u);
        s.iter().all(|&v| v == u || dist[v].is_none_or(|k| k > d))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::strong_block;

    fn star_patch() -> (Graph, Vec<Vertex>, Patch) {
        // z = 0; four paths x - a - b - y with y adjacent to z, x in X
        let mut g = Graph::new(1);
        let mut paths = Vec::new();
        let mut xs = Vec::new();
        for _ in 0..4 {
            let p: Vec<Vertex> = (0..4).map(|_| g.add_vertex()).collect();
            for w in p.windows(2) {
                g.add_edge(w[0], w[1]).unwrap();
            }
            g.add_edge(0, p[3]).unwrap();
            xs.push(p[0]);
            paths.push(PathWitness(p));
        }
        (g, xs, Patch { z: 0, paths })
    }

    #[test]
    fn patches() {
        let (g, xs, patch) = star_patch();
        assert_eq!(validate_patch(&g, &xs, &patch, 3), Ok(()));
        assert_eq!(validate_patch(&g, &xs, &patch, 4), Err(PatchViolation::P2 { index: 0, length: 3, d: 4 }));
        let mut more = xs.clone();
        more.push(patch.paths[2].0[1]);
        assert_eq!(validate_patch(&g, &more, &patch, 3), Err(PatchViolation::P3(2)));
        let mut bad = patch.clone();
        bad.z = patch.paths[0].0[1];
        assert!(matches!(validate_patch(&g, &xs, &bad, 1), Err(PatchViolation::P1(_))));
    }

    #[test]
    fn matches() {
        // three paths of length 7 with ends in X
        let mut g = Graph::new(0);
        let mut paths = Vec::new();
        for _ in 0..3 {
            let p: Vec<Vertex> = (0..8).map(|_| g.add_vertex()).collect();
            for w in p.windows(2) {
                g.add_edge(w[0], w[1]).unwrap();
            }
            paths.push(PathWitness(p));
        }
        let x: Vec<Vertex> = paths.iter().flat_map(|p| p.ends()).collect();
        assert_eq!(validate_match(&g, &x, &paths, 7), Ok(()));
        assert!(matches!(validate_match(&g, &x, &paths, 8), Err(MatchViolation::M1 { .. })));
        let mut x2 = x.clone();
        x2.push(paths[1].0[3]);
        assert_eq!(validate_match(&g, &x2, &paths, 7), Err(MatchViolation::M2(paths[1].0[3])));
    }

    #[test]
    fn strong_blocks() {
        // theta graph: two vertices joined by three paths of length 2
        let g = Graph::from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let mut w = BTreeMap::new();
        w.insert((0, 1), vec![PathWitness(vec![0, 2, 1]), PathWitness(vec![0, 3, 1])]);
        assert_eq!(verify_strong_block(&g, &[0, 1], 2, &w), Ok(()));
        w.insert((0, 1), vec![PathWitness(vec![0, 2, 1]), PathWitness(vec![0, 2, 1])]);
        assert!(verify_strong_block(&g, &[0, 1], 2, &w).is_err());
        for seed in 0..5 {
            let (g, b, w) = strong_block(4, seed);
            assert_eq!(verify_strong_block(&g, &b, 4, &w), Ok(()));
        }
        // two pairs sharing an interior vertex
        let (g, b, mut w) = strong_block(3, 1);
        let stolen = w[&(0, 1)][0].0[1];
        let mut g2 = g.clone();
        g2.add_edge(stolen, 2).unwrap();
        w.get_mut(&(0, 2)).unwrap()[0] = PathWitness(vec![0, stolen, 2]);
        assert!(matches!(verify_strong_block(&g2, &b, 3, &w), Err(StrongBlockViolation::CrossOverlap(..))));
        assert!(matches!(verify_strong_block(&g, &[0, 1], 2, &BTreeMap::new()), Err(StrongBlockViolation::Malformed(_))));
    }

    #[test]
    fn d_stable() {
        let p = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(is_d_stable(&p, &[2], 5));
        assert!(!is_d_stable(&p, &[0, 1], 1));
        assert!(is_d_stable(&p, &[0, 3], 2));
        assert!(!is_d_stable(&p, &[0, 3], 3));
        assert!(is_d_stable(&Graph::new(2), &[0, 1], 9));
    }
}
