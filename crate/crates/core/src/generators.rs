//! Deterministic and seeded generators for walls, complete graphs,
//! occultations and the asterism-shaped families.
//!
//! Every asterism-shaped output uses the same layout: `S` is `0..s` in
//! π-order and `L` is `s..s+|L|` in path order.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::asterism::OrderedAsterism;
use crate::detectors::structures::{Constellation, Gemini};
use crate::graph::{Graph, PathWitness, Vertex};
use crate::seed::rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error("could only place {placed} of {requested} extra neighbours for vertex {index} in piece {piece}")]
    ConstructionFailure { index: usize, piece: usize, requested: usize, placed: usize },
    #[error("vertex {index} has no piece {piece} to put extra neighbours in")]
    UnknownPiece { index: usize, piece: usize },
}

/// Builds the standard layout from per-S-vertex neighbour positions on a
/// path with `len` vertices.
pub fn from_spots(len: usize, spots: &[BTreeSet<usize>]) -> (Graph, OrderedAsterism) {
    let s = spots.len();
    let mut g = Graph::new(s + len);
    for p in 1..len {
        g.add_edge(s + p - 1, s + p).expect("fresh path edge");
    }
    for (i, sp) in spots.iter().enumerate() {
        for &p in sp {
            g.add_edge(i, s + p).expect("fresh S edge");
        }
    }
    (g, OrderedAsterism::new((0..s).collect(), (s..s + len).collect()))
}

/// The wall with `t` rows of `2t` vertices: horizontal paths, and a rung
/// between `(i, j)` and `(i+1, j)` whenever `j ≡ i (mod 2)` (1-based).
/// For `t ≥ 2` the two vertices of degree one are then removed, leaving
/// `2t² − 2` vertices; `wall(1)` is a single edge.
pub fn wall(t: usize) -> Graph {
    assert!(t >= 1, "wall needs t >= 1");
    let w = 2 * t;
    let id = |i: usize, j: usize| (i - 1) * w + (j - 1);
    let mut g = Graph::new(t * w);
    for i in 1..=t {
        for j in 1..w {
            g.add_edge(id(i, j), id(i, j + 1)).unwrap();
        }
        if i < t {
            for j in (1..=w).filter(|j| j % 2 == i % 2) {
                g.add_edge(id(i, j), id(i + 1, j)).unwrap();
            }
        }
    }
    if t == 1 {
        return g;
    }
    let keep: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) != 1).collect();
    g.induced_subgraph(&keep).unwrap().graph
}

pub fn complete(t: usize) -> Graph {
    Graph::from_edges(t, (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v)))).unwrap()
}

/// Sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

/// Neighbour positions of the canonical occultation: `x_i ~ v_k` iff
/// `k ≡ 2^{s-i} (mod 2^{s-i+1})`.
fn occultation_spots(s: usize) -> Vec<BTreeSet<usize>> {
    (1..=s)
        .map(|i| {
            let step = 1usize << (s - i + 1);
            let first = 1usize << (s - i);
            (first..=1usize << s).step_by(step).collect()
        })
        .collect()
}

/// The canonical `s`-occultation: `L = v_0..v_{2^s}` and `π(i) = x_i`.
pub fn occultation(s: usize) -> (Graph, OrderedAsterism) {
    assert!(s < 20, "occultation({s}) is too large");
    from_spots((1 << s) + 1, &occultation_spots(s))
}

/// Lengths of the paths replacing the `2^s` edges of an occultation's path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathLengths {
    Uniform(usize),
    PerEdge(Vec<usize>),
}

impl PathLengths {
    fn resolve(&self, edges: usize) -> Result<Vec<usize>, GeneratorError> {
        let v = match self {
            PathLengths::Uniform(k) => vec![*k; edges],
            PathLengths::PerEdge(v) if v.len() == edges => v.clone(),
            PathLengths::PerEdge(v) => {
                return Err(GeneratorError::Parameter(format!("{} lengths for {edges} edges", v.len())));
            }
        };
        if v.contains(&0) {
            return Err(GeneratorError::Parameter("path lengths must be positive".into()));
        }
        Ok(v)
    }
}

/// Subdivides the path of `occultation(s)`; returns the new path length in
/// vertices and the remapped neighbour positions.
fn subdivided_spots(s: usize, lengths: &[usize]) -> (usize, Vec<BTreeSet<usize>>) {
    let mut at = vec![0usize; lengths.len() + 1];
    for (k, &l) in lengths.iter().enumerate() {
        at[k + 1] = at[k] + l;
    }
    let spots = occultation_spots(s).into_iter().map(|sp| sp.into_iter().map(|k| at[k]).collect()).collect();
    (at[lengths.len()] + 1, spots)
}

/// A full `(s, o)`-occultation grown from `occultation(s)`.
///
/// The path is subdivided per `lengths`, then for each `(i, piece)` key of
/// `extra` (0-based π-index, index into the pieces of the prefix of the
/// first `i` vertices at the moment vertex `i` is processed) that many
/// additional neighbours of `π(i)` are placed inside the piece. Candidates
/// are tried left to right starting from a seeded offset; one is kept only
/// if the result is still an ample, interrupted, `o`-invaded asterism.
pub fn full_occultation(
    s: usize,
    o: usize,
    extra: &BTreeMap<(usize, usize), usize>,
    lengths: &PathLengths,
    seed: u64,
) -> Result<(Graph, OrderedAsterism), GeneratorError> {
    if o == 0 {
        return Err(GeneratorError::Parameter("o must be at least 1".into()));
    }
    if let Some(&(i, _)) = extra.keys().find(|(i, _)| *i >= s) {
        return Err(GeneratorError::Parameter(format!("extra neighbours for index {i} but s = {s}")));
    }
    let lens = lengths.resolve(1 << s)?;
    let (len, mut spots) = subdivided_spots(s, &lens);
    let mut r = rng(seed);
    for (&(i, piece), &count) in extra {
        if count == 0 {
            continue;
        }
        let (g, a) = from_spots(len, &spots);
        let lay = a.layout(&g);
        let pieces = lay.piece_spans(|k| k < i);
        let &(p, q, _) = pieces.get(piece).ok_or(GeneratorError::UnknownPiece { index: i, piece })?;
        let mut cands: Vec<usize> = (p + 1..q).filter(|x| !spots[i].contains(x)).collect();
        if !cands.is_empty() {
            let off = r.gen_range(0..cands.len());
            cands.rotate_left(off);
        }
        let mut placed = 0;
        for c in cands {
            if placed == count {
                break;
            }
            spots[i].insert(c);
            let (g, a) = from_spots(len, &spots);
            if a.validate(&g).is_ok() && a.is_full_occultation(&g, o) {
                placed += 1;
            } else {
                spots[i].remove(&c);
            }
        }
        if placed < count {
            return Err(GeneratorError::ConstructionFailure { index: i, piece, requested: count, placed });
        }
    }
    Ok(from_spots(len, &spots))
}

/// Like [`full_occultation`], but asks for `per_vertex` extras in every
/// piece and keeps whatever fits; never fails.
pub fn full_occultation_best_effort(s: usize, o: usize, per_vertex: usize, lengths: &PathLengths, seed: u64) -> (Graph, OrderedAsterism) {
    let lens = lengths.resolve(1 << s).expect("valid lengths");
    let (len, mut spots) = subdivided_spots(s, &lens);
    let mut r = rng(seed);
    for i in 0..s {
        let (g, a) = from_spots(len, &spots);
        let pieces = a.layout(&g).piece_spans(|k| k < i);
        for (p, q, _) in pieces {
            let mut cands: Vec<usize> = (p + 1..q).filter(|x| !spots[i].contains(x)).collect();
            cands.shuffle(&mut r);
            let mut placed = 0;
            for c in cands {
                if placed == per_vertex {
                    break;
                }
                spots[i].insert(c);
                let (g, a) = from_spots(len, &spots);
                if a.validate(&g).is_ok() && a.is_full_occultation(&g, o) {
                    placed += 1;
                } else {
                    spots[i].remove(&c);
                }
            }
        }
    }
    from_spots(len, &spots)
}

/// A `d`-ample interrupted ordered `s`-asterism: `occultation(s)` with
/// every path edge replaced by a path of `d+1` or `d+2` edges (seeded).
pub fn ample_interrupted_asterism(s: usize, d: usize, seed: u64) -> (Graph, OrderedAsterism) {
    let mut r = rng(seed);
    let lens: Vec<usize> = (0..1usize << s).map(|_| d + 1 + r.gen_range(0..=1)).collect();
    let (len, spots) = subdivided_spots(s, &lens);
    from_spots(len, &spots)
}

/// [`ample_interrupted_asterism`] plus up to `attempts` random extra S–L
/// edges, each kept only if the asterism stays valid, `d`-ample and
/// interrupted. Invadedness is not protected, so these hosts may carry
/// disjoint long cycles.
pub fn perturbed_asterism(s: usize, d: usize, attempts: usize, seed: u64) -> (Graph, OrderedAsterism) {
    let (g0, a0) = ample_interrupted_asterism(s, d, seed);
    let len = a0.path.len();
    let mut spots: Vec<BTreeSet<usize>> = a0.layout(&g0).spots.into_iter().map(|v| v.into_iter().collect()).collect();
    if s == 0 || len < 3 {
        return (g0, a0);
    }
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..attempts {
        let i = r.gen_range(0..s);
        let p = r.gen_range(1..len - 1);
        if !spots[i].insert(p) {
            continue;
        }
        let (g, a) = from_spots(len, &spots);
        if !(a.validate(&g).is_ok() && a.is_d_ample(&g, d) && a.is_interrupted(&g)) {
            spots[i].remove(&p);
        }
    }
    from_spots(len, &spots)
}

/// Neighbour blocks for an `a`-syzygy: block `i` has 1..=3 neighbours of
/// `π(i)` with one unmarked vertex between consecutive ones, and blocks are
/// separated by `gaps` (cycled; one before the first block, one after the
/// last) unmarked vertices.
fn syzygy_spots(a: usize, gaps: &[usize], r: &mut crate::seed::Rng) -> (usize, Vec<BTreeSet<usize>>) {
    let gap = |k: usize| if gaps.is_empty() { 1 } else { gaps[k % gaps.len()] };
    let mut pos = gap(0);
    let mut spots = Vec::with_capacity(a);
    for i in 0..a {
        let size = r.gen_range(1..=3);
        let mut sp = BTreeSet::new();
        for b in 0..size {
            if b > 0 {
                pos += 2;
            }
            sp.insert(pos);
        }
        spots.push(sp);
        pos += 1 + gap(i + 1);
    }
    (pos, spots)
}

pub fn syzygy(a: usize, gaps: &[usize], seed: u64) -> Result<(Graph, OrderedAsterism), GeneratorError> {
    if a == 0 {
        return Err(GeneratorError::Parameter("a syzygy needs a >= 1".into()));
    }
    if gaps.contains(&0) {
        return Err(GeneratorError::Parameter("gaps must be positive".into()));
    }
    let (len, spots) = syzygy_spots(a, gaps, &mut rng(seed));
    Ok(from_spots(len, &spots))
}

/// `l` pairwise anticomplete paths sharing `S = 0..s`; on each path `S`
/// forms an `s`-syzygy in π-order with `gap` unmarked vertices between
/// blocks, so every asterism is `(gap-1)`-ample.
pub fn twin_syzygies(s: usize, l: usize, gap: usize, seed: u64) -> (Graph, Vec<OrderedAsterism>) {
    let mut r = rng(seed);
    let mut g = Graph::new(s);
    let mut out = Vec::with_capacity(l);
    for _ in 0..l {
        let (len, spots) = syzygy_spots(s, &[gap.max(1)], &mut r);
        let path: Vec<Vertex> = (0..len).map(|_| g.add_vertex()).collect();
        for w in path.windows(2) {
            g.add_edge(w[0], w[1]).unwrap();
        }
        for (i, sp) in spots.iter().enumerate() {
            for &p in sp {
                g.add_edge(i, path[p]).unwrap();
            }
        }
        out.push(OrderedAsterism::new((0..s).collect(), path));
    }
    (g, out)
}

/// A `g`-gemini of two `2o`-ample `g`-syzygies. Connector `i` has length 0
/// (a shared S-vertex), 2 or 3, chosen by the seed; length 1 would join
/// the two sides by an edge.
pub fn gemini(g: usize, o: usize, seed: u64) -> Result<(Graph, Gemini), GeneratorError> {
    if g == 0 || o == 0 {
        return Err(GeneratorError::Parameter("gemini needs g, o >= 1".into()));
    }
    let mut r = rng(seed);
    let gaps1: Vec<usize> = (0..=g).map(|_| 2 * o + r.gen_range(0..=1)).collect();
    let gaps2: Vec<usize> = (0..=g).map(|_| 2 * o + r.gen_range(0..=1)).collect();
    let (len1, spots1) = syzygy_spots(g, &gaps1, &mut r);
    let (len2, spots2) = syzygy_spots(g, &gaps2, &mut r);
    let kinds: Vec<usize> = (0..g).map(|_| [0, 2, 3][r.gen_range(0..3)]).collect();

    let mut h = Graph::new(0);
    let s1: Vec<Vertex> = (0..g).map(|_| h.add_vertex()).collect();
    let s2: Vec<Vertex> = (0..g).map(|i| if kinds[i] == 0 { s1[i] } else { h.add_vertex() }).collect();
    let l1: Vec<Vertex> = (0..len1).map(|_| h.add_vertex()).collect();
    let l2: Vec<Vertex> = (0..len2).map(|_| h.add_vertex()).collect();
    for l in [&l1, &l2] {
        for w in l.windows(2) {
            h.add_edge(w[0], w[1]).unwrap();
        }
    }
    for i in 0..g {
        for &p in &spots1[i] {
            h.add_edge(s1[i], l1[p]).unwrap();
        }
        for &p in &spots2[i] {
            h.add_edge(s2[i], l2[p]).unwrap();
        }
    }
    let mut connectors = Vec::with_capacity(g);
    for i in 0..g {
        let mut q = vec![s1[i]];
        if kinds[i] > 0 {
            for _ in 1..kinds[i] {
                q.push(h.add_vertex());
            }
            q.push(s2[i]);
            for w in q.windows(2) {
                h.add_edge(w[0], w[1]).unwrap();
            }
        }
        connectors.push(PathWitness(q));
    }
    let gem = Gemini {
        first: OrderedAsterism::new(s1, l1),
        second: OrderedAsterism::new(s2, l2),
        connectors,
    };
    Ok((h, gem))
}

/// Paths `0..l` with `lengths[k % lengths.len()]` edges each, then `S`;
/// every S-vertex gets one or two neighbours on every path.
fn constellation_graph(s: usize, l: usize, lengths: &[usize], seed: u64) -> Result<(Graph, Constellation), GeneratorError> {
    if l == 0 || lengths.is_empty() {
        return Err(GeneratorError::Parameter("constellation needs l >= 1 and a length".into()));
    }
    let mut r = rng(seed);
    let mut g = Graph::new(0);
    let mut paths = Vec::with_capacity(l);
    for k in 0..l {
        let n = lengths[k % lengths.len()] + 1;
        let p: Vec<Vertex> = (0..n).map(|_| g.add_vertex()).collect();
        for w in p.windows(2) {
            g.add_edge(w[0], w[1]).unwrap();
        }
        paths.push(PathWitness(p));
    }
    let sv: Vec<Vertex> = (0..s).map(|_| g.add_vertex()).collect();
    for &x in &sv {
        for p in &paths {
            let hits = r.gen_range(1..=2.min(p.0.len()));
            for &v in p.0.choose_multiple(&mut r, hits) {
                g.add_edge(x, v).unwrap();
            }
        }
    }
    Ok((g, Constellation { s: sv, paths }))
}

/// A plain `(s, l)`-constellation.
pub fn constellation(s: usize, l: usize, lengths: &[usize], seed: u64) -> Result<(Graph, Constellation), GeneratorError> {
    constellation_graph(s, l, lengths, seed)
}

/// Same as [`constellation`] with one extra edge between the last vertex of
/// path 0 and the first vertex of path 1, so only plainness fails.
pub fn tangled_constellation(s: usize, l: usize, lengths: &[usize], seed: u64) -> Result<(Graph, Constellation), GeneratorError> {
    if l < 2 {
        return Err(GeneratorError::Parameter("tangling needs two paths".into()));
    }
    let (mut g, c) = constellation_graph(s, l, lengths, seed)?;
    let (a, b) = (*c.paths[0].0.last().unwrap(), c.paths[1].0[0]);
    g.add_edge(a, b).unwrap();
    Ok((g, c))
}

/// A random `d`-meager ordered asterism with `size` S-vertices on a path of
/// `path_len` vertices. Neighbourhoods are clustered around random centres
/// so their spans overlap in varied ways.
pub fn meager_asterism(size: usize, d: usize, path_len: usize, seed: u64) -> Result<(Graph, OrderedAsterism), GeneratorError> {
    if path_len < 3 {
        return Err(GeneratorError::Parameter("path needs an interior".into()));
    }
    if size > 0 && (path_len - 2) * d < size {
        return Err(GeneratorError::Parameter(format!("{size} vertices do not fit {d}-meagerly on {path_len}")));
    }
    let mut r = rng(seed);
    let mut load = vec![0usize; path_len];
    let mut spots = Vec::with_capacity(size);
    let inner = path_len - 2;
    let mut room = inner * d;
    for k in 0..size {
        let c = r.gen_range(1..=inner);
        let w = r.gen_range(0..=inner / 3);
        let lo = c.saturating_sub(w).max(1);
        let hi = (c + w).min(inner);
        // leave a slot for each vertex still to come
        let want = r.gen_range(1..=3).min(room - (size - k - 1));
        room -= want;
        let mut free: Vec<usize> = (lo..=hi).filter(|&p| load[p] < d).collect();
        if free.is_empty() {
            free = (1..=inner).filter(|&p| load[p] < d).collect();
        }
        let mut sp = BTreeSet::new();
        for &p in free.choose_multiple(&mut r, want.min(free.len())) {
            sp.insert(p);
            load[p] += 1;
        }
        spots.push(sp);
    }
    Ok(from_spots(path_len, &spots))
}

/// Strong `k`-block on `B = 0..k`: every pair is joined by `k` fresh paths
/// of length 2 or 3, so all the path systems are disjoint outside `B`.
pub fn strong_block(k: usize, seed: u64) -> (Graph, Vec<Vertex>, BTreeMap<(Vertex, Vertex), Vec<PathWitness>>) {
    let mut r = rng(seed);
    let mut g = Graph::new(k);
    let mut paths = BTreeMap::new();
    for x in 0..k {
        for y in x + 1..k {
            let mut coll = Vec::with_capacity(k);
            for _ in 0..k {
                let inner = r.gen_range(1..=2);
                let mut p = vec![x];
                for _ in 0..inner {
                    p.push(g.add_vertex());
                }
                p.push(y);
                for w in p.windows(2) {
                    g.add_edge(w[0], w[1]).unwrap();
                }
                coll.push(PathWitness(p));
            }
            paths.insert((x, y), coll);
        }
    }
    (g, (0..k).collect(), paths)
}
