//! Ordered asterisms: a stable set `S` listed in order `π(1), .., π(s)`
//! together with an induced path `L`, every `S`-vertex having a neighbour in
//! the interior of `L` and none at its ends.
//!
//! Most of the predicates here work on positions along `L` (0-indexed) and
//! on indices into `S`, through [`Layout`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, PathWitness, Vertex, WitnessError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderedAsterism {
    /// `S` in π-order.
    #[serde(rename = "S")]
    pub order: Vec<Vertex>,
    /// `L` end to end.
    #[serde(rename = "L")]
    pub path: Vec<Vertex>,
}

/// First failed clause of the asterism definition.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "kebab-case")]
pub enum AsterismViolation {
    #[error("vertex {vertex} is not in the graph")]
    UnknownVertex { vertex: Vertex },
    #[error("vertex {vertex} listed twice")]
    Repeated { vertex: Vertex },
    #[error("the path is empty")]
    EmptyPath,
    #[error("{x} and {y} in S are adjacent")]
    Stability { x: Vertex, y: Vertex },
    #[error("L is not an induced path: {reason}")]
    PathInducedness { reason: String },
    #[error("{x} has no neighbour in the interior of L")]
    InteriorNeighbor { x: Vertex },
    #[error("{x} is adjacent to the end {end} of L")]
    EndAnticompleteness { x: Vertex, end: Vertex },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AsterismError {
    #[error("{0} is not in S")]
    NotInS(Vertex),
    #[error("{0} already belongs to the asterism")]
    AlreadyInAsterism(Vertex),
    #[error("{0} is not a cherry on top: {1}")]
    NotCherry(Vertex, &'static str),
    #[error("the inner path is not a subpath of the outer one")]
    NotSubpath,
    #[error("the inner S is not contained in the outer S minus x")]
    NotSubset,
    #[error("invalid asterism: {0}")]
    Invalid(#[from] AsterismViolation),
}

pub fn validate_asterism(g: &Graph, s: &[Vertex], l: &[Vertex]) -> Result<OrderedAsterism, AsterismViolation> {
    let mut seen = vec![false; g.n()];
    for &v in s.iter().chain(l) {
        if v >= g.n() {
            return Err(AsterismViolation::UnknownVertex { vertex: v });
        }
        if seen[v] {
            return Err(AsterismViolation::Repeated { vertex: v });
        }
        seen[v] = true;
    }
    if l.is_empty() {
        return Err(AsterismViolation::EmptyPath);
    }
    for (i, &x) in s.iter().enumerate() {
        if let Some(&y) = s[i + 1..].iter().find(|&&y| g.has_edge(x, y)) {
            return Err(AsterismViolation::Stability { x, y });
        }
    }
    if let Err(e) = PathWitness(l.to_vec()).validate(g) {
        return Err(AsterismViolation::PathInducedness { reason: e.to_string() });
    }
    let interior = if l.len() > 2 { &l[1..l.len() - 1] } else { &[][..] };
    for &x in s {
        if !g.has_neighbor_in(x, interior) {
            return Err(AsterismViolation::InteriorNeighbor { x });
        }
    }
    let ends = [l[0], l[l.len() - 1]];
    for &x in s {
        if let Some(&end) = ends.iter().find(|&&e| g.has_edge(x, e)) {
            return Err(AsterismViolation::EndAnticompleteness { x, end });
        }
    }
    Ok(OrderedAsterism { order: s.to_vec(), path: l.to_vec() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Internal,
    External,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Openness {
    Open,
    Closed,
}

/// A subpath `L[start..=end]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub start: usize,
    pub end: usize,
    pub vertices: Vec<Vertex>,
    pub kind: PieceKind,
    pub openness: Openness,
}

impl Piece {
    pub fn length(&self) -> usize {
        self.end - self.start
    }

    pub fn is_open(&self) -> bool {
        self.openness == Openness::Open
    }
}

/// A route `x - L[start..=end] - y`, where `x` is adjacent to `L[start]`
/// and `y` to `L[end]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub x: Vertex,
    pub y: Vertex,
    pub start: usize,
    pub end: usize,
    pub path: PathWitness,
    pub minimal: bool,
}

impl Route {
    pub fn length(&self) -> usize {
        self.path.length()
    }

    pub fn interior(&self) -> &[Vertex] {
        self.path.interior()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionGraph {
    /// `S` in π-order; vertex `i` of [`TransitionGraph::to_graph`] is
    /// `vertices[i]`.
    pub vertices: Vec<Vertex>,
    /// Keyed by the π-indices `(i, j)`, `i < j`, of the two ends. Each
    /// certificate is the first qualifying route in `(start, end)` order.
    pub edges: BTreeMap<(usize, usize), Route>,
}

impl TransitionGraph {
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.vertices.len(), self.edges.keys().copied()).expect("simple")
    }

    pub fn has_edge(&self, x: Vertex, y: Vertex) -> bool {
        let (Some(i), Some(j)) = (self.index(x), self.index(y)) else {
            return false;
        };
        self.edges.contains_key(&(i.min(j), i.max(j)))
    }

    pub fn certificate(&self, x: Vertex, y: Vertex) -> Option<&Route> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        self.edges.get(&(i.min(j), i.max(j)))
    }

    fn index(&self, x: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&v| v == x)
    }
}

/// Neighbourhood bookkeeping of an asterism along its path.
pub struct Layout<'a> {
    pub g: &'a Graph,
    pub a: &'a OrderedAsterism,
    /// `marks[p]`: π-indices adjacent to `L[p]`, ascending.
    pub marks: Vec<Vec<usize>>,
    /// `spots[i]`: positions adjacent to `π(i)`, ascending.
    pub spots: Vec<Vec<usize>>,
}

impl<'a> Layout<'a> {
    pub fn new(g: &'a Graph, a: &'a OrderedAsterism) -> Self {
        let mut pos = vec![usize::MAX; g.n()];
        for (p, &v) in a.path.iter().enumerate() {
            pos[v] = p;
        }
        let mut marks = vec![Vec::new(); a.path.len()];
        let mut spots = vec![Vec::new(); a.order.len()];
        for (i, &x) in a.order.iter().enumerate() {
            for &w in g.neighbors(x) {
                if pos[w] != usize::MAX {
                    spots[i].push(pos[w]);
                }
            }
            spots[i].sort_unstable();
            for &p in &spots[i] {
                marks[p].push(i);
            }
        }
        Layout { g, a, marks, spots }
    }

    pub fn last(&self) -> usize {
        self.a.path.len() - 1
    }

    /// Does `π(i)` have a neighbour in `L[lo..=hi]`?
    pub fn meets(&self, i: usize, lo: usize, hi: usize) -> bool {
        let sp = &self.spots[i];
        let k = sp.partition_point(|&p| p < lo);
        k < sp.len() && sp[k] <= hi
    }

    /// Pieces of the restriction to the π-indices selected by `keep`, as
    /// `(start, end, open)`.
    pub fn piece_spans(&self, keep: impl Fn(usize) -> bool) -> Vec<(usize, usize, bool)> {
        let marked: Vec<usize> = (0..self.a.path.len())
            .filter(|&p| self.marks[p].iter().any(|&i| keep(i)))
            .collect();
        let last = self.last();
        if marked.is_empty() {
            return vec![(0, last, true)];
        }
        let mut out = Vec::with_capacity(marked.len() + 1);
        if marked[0] > 0 {
            out.push((0, marked[0], true));
        }
        for w in marked.windows(2) {
            let (p, q) = (w[0], w[1]);
            let shared = self.marks[p].iter().any(|&i| keep(i) && self.marks[q].binary_search(&i).is_ok());
            out.push((p, q, !shared));
        }
        let tail = *marked.last().unwrap();
        if tail < last {
            out.push((tail, last, true));
        }
        out
    }

    pub fn pieces(&self, keep: impl Fn(usize) -> bool) -> Vec<Piece> {
        let last = self.last();
        self.piece_spans(keep)
            .into_iter()
            .map(|(p, q, open)| Piece {
                start: p,
                end: q,
                vertices: self.a.path[p..=q].to_vec(),
                kind: if p > 0 && q < last { PieceKind::Internal } else { PieceKind::External },
                openness: if open { Openness::Open } else { Openness::Closed },
            })
            .collect()
    }

    /// All routes, sorted by `(start, end, x, y)`, with minimality set.
    pub fn routes(&self) -> Vec<Route> {
        let s = self.a.order.len();
        let len = self.a.path.len();
        let mut raw: Vec<(usize, usize, usize, usize)> = Vec::new();
        let mut seen = vec![false; s];
        for i in 0..len {
            for &x in &self.marks[i] {
                seen.iter_mut().for_each(|b| *b = false);
                for &y in &self.marks[i] {
                    if y > x {
                        raw.push((i, i, x, y));
                    }
                    seen[y] = true;
                }
                for j in i + 1..len {
                    if self.marks[j].binary_search(&x).is_ok() {
                        break;
                    }
                    for &y in &self.marks[j] {
                        if !seen[y] {
                            raw.push((i, j, x, y));
                        }
                    }
                    for &y in &self.marks[j] {
                        seen[y] = true;
                    }
                }
            }
        }
        raw.sort_unstable();
        raw.dedup();
        let mut min_end = vec![usize::MAX; len];
        for &(i, j, _, _) in &raw {
            min_end[i] = min_end[i].min(j);
        }
        raw.into_iter()
            .map(|(i, j, x, y)| {
                let inner = min_end[i] < j || (i + 1..=j).any(|k| min_end[k] <= j);
                let (xv, yv) = (self.a.order[x], self.a.order[y]);
                let mut path = Vec::with_capacity(j - i + 3);
                path.push(xv);
                path.extend_from_slice(&self.a.path[i..=j]);
                path.push(yv);
                Route { x: xv, y: yv, start: i, end: j, path: PathWitness(path), minimal: !inner }
            })
            .collect()
    }
}

impl OrderedAsterism {
    pub fn new(order: Vec<Vertex>, path: Vec<Vertex>) -> Self {
        OrderedAsterism { order, path }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), AsterismViolation> {
        validate_asterism(g, &self.order, &self.path).map(|_| ())
    }

    pub fn s(&self) -> usize {
        self.order.len()
    }

    /// `S ∪ V(L)`.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.order.iter().chain(&self.path).copied().collect();
        v.sort_unstable();
        v
    }

    pub fn layout<'a>(&'a self, g: &'a Graph) -> Layout<'a> {
        Layout::new(g, self)
    }

    pub fn routes(&self, g: &Graph) -> Vec<Route> {
        self.layout(g).routes()
    }

    pub fn minimal_routes(&self, g: &Graph) -> Vec<Route> {
        self.routes(g).into_iter().filter(|r| r.minimal).collect()
    }

    pub fn pieces(&self, g: &Graph) -> Vec<Piece> {
        self.layout(g).pieces(|_| true)
    }

    /// Every route has length at least `d + 2`.
    pub fn is_d_ample(&self, g: &Graph, d: usize) -> bool {
        if d == 0 {
            return true;
        }
        self.routes(g).iter().all(|r| r.length() >= d + 2)
    }

    pub fn is_ample(&self, g: &Graph) -> bool {
        self.is_d_meager(g, 1)
    }

    /// Every vertex of `L` has at most `d` neighbours in `S`.
    pub fn is_d_meager(&self, g: &Graph, d: usize) -> bool {
        self.layout(g).marks.iter().all(|m| m.len() <= d)
    }

    /// `π(i)` meets every open piece of the prefix `a^{i-1}`, for all `i`.
    pub fn is_interrupted(&self, g: &Graph) -> bool {
        self.first_interruption_failure(g).is_none()
    }

    /// `π(i)` meets every closed piece of length at least `o` of `a^{i-1}`.
    pub fn is_o_invaded(&self, g: &Graph, o: usize) -> bool {
        self.first_invasion_failure(g, o).is_none()
    }

    pub fn is_invaded(&self, g: &Graph) -> bool {
        self.is_o_invaded(g, 1)
    }

    pub fn is_full_occultation(&self, g: &Graph, o: usize) -> bool {
        self.is_ample(g) && self.is_interrupted(g) && self.is_o_invaded(g, o)
    }

    /// `(i, start, end)`: 0-based π-index and the open prefix piece it misses.
    pub fn first_interruption_failure(&self, g: &Graph) -> Option<(usize, usize, usize)> {
        let lay = self.layout(g);
        (0..self.s()).find_map(|i| {
            lay.piece_spans(|k| k < i)
                .into_iter()
                .find(|&(p, q, open)| open && !lay.meets(i, p, q))
                .map(|(p, q, _)| (i, p, q))
        })
    }

    pub fn first_invasion_failure(&self, g: &Graph, o: usize) -> Option<(usize, usize, usize)> {
        let lay = self.layout(g);
        (0..self.s()).find_map(|i| {
            lay.piece_spans(|k| k < i)
                .into_iter()
                .find(|&(p, q, open)| !open && q - p >= o && !lay.meets(i, p, q))
                .map(|(p, q, _)| (i, p, q))
        })
    }

    /// The end of `L` from which the neighbourhoods of `π(1), π(2), ..`
    /// appear in strictly separated blocks, if there is one.
    pub fn syzygy_end(&self, g: &Graph) -> Option<SyzygyEnd> {
        let lay = self.layout(g);
        if lay.spots.iter().any(Vec::is_empty) {
            return None;
        }
        let first = |i: usize| lay.spots[i][0];
        let last = |i: usize| *lay.spots[i].last().unwrap();
        let s = self.s();
        if (1..s).all(|j| last(j - 1) < first(j)) {
            Some(SyzygyEnd::Start)
        } else if (1..s).all(|j| first(j - 1) > last(j)) {
            Some(SyzygyEnd::End)
        } else {
            None
        }
    }

    pub fn is_syzygy(&self, g: &Graph) -> bool {
        self.syzygy_end(g).is_some()
    }

    /// `a|X`, keeping π-order.
    pub fn restrict(&self, xs: &[Vertex]) -> Result<OrderedAsterism, AsterismError> {
        if let Some(&v) = xs.iter().find(|v| !self.order.contains(v)) {
            return Err(AsterismError::NotInS(v));
        }
        let order = self.order.iter().copied().filter(|v| xs.contains(v)).collect();
        Ok(OrderedAsterism { order, path: self.path.clone() })
    }

    /// `a^i`: restriction to `π(1), .., π(i)`.
    pub fn prefix(&self, i: usize) -> OrderedAsterism {
        OrderedAsterism { order: self.order[..i.min(self.s())].to_vec(), path: self.path.clone() }
    }

    pub fn transition_graph(&self, g: &Graph) -> TransitionGraph {
        let lay = self.layout(g);
        let index = |v: Vertex| self.order.iter().position(|&x| x == v).unwrap();
        let mut edges = BTreeMap::new();
        for r in lay.routes() {
            let (i, j) = (index(r.x), index(r.y));
            let key = (i.min(j), i.max(j));
            if edges.contains_key(&key) {
                continue;
            }
            let clean = (r.start..=r.end).all(|p| lay.marks[p].iter().all(|&k| k == i || k == j));
            if clean {
                edges.insert(key, r);
            }
        }
        TransitionGraph { vertices: self.order.clone(), edges }
    }

    /// (CH1) `x` misses both ends of `L`; (CH2) `x` meets every open piece.
    pub fn is_cherry(&self, g: &Graph, x: Vertex) -> Result<bool, AsterismError> {
        Ok(self.cherry_failure(g, x)?.is_none())
    }

    fn cherry_failure(&self, g: &Graph, x: Vertex) -> Result<Option<&'static str>, AsterismError> {
        g.check(x).map_err(|_| AsterismError::NotInS(x))?;
        if self.order.contains(&x) || self.path.contains(&x) {
            return Err(AsterismError::AlreadyInAsterism(x));
        }
        let last = self.path.len() - 1;
        if g.has_edge(x, self.path[0]) || g.has_edge(x, self.path[last]) {
            return Ok(Some("adjacent to an end of L"));
        }
        let lay = self.layout(g);
        let hit: Vec<bool> = self.path.iter().map(|&v| g.has_edge(x, v)).collect();
        for (p, q, open) in lay.piece_spans(|_| true) {
            if open && !hit[p..=q].iter().any(|&b| b) {
                return Ok(Some("misses an open piece"));
            }
        }
        Ok(None)
    }

    /// `cher(a, x)`: append `x` as the new top of π.
    pub fn cher(&self, g: &Graph, x: Vertex) -> Result<OrderedAsterism, AsterismError> {
        if let Some(why) = self.cherry_failure(g, x)? {
            return Err(AsterismError::NotCherry(x, why));
        }
        let mut order = self.order.clone();
        order.push(x);
        Ok(OrderedAsterism { order, path: self.path.clone() })
    }

    /// Positions `(lo, hi)` of `inner`'s path inside ours, which it must
    /// follow contiguously in either direction.
    pub fn locate_subpath(&self, inner: &[Vertex]) -> Result<(usize, usize), AsterismError> {
        let first = inner.first().ok_or(AsterismError::NotSubpath)?;
        let p0 = self.path.iter().position(|v| v == first).ok_or(AsterismError::NotSubpath)?;
        let k = inner.len();
        let fwd = p0 + k <= self.path.len() && self.path[p0..p0 + k] == *inner;
        if fwd {
            return Ok((p0, p0 + k - 1));
        }
        let bwd = p0 + 1 >= k && inner.iter().enumerate().all(|(t, v)| self.path[p0 - t] == *v);
        if bwd {
            return Ok((p0 + 1 - k, p0));
        }
        Err(AsterismError::NotSubpath)
    }

    /// (CA) with `self` as the outer asterism: no interrupted extension of
    /// `inner`'s path inside ours (same S and π) avoids all of
    /// `π'(1), .., π'(s'-1)`.
    ///
    /// An extension on one side is valid exactly when its new end misses
    /// every inner S-vertex, and extensions never change interruptedness
    /// when only the top vertex `π'(s')` may see the added part. So on each
    /// side we walk outward until the first vertex seen by a lower inner
    /// vertex; any vertex before it that misses `π'(s')` would be a valid
    /// new end.
    pub fn is_candidate(&self, g: &Graph, x: Vertex, inner: &OrderedAsterism) -> Result<bool, AsterismError> {
        if inner.order.contains(&x) || inner.order.iter().any(|v| !self.order.contains(v)) {
            return Err(AsterismError::NotSubset);
        }
        self.locate_subpath(&inner.path)?;
        if !inner.is_interrupted(g) {
            return Ok(false);
        }
        Ok(self.extension_ends(g, inner)?.iter().all(Option::is_none))
    }

    /// For each side (towards position 0, towards the last position) the
    /// farthest position that would be a valid new end, if any.
    pub(crate) fn extension_ends(&self, g: &Graph, inner: &OrderedAsterism) -> Result<[Option<usize>; 2], AsterismError> {
        let (lo, hi) = self.locate_subpath(&inner.path)?;
        let (lower, top) = match inner.order.split_last() {
            Some((t, rest)) => (rest, Some(*t)),
            None => (&[][..], None),
        };
        let scan = |range: &mut dyn Iterator<Item = usize>| {
            let mut best = None;
            for p in range {
                let v = self.path[p];
                if g.has_neighbor_in(v, lower) {
                    break;
                }
                if top.is_none_or(|t| !g.has_edge(v, t)) {
                    best = Some(p);
                }
            }
            best
        };
        let left = scan(&mut (0..lo).rev());
        let right = scan(&mut (hi + 1..self.path.len()));
        Ok([left, right])
    }

    /// Extends `inner`'s path as far as possible inside ours without giving
    /// any of `π'(1), .., π'(s'-1)` a new neighbour; the result satisfies
    /// (CA) relative to `self`.
    pub fn maximal_extension(&self, g: &Graph, inner: &OrderedAsterism) -> Result<OrderedAsterism, AsterismError> {
        let (lo, hi) = self.locate_subpath(&inner.path)?;
        let [left, right] = self.extension_ends(g, inner)?;
        let (lo2, hi2) = (left.unwrap_or(lo), right.unwrap_or(hi));
        let mut path = self.path[lo2..=hi2].to_vec();
        // keep the inner orientation
        if inner.path.len() > 1 && inner.path[0] != self.path[lo] {
            path.reverse();
        }
        Ok(OrderedAsterism { order: inner.order.clone(), path })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SyzygyEnd {
    /// Blocks appear in π-order walking from `L[0]`.
    Start,
    /// Blocks appear in π-order walking from the last vertex of `L`.
    End,
}

impl From<WitnessError> for AsterismViolation {
    fn from(e: WitnessError) -> Self {
        AsterismViolation::PathInducedness { reason: e.to_string() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::occultation;

    #[test]
    fn validation_clauses() {
        // path 0-1-2-3-4, S = {5, 6}
        let mut g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 2), (6, 3)]).unwrap();
        assert!(validate_asterism(&g, &[5, 6], &[0, 1, 2, 3, 4]).is_ok());
        g.add_edge(5, 6).unwrap();
        assert_eq!(
            validate_asterism(&g, &[5, 6], &[0, 1, 2, 3, 4]),
            Err(AsterismViolation::Stability { x: 5, y: 6 })
        );
        g.remove_edge(5, 6);
        g.add_edge(6, 4).unwrap();
        assert_eq!(
            validate_asterism(&g, &[5, 6], &[0, 1, 2, 3, 4]),
            Err(AsterismViolation::EndAnticompleteness { x: 6, end: 4 })
        );
        assert_eq!(
            validate_asterism(&g, &[5], &[0, 1]),
            Err(AsterismViolation::InteriorNeighbor { x: 5 })
        );
        assert!(matches!(
            validate_asterism(&g, &[], &[0, 2]),
            Err(AsterismViolation::PathInducedness { .. })
        ));
    }

    #[test]
    fn occultation_two_routes() {
        let (g, a) = occultation(2);
        let routes = a.routes(&g);
        // x1 ~ v2, x2 ~ v1, v3
        assert_eq!(routes.len(), 2);
        assert!(routes.iter().all(|r| r.length() == 3 && r.minimal));
        assert!(a.is_d_ample(&g, 1));
        assert!(!a.is_d_ample(&g, 2));
        assert!(!a.is_syzygy(&g));
        let t = a.transition_graph(&g);
        assert_eq!(t.edges.keys().copied().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn pieces_without_s() {
        let (g, a) = occultation(3);
        let bare = a.prefix(0);
        let ps = bare.pieces(&g);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].kind, PieceKind::External);
        assert_eq!(ps[0].vertices, a.path);
        assert!(bare.routes(&g).is_empty());
        assert!(a.prefix(1).routes(&g).is_empty());
        assert!(a.prefix(1).transition_graph(&g).edges.is_empty());
    }

    #[test]
    fn prefixes_are_cherries() {
        let (g, a) = occultation(4);
        for i in 0..4 {
            assert!(a.prefix(i).is_cherry(&g, a.order[i]).unwrap());
        }
        let rebuilt = (0..4).fold(a.prefix(0), |acc, i| acc.cher(&g, a.order[i]).unwrap());
        assert_eq!(rebuilt, a);
        assert!(matches!(a.is_cherry(&g, a.order[0]), Err(AsterismError::AlreadyInAsterism(_))));
    }

    #[test]
    fn restriction() {
        let (g, a) = occultation(4);
        assert_eq!(a.restrict(&a.order).unwrap(), a);
        let r = a.restrict(&[a.order[1], a.order[0]]).unwrap();
        assert_eq!(r, a.prefix(2));
        assert!(r.is_interrupted(&g));
        assert_eq!(a.restrict(&[]).unwrap().s(), 0);
        assert_eq!(a.restrict(&[a.path[0]]), Err(AsterismError::NotInS(a.path[0])));
    }

    #[test]
    fn removing_an_edge_breaks_interruption() {
        let (mut g, a) = occultation(3);
        assert!(a.is_interrupted(&g));
        // x3 ~ v1, v3, v5, v7: without v3 it misses the open piece v2..v4
        g.remove_edge(a.order[2], a.path[3]);
        assert_eq!(a.first_interruption_failure(&g), Some((2, 2, 4)));
    }

    #[test]
    fn candidates_on_occultation() {
        let (g, a) = occultation(3);
        // the whole path is trivially maximal
        let top = a.order[2];
        assert!(a.is_candidate(&g, top, &a.prefix(2)).unwrap());
        // shrinking the path of a^1 by one vertex leaves a valid extension
        let mut shrunk = a.prefix(1);
        shrunk.path.pop();
        assert!(!a.is_candidate(&g, top, &shrunk).unwrap());
        let grown = a.maximal_extension(&g, &shrunk).unwrap();
        assert_eq!(grown, a.prefix(1));
        assert_eq!(a.is_candidate(&g, a.order[0], &a.prefix(1)), Err(AsterismError::NotSubset));
    }
}
