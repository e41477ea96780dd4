//! Exact treewidth on small graphs, lower bounds, and tree decompositions.
//!
//! The solver answers "is there an elimination order of width at most k"
//! for k rising from the lower bound. Eliminated sets are bitmasks; a set
//! that cannot be completed within width k is remembered, so each set is
//! expanded at most once per k. Branches are cut when the degeneracy of
//! what is left exceeds k, and a simplicial or almost simplicial vertex is
//! eliminated without branching.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Most vertices the exact solver takes.
pub const MAX_VERTICES: usize = 128;

type Set = u128;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompositionViolation {
    #[error("tree: {0}")]
    Tree(String),
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(Vertex),
    #[error("vertex-cover: vertex {0} is in no bag")]
    VertexCover(Vertex),
    #[error("edge-cover: edge {0}{1} is in no bag")]
    EdgeCover(Vertex, Vertex),
    #[error("connectivity: bags holding vertex {0} are not connected")]
    Connectivity(Vertex),
}

impl DecompositionViolation {
    /// Short name of the broken axiom.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Tree(_) => "tree",
            Self::UnknownVertex(_) => "unknown-vertex",
            Self::VertexCover(_) => "vertex-cover",
            Self::EdgeCover(..) => "edge-cover",
            Self::Connectivity(_) => "connectivity",
        }
    }
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    /// PACE `.td` text: a `s td <bags> <max bag size> <vertices>` line,
    /// one `b <i> <v>...` line per bag, then one `<i> <j>` line per tree
    /// edge. Bags and vertices are numbered from 1.
    pub fn to_pace(&self, n: usize) -> String {
        let mut out = format!("s td {} {} {}\n", self.bags.len(), self.bags.iter().map(Vec::len).max().unwrap_or(0), n);
        for (i, bag) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {}", i + 1));
            for v in bag {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        for &(i, j) in &self.edges {
            out.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
        out
    }

    /// Reads the PACE `.td` text written by [`TreeDecomposition::to_pace`];
    /// `c` lines are comments. Returns the decomposition and the vertex count.
    pub fn from_pace(text: &str) -> Result<(Self, usize), String> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('c'));
        let head: Vec<&str> = lines.next().ok_or("empty input")?.split_whitespace().collect();
        let [s, td, nb, _, n] = head[..] else { return Err("bad solution line".into()) };
        if s != "s" || td != "td" {
            return Err("bad solution line".into());
        }
        let num = |t: &str| t.parse::<usize>().map_err(|e| format!("{t}: {e}"));
        let (nb, n) = (num(nb)?, num(n)?);
        let mut bags = vec![None; nb];
        let mut edges = Vec::new();
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks[0] == "b" {
                let i = num(toks.get(1).ok_or("bag line without index")?)?;
                let slot = bags.get_mut(i.wrapping_sub(1)).ok_or(format!("bag {i} out of range"))?;
                let bag = toks[2..].iter().map(|t| num(t).and_then(|v| v.checked_sub(1).ok_or("vertex 0".into()))).collect::<Result<Vec<_>, _>>()?;
                *slot = Some(bag);
            } else if let [i, j] = toks[..] {
                let (i, j) = (num(i)?, num(j)?);
                if i == 0 || j == 0 || i > nb || j > nb {
                    return Err(format!("edge {i} {j} out of range"));
                }
                edges.push((i - 1, j - 1));
            } else {
                return Err(format!("bad line: {line}"));
            }
        }
        let bags = bags.into_iter().enumerate().map(|(i, b)| b.ok_or(format!("bag {} missing", i + 1))).collect::<Result<_, _>>()?;
        Ok((TreeDecomposition { bags, edges }, n))
    }
}

impl fmt::Display for TreeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, bag) in self.bags.iter().enumerate() {
            writeln!(f, "{i}: {bag:?}")?;
        }
        write!(f, "edges {:?}", self.edges)
    }
}

/// Checks the tree, vertex cover, edge cover and connectivity axioms and
/// returns the width.
pub fn verify_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<usize, DecompositionViolation> {
    let nb = td.bags.len();
    if nb == 0 {
        return Err(DecompositionViolation::Tree("no bags".into()));
    }
    if td.edges.len() != nb - 1 {
        return Err(DecompositionViolation::Tree(format!("{} edges on {nb} bags", td.edges.len())));
    }
    let mut adj = vec![Vec::new(); nb];
    for &(i, j) in &td.edges {
        if i >= nb || j >= nb || i == j {
            return Err(DecompositionViolation::Tree(format!("bad edge {i} {j}")));
        }
        adj[i].push(j);
        adj[j].push(i);
    }
    if reach(&adj, 0, |_| true).iter().filter(|&&r| r).count() != nb {
        return Err(DecompositionViolation::Tree("not connected".into()));
    }
    let mut holders = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(DecompositionViolation::UnknownVertex(v));
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = g.vertices().find(|&v| holders[v].is_empty()) {
        return Err(DecompositionViolation::VertexCover(v));
    }
    for (u, v) in g.edges() {
        if !holders[u].iter().any(|i| td.bags[*i].contains(&v)) {
            return Err(DecompositionViolation::EdgeCover(u, v));
        }
    }
    for v in g.vertices() {
        let inside = |i: usize| td.bags[i].contains(&v);
        if reach(&adj, holders[v][0], inside).iter().filter(|&&r| r).count() != holders[v].len() {
            return Err(DecompositionViolation::Connectivity(v));
        }
    }
    Ok(td.width())
}

fn reach(adj: &[Vec<usize>], from: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] && allowed(j) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Treewidth {
    Exact { width: usize, order: Vec<Vertex>, decomposition: TreeDecomposition },
    /// The search ran out of nodes. `decomposition` has width `upper`.
    Indeterminate { lower: usize, upper: usize, nodes: u64, decomposition: TreeDecomposition },
}

impl Treewidth {
    pub fn exact(&self) -> Option<usize> {
        match self {
            Self::Exact { width, .. } => Some(*width),
            Self::Indeterminate { .. } => None,
        }
    }

    pub fn lower(&self) -> usize {
        match self {
            Self::Exact { width, .. } => *width,
            Self::Indeterminate { lower, .. } => *lower,
        }
    }

    pub fn decomposition(&self) -> &TreeDecomposition {
        match self {
            Self::Exact { decomposition, .. } | Self::Indeterminate { decomposition, .. } => decomposition,
        }
    }
}

fn masks(g: &Graph) -> Vec<Set> {
    g.vertices().map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect()
}

fn bits(mut m: Set) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

/// Vertices outside `gone ∪ {v}` reachable from `v` through `gone`: the
/// neighbours of `v` at the moment it is eliminated after `gone`.
fn higher(nb: &[Set], gone: Set, v: Vertex) -> Set {
    let mut comp: Set = 1 << v;
    let mut frontier = comp;
    while frontier != 0 {
        let mut next = 0;
        for w in bits(frontier) {
            next |= nb[w] & gone;
        }
        frontier = next & !comp;
        comp |= frontier;
    }
    let mut out = 0;
    for w in bits(comp) {
        out |= nb[w];
    }
    out & !gone & !(1 << v)
}

/// Bags `{v} ∪ higher(v)` along the order; each bag hangs off the bag of
/// the first of its other vertices to be eliminated, and the roots are
/// chained.
pub fn decomposition_from_order(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    if g.n() == 0 {
        return TreeDecomposition { bags: vec![vec![]], edges: vec![] };
    }
    assert!(g.n() <= MAX_VERTICES, "graph too large");
    let nb = masks(g);
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut gone: Set = 0;
    let mut bags = Vec::with_capacity(order.len());
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let h = higher(&nb, gone, v);
        let mut bag: Vec<Vertex> = bits(h | 1 << v).collect();
        bag.sort_unstable();
        bags.push(bag);
        match bits(h).map(|w| pos[w]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
        gone |= 1 << v;
    }
    edges.extend(roots.windows(2).map(|w| (w[0], w[1])));
    TreeDecomposition { bags, edges }
}

/// Lower bound: the larger of the degeneracy and the minor-min-width
/// (repeatedly contract a minimum-degree vertex into its neighbour of
/// least degree, recording the largest minimum degree seen).
pub fn treewidth_lower_bound(g: &Graph) -> usize {
    degeneracy(g).max(minor_min_width(g))
}

pub fn degeneracy(g: &Graph) -> usize {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.n()];
    let mut best = 0;
    for _ in 0..g.n() {
        let v = g.vertices().filter(|&v| alive[v]).min_by_key(|&v| deg[v]).expect("vertex left");
        best = best.max(deg[v]);
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

pub fn minor_min_width(g: &Graph) -> usize {
    let mut adj: Vec<std::collections::BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: Vec<bool> = vec![true; g.n()];
    let mut best = 0;
    for _ in 0..g.n() {
        let v = g.vertices().filter(|&v| alive[v]).min_by_key(|&v| adj[v].len()).expect("vertex left");
        best = best.max(adj[v].len());
        alive[v] = false;
        let nbrs: Vec<Vertex> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        if let Some(&u) = nbrs.iter().min_by_key(|&&w| adj[w].len()) {
            for &w in &nbrs {
                if w != u {
                    adj[u].insert(w);
                    adj[w].insert(u);
                }
            }
        }
    }
    best
}

/// Min-fill elimination order; ties go to the smaller vertex.
pub fn min_fill_order(g: &Graph) -> Vec<Vertex> {
    let mut adj: Vec<std::collections::BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for _ in 0..g.n() {
        let fill = |v: Vertex| {
            let nb: Vec<Vertex> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &a) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
            }
            missing
        };
        let v = g.vertices().filter(|&v| alive[v]).min_by_key(|&v| (fill(v), v)).expect("vertex left");
        alive[v] = false;
        order.push(v);
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        for &a in &nb {
            adj[a].remove(&v);
            for &b in &nb {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    nb: &'a [Set],
    all: Set,
    k: usize,
    dead: HashSet<Set>,
    nodes: u64,
    limit: u64,
}

enum Found {
    Yes(Vec<Vertex>),
    No,
    OutOfNodes,
}

impl Search<'_> {
    fn run(&mut self, gone: Set) -> Found {
        let left = self.all & !gone;
        if left.count_ones() as usize <= self.k + 1 {
            return Found::Yes(bits(left).collect());
        }
        if self.dead.contains(&gone) {
            return Found::No;
        }
        self.nodes += 1;
        if self.nodes > self.limit {
            return Found::OutOfNodes;
        }
        // neighbourhoods in the graph left after eliminating `gone`
        let mut h = [0 as Set; MAX_VERTICES];
        for v in bits(left) {
            h[v] = higher(self.nb, gone, v);
        }
        let mut branches: Vec<Vertex> = bits(left).filter(|&v| h[v].count_ones() as usize <= self.k).collect();
        if branches.is_empty() || degeneracy_of(&h, left) > self.k {
            self.dead.insert(gone);
            return Found::No;
        }
        // a simplicial or almost simplicial vertex of small degree can
        // always go first
        let clique = |m: Set| bits(m).all(|w| m & !(1 << w) & !h[w] == 0);
        if let Some(&v) = branches.iter().find(|&&v| clique(h[v]) || bits(h[v]).any(|w| clique(h[v] & !(1 << w)))) {
            branches = vec![v];
        } else {
            branches.sort_by_key(|&v| (h[v].count_ones(), v));
        }
        for v in branches {
            match self.run(gone | 1 << v) {
                Found::Yes(mut rest) => {
                    rest.insert(0, v);
                    return Found::Yes(rest);
                }
                Found::No => {}
                Found::OutOfNodes => return Found::OutOfNodes,
            }
        }
        self.dead.insert(gone);
        Found::No
    }
}

fn degeneracy_of(h: &[Set], mut left: Set) -> usize {
    let mut best = 0;
    while left != 0 {
        let v = bits(left).min_by_key(|&v| (h[v] & left).count_ones()).expect("nonempty");
        best = best.max((h[v] & left).count_ones() as usize);
        left &= !(1 << v);
    }
    best
}

/// Exact treewidth with an optimal decomposition, or bounds once some
/// width's search spends `node_limit` nodes. Graphs above [`MAX_VERTICES`]
/// vertices get bounds only.
pub fn exact_treewidth(g: &Graph, node_limit: u64) -> Treewidth {
    let lower = treewidth_lower_bound(g);
    let order = min_fill_order(g);
    let heuristic = decomposition_from_order(g, &order);
    let upper = heuristic.width();
    if lower == upper {
        return Treewidth::Exact { width: upper, order, decomposition: heuristic };
    }
    if g.n() > MAX_VERTICES {
        return Treewidth::Indeterminate { lower, upper, nodes: 0, decomposition: heuristic };
    }
    let nb = masks(g);
    let all: Set = if g.n() == MAX_VERTICES { Set::MAX } else { (1 << g.n()) - 1 };
    // each width gets its own search and node budget, so the answer does
    // not depend on how many run at once
    let runs: Vec<(Found, u64)> = (lower..upper)
        .into_par_iter()
        .map(|k| {
            let mut search = Search { nb: &nb, all, k, dead: HashSet::new(), nodes: 0, limit: node_limit };
            let found = search.run(0);
            (found, search.nodes.min(node_limit))
        })
        .collect();
    let nodes = runs.iter().map(|r| r.1).sum();
    for (k, (found, _)) in (lower..).zip(runs) {
        match found {
            Found::Yes(order) => {
                let decomposition = decomposition_from_order(g, &order);
                return Treewidth::Exact { width: k, order, decomposition };
            }
            Found::No => {}
            Found::OutOfNodes => return Treewidth::Indeterminate { lower: k, upper, nodes, decomposition: heuristic },
        }
    }
    Treewidth::Exact { width: upper, order, decomposition: heuristic }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, wall};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn small_families() {
        assert_eq!(exact_treewidth(&path(7), 1000).exact(), Some(1));
        assert_eq!(exact_treewidth(&cycle(9), 1000).exact(), Some(2));
        for t in 1..7 {
            assert_eq!(exact_treewidth(&complete(t), 1000).exact(), Some(t - 1));
        }
        assert_eq!(exact_treewidth(&Graph::new(0), 10).exact(), Some(0));
        assert_eq!(exact_treewidth(&Graph::new(1), 10).exact(), Some(0));
        assert_eq!(exact_treewidth(&Graph::new(3), 10).exact(), Some(0));
    }

    #[test]
    fn walls() {
        for t in 2..=3 {
            let g = wall(t);
            let tw = exact_treewidth(&g, 1_000_000);
            assert_eq!(tw.exact(), Some(t));
            assert_eq!(verify_decomposition(&g, tw.decomposition()), Ok(t));
        }
    }

    #[test]
    fn sliding_bags_on_a_path() {
        let g = path(4);
        let td = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2], vec![2, 3]], edges: vec![(0, 1), (1, 2)] };
        assert_eq!(verify_decomposition(&g, &td), Ok(1));
        let broken = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2], vec![3]], edges: vec![(0, 1), (1, 2)] };
        let e = verify_decomposition(&g, &broken).unwrap_err();
        assert_eq!(e.name(), "edge-cover");
        let split = TreeDecomposition { bags: vec![vec![0, 1], vec![2, 3], vec![1, 2]], edges: vec![(0, 1), (1, 2)] };
        assert_eq!(verify_decomposition(&g, &split), Err(DecompositionViolation::Connectivity(1)));
    }

    #[test]
    fn pace_round_trip() {
        let g = wall(2);
        let td = exact_treewidth(&g, 10_000).decomposition().clone();
        let text = td.to_pace(g.n());
        assert!(text.starts_with(&format!("s td {} 3 {}\n", td.bags.len(), g.n())));
        assert_eq!(TreeDecomposition::from_pace(&text), Ok((td, g.n())));
    }

    #[test]
    fn out_of_nodes() {
        let g = wall(4);
        match exact_treewidth(&g, 5) {
            Treewidth::Indeterminate { lower, upper, decomposition, .. } => {
                assert!(lower <= 4 && 4 <= upper);
                assert_eq!(verify_decomposition(&g, &decomposition), Ok(upper));
            }
            Treewidth::Exact { width, .. } => assert_eq!(width, 4),
        }
    }

    #[test]
    fn bounds() {
        assert!(treewidth_lower_bound(&complete(5)) >= 4);
        assert!(treewidth_lower_bound(&path(6)) <= 1);
        assert!(treewidth_lower_bound(&Graph::new(3)) == 0);
    }
}
