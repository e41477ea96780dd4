//! Simple undirected graphs on the vertex set `0..n`, plus induced paths and
//! cycles as checkable witnesses.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge {0}-{1} listed twice")]
    ParallelEdge(Vertex, Vertex),
    #[error("vertex sets overlap at {0}")]
    Overlap(Vertex),
    #[error("edge {0}-{1} has subdivision length 0")]
    ZeroLength(Vertex, Vertex),
    #[error("no subdivision length for edge {0}-{1}")]
    MissingLength(Vertex, Vertex),
}

/// Adjacency lists are kept sorted, so iteration order (and everything built
/// on it) is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[Vertex; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;
    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        Graph::from_edges(j.n, j.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Returns false if the edge was already there.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(j);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn has_neighbor_in(&self, v: Vertex, set: &[Vertex]) -> bool {
        set.iter().any(|&w| self.has_edge(v, w))
    }

    pub fn is_stable(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Subgraph induced on `xs`. Vertex `i` of the result is the `i`-th
    /// smallest element of `xs`; duplicates are ignored.
    pub fn induced_subgraph(&self, xs: &[Vertex]) -> Result<InducedSubgraph, GraphError> {
        let mut original: Vec<Vertex> = xs.to_vec();
        original.sort_unstable();
        original.dedup();
        for &v in &original {
            self.check(v)?;
        }
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::new(original.len());
        for (i, &v) in original.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    h.add_edge(i, j).expect("fresh edge");
                }
            }
        }
        Ok(InducedSubgraph { graph: h, original })
    }

    /// True iff no edge joins `xs` to `ys`. The sets must be disjoint.
    pub fn is_anticomplete(&self, xs: &[Vertex], ys: &[Vertex]) -> Result<bool, GraphError> {
        let mut mark = vec![false; self.n()];
        for &y in ys {
            self.check(y)?;
            mark[y] = true;
        }
        for &x in xs {
            self.check(x)?;
            if mark[x] {
                return Err(GraphError::Overlap(x));
            }
        }
        Ok(xs.iter().all(|&x| self.adj[x].iter().all(|&w| !mark[w])))
    }

    /// Line graph; vertex `i` of the result is the `i`-th edge of `edges()`.
    pub fn line_graph(&self) -> (Graph, Vec<(Vertex, Vertex)>) {
        let edges: Vec<_> = self.edges().collect();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); self.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            at[u].push(i);
            at[v].push(i);
        }
        let mut lg = Graph::new(edges.len());
        for inc in &at {
            for (a, &e) in inc.iter().enumerate() {
                for &f in &inc[a + 1..] {
                    lg.add_edge(e, f).expect("distinct edges");
                }
            }
        }
        (lg, edges)
    }

    /// Replace every edge `uv` by a path with `lengths[(u,v)]` edges
    /// (keys with `u < v`). Original vertices keep their ids, new ones are
    /// appended edge by edge in `edges()` order.
    pub fn subdivide(&self, lengths: &BTreeMap<(Vertex, Vertex), usize>) -> Result<Subdivision, GraphError> {
        let mut h = Graph::new(self.n());
        let mut paths = BTreeMap::new();
        for (u, v) in self.edges() {
            let k = *lengths.get(&(u, v)).ok_or(GraphError::MissingLength(u, v))?;
            if k == 0 {
                return Err(GraphError::ZeroLength(u, v));
            }
            let mut path = vec![u];
            for _ in 1..k {
                path.push(h.add_vertex());
            }
            path.push(v);
            for w in path.windows(2) {
                h.add_edge(w[0], w[1])?;
            }
            paths.insert((u, v), path);
        }
        Ok(Subdivision { graph: h, vertex_map: self.vertices().collect(), edge_paths: paths })
    }

    pub fn subdivide_uniform(&self, k: usize) -> Result<Subdivision, GraphError> {
        let lengths = self.edges().map(|e| (e, k)).collect();
        self.subdivide(&lengths)
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances(&self, src: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest cycle length over all cycles. The shortest cycle is always
    /// induced, so this is also the shortest induced cycle.
    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n()];
        let mut parent = vec![usize::MAX; self.n()];
        for root in self.vertices() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    /// All induced cycles of length at least `min_length`, each once, in
    /// canonical form (see [`CycleWitness::canonical`]), sorted by length and
    /// then lexicographically.
    pub fn enumerate_induced_cycles(&self, min_length: usize, budget: usize) -> CycleEnumeration {
        let mut found = Vec::new();
        let flow = visit_induced_cycles(self, min_length.max(3), self.n(), |c| {
            if found.len() >= budget {
                return ControlFlow::Break(());
            }
            found.push(CycleWitness(c.to_vec()));
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            return CycleEnumeration::BudgetExceeded { budget };
        }
        found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        CycleEnumeration::Complete(found)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            if self.adj[v].is_empty() {
                let _ = writeln!(out, "  {v};");
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Calls `f` on every induced cycle with length in `min_len..=max_len`.
/// Cycles arrive in canonical form: smallest vertex first, then its smaller
/// cycle-neighbour. Stops early if `f` breaks.
pub(crate) fn visit_induced_cycles<F>(g: &Graph, min_len: usize, max_len: usize, f: F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    visit_induced_cycles_in(g, &vec![true; g.n()], min_len, max_len, f)
}

/// [`visit_induced_cycles`] restricted to the subgraph induced by the
/// vertices with `alive[v]`.
pub(crate) fn visit_induced_cycles_in<F>(g: &Graph, alive: &[bool], min_len: usize, max_len: usize, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let n = g.n();
    let mut on_path = vec![false; n];
    // number of interior path vertices (everything but the first and the
    // last) adjacent to each vertex
    let mut blocked = vec![0u32; n];
    let mut near_root = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for root in (0..n).filter(|&r| alive[r]) {
        for &w in g.neighbors(root) {
            near_root[w] = true;
        }
        path.clear();
        path.push(root);
        on_path[root] = true;
        let flow = extend(g, alive, root, min_len, max_len, &mut path, &mut on_path, &mut blocked, &near_root, &mut f);
        on_path[root] = false;
        for &w in g.neighbors(root) {
            near_root[w] = false;
        }
        flow?;
    }
    ControlFlow::Continue(())
}

#[allow(clippy::too_many_arguments)]
fn extend<F>(
    g: &Graph,
    alive: &[bool],
    root: Vertex,
    min_len: usize,
    max_len: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    blocked: &mut [u32],
    near_root: &[bool],
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    let k = path.len();
    let last = path[k - 1];
    for &w in g.neighbors(last) {
        if w <= root || !alive[w] || on_path[w] || blocked[w] > 0 {
            continue;
        }
        if k >= 2 && near_root[w] {
            // closes a cycle root, p2, .., last, w
            if path[1] < w && k + 1 >= min_len && k + 1 <= max_len {
                path.push(w);
                let flow = f(path);
                path.pop();
                flow?;
            }
            continue;
        }
        if k + 2 > max_len {
            continue;
        }
        // `last` becomes interior once w is appended
        if k >= 2 {
            for &x in g.neighbors(last) {
                blocked[x] += 1;
            }
        }
        path.push(w);
        on_path[w] = true;
        let flow = extend(g, alive, root, min_len, max_len, path, on_path, blocked, near_root, f);
        on_path[w] = false;
        path.pop();
        if k >= 2 {
            for &x in g.neighbors(last) {
                blocked[x] -= 1;
            }
        }
        flow?;
    }
    ControlFlow::Continue(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[i]` is the vertex of the host that became `i`.
    pub original: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub graph: Graph,
    pub vertex_map: Vec<Vertex>,
    /// The path that replaced each original edge, from its smaller end.
    pub edge_paths: BTreeMap<(Vertex, Vertex), Vec<Vertex>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    /// True iff every cycle is longer than `k`.
    pub fn exceeds(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g > k,
            Girth::Infinite => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleEnumeration {
    Complete(Vec<CycleWitness>),
    BudgetExceeded { budget: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("empty witness")]
    Empty,
    #[error("cycle needs at least 3 vertices, got {0}")]
    TooShort(usize),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("vertex {0} repeated")]
    Repeated(Vertex),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    MissingEdge(Vertex, Vertex),
    #[error("chord {0}-{1}")]
    Chord(Vertex, Vertex),
}

/// An induced path, listed end to end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathWitness(pub Vec<Vertex>);

impl PathWitness {
    pub fn validate(&self, g: &Graph) -> Result<(), WitnessError> {
        if self.0.is_empty() {
            return Err(WitnessError::Empty);
        }
        check_sequence(g, &self.0, false)
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn ends(&self) -> Vec<Vertex> {
        match self.0.len() {
            0 => vec![],
            1 => vec![self.0[0]],
            k => vec![self.0[0], self.0[k - 1]],
        }
    }

    pub fn interior(&self) -> &[Vertex] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }
}

/// An induced cycle, listed in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness(pub Vec<Vertex>);

impl CycleWitness {
    pub fn validate(&self, g: &Graph) -> Result<(), WitnessError> {
        if self.0.len() < 3 {
            return Err(WitnessError::TooShort(self.0.len()));
        }
        check_sequence(g, &self.0, true)
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// Lexicographically smallest rotation/reflection.
    pub fn canonical(&self) -> CycleWitness {
        let c = &self.0;
        let k = c.len();
        if k == 0 {
            return self.clone();
        }
        let start = (0..k).min_by_key(|&i| c[i]).unwrap();
        let fwd: Vec<_> = (0..k).map(|i| c[(start + i) % k]).collect();
        let bwd: Vec<_> = (0..k).map(|i| c[(start + k - i) % k]).collect();
        CycleWitness(fwd.min(bwd))
    }
}

fn check_sequence(g: &Graph, seq: &[Vertex], cyclic: bool) -> Result<(), WitnessError> {
    let mut seen = vec![false; g.n()];
    for &v in seq {
        if v >= g.n() {
            return Err(WitnessError::UnknownVertex(v));
        }
        if seen[v] {
            return Err(WitnessError::Repeated(v));
        }
        seen[v] = true;
    }
    let k = seq.len();
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (cyclic && i == 0 && j == k - 1);
            let adjacent = g.has_edge(seq[i], seq[j]);
            if consecutive && !adjacent {
                return Err(WitnessError::MissingEdge(seq[i], seq[j]));
            }
            if !consecutive && adjacent {
                return Err(WitnessError::Chord(seq[i], seq[j]));
            }
        }
    }
    Ok(())
}
