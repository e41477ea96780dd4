//! `(c, o)`-perforation: no `c` pairwise disjoint, pairwise anticomplete
//! induced cycles of length at least `o + 2`.
//!
//! The search picks cycles one at a time in order of their smallest
//! vertex. After choosing a cycle `C` the rest of the packing must live in
//! `G - N[C]` above `min(C)`, which is first shrunk to its 2-core; an empty
//! core ends the branch without enumerating anything. Every cycle visited
//! at any depth costs one unit of budget.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{visit_induced_cycles_in, CycleWitness, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PerforationVerdict {
    Perforated,
    NotPerforated { witness: Vec<CycleWitness> },
    Indeterminate { budget: u64, visited: u64 },
}

impl PerforationVerdict {
    pub fn is_perforated(&self) -> bool {
        matches!(self, PerforationVerdict::Perforated)
    }
}

struct Search<'g> {
    g: &'g Graph,
    min_len: usize,
    budget: u64,
    visited: u64,
}

enum Stop {
    Found(Vec<CycleWitness>),
    Exhausted,
}

impl Search<'_> {
    fn pack(&mut self, alive: Vec<bool>, c: usize) -> Option<Stop> {
        if c == 0 {
            return Some(Stop::Found(vec![]));
        }
        let alive = two_core(self.g, alive);
        if !alive.iter().any(|&b| b) {
            return None;
        }
        let g = self.g;
        let mut result = None;
        let _ = visit_induced_cycles_in(g, &alive, self.min_len, g.n(), |cyc| {
            self.visited += 1;
            if self.visited > self.budget {
                result = Some(Stop::Exhausted);
                return ControlFlow::Break(());
            }
            let here = CycleWitness(cyc.to_vec());
            if c == 1 {
                result = Some(Stop::Found(vec![here]));
                return ControlFlow::Break(());
            }
            let mut rest = alive.clone();
            for v in 0..=cyc[0] {
                rest[v] = false;
            }
            for &v in cyc {
                rest[v] = false;
                for &w in g.neighbors(v) {
                    rest[w] = false;
                }
            }
            match self.pack(rest, c - 1) {
                Some(Stop::Found(mut more)) => {
                    more.insert(0, here);
                    result = Some(Stop::Found(more));
                    ControlFlow::Break(())
                }
                Some(Stop::Exhausted) => {
                    result = Some(Stop::Exhausted);
                    ControlFlow::Break(())
                }
                None => ControlFlow::Continue(()),
            }
        });
        result
    }
}

/// Vertices of `alive` left after repeatedly deleting those with at most one
/// live neighbour.
fn two_core(g: &Graph, mut alive: Vec<bool>) -> Vec<bool> {
    let mut deg: Vec<usize> = g.vertices().map(|v| if alive[v] { g.neighbors(v).iter().filter(|&&w| alive[w]).count() } else { 0 }).collect();
    let mut stack: Vec<Vertex> = g.vertices().filter(|&v| alive[v] && deg[v] < 2).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// `budget` caps the number of cycles visited over the whole search.
pub fn is_perforated(g: &Graph, c: usize, o: usize, budget: u64) -> PerforationVerdict {
    assert!(c >= 1 && o >= 1, "c and o must be positive");
    let mut s = Search { g, min_len: o + 2, budget, visited: 0 };
    match s.pack(vec![true; g.n()], c) {
        None => PerforationVerdict::Perforated,
        Some(Stop::Found(witness)) => PerforationVerdict::NotPerforated { witness },
        Some(Stop::Exhausted) => PerforationVerdict::Indeterminate { budget, visited: s.visited - 1 },
    }
}

/// Length of a longest induced cycle, `None` for forests, `Err` if more
/// than `budget` cycles had to be looked at.
pub fn longest_induced_cycle(g: &Graph, budget: u64) -> Result<Option<usize>, u64> {
    let alive = two_core(g, vec![true; g.n()]);
    let mut best = None;
    let mut seen = 0u64;
    let flow = visit_induced_cycles_in(g, &alive, 3, g.n(), |c| {
        seen += 1;
        if seen > budget {
            return ControlFlow::Break(());
        }
        best = best.max(Some(c.len()));
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        Err(budget)
    } else {
        Ok(best)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PackingViolation {
    #[error("{found} cycles, need {need}")]
    TooFew { found: usize, need: usize },
    #[error("cycle {index} is not an induced cycle: {reason}")]
    NotInduced { index: usize, reason: String },
    #[error("cycle {index} has length {length} < {need}")]
    TooShort { index: usize, length: usize, need: usize },
    #[error("cycles {a} and {b} share vertex {vertex}")]
    NotDisjoint { a: usize, b: usize, vertex: Vertex },
    #[error("cycles {a} and {b} are joined by the edge {u}-{v}")]
    NotAnticomplete { a: usize, b: usize, u: Vertex, v: Vertex },
}

/// Independent re-check of a packing witness, straight from the
/// definition.
pub fn verify_cycle_packing(g: &Graph, cycles: &[CycleWitness], c: usize, o: usize) -> Result<(), PackingViolation> {
    if cycles.len() < c {
        return Err(PackingViolation::TooFew { found: cycles.len(), need: c });
    }
    for (i, cy) in cycles.iter().enumerate() {
        cy.validate(g).map_err(|e| PackingViolation::NotInduced { index: i, reason: e.to_string() })?;
        if cy.length() < o + 2 {
            return Err(PackingViolation::TooShort { index: i, length: cy.length(), need: o + 2 });
        }
    }
    for a in 0..cycles.len() {
        for b in a + 1..cycles.len() {
            for &u in &cycles[a].0 {
                for &v in &cycles[b].0 {
                    if u == v {
                        return Err(PackingViolation::NotDisjoint { a, b, vertex: u });
                    }
                    if g.has_edge(u, v) {
                        return Err(PackingViolation::NotAnticomplete { a, b, u, v });
                    }
                }
            }
        }
    }
    Ok(())
}
