//! Long disjoint anticomplete cycles glued from routes.

use std::collections::VecDeque;

use crate::asterism::OrderedAsterism;
use crate::detectors::perforation::verify_cycle_packing;
use crate::detectors::structures::{validate_gemini, Gemini};
use crate::graph::{CycleWitness, Graph, Vertex};

use super::{pre, ExtractionError};

/// Shortest path from `from` to `to` using only vertices marked in `allowed`;
/// ties go to the smaller neighbour.
fn shortest_path_within(g: &Graph, allowed: &[bool], from: Vertex, to: Vertex) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut w = to;
            while w != from {
                w = prev[w];
                path.push(w);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(v) {
            if allowed[w] && prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Appends `part`, skipping a first vertex equal to the current last one.
fn push_walk(walk: &mut Vec<Vertex>, part: impl IntoIterator<Item = Vertex>) {
    for v in part {
        if walk.last() != Some(&v) {
            walk.push(v);
        }
    }
}

fn oriented(q: &[Vertex], start: Vertex) -> Vec<Vertex> {
    if q.first() == Some(&start) {
        q.to_vec()
    } else {
        q.iter().rev().copied().collect()
    }
}

/// `H_j = π₁(2j-1) P¹_j π₁(2j) Q_{2j} π₂(2j) P²_j π₂(2j-1) Q_{2j-1} π₁(2j-1)`
/// for `j = 1..c`, where `Pⁱ_j` is a shortest path between the two
/// S-vertices through the path of the `i`-th asterism. Needs both
/// asterisms to be `2o`-ample syzygies with at least `2c` vertices; every
/// cycle has length at least `4o + 4`.
pub fn gemini_to_cycles(g: &Graph, gem: &Gemini, c: usize, o: usize) -> Result<Vec<CycleWitness>, ExtractionError> {
    pre(c >= 1 && o >= 1, || "c and o must be positive".into())?;
    validate_gemini(g, gem).map_err(|e| ExtractionError::Precondition(e.to_string()))?;
    for (name, a) in [("first", &gem.first), ("second", &gem.second)] {
        pre(a.is_syzygy(g), || format!("{name} asterism is not a syzygy"))?;
        pre(a.is_d_ample(g, 2 * o), || format!("{name} asterism is not {}-ample", 2 * o))?;
    }
    pre(gem.first.s() >= 2 * c, || format!("need {} S-vertices, have {}", 2 * c, gem.first.s()))?;

    let through = |a: &OrderedAsterism, u: Vertex, v: Vertex| {
        let mut allowed = vec![false; g.n()];
        for &w in a.path.iter().chain([&u, &v]) {
            allowed[w] = true;
        }
        shortest_path_within(g, &allowed, u, v).ok_or_else(|| ExtractionError::Rejected(format!("no path from {u} to {v}")))
    };
    let mut cycles = Vec::with_capacity(c);
    for j in 0..c {
        let (i1, i2) = (2 * j, 2 * j + 1);
        let (x1, x2) = (gem.first.order[i1], gem.first.order[i2]);
        let (y1, y2) = (gem.second.order[i1], gem.second.order[i2]);
        let p1 = through(&gem.first, x1, x2)?;
        let p2 = through(&gem.second, y2, y1)?;
        let mut walk = Vec::new();
        push_walk(&mut walk, p1);
        push_walk(&mut walk, oriented(&gem.connectors[i2].0, x2));
        push_walk(&mut walk, p2);
        push_walk(&mut walk, oriented(&gem.connectors[i1].0, y1));
        if walk.len() > 1 && walk.last() == walk.first() {
            walk.pop();
        }
        cycles.push(CycleWitness(walk));
    }
    verify_cycle_packing(g, &cycles, c, 4 * o + 2).map_err(|e| ExtractionError::Rejected(e.to_string()))?;
    Ok(cycles)
}

/// One cycle per matched pair: the certificate route of the pair in the
/// first asterism's transition graph, closed up by the one in the second.
/// Both asterisms share `S`, are `(o+2)`-ample, and their paths are
/// disjoint and anticomplete; every cycle has length at least `2o + 8`.
pub fn build_transition_cycles(
    g: &Graph,
    a1: &OrderedAsterism,
    a2: &OrderedAsterism,
    matching: &[(Vertex, Vertex)],
    o: usize,
) -> Result<Vec<CycleWitness>, ExtractionError> {
    pre(o >= 1, || "o must be positive".into())?;
    for (name, a) in [("first", a1), ("second", a2)] {
        a.validate(g).map_err(|e| ExtractionError::Precondition(format!("{name}: {e}")))?;
        pre(a.is_d_ample(g, o + 2), || format!("{name} asterism is not {}-ample", o + 2))?;
    }
    let mut s1 = a1.order.clone();
    let mut s2 = a2.order.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    pre(s1 == s2, || "the asterisms have different S".into())?;
    pre(a1.path.iter().all(|&v| !a2.path.contains(&v) && !g.has_neighbor_in(v, &a2.path)), || "paths are not disjoint and anticomplete".into())?;
    let mut seen = Vec::new();
    for &(x, y) in matching {
        pre(x != y && !seen.contains(&x) && !seen.contains(&y), || "pairs are not a matching".into())?;
        seen.extend([x, y]);
    }
    let (t1, t2) = (a1.transition_graph(g), a2.transition_graph(g));
    let mut cycles = Vec::with_capacity(matching.len());
    for &(x, y) in matching {
        let r1 = t1.certificate(x, y).ok_or_else(|| ExtractionError::Precondition(format!("{x}{y} is not a transition edge of the first asterism")))?;
        let r2 = t2.certificate(x, y).ok_or_else(|| ExtractionError::Precondition(format!("{x}{y} is not a transition edge of the second asterism")))?;
        let mut walk = Vec::new();
        push_walk(&mut walk, oriented(&r1.path.0, x));
        push_walk(&mut walk, oriented(&r2.path.0, y));
        walk.pop();
        cycles.push(CycleWitness(walk));
    }
    verify_cycle_packing(g, &cycles, matching.len(), 2 * o + 6).map_err(|e| ExtractionError::Rejected(e.to_string()))?;
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gemini, twin_syzygies};

    #[test]
    fn gemini_cycles() {
        for seed in 0..10 {
            for (c, o) in [(1, 1), (2, 1), (2, 2)] {
                let (g, gem) = gemini(2 * c, o, seed).unwrap();
                let cycles = gemini_to_cycles(&g, &gem, c, o).unwrap();
                assert_eq!(cycles.len(), c);
                assert!(cycles.iter().all(|h| h.length() >= 4 * o + 4));
            }
        }
    }

    #[test]
    fn gemini_too_small() {
        let (g, gem) = gemini(3, 1, 0).unwrap();
        assert!(matches!(gemini_to_cycles(&g, &gem, 2, 1), Err(ExtractionError::Precondition(_))));
    }

    #[test]
    fn transition_cycles() {
        let o = 1;
        let (g, ast) = twin_syzygies(4, 2, o + 3, 2);
        let cycles = build_transition_cycles(&g, &ast[0], &ast[1], &[(0, 1), (2, 3)], o).unwrap();
        assert_eq!(cycles.len(), 2);
        // one pair: the cycle is exactly the two routes
        let one = build_transition_cycles(&g, &ast[0], &ast[1], &[(1, 2)], o).unwrap();
        let r1 = ast[0].transition_graph(&g).certificate(1, 2).unwrap().length();
        let r2 = ast[1].transition_graph(&g).certificate(1, 2).unwrap().length();
        assert_eq!(one[0].length(), r1 + r2);
        assert!(matches!(build_transition_cycles(&g, &ast[0], &ast[1], &[(0, 2)], o), Err(ExtractionError::Precondition(_))));
    }
}
