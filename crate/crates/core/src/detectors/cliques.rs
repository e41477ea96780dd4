//! Induced `K_t` and `K_{t,t}`.

use crate::graph::{Graph, Vertex};

/// The lexicographically smallest `t`-clique, if any.
pub fn contains_clique(g: &Graph, t: usize) -> Option<Vec<Vertex>> {
    fn grow(g: &Graph, t: usize, chosen: &mut Vec<Vertex>, cands: &[Vertex]) -> bool {
        if chosen.len() == t {
            return true;
        }
        for (k, &v) in cands.iter().enumerate() {
            if chosen.len() + cands.len() - k < t {
                return false;
            }
            let next: Vec<Vertex> = cands[k + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            chosen.push(v);
            if grow(g, t, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::with_capacity(t);
    let all: Vec<Vertex> = g.vertices().collect();
    grow(g, t, &mut chosen, &all).then_some(chosen)
}

/// An induced `K_{t,t}`: stable `A`, `B` with `A` complete to `B`. `A`
/// holds the smallest vertex of the pair and both sides are
/// lexicographically smallest in search order.
pub fn contains_biclique(g: &Graph, t: usize) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    if t == 0 {
        return Some((vec![], vec![]));
    }
    // stable t-subsets of `cands` above `floor`
    fn stable(g: &Graph, t: usize, chosen: &mut Vec<Vertex>, cands: &[Vertex]) -> bool {
        if chosen.len() == t {
            return true;
        }
        for (k, &v) in cands.iter().enumerate() {
            if chosen.len() + cands.len() - k < t {
                return false;
            }
            let next: Vec<Vertex> = cands[k + 1..].iter().copied().filter(|&w| !g.has_edge(v, w)).collect();
            chosen.push(v);
            if stable(g, t, chosen, &next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    // grow A, tracking the common neighbourhood that B must come from
    fn side_a(g: &Graph, t: usize, a: &mut Vec<Vertex>, cands: &[Vertex], common: &[Vertex]) -> Option<Vec<Vertex>> {
        if common.len() < t {
            return None;
        }
        if a.len() == t {
            let floor = a[0];
            let pool: Vec<Vertex> = common.iter().copied().filter(|&w| w > floor).collect();
            let mut b = Vec::with_capacity(t);
            return stable(g, t, &mut b, &pool).then_some(b);
        }
        for (k, &v) in cands.iter().enumerate() {
            if a.len() + cands.len() - k < t {
                return None;
            }
            let next: Vec<Vertex> = cands[k + 1..].iter().copied().filter(|&w| !g.has_edge(v, w)).collect();
            let common2: Vec<Vertex> = if a.is_empty() {
                g.neighbors(v).to_vec()
            } else {
                common.iter().copied().filter(|&w| g.has_edge(v, w)).collect()
            };
            a.push(v);
            if let Some(b) = side_a(g, t, a, &next, &common2) {
                return Some(b);
            }
            a.pop();
        }
        None
    }
    let all: Vec<Vertex> = g.vertices().collect();
    let mut a = Vec::with_capacity(t);
    side_a(g, t, &mut a, &all, &all).map(|b| (a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, occultation};

    #[test]
    fn cliques() {
        assert_eq!(contains_clique(&complete(5), 5), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(contains_clique(&complete(4), 5), None);
        assert_eq!(contains_clique(&Graph::new(0), 0), Some(vec![]));
        for s in 1..=4 {
            assert_eq!(contains_clique(&occultation(s).0, 3), None);
        }
    }

    #[test]
    fn bicliques() {
        let k33 = complete_bipartite(3, 3);
        assert_eq!(contains_biclique(&k33, 3), Some((vec![0, 1, 2], vec![3, 4, 5])));
        assert_eq!(contains_biclique(&k33, 4), None);
        // K_{3,3} plus an edge inside a side is no longer induced
        let mut g = k33.clone();
        g.add_edge(0, 1).unwrap();
        assert_eq!(contains_biclique(&g, 3), None);
        assert!(contains_biclique(&g, 2).is_some());
        for s in 1..=4 {
            assert_eq!(contains_biclique(&occultation(s).0, 3), None);
        }
    }
}
