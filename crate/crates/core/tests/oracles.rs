//! The exact searches against brute force on small random graphs.

mod common;

use common::{masks, random_graph};

use occult::detectors::cliques::{contains_biclique, contains_clique};
use occult::detectors::perforation::{is_perforated, longest_induced_cycle, verify_cycle_packing, PerforationVerdict};
use occult::graph::{CycleEnumeration, Girth};
use occult::treewidth::{decomposition_from_order, exact_treewidth, min_fill_order, treewidth_lower_bound, verify_decomposition};
use occult::Graph;

fn corpus(max_n: usize, per_n: u64) -> impl Iterator<Item = (Graph, String)> {
    (1..=max_n).flat_map(move |n| {
        (0..per_n).map(move |k| {
            let p = [0.2, 0.35, 0.5, 0.7][k as usize % 4];
            let seed = 1000 * n as u64 + k;
            (random_graph(n, p, seed), format!("n={n} p={p} seed={seed}"))
        })
    })
}

/// Width of eliminating vertices in `order`.
fn elimination_width(adj: &[u32], order: &[usize]) -> usize {
    let mut adj = adj.to_vec();
    let mut gone = 0u32;
    let mut width = 0;
    for &v in order {
        let nb = adj[v] & !gone;
        width = width.max(nb.count_ones() as usize);
        let mut m = nb;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            adj[u] |= nb & !(1 << u);
        }
        gone |= 1 << v;
    }
    width
}

/// Minimum elimination width over every permutation (Heap's algorithm).
fn treewidth_by_permutations(g: &Graph) -> usize {
    let adj = masks(g);
    let mut order: Vec<usize> = g.vertices().collect();
    let n = order.len();
    let mut best = elimination_width(&adj, &order);
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.min(elimination_width(&adj, &order));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Treewidth by dynamic programming over vertex sets: eliminating `S`
/// first and then `v` costs the number of vertices outside `S + v` that `v`
/// reaches through `S`.
fn treewidth_by_subsets(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let adj = masks(g);
    let reach = |s: u32, v: usize| -> usize {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[u] & !seen;
            seen |= nb;
            out |= nb & !s;
            frontier |= nb & s;
        }
        out.count_ones() as usize
    };
    let mut tw = vec![0usize; 1 << n];
    for s in 1u32..1 << n {
        let mut best = usize::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = s & !(1 << v);
            best = best.min(tw[rest as usize].max(reach(rest, v)));
        }
        tw[s as usize] = best;
    }
    tw[(1usize << n) - 1]
}

#[test]
fn treewidth_matches_every_elimination_order() {
    for (g, tag) in corpus(7, 12) {
        let tw = exact_treewidth(&g, 1_000_000);
        let want = treewidth_by_permutations(&g);
        assert_eq!(tw.exact(), Some(want), "{tag}");
        assert_eq!(verify_decomposition(&g, tw.decomposition()), Ok(want), "{tag}");
    }
}

#[test]
fn treewidth_matches_subset_dynamic_programme() {
    for (g, tag) in corpus(12, 8) {
        let tw = exact_treewidth(&g, 10_000_000);
        let want = treewidth_by_subsets(&g);
        assert_eq!(tw.exact(), Some(want), "{tag}");
        let lb = treewidth_lower_bound(&g);
        let ub = verify_decomposition(&g, &decomposition_from_order(&g, &min_fill_order(&g))).unwrap();
        assert!(lb <= want && want <= ub, "{tag}: {lb} <= {want} <= {ub}");
    }
}

#[test]
fn the_two_treewidth_oracles_agree() {
    for (g, tag) in corpus(7, 4) {
        assert_eq!(treewidth_by_permutations(&g), treewidth_by_subsets(&g), "{tag}");
    }
}

/// Vertex sets inducing a cycle, as bitmasks.
fn induced_cycles(adj: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let mut out = Vec::new();
    for m in 1u32..1 << n {
        if m.count_ones() < 3 {
            continue;
        }
        let mut ok = true;
        let mut r = m;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            ok &= (adj[v] & m).count_ones() == 2;
        }
        if !ok {
            continue;
        }
        // 2-regular and connected
        let start = m.trailing_zeros() as usize;
        let (mut seen, mut frontier) = (1u32 << start, 1u32 << start);
        while frontier != 0 {
            let u = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[u] & m & !seen;
            seen |= nb;
            frontier |= nb;
        }
        if seen == m {
            out.push(m);
        }
    }
    out
}

/// Whether `c` pairwise disjoint, pairwise anticomplete cycles of length
/// at least `min_len` exist.
fn packs(adj: &[u32], cycles: &[u32], c: usize, min_len: u32) -> bool {
    fn go(adj: &[u32], cs: &[u32], c: usize, blocked: u32) -> bool {
        if c == 0 {
            return true;
        }
        for (k, &m) in cs.iter().enumerate() {
            if m & blocked != 0 {
                continue;
            }
            let mut closed = m;
            let mut r = m;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                closed |= adj[v];
            }
            if go(adj, &cs[k + 1..], c - 1, blocked | closed) {
                return true;
            }
        }
        false
    }
    let long: Vec<u32> = cycles.iter().copied().filter(|m| m.count_ones() >= min_len).collect();
    go(adj, &long, c, 0)
}

#[test]
fn perforation_matches_subset_enumeration() {
    for (g, tag) in corpus(10, 10) {
        let adj = masks(&g);
        let cycles = induced_cycles(&adj);
        for c in 1..=2 {
            for o in 1..=3 {
                let want = !packs(&adj, &cycles, c, o as u32 + 2);
                match is_perforated(&g, c, o, 1_000_000) {
                    PerforationVerdict::Perforated => assert!(want, "{tag} c={c} o={o}"),
                    PerforationVerdict::NotPerforated { witness } => {
                        assert!(!want, "{tag} c={c} o={o}");
                        assert_eq!(verify_cycle_packing(&g, &witness, c, o), Ok(()), "{tag}");
                    }
                    v => panic!("{tag}: {v:?}"),
                }
            }
        }
    }
}

#[test]
fn cycle_statistics_match_subset_enumeration() {
    for (g, tag) in corpus(10, 10) {
        let cycles = induced_cycles(&masks(&g));
        let lens: Vec<usize> = cycles.iter().map(|m| m.count_ones() as usize).collect();
        let girth = match lens.iter().min() {
            Some(&k) => Girth::Finite(k),
            None => Girth::Infinite,
        };
        assert_eq!(g.girth(), girth, "{tag}");
        assert_eq!(longest_induced_cycle(&g, 1_000_000), Ok(lens.iter().max().copied()), "{tag}");
        for min in [3, 5] {
            let CycleEnumeration::Complete(found) = g.enumerate_induced_cycles(min, 1_000_000) else { panic!("{tag}") };
            let mut got: Vec<u32> = found.iter().map(|c| c.0.iter().fold(0, |m, &v| m | 1 << v)).collect();
            got.sort_unstable();
            let mut want: Vec<u32> = cycles.iter().copied().filter(|m| m.count_ones() as usize >= min).collect();
            want.sort_unstable();
            assert_eq!(got, want, "{tag} min={min}");
        }
    }
}

fn subsets_of_size(n: usize, t: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == t)
}

#[test]
fn cliques_match_subset_enumeration() {
    for (g, tag) in corpus(10, 10) {
        let adj = masks(&g);
        for t in 1..=4 {
            let want = subsets_of_size(g.n(), t).any(|m| (0..g.n()).filter(|v| m >> v & 1 == 1).all(|v| adj[v] & m == m & !(1 << v)));
            let got = contains_clique(&g, t);
            assert_eq!(got.is_some(), want, "{tag} t={t}");
            if let Some(k) = got {
                assert_eq!(k.len(), t);
                assert!(k.iter().enumerate().all(|(i, &u)| k[i + 1..].iter().all(|&w| g.has_edge(u, w))), "{tag}");
            }
        }
    }
}

#[test]
fn bicliques_match_subset_enumeration() {
    for (g, tag) in corpus(9, 10) {
        let adj = masks(&g);
        let stable = |m: u32| (0..g.n()).filter(|v| m >> v & 1 == 1).all(|v| adj[v] & m == 0);
        let complete_to = |a: u32, b: u32| (0..g.n()).filter(|v| a >> v & 1 == 1).all(|v| adj[v] & b == b);
        for t in 1..=2 {
            let sides: Vec<u32> = subsets_of_size(g.n(), t).filter(|&m| stable(m)).collect();
            let want = sides.iter().any(|&a| sides.iter().any(|&b| a & b == 0 && complete_to(a, b)));
            let got = contains_biclique(&g, t);
            assert_eq!(got.is_some(), want, "{tag} t={t}");
            if let Some((a, b)) = got {
                let (ma, mb) = (a.iter().fold(0, |m, &v| m | 1 << v), b.iter().fold(0, |m, &v| m | 1 << v));
                assert!(a.len() == t && b.len() == t && stable(ma) && stable(mb) && complete_to(ma, mb), "{tag}");
            }
        }
    }
}
