use rand::Rng;

use occult::Graph;

/// `G(n, p)` from a seeded generator.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = occult::seed::rng(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for w in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, w).unwrap();
            }
        }
    }
    g
}

/// Neighbourhoods as bitmasks.
pub fn masks(g: &Graph) -> Vec<u32> {
    g.vertices().map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect()
}
