use std::collections::BTreeSet;

use proptest::prelude::*;

use occult::asterism::OrderedAsterism;
use occult::detectors::perforation::{is_perforated, verify_cycle_packing};
use occult::extraction::{interrupted_to_occultation, interval_split, matching_or_cover, ExtractionOutcome, IntervalSplit, MatchingOrCover};
use occult::generators::{full_occultation_best_effort, meager_asterism, perturbed_asterism, PathLengths};
use occult::treewidth::{exact_treewidth, treewidth_lower_bound, verify_decomposition, TreeDecomposition};
use occult::Graph;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w)));
            Graph::from_edges(n, edges.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn width(g: &Graph) -> usize {
    exact_treewidth(g, 10_000_000).exact().expect("small graphs finish")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_decomposition_verifies_at_its_width(g in graph(12)) {
        let tw = exact_treewidth(&g, 10_000_000);
        let w = tw.exact().unwrap();
        prop_assert_eq!(verify_decomposition(&g, tw.decomposition()), Ok(w));
        prop_assert!(treewidth_lower_bound(&g) <= w);
    }

    #[test]
    fn treewidth_does_not_grow_on_induced_subgraphs(g in graph(11), keep in proptest::collection::vec(any::<bool>(), 11)) {
        let xs: Vec<usize> = g.vertices().filter(|&v| keep[v]).collect();
        let sub = g.induced_subgraph(&xs).unwrap();
        prop_assert!(width(&sub.graph) <= width(&g));
    }

    #[test]
    fn subdividing_keeps_treewidth(g in graph(7), k in 1usize..=3) {
        let h = g.subdivide_uniform(k).unwrap().graph;
        prop_assert_eq!(width(&h), width(&g));
    }

    #[test]
    fn pace_and_json_round_trip(g in graph(10)) {
        let td = exact_treewidth(&g, 10_000_000).decomposition().clone();
        let (back, n) = TreeDecomposition::from_pace(&td.to_pace(g.n())).unwrap();
        prop_assert_eq!(n, g.n());
        prop_assert_eq!(back, td);
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn matching_or_cover_is_sound(g in graph(12), c in 1usize..=5) {
        match matching_or_cover(&g, c) {
            MatchingOrCover::Matching { edges } => {
                prop_assert_eq!(edges.len(), c);
                let ends: BTreeSet<usize> = edges.iter().flat_map(|&(u, w)| [u, w]).collect();
                prop_assert_eq!(ends.len(), 2 * c);
                prop_assert!(edges.iter().all(|&(u, w)| g.has_edge(u, w)));
            }
            MatchingOrCover::VertexCover { vertices } => {
                prop_assert!(vertices.len() < 2 * c);
                prop_assert!(g.edges().all(|(u, w)| vertices.contains(&u) || vertices.contains(&w)));
            }
        }
    }

    /// Small coordinates so that endpoints often coincide.
    #[test]
    fn interval_split_with_shared_endpoints(
        raw in proptest::collection::vec((0usize..6, 0usize..4), 0..=10),
        a in 1usize..=4,
        b in 1usize..=4,
    ) {
        let family: Vec<(usize, usize)> = raw.iter().map(|&(l, w)| (l, l + w)).collect();
        let n = family.len();
        let meet = |i: usize, j: usize| family[i].0 <= family[j].1 && family[j].0 <= family[i].1;
        let mut alpha = 0;
        let mut omega = 0;
        for m in 0u32..1 << n {
            let ids: Vec<usize> = (0..n).filter(|&k| m >> k & 1 == 1).collect();
            let pairs = || ids.iter().enumerate().flat_map(|(x, &i)| ids[x + 1..].iter().map(move |&j| (i, j)));
            if pairs().all(|(i, j)| !meet(i, j)) {
                alpha = alpha.max(ids.len());
            }
            if pairs().all(|(i, j)| meet(i, j)) {
                omega = omega.max(ids.len());
            }
        }
        match interval_split(&family, a, b) {
            IntervalSplit::Stable { members } => {
                prop_assert!(alpha >= a && members.len() == a);
                prop_assert!(members.iter().enumerate().all(|(x, &i)| members[x + 1..].iter().all(|&j| !meet(i, j))));
            }
            IntervalSplit::Clique { members, point } => {
                prop_assert!(alpha < a && omega >= b && members.len() == b);
                prop_assert!(members.iter().all(|&i| family[i].0 <= point && point <= family[i].1));
            }
            IntervalSplit::Insufficient { max_stable, max_clique } => {
                prop_assert!(n < a * b);
                prop_assert_eq!((max_stable, max_clique), (alpha, omega));
            }
        }
    }

    #[test]
    fn full_occultation_generator_round_trips(s in 1usize..=4, o in 1usize..=3, extra in 0usize..=2, len in 1usize..=3, seed: u64) {
        let (g, a) = full_occultation_best_effort(s, o, extra, &PathLengths::Uniform(len), seed);
        prop_assert!(a.validate(&g).is_ok());
        prop_assert!(a.is_full_occultation(&g, o));
        let back: OrderedAsterism = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn meager_generator_is_meager(size in 0usize..=20, d in 1usize..=3, slack in 0usize..=20, seed: u64) {
        let len = 3 + size.div_ceil(d) + slack;
        let (g, a) = meager_asterism(size, d, len, seed).unwrap();
        prop_assert!(a.validate(&g).is_ok());
        prop_assert!(a.is_d_meager(&g, d));
        prop_assert_eq!(a.s(), size);
    }

    #[test]
    fn occultation_or_packing_is_sound(s in 2usize..=4, attempts in 0usize..=40, seed: u64) {
        let (g, a) = perturbed_asterism(s, 2, attempts, seed);
        prop_assert!(a.is_d_ample(&g, 2) && a.is_interrupted(&g));
        let e = interrupted_to_occultation(&g, &a, 1, 1, s).unwrap();
        match e.outcome {
            ExtractionOutcome::FullOccultation { witness, o } => {
                prop_assert_eq!(o, 1);
                prop_assert!(witness.is_full_occultation(&g, 1));
            }
            ExtractionOutcome::CyclePacking { cycles } => {
                prop_assert_eq!(verify_cycle_packing(&g, &cycles, 1, 1), Ok(()));
                prop_assert!(!is_perforated(&g, 1, 1, 1_000_000).is_perforated());
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }
}
