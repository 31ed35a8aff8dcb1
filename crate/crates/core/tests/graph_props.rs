mod common;

use ccgraph::census::{enumerate_graphs, CensusSpec};
use ccgraph::families::*;
use ccgraph::graph::io::{from_graph6, to_graph6};
use ccgraph::graph::*;
use ccgraph::Graph;
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

#[test]
fn canonical_form_matches_brute_isomorphism() {
    let gs: Vec<Graph> = (4..=6)
        .flat_map(|n| {
            enumerate_graphs(&CensusSpec { min_n: n, max_n: n, connected: false, ..CensusSpec::default() }).unwrap()
        })
        .collect();
    for (i, a) in gs.iter().enumerate() {
        for b in &gs[i + 1..] {
            if a.n() == b.n() && a.m() == b.m() {
                assert!(!brute_isomorphic(a, b), "{} and {}", to_graph6(a), to_graph6(b));
            }
        }
    }
}

#[test]
fn random_relabelings_keep_canonical_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let corpus = named_corpus();
    for i in 0..1000 {
        let (_, g) = &corpus[i % corpus.len()];
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        assert_eq!(canonical_form(g), canonical_form(&h));
        if g.n() <= 10 {
            assert!(brute_isomorphic(g, &h));
        }
    }
}

#[test]
fn distinguishes_known_pairs() {
    assert!(!are_isomorphic(&heawood(), &moebius_ladder(7).unwrap()));
    assert!(!are_isomorphic(&cube(), &moebius_ladder(4).unwrap()));
    assert!(are_isomorphic(&cycle(6).unwrap().complement(), &odd_prism(3).unwrap()));
    assert!(!are_isomorphic(&ladder(3).unwrap(), &path(6).unwrap()));
    assert!(are_isomorphic(&moebius_ladder(3).unwrap(), &complete_bipartite(3, 3).unwrap()));
}

#[test]
fn kuratowski_witnesses_verify() {
    let mut nonplanar = 0;
    let gs = enumerate_graphs(&CensusSpec { min_n: 6, max_n: 7, ..CensusSpec::default() }).unwrap();
    for g in gs.iter().chain(named_corpus().iter().map(|(_, g)| g)) {
        let p = is_planar(g);
        if let Some(w) = p.witness {
            assert!(!p.planar);
            assert!(w.edges.iter().all(|&(u, v)| g.has_edge(u, v)));
            assert_eq!(verify_kuratowski(g, &w.edges).map(|k| k.kind), Some(w.kind));
            nonplanar += 1;
        }
    }
    // connected graphs on 6 and 7 vertices minus the planar ones
    assert!(nonplanar >= (112 - 99) + (853 - 646));
    assert!(!is_planar(&petersen()).planar && !is_planar(&heawood()).planar);
    assert!(is_planar(&cube()).planar && is_planar(&tight_cut_example().graph).planar);
}

#[test]
fn connectivity_of_families() {
    assert_eq!(vertex_connectivity(&heawood()).unwrap(), 3);
    assert_eq!(vertex_connectivity(&complete(6).unwrap()).unwrap(), 5);
    assert_eq!(vertex_connectivity(&cycle(8).unwrap()).unwrap(), 2);
    assert_eq!(girth(&heawood()), Some(6));
    assert_eq!(girth(&petersen()), Some(5));
}

proptest! {
    #[test]
    fn graph6_round_trip(n in 0usize..=20, bits in prop::collection::vec(any::<bool>(), 190)) {
        let g = graph_from_bits(n, &bits);
        let s = to_graph6(&g);
        prop_assert_eq!(from_graph6(&s).unwrap(), g.clone());
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);
    }

    #[test]
    fn relabeling_preserves_form(n in 1usize..=9, bits in prop::collection::vec(any::<bool>(), 36), seed in any::<u64>()) {
        let g = graph_from_bits(n, &bits);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(is_planar(&g).planar, is_planar(&h).planar);
    }
}
