mod common;

use ccgraph::families::*;
use ccgraph::graph::{enumerate_cycles, Parity};
use ccgraph::matching::count_perfect_matchings;
use ccgraph::pfaffian::*;
use ccgraph::Graph;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_orientation(g: &Graph, rng: &mut ChaCha8Rng) -> Orientation {
    let arcs: Vec<_> = g.edges().into_iter().map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) }).collect();
    Orientation::new(g, &arcs).unwrap()
}

/// Pfaffian by the definition: every conformal even cycle has an odd
/// number of edges oriented along a fixed traversal.
fn pfaffian_by_definition(g: &Graph, o: &Orientation) -> bool {
    enumerate_cycles(g, Parity::Even).all(|c| {
        let all = g.vertex_mask();
        if !has_pm(g, all & !c.vertex_mask()) {
            return true;
        }
        c.traversal().filter(|&(u, v)| o.points(u, v)).count() % 2 == 1
    })
}

fn small_bipartite() -> Vec<(String, Graph)> {
    named_corpus()
        .into_iter()
        .filter(|(_, g)| g.n() <= 12 && biadjacency(g).is_some() && has_pm(g, g.vertex_mask()))
        .collect()
}

#[test]
fn verification_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (_, g) in small_bipartite() {
        for _ in 0..8 {
            let o = random_orientation(&g, &mut rng);
            assert_eq!(verify_pfaffian_orientation(&o).unwrap().pfaffian, pfaffian_by_definition(&g, &o));
        }
    }
}

#[test]
fn vertex_flips_preserve_the_verdict() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (_, g) in small_bipartite() {
        let search = is_pfaffian_bruteforce(&g).unwrap();
        let mut orientations = vec![random_orientation(&g, &mut rng)];
        orientations.extend(search.orientation.clone());
        for o in orientations {
            let base = verify_pfaffian_orientation(&o).unwrap().pfaffian;
            let det = signed_biadjacency_determinant(&o).unwrap().unsigned_abs();
            for v in 0..g.n() {
                let f = o.flip_vertex(v);
                assert_eq!(verify_pfaffian_orientation(&f).unwrap().pfaffian, base);
                assert_eq!(signed_biadjacency_determinant(&f).unwrap().unsigned_abs(), det);
            }
        }
    }
}

#[test]
fn determinant_counts_matchings_exactly_when_pfaffian() {
    for (name, g) in small_bipartite() {
        let search = is_pfaffian_bruteforce(&g).unwrap();
        let perm = permanent(&biadjacency(&g).unwrap());
        assert_eq!(perm, count_perfect_matchings(&g));
        if let Some(o) = &search.orientation {
            assert_eq!(signed_biadjacency_determinant(o).unwrap().unsigned_abs(), perm, "{name}");
        }
        assert_eq!(search.pfaffian, search.orientation.is_some());
    }
}

#[test]
fn search_sizes() {
    let k = is_pfaffian_bruteforce(&complete_bipartite(3, 3).unwrap()).unwrap();
    assert!(!k.pfaffian);
    assert_eq!((k.dimension, k.assignments_tried), (4, 16));
    let h = is_pfaffian_bruteforce(&heawood()).unwrap();
    assert!(h.pfaffian && h.dimension == 8);
    assert!(!is_pfaffian_bruteforce(&complete_bipartite(4, 4).unwrap()).unwrap().pfaffian);
}
