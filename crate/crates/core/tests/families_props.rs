mod common;

use ccgraph::conformality::{brute_is_cycle_conformal, is_conformal};
use ccgraph::families::*;
use ccgraph::matching::is_matching_covered;
use ccgraph::tightcut::is_tight_cut;
use common::*;

#[test]
fn moebius_ladder_verdicts() {
    for k in 3..=8 {
        let g = moebius_ladder(k).unwrap();
        let r = brute_is_cycle_conformal(&g);
        assert_eq!(r.verdict, k % 2 == 0 || k == 3, "M{k}");
        assert_eq!(r.verdict, cycle_conformal_by_subsets(&g));
        if let Some(c) = r.witness {
            assert!(!has_pm(&g, g.vertex_mask() & !c.vertex_mask()));
        }
    }
}

#[test]
fn ladders_and_prisms() {
    for k in 2..=7 {
        let g = ladder(k).unwrap();
        assert_eq!((g.n(), g.m()), (2 * k, 3 * k - 2));
        assert!(brute_is_cycle_conformal(&g).verdict);
    }
    for k in [3, 5, 7] {
        let g = odd_prism(k).unwrap();
        assert!(g.is_cubic() && is_matching_covered(&g));
        assert!(brute_is_cycle_conformal(&g).verdict);
        assert!(brute_is_cycle_conformal(&odd_wheel(k).unwrap()).verdict);
    }
}

#[test]
fn glued_family() {
    let g3 = glued_kll(3).unwrap().graph;
    assert_eq!(brute_is_cycle_conformal(&g3).verdict, cycle_conformal_by_subsets(&g3));
    for l in 4..=5 {
        let gk = glued_kll(l).unwrap();
        assert_eq!(gk.graph.n(), 4 * l - 2);
        let mut degrees = gk.graph.degrees();
        degrees.sort();
        degrees.dedup();
        assert_eq!(degrees, vec![l, 2 * l - 1]);
        assert!(is_matching_covered(&gk.graph));
        assert!(is_tight_cut(&gk.graph, gk.shore).unwrap());
        let w = gk.witness.unwrap();
        assert_eq!(is_conformal(&gk.graph, &w), Ok(false));
        assert!(!has_pm(&gk.graph, gk.graph.vertex_mask() & !w.vertex_mask()));
    }
    assert!(glued_kll(3).unwrap().witness.is_none());
}

#[test]
fn operations_preserve_cycle_conformality() {
    let bases =
        [cycle(4).unwrap(), cycle(6).unwrap(), ladder(3).unwrap(), three_path_op(&cycle(4).unwrap(), (0, 1)).unwrap()];
    assert!(!brute_is_cycle_conformal(&cube()).verdict);
    for g in &bases {
        assert!(brute_is_cycle_conformal(g).verdict);
        for e in g.edges() {
            for pairs in 1..=2 {
                let h = bisubdivide(g, e, pairs).unwrap();
                assert_eq!((h.n(), h.m()), (g.n() + 2 * pairs, g.m() + 2 * pairs));
                assert!(brute_is_cycle_conformal(&h).verdict);
            }
            let t = three_path_op(g, e).unwrap();
            assert_eq!((t.n(), t.m()), (g.n() + 2, g.m() + 3));
            assert!(is_matching_covered(&t) && t.is_bipartite());
        }
    }
}

#[test]
fn trisum_and_splice_shapes() {
    let q = cube();
    let t =
        trisum(&TrisumSpec { summands: [q.clone(), q.clone(), q.clone()], cycle: [[0, 1, 3, 2]; 3], delete: vec![] })
            .unwrap();
    assert_eq!((t.n(), t.m()), (16, 28));
    assert!(t.is_bipartite() && is_matching_covered(&t));
    let s = spliced_k33();
    assert_eq!((s.graph.n(), s.graph.m()), (10, 15));
    assert!(s.graph.is_cubic() && s.graph.is_bipartite());
    assert_eq!(s.cut_edges.len(), 3);
}

#[test]
fn drawing_fixtures() {
    let ex = tight_cut_example();
    assert!(is_matching_covered(&ex.graph) && ex.graph.is_bipartite());
    assert!(is_tight_cut(&ex.graph, ex.shore).unwrap());
    assert!(!has_pm(&ex.graph, ex.graph.vertex_mask() & !ex.non_conformal_cycle.vertex_mask()));
    let h = heawood();
    assert_eq!((h.n(), h.m()), (14, 21));
    assert!(h.is_cubic() && h.is_bipartite());
    let p = petersen();
    assert_eq!((p.n(), p.m()), (10, 15));
    assert!(!brute_is_cycle_conformal(&p).verdict);
}
