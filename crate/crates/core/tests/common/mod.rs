//! Independent brute-force oracles and fixtures shared by the integration
//! tests. Nothing here calls the crate's matching, cycle or tight-cut code.

#![allow(dead_code)]

use std::collections::HashMap;

use ccgraph::families::*;
use ccgraph::graph::io::read_graphs;
use ccgraph::Graph;

pub fn mask_bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Perfect matching of the subgraph induced on `mask`, by trying every
/// partner of the least vertex.
pub fn brute_pm(g: &Graph, mask: u64, memo: &mut HashMap<u64, bool>) -> bool {
    if mask == 0 {
        return true;
    }
    if mask.count_ones() % 2 == 1 {
        return false;
    }
    if let Some(&r) = memo.get(&mask) {
        return r;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let r = mask_bits(rest).into_iter().any(|w| g.has_edge(v, w) && brute_pm(g, rest & !(1 << w), memo));
    memo.insert(mask, r);
    r
}

pub fn has_pm(g: &Graph, mask: u64) -> bool {
    brute_pm(g, mask, &mut HashMap::new())
}

/// Every perfect matching as a list of edges.
pub fn all_pms(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    fn go(g: &Graph, mask: u64, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if mask == 0 {
            out.push(cur.clone());
            return;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        for w in mask_bits(rest) {
            if g.has_edge(v, w) {
                cur.push((v, w));
                go(g, rest & !(1 << w), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if g.n() % 2 == 0 {
        go(g, g.vertex_mask(), &mut Vec::new(), &mut out);
    }
    out
}

/// Tightness by checking every perfect matching crosses exactly once.
pub fn tight_by_enumeration(shore: u64, pms: &[Vec<(usize, usize)>]) -> bool {
    pms.iter().all(|m| m.iter().filter(|&&(u, v)| ((shore >> u) ^ (shore >> v)) & 1 == 1).count() == 1)
}

/// Vertex sets that carry a cycle, by Held-Karp style path extension from
/// the least vertex of each set. Returns a bit per mask.
pub fn cycle_vertex_sets(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut has_cycle = vec![false; 1 << n];
    for s in 0..n {
        // reach[mask] = vertices v such that a path from s through exactly
        // mask ends at v; masks use only vertices >= s
        // built one path length at a time, so every mask is complete before
        // it is extended
        let mut reach: HashMap<u64, u64> = HashMap::new();
        let mut layer: HashMap<u64, u64> = HashMap::from([(1u64 << s, 1u64 << s)]);
        while !layer.is_empty() {
            let mut next_layer: HashMap<u64, u64> = HashMap::new();
            for (&mask, &ends) in &layer {
                for v in mask_bits(ends) {
                    for w in (s + 1)..n {
                        if mask >> w & 1 == 0 && g.has_edge(v, w) {
                            *next_layer.entry(mask | 1 << w).or_insert(0) |= 1 << w;
                        }
                    }
                }
            }
            reach.extend(layer);
            layer = next_layer;
        }
        for (&mask, &ends) in &reach {
            if mask.count_ones() >= 3 && mask_bits(ends).into_iter().any(|v| v != s && g.has_edge(v, s)) {
                has_cycle[mask as usize] = true;
            }
        }
    }
    has_cycle
}

/// Second cycle-conformality oracle: every even vertex set that carries a
/// cycle leaves a matchable remainder.
pub fn cycle_conformal_by_subsets(g: &Graph) -> bool {
    let all = g.vertex_mask();
    let mut memo = HashMap::new();
    if !brute_pm(g, all, &mut memo) {
        return false;
    }
    let sets = cycle_vertex_sets(g);
    sets.iter()
        .enumerate()
        .all(|(mask, &c)| !c || (mask as u64).count_ones() % 2 == 1 || brute_pm(g, all & !(mask as u64), &mut memo))
}

/// Odd-cycle version of the subset oracle.
pub fn odd_cycle_conformal_by_subsets(g: &Graph) -> bool {
    let all = g.vertex_mask();
    let mut memo = HashMap::new();
    let sets = cycle_vertex_sets(g);
    sets.iter()
        .enumerate()
        .all(|(mask, &c)| !c || (mask as u64).count_ones() % 2 == 0 || brute_pm(g, all & !(mask as u64), &mut memo))
}

/// Permanent by Laplace expansion along the first row.
pub fn permanent(a: &[Vec<u8>]) -> u128 {
    fn go(a: &[Vec<u8>], row: usize, used: u64) -> u128 {
        if row == a.len() {
            return 1;
        }
        (0..a.len()).filter(|&j| used >> j & 1 == 0 && a[row][j] == 1).map(|j| go(a, row + 1, used | 1 << j)).sum()
    }
    go(a, 0, 0)
}

/// Biadjacency matrix (whites by blacks) of a balanced bipartite graph.
pub fn biadjacency(g: &Graph) -> Option<Vec<Vec<u8>>> {
    let p = g.bipartition()?;
    let (w, b) = (p.white_vertices(), p.black_vertices());
    (w.len() == b.len()).then(|| w.iter().map(|&x| b.iter().map(|&y| u8::from(g.has_edge(x, y))).collect()).collect())
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
    fn go(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: u64) -> bool {
        let k = map.len();
        if k == a.n() {
            return true;
        }
        for t in 0..b.n() {
            if used >> t & 1 == 1 || a.degree(k) != b.degree(t) {
                continue;
            }
            if (0..k).all(|i| a.has_edge(i, k) == b.has_edge(map[i], t)) {
                map.push(t);
                if go(a, b, map, used | 1 << t) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    a.n() == b.n() && a.m() == b.m() && go(a, b, &mut Vec::new(), 0)
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Connected cubic bipartite graphs on 6 to 14 vertices.
pub fn cubic_bipartite_fixtures() -> Vec<Graph> {
    read_graphs(&fixture("cubic_bipartite_upto14.g6")).unwrap()
}

/// Connected 4-regular bipartite graphs on 8 to 12 vertices.
pub fn quartic_bipartite_fixtures() -> Vec<Graph> {
    read_graphs(&fixture("quartic_bipartite_upto12.g6")).unwrap()
}

pub fn k33() -> Graph {
    complete_bipartite(3, 3).unwrap()
}

/// Two copies of `K_{3,3}` spliced at a white and a black vertex.
pub fn spliced_k33() -> Splice {
    splice(&k33(), 0, &k33(), 3, &[(3, 0), (4, 1), (5, 2)]).unwrap()
}

/// Cubic bipartite graphs built by splicing `K_{3,3}` and the small fixture
/// graphs in a few different ways.
pub fn spliced_cubic_fixtures() -> Vec<Graph> {
    let mut out = vec![spliced_k33().graph];
    let s = spliced_k33().graph;
    let sn: Vec<usize> = s.neighbors(0).collect();
    let twice = splice(&s, 0, &k33(), 3, &[(sn[0], 0), (sn[1], 1), (sn[2], 2)]).unwrap();
    out.push(twice.graph);
    let k = k33();
    out.push(splice(&k, 0, &k, 3, &[(3, 2), (4, 0), (5, 1)]).unwrap().graph);
    let h = heawood();
    let hn: Vec<usize> = h.neighbors(1).collect();
    out.push(splice(&k, 0, &h, 1, &[(3, hn[0]), (4, hn[1]), (5, hn[2])]).unwrap().graph);
    out
}

/// Named graphs used throughout the tests.
pub fn named_corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("C4".into(), cycle(4).unwrap()),
        ("C6".into(), cycle(6).unwrap()),
        ("C8".into(), cycle(8).unwrap()),
        ("K3,3".into(), k33()),
        ("K4,4".into(), complete_bipartite(4, 4).unwrap()),
        ("K4".into(), complete(4).unwrap()),
        ("K6".into(), complete(6).unwrap()),
        ("Q3".into(), cube()),
        ("heawood".into(), heawood()),
        ("petersen".into(), petersen()),
        ("tight-cut-example".into(), tight_cut_example().graph),
        ("glued-K3,3".into(), glued_kll(3).unwrap().graph),
        ("spliced-K3,3".into(), spliced_k33().graph),
    ];
    for k in 2..=6 {
        out.push((format!("L{k}"), ladder(k).unwrap()));
    }
    for k in 3..=7 {
        out.push((format!("M{k}"), moebius_ladder(k).unwrap()));
    }
    for k in [3, 5] {
        out.push((format!("prism{k}"), odd_prism(k).unwrap()));
        out.push((format!("odd-wheel{k}"), odd_wheel(k).unwrap()));
    }
    let c4 = cycle(4).unwrap();
    out.push(("three-path-C4".into(), three_path_op(&c4, (0, 1)).unwrap()));
    let mut p4_cycle = path(4).unwrap();
    // a four-cycle hanging off a matchable path: not matching covered
    let base = p4_cycle.n();
    for _ in 0..4 {
        p4_cycle.add_vertex().unwrap();
    }
    for i in 0..4 {
        p4_cycle.add_edge(base + i, base + (i + 1) % 4).unwrap();
    }
    p4_cycle.add_edge(3, base).unwrap();
    out.push(("P4-with-C4".into(), p4_cycle));
    let mut two_c6 = cycle(6).unwrap().disjoint_union(&cycle(6).unwrap()).unwrap();
    two_c6.add_edge(0, 6).unwrap();
    out.push(("C6-bridge-C6".into(), two_c6));
    out
}
