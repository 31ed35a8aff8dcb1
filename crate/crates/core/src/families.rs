//! Named graphs and graph operations.
//!
//! Ladder-type graphs use `u_i -> i - 1` and `v_i -> k + i - 1` for
//! `i = 1..=k`. Wheels put the hub last.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, Cycle, Graph};

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter(format!("cycle length must be at least 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edges(n, &edges)?.with_name(format!("C{n}")))
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("path needs at least one vertex".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_edges(n, &edges)?.with_name(format!("P{n}")))
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::try_new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g.with_name(format!("K{n}")))
}

/// `K_{s,t}` with whites `0..s` and blacks `s..s+t`.
pub fn complete_bipartite(s: usize, t: usize) -> Result<Graph> {
    if s == 0 || t == 0 {
        return Err(Error::Parameter("both sides of a complete bipartite graph must be non-empty".into()));
    }
    let mut g = Graph::try_new(s + t)?;
    for a in 0..s {
        for b in s..s + t {
            g.add_edge(a, b)?;
        }
    }
    Ok(g.with_name(format!("K{s},{t}")))
}

/// The 3-cube, vertices labelled by their coordinates as binary numbers.
pub fn cube() -> Graph {
    let mut g = Graph::new(8);
    for v in 0..8 {
        for d in 0..3 {
            let w = v ^ (1 << d);
            if v < w {
                g.add_edge(v, w).unwrap();
            }
        }
    }
    g.with_name("Q3")
}

fn ladder_edges(k: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push((i, k + i));
        if i + 1 < k {
            edges.push((i, i + 1));
            edges.push((k + i, k + i + 1));
        }
    }
    edges
}

/// Ladder with `k` rungs `u_i v_i` and rails `u_i u_{i+1}`, `v_i v_{i+1}`.
pub fn ladder(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::Parameter("ladder needs at least one rung".into()));
    }
    Ok(Graph::from_edges(2 * k, &ladder_edges(k))?.with_name(format!("L{k}")))
}

/// Ladder plus `u_1 v_k` and `v_1 u_k`.
pub fn moebius_ladder(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::Parameter(format!("Moebius ladder needs k >= 3, got {k}")));
    }
    let mut edges = ladder_edges(k);
    edges.push((0, 2 * k - 1));
    edges.push((k, k - 1));
    Ok(Graph::from_edges(2 * k, &edges)?.with_name(format!("M{k}")))
}

/// Ladder plus `u_1 u_k` and `v_1 v_k`, for odd `k`.
pub fn odd_prism(k: usize) -> Result<Graph> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::Parameter(format!("odd prism needs odd k >= 3, got {k}")));
    }
    let mut edges = ladder_edges(k);
    edges.push((0, k - 1));
    edges.push((k, 2 * k - 1));
    Ok(Graph::from_edges(2 * k, &edges)?.with_name(format!("prism{k}")))
}

fn wheel(len: usize) -> Result<Graph> {
    let mut g = cycle(len)?;
    let hub = g.add_vertex()?;
    for v in 0..len {
        g.add_edge(v, hub)?;
    }
    Ok(g.with_name(format!("W{len}")))
}

pub fn odd_wheel(cycle_len: usize) -> Result<Graph> {
    if cycle_len < 3 || cycle_len % 2 == 0 {
        return Err(Error::Parameter(format!("odd wheel needs an odd rim of length >= 3, got {cycle_len}")));
    }
    wheel(cycle_len)
}

pub fn even_wheel(cycle_len: usize) -> Result<Graph> {
    if cycle_len < 4 || cycle_len % 2 == 1 {
        return Err(Error::Parameter(format!("even wheel needs an even rim of length >= 4, got {cycle_len}")));
    }
    wheel(cycle_len)
}

/// Heawood graph: the 14-cycle `1..14` with chords 1-6, 2-11, 3-8, 4-13,
/// 5-10, 7-12, 9-14, shifted to `0..14`. Odd labels (even indices) form one
/// colour class.
pub fn heawood() -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
    for (a, b) in [(1, 6), (2, 11), (3, 8), (4, 13), (5, 10), (7, 12), (9, 14)] {
        edges.push((a - 1, b - 1));
    }
    Graph::from_edges(14, &edges).unwrap().with_name("Heawood")
}

/// Petersen graph: inner pentagram on `V1..V5` (1-3, 1-4, 2-4, 2-5, 3-5),
/// outer cycle `V6..V10`, spokes `Vi V(i+5)`; `Vi -> i - 1`.
pub fn petersen() -> Graph {
    let mut edges = vec![(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)];
    edges.extend([(6, 7), (7, 8), (8, 9), (9, 10), (10, 6)]);
    edges.extend((1..=5).map(|i| (i, i + 5)));
    let edges: Vec<_> = edges.into_iter().map(|(a, b)| (a - 1, b - 1)).collect();
    Graph::from_edges(10, &edges).unwrap().with_name("Petersen")
}

/// Two copies `H1`, `H2` of `K_{l,l}` glued along a complete bipartite join.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GluedKll {
    pub l: usize,
    pub graph: Graph,
    /// The vertices coming from `H1`.
    pub shore: u64,
    /// The joining edges, i.e. the cut around `shore`.
    pub cut_edges: Vec<(usize, usize)>,
    /// A non-conformal even cycle; needs `l >= 4`.
    pub witness: Option<Cycle>,
}

impl GluedKll {
    /// Index of the white vertex `w_i^j` (`i` is 1-based, `j` is 1 or 2).
    pub fn white(&self, i: usize, j: usize) -> usize {
        glued_white(self.l, i, j)
    }

    /// Index of the black vertex `b_i^j`.
    pub fn black(&self, i: usize, j: usize) -> usize {
        glued_black(self.l, i, j)
    }
}

// H1: whites w_1..w_l, blacks b_1..b_{l-1} (b_l deleted).
// H2: whites w_1..w_{l-1} (w_l deleted), blacks b_1..b_l.
fn glued_white(l: usize, i: usize, j: usize) -> usize {
    match j {
        1 => {
            assert!((1..=l).contains(&i));
            i - 1
        }
        2 => {
            assert!((1..l).contains(&i));
            2 * l - 1 + i - 1
        }
        _ => panic!("copy index must be 1 or 2"),
    }
}

fn glued_black(l: usize, i: usize, j: usize) -> usize {
    match j {
        1 => {
            assert!((1..l).contains(&i));
            l + i - 1
        }
        2 => {
            assert!((1..=l).contains(&i));
            3 * l - 2 + i - 1
        }
        _ => panic!("copy index must be 1 or 2"),
    }
}

/// Delete the black vertex `b_l` of `H1` and the white vertex `w_l` of
/// `H2`, then join every white vertex of `H1` to every black vertex of `H2`.
/// The cut of joining edges is tight and both of its contractions are
/// `K_{l,l}`.
pub fn glued_kll(l: usize) -> Result<GluedKll> {
    if l < 3 {
        return Err(Error::Parameter(format!("glued K_l,l needs l >= 3, got {l}")));
    }
    let (w, b) = (|i, j| glued_white(l, i, j), |i, j| glued_black(l, i, j));
    let mut g = Graph::try_new(4 * l - 2)?;
    for i in 1..=l {
        for k in 1..l {
            g.add_edge(w(i, 1), b(k, 1))?;
            g.add_edge(w(k, 2), b(i, 2))?;
        }
    }
    let mut cut_edges = Vec::new();
    for i in 1..=l {
        for k in 1..=l {
            g.add_edge(w(i, 1), b(k, 2))?;
            cut_edges.push((w(i, 1), b(k, 2)));
        }
    }
    cut_edges.sort_unstable();
    let witness = (l >= 4).then(|| {
        let seq = vec![
            b(1, 1),
            w(1, 1),
            b(1, 2),
            w(1, 2),
            b(l - 1, 2),
            w(l - 1, 1),
            b(l - 1, 1),
            w(l, 1),
            b(l, 2),
            w(l - 1, 2),
            b(2, 2),
            w(2, 1),
        ];
        Cycle::new(&g, seq).expect("witness is a cycle of the glued graph")
    });
    let shore = (0..2 * l - 1).fold(0, |m, v| m | bit(v));
    Ok(GluedKll { l, graph: g.with_name(format!("glued-K{l},{l}")), shore, cut_edges, witness })
}

/// A planar bipartite matching covered graph on eight vertices with a
/// nontrivial tight cut; all of its braces are `C4`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TightCutExample {
    pub graph: Graph,
    /// Shore `{A0, A1, B0}` of the designated tight cut.
    pub shore: u64,
    /// The even cycle `A0 B1 A1 B2 A2 B3`, which is not conformal.
    pub non_conformal_cycle: Cycle,
}

/// Whites `A0..A3 -> 0..3`, blacks `B0..B3 -> 4..7`.
pub fn tight_cut_example() -> TightCutExample {
    let (a, b) = (|i: usize| i, |i: usize| 4 + i);
    let pairs = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 1), (3, 3)];
    let edges: Vec<_> = pairs.iter().map(|&(i, j)| (a(i), b(j))).collect();
    let graph = Graph::from_edges(8, &edges).unwrap().with_name("tight-cut-example");
    let non_conformal_cycle = Cycle::new(&graph, vec![a(0), b(1), a(1), b(2), a(2), b(3)]).unwrap();
    TightCutExample { shore: bit(a(0)) | bit(a(1)) | bit(b(0)), graph, non_conformal_cycle }
}

/// Replace `e` by a path with `2 * pairs` new internal vertices.
pub fn bisubdivide(g: &Graph, e: (usize, usize), pairs: usize) -> Result<Graph> {
    let (u, v) = e;
    if !g.has_edge(u, v) {
        return Err(Error::EdgeAbsent(u, v));
    }
    let mut h = g.clone();
    if pairs == 0 {
        return Ok(h);
    }
    h.remove_edge(u, v)?;
    let mut prev = u;
    for _ in 0..2 * pairs {
        let x = h.add_vertex()?;
        h.add_edge(prev, x)?;
        prev = x;
    }
    h.add_edge(prev, v)?;
    Ok(h)
}

/// Add new vertices `x1`, `x2` and the path `u x1 x2 v`, keeping `uv`.
pub fn three_path_op(g: &Graph, e: (usize, usize)) -> Result<Graph> {
    let (u, v) = e;
    if !g.has_edge(u, v) {
        return Err(Error::EdgeAbsent(u, v));
    }
    let mut h = g.clone();
    let x1 = h.add_vertex()?;
    let x2 = h.add_vertex()?;
    h.add_edge(u, x1)?;
    h.add_edge(x1, x2)?;
    h.add_edge(x2, v)?;
    Ok(h)
}

/// Three graphs sharing a 4-cycle, and the cycle edges to drop.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrisumSpec {
    pub summands: [Graph; 3],
    /// For each summand, the vertices of the shared cycle in cycle order;
    /// position `i` in every summand is the same vertex of the result.
    pub cycle: [[usize; 4]; 3],
    /// Indices `i` of cycle edges `c_i c_{i+1}` to delete.
    pub delete: Vec<usize>,
}

/// Union of the three summands identified along the cycle, minus the
/// deleted cycle edges. The cycle becomes vertices `0..4`; the remaining
/// vertices of each summand follow in summand order.
pub fn trisum(spec: &TrisumSpec) -> Result<Graph> {
    if let Some(&i) = spec.delete.iter().find(|&&i| i >= 4) {
        return Err(Error::InvalidTrisum(format!("cycle edge index {i} out of range")));
    }
    let mut maps = Vec::with_capacity(3);
    let mut next = 4;
    for (s, (g, c)) in spec.summands.iter().zip(&spec.cycle).enumerate() {
        for (i, &v) in c.iter().enumerate() {
            if v >= g.n() {
                return Err(Error::InvalidTrisum(format!("summand {s}: vertex {v} out of range")));
            }
            if c[..i].contains(&v) {
                return Err(Error::InvalidTrisum(format!("summand {s}: repeated cycle vertex {v}")));
            }
        }
        for i in 0..4 {
            if !g.has_edge(c[i], c[(i + 1) % 4]) {
                return Err(Error::InvalidTrisum(format!("summand {s}: {}{} is not an edge", c[i], c[(i + 1) % 4])));
            }
        }
        if g.n() <= 4 {
            return Err(Error::InvalidTrisum(format!("summand {s} has no vertex outside the cycle")));
        }
        let mut map = vec![usize::MAX; g.n()];
        for (i, &v) in c.iter().enumerate() {
            map[v] = i;
        }
        for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
            *slot = next;
            next += 1;
        }
        maps.push(map);
    }
    let mut h = Graph::try_new(next)?;
    for (g, map) in spec.summands.iter().zip(&maps) {
        for (u, v) in g.edges() {
            let (a, b) = (map[u], map[v]);
            if a < 4 && b < 4 && (a + 2) % 4 == b {
                return Err(Error::InvalidTrisum("a summand has a chord of the shared cycle".into()));
            }
            h.add_edge(a, b)?;
        }
    }
    for &i in &spec.delete {
        let (a, b) = (i, (i + 1) % 4);
        if h.has_edge(a, b) {
            h.remove_edge(a, b)?;
        }
    }
    Ok(h)
}

/// A spliced graph with the cut between its two parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Splice {
    pub graph: Graph,
    /// Vertices coming from the first graph.
    pub shore: u64,
    pub cut_edges: Vec<(usize, usize)>,
}

/// Delete `v1` from `g1` and `v2` from `g2` and join their former
/// neighbours along `pairing` (pairs of a `g1` neighbour and a `g2`
/// neighbour). `g1 - v1` keeps its order as vertices `0..n1-1`, `g2 - v2`
/// follows.
pub fn splice(g1: &Graph, v1: usize, g2: &Graph, v2: usize, pairing: &[(usize, usize)]) -> Result<Splice> {
    for (g, v) in [(g1, v1), (g2, v2)] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if g1.degree(v1) != g2.degree(v2) {
        return Err(Error::InvalidSplice(format!("degrees differ: {} vs {}", g1.degree(v1), g2.degree(v2))));
    }
    let (left, lmap) = g1.remove_vertices(bit(v1));
    let (right, rmap) = g2.remove_vertices(bit(v2));
    let mut h = left.disjoint_union(&right)?;
    let offset = left.n();
    let (mut seen1, mut seen2) = (0u64, 0u64);
    let mut cut_edges = Vec::new();
    for &(a, b) in pairing {
        if !g1.has_edge(a, v1) || !g2.has_edge(b, v2) {
            return Err(Error::InvalidSplice(format!("pair ({a}, {b}) is not a pair of neighbours")));
        }
        if seen1 & bit(a) != 0 || seen2 & bit(b) != 0 {
            return Err(Error::InvalidSplice(format!("pair ({a}, {b}) repeats a neighbour")));
        }
        seen1 |= bit(a);
        seen2 |= bit(b);
        let x = lmap.iter().position(|&o| o == a).unwrap();
        let y = offset + rmap.iter().position(|&o| o == b).unwrap();
        h.add_edge(x, y)?;
        cut_edges.push((x, y));
    }
    if pairing.len() != g1.degree(v1) {
        return Err(Error::InvalidSplice("pairing is not a bijection of the neighbourhoods".into()));
    }
    cut_edges.sort_unstable();
    Ok(Splice { graph: h, shore: (0..offset).fold(0, |m, v| m | bit(v)), cut_edges })
}
