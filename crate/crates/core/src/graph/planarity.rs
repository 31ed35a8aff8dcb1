//! Planarity testing by path addition (Demoucron, Malgrange and Pertuiset)
//! on each biconnected block, and Kuratowski witness extraction.
//!
//! A non-planar verdict always carries a Kuratowski subdivision found by
//! deleting edges while the graph stays non-planar. The witness is checked by
//! [`verify_kuratowski`], which knows nothing about the embedding code.

use serde::{Deserialize, Serialize};

use super::{bit, norm_edge, Bits, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 contained in some graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kuratowski {
    pub kind: KuratowskiKind,
    /// Vertices of degree at least 3 in the subdivision.
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Planarity {
    pub planar: bool,
    pub witness: Option<Kuratowski>,
}

/// Decides planarity; a `false` verdict comes with a verified witness.
pub fn is_planar(g: &Graph) -> Planarity {
    if embeddable(g) {
        return Planarity { planar: true, witness: None };
    }
    let witness = find_kuratowski_subdivision(g).expect("a non-planar graph contains a Kuratowski subdivision");
    Planarity { planar: false, witness: Some(witness) }
}

/// Shrinks `g` to an edge-minimal non-planar subgraph and returns it as a
/// verified Kuratowski subdivision, or `None` if `g` is planar.
pub fn find_kuratowski_subdivision(g: &Graph) -> Option<Kuratowski> {
    if embeddable(g) {
        return None;
    }
    let mut h = g.clone();
    for (u, v) in g.edges() {
        h.remove_edge(u, v).expect("edge taken from the graph");
        if embeddable(&h) {
            h.add_edge(u, v).expect("restoring a removed edge");
        }
    }
    let witness = verify_kuratowski(g, &h.edges());
    assert!(witness.is_some(), "edge-minimal non-planar subgraph failed Kuratowski verification");
    witness
}

/// Checks that `edges` (all present in `g`) form a subdivision of K5 or
/// K3,3, by suppressing the degree-2 vertices and inspecting the multigraph
/// left on the branch vertices.
pub fn verify_kuratowski(g: &Graph, edges: &[(usize, usize)]) -> Option<Kuratowski> {
    let mut h = Graph::new(g.n());
    for &(u, v) in edges {
        if !g.has_edge(u, v) || u == v || h.has_edge(u, v) {
            return None;
        }
        h.add_edge(u, v).ok()?;
    }
    let used: u64 = (0..h.n()).filter(|&v| h.degree(v) > 0).fold(0, |m, v| m | bit(v));
    if used == 0 || !h.is_connected_within(used) {
        return None;
    }
    let branch: Vec<usize> = Bits(used).filter(|&v| h.degree(v) >= 3).collect();
    if Bits(used).any(|v| h.degree(v) == 1) {
        return None;
    }
    let kind = match (branch.len(), branch.iter().all(|&v| h.degree(v) == 4), branch.iter().all(|&v| h.degree(v) == 3))
    {
        (5, true, _) => KuratowskiKind::K5,
        (6, _, true) => KuratowskiKind::K33,
        _ => return None,
    };
    let branch_mask = branch.iter().fold(0u64, |m, &v| m | bit(v));
    let mut visited_inner = 0u64;
    let mut links: Vec<(usize, usize)> = Vec::new();
    for &b in &branch {
        for first in h.neighbors(b) {
            let (mut prev, mut cur) = (b, first);
            while branch_mask & bit(cur) == 0 {
                visited_inner |= bit(cur);
                let next = Bits(h.neighbor_mask(cur) & !bit(prev)).next()?;
                prev = cur;
                cur = next;
            }
            if cur == b {
                return None;
            }
            if b < cur {
                links.push((b, cur));
            }
        }
    }
    if visited_inner != used & !branch_mask {
        return None;
    }
    links.sort_unstable();
    let distinct = links.windows(2).all(|w| w[0] != w[1]);
    if !distinct {
        return None;
    }
    match kind {
        KuratowskiKind::K5 => {
            if links.len() != 10 {
                return None;
            }
        }
        KuratowskiKind::K33 => {
            if links.len() != 9 {
                return None;
            }
            // the branch multigraph must be bipartite 3+3
            let a = branch[0];
            let side_b: u64 = links.iter().filter(|l| l.0 == a || l.1 == a).fold(0, |m, l| m | bit(l.0 ^ l.1 ^ a));
            if side_b.count_ones() != 3 {
                return None;
            }
            let side_a = branch_mask & !side_b;
            for &(x, y) in &links {
                let cross = (side_a & bit(x) != 0) != (side_a & bit(y) != 0);
                if !cross {
                    return None;
                }
            }
        }
    }
    let mut sorted: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| norm_edge(u, v)).collect();
    sorted.sort_unstable();
    Some(Kuratowski { kind, branch_vertices: branch, edges: sorted })
}

/// True iff `g` has a plane embedding.
pub(crate) fn embeddable(g: &Graph) -> bool {
    let n = g.n();
    let m = g.m();
    if n >= 3 && m > 3 * n - 6 {
        return false;
    }
    blocks(g).into_iter().all(|block| {
        if block.len() < 3 {
            return true;
        }
        let (h, _) = edge_subgraph(g, &block);
        embed_biconnected(&h)
    })
}

/// Graph spanned by `edges`, relabelled to dense indices.
fn edge_subgraph(g: &Graph, edges: &[(usize, usize)]) -> (Graph, Vec<usize>) {
    let mask = edges.iter().fold(0u64, |m, &(u, v)| m | bit(u) | bit(v));
    let verts: Vec<usize> = Bits(mask).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in verts.iter().enumerate() {
        index[v] = i;
    }
    let mut h = Graph::new(verts.len());
    for &(u, v) in edges {
        h.add_edge(index[u], index[v]).expect("block edges are simple");
    }
    (h, verts)
}

/// Biconnected blocks as edge lists (Tarjan's edge-stack DFS).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut State<'_>, v: usize, parent: usize) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for w in s.g.neighbors(v) {
            if s.disc[w] == 0 {
                s.stack.push((v, w));
                dfs(s, w, v);
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (v, w) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if w != parent && s.disc[w] < s.disc[v] {
                s.stack.push((v, w));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let n = g.n();
    let mut s = State { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

struct Fragment {
    attachments: u64,
    /// Path between two distinct attachment vertices through the fragment.
    path: Vec<usize>,
}

/// Path addition on a 2-connected graph with at least 3 vertices.
fn embed_biconnected(g: &Graph) -> bool {
    let n = g.n();
    if g.m() > 3 * n - 6 {
        return false;
    }
    let Some(cycle) = initial_cycle(g) else {
        return true;
    };
    let mut placed_vertices = cycle.iter().fold(0u64, |m, &v| m | bit(v));
    let mut placed = vec![0u64; n];
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        placed[u] |= bit(v);
        placed[v] |= bit(u);
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    let total = g.m();
    let mut placed_edges = faces[0].len();
    while placed_edges < total {
        let fragments = fragments(g, placed_vertices, &placed);
        let face_masks: Vec<u64> = faces.iter().map(|f| f.iter().fold(0u64, |m, &v| m | bit(v))).collect();
        let mut choice: Option<(usize, usize)> = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&f| face_masks[f] & frag.attachments == frag.attachments).collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("unplaced edges leave at least one fragment");
        let path = &fragments[fi].path;
        for w in path.windows(2) {
            placed[w[0]] |= bit(w[1]);
            placed[w[1]] |= bit(w[0]);
            placed_vertices |= bit(w[0]) | bit(w[1]);
        }
        placed_edges += path.len() - 1;
        let (a, b) = (path[0], path[path.len() - 1]);
        let old = std::mem::take(&mut faces[face]);
        let ia = old.iter().position(|&v| v == a).expect("attachment on face");
        let mut rotated = old;
        rotated.rotate_left(ia);
        let ib = rotated.iter().position(|&v| v == b).expect("attachment on face");
        let inner = &path[1..path.len() - 1];
        let mut first: Vec<usize> = rotated[..=ib].to_vec();
        first.extend(inner.iter().rev());
        let mut second: Vec<usize> = rotated[ib..].to_vec();
        second.push(a);
        second.extend(inner.iter());
        faces[face] = first;
        faces.push(second);
    }
    true
}

fn initial_cycle(g: &Graph) -> Option<Vec<usize>> {
    let a = g.neighbors(0).next()?;
    // BFS from a back to 0 avoiding the edge 0-a
    let n = g.n();
    let mut prev = vec![usize::MAX; n];
    prev[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if v == a && w == 0 {
                continue;
            }
            if prev[w] == usize::MAX {
                prev[w] = v;
                if w == 0 {
                    let mut path = vec![0];
                    let mut x = v;
                    while x != a {
                        path.push(x);
                        x = prev[x];
                    }
                    path.push(a);
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
    }
    None
}

fn fragments(g: &Graph, placed_vertices: u64, placed: &[u64]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in Bits(placed_vertices) {
        for v in Bits(g.neighbor_mask(u) & placed_vertices & !placed[u]) {
            if u < v {
                out.push(Fragment { attachments: bit(u) | bit(v), path: vec![u, v] });
            }
        }
    }
    let outside = g.vertex_mask() & !placed_vertices;
    for comp in g.components_within(outside) {
        let attachments = Bits(comp).fold(0u64, |m, v| m | g.neighbor_mask(v)) & placed_vertices;
        let a = attachments.trailing_zeros() as usize;
        let start = (g.neighbor_mask(a) & comp).trailing_zeros() as usize;
        let mut prev = vec![usize::MAX; g.n()];
        prev[start] = start;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            let exits = g.neighbor_mask(v) & attachments & !bit(a);
            if exits != 0 {
                end = Some((v, exits.trailing_zeros() as usize));
                break;
            }
            for w in Bits(g.neighbor_mask(v) & comp) {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let (last, b) = end.expect("fragments of a 2-connected graph have two attachments");
        let mut inner = vec![last];
        let mut x = last;
        while x != start {
            x = prev[x];
            inner.push(x);
        }
        inner.reverse();
        let mut path = vec![a];
        path.extend(inner);
        path.push(b);
        out.push(Fragment { attachments, path });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new(6);
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    #[test]
    fn small_verdicts() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_planar(&c4).planar);
        assert!(is_planar(&complete(4)).planar);
        let k5 = is_planar(&complete(5));
        assert!(!k5.planar);
        assert_eq!(k5.witness.unwrap().kind, KuratowskiKind::K5);
    }

    #[test]
    fn k33_witness_is_itself() {
        let g = k33();
        let p = is_planar(&g);
        assert!(!p.planar);
        let w = p.witness.unwrap();
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert_eq!(w.edges, g.edges());
    }

    #[test]
    fn verifier_rejects_non_subdivisions() {
        let g = complete(5);
        let mut edges = g.edges();
        edges.pop();
        assert!(verify_kuratowski(&g, &edges).is_none());
        assert!(verify_kuratowski(&g, &[(0, 1), (1, 2), (2, 0)]).is_none());
        // K5 edges do not form a K3,3 and vice versa
        assert_eq!(verify_kuratowski(&g, &g.edges()).unwrap().kind, KuratowskiKind::K5);
    }

    #[test]
    fn subdivided_k33_is_detected() {
        let mut g = Graph::new(8);
        for a in 0..3 {
            for b in 3..6 {
                if (a, b) != (0, 3) && (a, b) != (1, 4) {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        g.add_edge(0, 6).unwrap();
        g.add_edge(6, 3).unwrap();
        g.add_edge(1, 7).unwrap();
        g.add_edge(7, 4).unwrap();
        let w = is_planar(&g).witness.unwrap();
        assert_eq!(w.kind, KuratowskiKind::K33);
        assert_eq!(w.edges.len(), 11);
    }

    #[test]
    fn planar_with_cut_vertices() {
        // two K4s sharing a vertex plus a pendant path
        let mut g = Graph::new(9);
        for (u, v) in complete(4).edges() {
            g.add_edge(u, v).unwrap();
            g.add_edge(u + 3, v + 3).unwrap();
        }
        g.add_edge(6, 7).unwrap();
        g.add_edge(7, 8).unwrap();
        assert!(is_planar(&g).planar);
    }
}
