//! Perfect matchings: existence, enumeration, counting, the cover graph,
//! k-extendability and factor-criticality.
//!
//! Existence queries run on a vertex mask of a host graph so callers can ask
//! about `G - X` without building a new graph. Bipartite subgraphs use
//! augmenting paths on the colour classes; everything else goes through
//! Edmonds' blossom algorithm.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, two_colouring, Bits, Graph, Matching};

const NONE: usize = usize::MAX;

/// A perfect matching of `g`, if one exists.
pub fn has_perfect_matching(g: &Graph) -> Option<Matching> {
    perfect_matching_within(g, g.vertex_mask()).map(|mate| Matching::from_mates(&mate))
}

/// Mate array of a perfect matching of the subgraph induced on `alive`.
/// Vertices outside `alive` are left at `usize::MAX`.
pub fn perfect_matching_within(g: &Graph, alive: u64) -> Option<Vec<usize>> {
    let alive = alive & g.vertex_mask();
    if alive.count_ones() % 2 == 1 {
        return None;
    }
    let mate = match two_colouring(g, alive) {
        Some(white) => bipartite_matching(g, alive, white),
        None => blossom_matching(g, alive),
    };
    Bits(alive).all(|v| mate[v] != NONE).then_some(mate)
}

pub fn has_perfect_matching_within(g: &Graph, alive: u64) -> bool {
    perfect_matching_within(g, alive).is_some()
}

/// Whether some perfect matching of `g` contains `uv`: remove both ends and
/// solve the rest.
pub fn edge_in_perfect_matching(g: &Graph, u: usize, v: usize) -> bool {
    g.has_edge(u, v) && has_perfect_matching_within(g, g.vertex_mask() & !bit(u) & !bit(v))
}

/// Size of a maximum matching of `g`.
pub fn maximum_matching(g: &Graph) -> Matching {
    let alive = g.vertex_mask();
    let mate = match two_colouring(g, alive) {
        Some(white) => bipartite_matching(g, alive, white),
        None => blossom_matching(g, alive),
    };
    Matching::from_mates(&mate)
}

fn bipartite_matching(g: &Graph, alive: u64, white: u64) -> Vec<usize> {
    fn augment(g: &Graph, alive: u64, w: usize, seen: &mut u64, mate: &mut [usize]) -> bool {
        for b in Bits(g.neighbor_mask(w) & alive & !*seen) {
            *seen |= bit(b);
            if mate[b] == NONE || augment(g, alive, mate[b], seen, mate) {
                mate[w] = b;
                mate[b] = w;
                return true;
            }
        }
        false
    }
    let mut mate = vec![NONE; g.n()];
    // greedy start
    for w in Bits(alive & white) {
        if let Some(b) = Bits(g.neighbor_mask(w) & alive).find(|&b| mate[b] == NONE) {
            mate[w] = b;
            mate[b] = w;
        }
    }
    for w in Bits(alive & white) {
        if mate[w] == NONE {
            let mut seen = 0u64;
            augment(g, alive, w, &mut seen, &mut mate);
        }
    }
    mate
}

/// Edmonds' blossom algorithm (BFS with blossom contraction via base
/// pointers), restricted to `alive`.
fn blossom_matching(g: &Graph, alive: u64) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    for v in Bits(alive) {
        if mate[v] == NONE {
            if let Some(w) = Bits(g.neighbor_mask(v) & alive).find(|&w| mate[w] == NONE) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut search = Blossom { g, alive, parent: vec![NONE; n], base: (0..n).collect(), used: 0, blossom: 0 };
    for root in Bits(alive) {
        if mate[root] != NONE {
            continue;
        }
        if let Some(mut v) = search.find_path(root, &mate) {
            while v != NONE {
                let pv = search.parent[v];
                let ppv = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = ppv;
            }
        }
    }
    mate
}

struct Blossom<'a> {
    g: &'a Graph,
    alive: u64,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: u64,
    blossom: u64,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize, mate: &[usize]) -> usize {
        let mut seen = 0u64;
        loop {
            a = self.base[a];
            seen |= bit(a);
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen & bit(b) != 0 {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, mate: &[usize]) {
        while self.base[v] != b {
            self.blossom |= bit(self.base[v]) | bit(self.base[mate[v]]);
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    /// Returns the free endpoint of an augmenting path from `root`.
    fn find_path(&mut self, root: usize, mate: &[usize]) -> Option<usize> {
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used = bit(root);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for to in Bits(self.g.neighbor_mask(v) & self.alive) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(v, to, mate);
                    self.blossom = 0;
                    self.mark_path(v, cur, to, mate);
                    self.mark_path(to, cur, v, mate);
                    for i in Bits(self.alive) {
                        if self.blossom & bit(self.base[i]) != 0 {
                            self.base[i] = cur;
                            if self.used & bit(i) == 0 {
                                self.used |= bit(i);
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used |= bit(next);
                    queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Lazy stream of all perfect matchings, in lexicographic order of their
/// sorted edge lists.
pub fn enumerate_perfect_matchings(g: &Graph) -> PerfectMatchings<'_> {
    let alive = g.vertex_mask();
    let start = has_perfect_matching_within(g, alive);
    PerfectMatchings { g, unmatched: alive, edges: Vec::new(), stack: Vec::new(), started: false, exhausted: !start }
}

pub struct PerfectMatchings<'a> {
    g: &'a Graph,
    unmatched: u64,
    edges: Vec<(usize, usize)>,
    /// Per chosen edge: the vertex matched and its untried partners.
    stack: Vec<(usize, u64)>,
    started: bool,
    exhausted: bool,
}

impl PerfectMatchings<'_> {
    fn viable_partners(&self, v: usize) -> u64 {
        let rest = self.unmatched & !bit(v);
        Bits(self.g.neighbor_mask(v) & rest)
            .filter(|&w| has_perfect_matching_within(self.g, rest & !bit(w)))
            .fold(0, |m, w| m | bit(w))
    }

    /// Descends greedily from the current state to the next complete matching.
    fn descend(&mut self) {
        while self.unmatched != 0 {
            let v = self.unmatched.trailing_zeros() as usize;
            let partners = self.viable_partners(v);
            debug_assert!(partners != 0, "pruned search never reaches a dead end");
            self.stack.push((v, partners));
            self.advance_top();
        }
    }

    fn advance_top(&mut self) {
        let (v, partners) = self.stack.last_mut().expect("non-empty stack");
        let w = partners.trailing_zeros() as usize;
        *partners &= !bit(w);
        let v = *v;
        self.edges.push((v, w));
        self.unmatched &= !bit(v) & !bit(w);
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.exhausted {
            return None;
        }
        if !self.started {
            self.started = true;
        } else {
            loop {
                let Some(&(_, partners)) = self.stack.last() else {
                    self.exhausted = true;
                    return None;
                };
                let (v, w) = self.edges.pop().expect("one edge per stack frame");
                self.unmatched |= bit(v) | bit(w);
                if partners == 0 {
                    self.stack.pop();
                    continue;
                }
                self.advance_top();
                break;
            }
        }
        self.descend();
        Some(Matching::from_sorted_unchecked(self.edges.clone()))
    }
}

/// Number of perfect matchings, by memoized expansion along the least
/// unmatched vertex.
pub fn count_perfect_matchings(g: &Graph) -> u128 {
    fn count(g: &Graph, mask: u64, memo: &mut HashMap<u64, u128>) -> u128 {
        if mask == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&mask) {
            return c;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !bit(v);
        let total = Bits(g.neighbor_mask(v) & rest).map(|w| count(g, rest & !bit(w), memo)).sum();
        memo.insert(mask, total);
        total
    }
    if g.n() % 2 == 1 {
        return 0;
    }
    count(g, g.vertex_mask(), &mut HashMap::new())
}

/// Edges lying in some perfect matching, with the components they span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverGraph {
    pub allowed: Vec<(usize, usize)>,
    /// Vertex masks of the connected components of the allowed subgraph,
    /// ordered by least vertex.
    pub components: Vec<u64>,
}

impl CoverGraph {
    pub fn excluded(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges().into_iter().filter(|e| self.allowed.binary_search(e).is_err()).collect()
    }

    /// The allowed subgraph on the same vertex set.
    pub fn graph(&self, g: &Graph) -> Graph {
        Graph::from_edges(g.n(), &self.allowed).expect("allowed edges come from g")
    }

    /// Each component of the allowed subgraph as a graph of its own (allowed
    /// edges only), with the host index of every vertex.
    pub fn component_graphs(&self, g: &Graph) -> Vec<(Graph, Vec<usize>)> {
        let cov = self.graph(g);
        self.components.iter().map(|&c| cov.induced(c)).collect()
    }
}

/// The cover graph of `g`.
///
/// Bipartite graphs use the alternating-cycle criterion: with a perfect
/// matching `M` oriented black to white and the other edges white to black,
/// an edge outside `M` lies in a perfect matching iff its ends share a
/// strongly connected component. Other graphs re-solve per edge.
pub fn cover_graph(g: &Graph) -> Result<CoverGraph> {
    let mate = perfect_matching_within(g, g.vertex_mask()).ok_or(Error::NotMatchable)?;
    let allowed: Vec<(usize, usize)> = match g.bipartition() {
        Some(parts) => {
            let scc = alternating_components(g, parts.white, &mate);
            g.edges().into_iter().filter(|&(u, v)| mate[u] == v || scc[u] == scc[v]).collect()
        }
        None => g.edges().into_iter().filter(|&(u, v)| mate[u] == v || edge_in_perfect_matching(g, u, v)).collect(),
    };
    Ok(finish_cover(g, allowed))
}

/// Cover graph by re-solving `g - u - v` for every edge.
pub fn cover_graph_per_edge(g: &Graph) -> Result<CoverGraph> {
    if !has_perfect_matching_within(g, g.vertex_mask()) {
        return Err(Error::NotMatchable);
    }
    let allowed = g.edges().into_iter().filter(|&(u, v)| edge_in_perfect_matching(g, u, v)).collect();
    Ok(finish_cover(g, allowed))
}

fn finish_cover(g: &Graph, allowed: Vec<(usize, usize)>) -> CoverGraph {
    let cov = Graph::from_edges(g.n(), &allowed).expect("allowed edges come from g");
    CoverGraph { components: cov.components(), allowed }
}

/// Strongly connected component ids of the matching-oriented digraph.
fn alternating_components(g: &Graph, white: u64, mate: &[usize]) -> Vec<usize> {
    let n = g.n();
    let out = |v: usize| -> u64 {
        if white & bit(v) != 0 {
            g.neighbor_mask(v) & !bit(mate[v])
        } else {
            bit(mate[v])
        }
    };
    let reach = |s: usize| -> u64 {
        let mut seen = bit(s);
        let mut frontier = bit(s);
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= out(v);
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        seen
    };
    let fwd: Vec<u64> = (0..n).map(reach).collect();
    let mut id = vec![NONE; n];
    let mut next_id = 0;
    for v in 0..n {
        if id[v] != NONE {
            continue;
        }
        for w in Bits(fwd[v]) {
            if fwd[w] & bit(v) != 0 {
                id[w] = next_id;
            }
        }
        next_id += 1;
    }
    id
}

/// At least four vertices, connected, and every edge in a perfect matching.
pub fn is_matching_covered(g: &Graph) -> bool {
    if g.n() < 4 || g.n() % 2 == 1 || !g.is_connected() {
        return false;
    }
    match cover_graph(g) {
        Ok(cov) => cov.allowed.len() == g.m(),
        Err(_) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extendability {
    pub k: usize,
    pub extendable: bool,
    /// First matching of size `k` (in lexicographic order) that no perfect
    /// matching contains.
    pub counterexample: Option<Matching>,
    pub reason: Option<String>,
}

/// Whether `g` has at least `2k + 2` vertices and every matching of size `k`
/// extends to a perfect matching.
pub fn is_k_extendable(g: &Graph, k: usize) -> Result<Extendability> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    if g.n() < 2 * k + 2 {
        return Ok(Extendability {
            k,
            extendable: false,
            counterexample: None,
            reason: Some(format!("needs at least {} vertices, has {}", 2 * k + 2, g.n())),
        });
    }
    let edges = g.edges();
    let mut chosen = Vec::with_capacity(k);
    let found = first_inextensible(g, &edges, 0, 0, k, &mut chosen);
    Ok(match found {
        Some(bad) => Extendability {
            k,
            extendable: false,
            counterexample: Some(Matching::from_sorted_unchecked(bad)),
            reason: None,
        },
        None => Extendability { k, extendable: true, counterexample: None, reason: None },
    })
}

fn first_inextensible(
    g: &Graph,
    edges: &[(usize, usize)],
    from: usize,
    used: u64,
    k: usize,
    chosen: &mut Vec<(usize, usize)>,
) -> Option<Vec<(usize, usize)>> {
    if chosen.len() == k {
        return (!has_perfect_matching_within(g, g.vertex_mask() & !used)).then(|| chosen.clone());
    }
    for i in from..edges.len() {
        let (u, v) = edges[i];
        if used & (bit(u) | bit(v)) != 0 {
            continue;
        }
        chosen.push((u, v));
        let found = first_inextensible(g, edges, i + 1, used | bit(u) | bit(v), k, chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// `g - v` has a perfect matching for every vertex `v`.
pub fn is_factor_critical(g: &Graph) -> bool {
    g.n() % 2 == 1 && (0..g.n()).all(|v| has_perfect_matching_within(g, g.vertex_mask() & !bit(v)))
}
