//! Simple undirected graphs over dense vertex ids, stored as one adjacency
//! bit set per vertex.
//!
//! Every algorithm in the crate works on [`Graph`]. Vertex subsets are `u64`
//! masks, which caps graphs at [`MAX_VERTICES`] vertices; that is far beyond
//! the desk scale the exponential checks are meant for.

mod canon;
mod connectivity;
mod cycles;
pub mod io;
mod planarity;

pub use canon::{are_isomorphic, canonical_form, canonical_labelling, CanonicalForm};
pub use connectivity::vertex_connectivity;
pub use cycles::{enumerate_cycles, CycleIter, Parity};
pub use planarity::{find_kuratowski_subdivision, is_planar, verify_kuratowski, Kuratowski, KuratowskiKind, Planarity};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Iterator over the set bits of a mask, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

#[inline]
pub fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

#[inline]
pub fn norm_edge(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A loopless simple undirected graph on vertices `0..n`.
///
/// The adjacency relation is kept symmetric and irreflexive by every
/// mutating method, so the invariants hold for any value of this type.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

/// Graphs serialize as their graph6 string.
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&io::to_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let text = String::deserialize(d)?;
        io::from_graph6(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Graph");
        if let Some(name) = &self.name {
            d.field("name", name);
        }
        d.field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics when `n > MAX_VERTICES`; use [`Graph::try_new`] for untrusted sizes.
    pub fn new(n: usize) -> Graph {
        Graph::try_new(n).expect("vertex count exceeds MAX_VERTICES")
    }

    pub fn try_new(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n], name: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::try_new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: Option<String>) {
        self.name = name;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent(u, v));
        }
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
        Ok(())
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Result<usize> {
        if self.n == MAX_VERTICES {
            return Err(Error::TooManyVertices(self.n + 1));
        }
        self.adj.push(0);
        self.n += 1;
        Ok(self.n - 1)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    pub fn is_cubic(&self) -> bool {
        self.n > 0 && self.is_regular(3)
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for v in Bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Edges with exactly one end in `x`.
    pub fn cut(&self, x: u64) -> Vec<(usize, usize)> {
        let x = x & self.vertex_mask();
        self.edges().into_iter().filter(|&(u, v)| (x >> u & 1) != (x >> v & 1)).collect()
    }

    /// Induced subgraph on `mask`; returns the subgraph and, for each new
    /// vertex, its index in `self`. Relative vertex order is preserved.
    pub fn induced(&self, mask: u64) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for w in Bits(self.adj[v] & mask) {
                h.adj[i] |= bit(index[w]);
            }
        }
        (h, keep)
    }

    pub fn remove_vertices(&self, mask: u64) -> (Graph, Vec<usize>) {
        self.induced(self.vertex_mask() & !mask)
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal vertex count");
        let mut h = Graph::new(self.n);
        for u in 0..self.n {
            for v in Bits(self.adj[u]) {
                h.adj[perm[u]] |= bit(perm[v]);
            }
        }
        h.name = self.name.clone();
        h
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = bit(start) & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced on `within`, as masks
    /// ordered by least vertex.
    pub fn components_within(&self, within: u64) -> Vec<u64> {
        let mut rest = within & self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.reach(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_within(self.vertex_mask())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    pub fn is_connected_within(&self, within: u64) -> bool {
        within == 0 || self.reach(within.trailing_zeros() as usize, within) == within
    }

    /// Two-colouring with vertex 0 (and the least vertex of every other
    /// component) white, or `None` when the graph has an odd cycle.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let white = two_colouring(self, self.vertex_mask())?;
        Some(Bipartition { white, black: self.vertex_mask() & !white })
    }

    pub fn is_bipartite(&self) -> bool {
        two_colouring(self, self.vertex_mask()).is_some()
    }

    /// Contracts the shore `x` to a single vertex `c`, dropping loops and
    /// parallel edges. The vertices outside `x` keep their relative order and
    /// `c` is the last vertex. Returns the contraction, `c`, and the
    /// original index of each non-`c` vertex.
    pub fn contract_shore(&self, x: u64) -> Result<Contraction> {
        let x = x & self.vertex_mask();
        if x == 0 || x == self.vertex_mask() {
            return Err(Error::InvalidShore("shore must be a non-empty proper subset".into()));
        }
        let (mut h, origin) = self.induced(!x);
        let c = h.add_vertex()?;
        for (i, &v) in origin.iter().enumerate() {
            if self.adj[v] & x != 0 {
                h.adj[i] |= bit(c);
                h.adj[c] |= bit(i);
            }
        }
        Ok(Contraction { graph: h, contracted: c, origin })
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::try_new(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n)?;
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut h = Graph::new(self.n);
        for v in 0..self.n {
            h.adj[v] = self.vertex_mask() & !self.adj[v] & !bit(v);
        }
        h
    }
}

/// Result of [`Graph::contract_shore`].
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    pub contracted: usize,
    pub origin: Vec<usize>,
}

/// Colour classes of a bipartite graph as vertex masks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub white: u64,
    pub black: u64,
}

impl Bipartition {
    pub fn white_vertices(&self) -> Vec<usize> {
        Bits(self.white).collect()
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        Bits(self.black).collect()
    }

    pub fn is_white(&self, v: usize) -> bool {
        self.white & bit(v) != 0
    }
}

/// BFS 2-colouring of the subgraph induced on `within`; returns the white
/// mask. The least vertex of each component is white.
pub(crate) fn two_colouring(g: &Graph, within: u64) -> Option<u64> {
    // colour[0] is white, colour[1] black
    let mut colour = [0u64; 2];
    let mut rest = within;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        colour[0] |= bit(s);
        let mut seen = bit(s);
        let mut frontier = bit(s);
        let mut side = 0;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= g.adj[v];
            }
            next &= within;
            if next & colour[side] != 0 {
                return None;
            }
            colour[1 - side] |= next;
            frontier = next & !seen;
            seen |= next;
            side = 1 - side;
        }
        rest &= !seen;
    }
    Some(colour[0])
}

/// A set of pairwise disjoint edges, kept sorted as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Builds a matching, rejecting shared endpoints and absent edges.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Matching> {
        let mut out: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| norm_edge(u, v)).collect();
        out.sort_unstable();
        let mut used = 0u64;
        for &(u, v) in &out {
            if !g.has_edge(u, v) {
                return Err(Error::EdgeAbsent(u, v));
            }
            if used & (bit(u) | bit(v)) != 0 {
                return Err(Error::Precondition(format!("edges share a vertex at {u}-{v}")));
            }
            used |= bit(u) | bit(v);
        }
        Ok(Matching { edges: out })
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<(usize, usize)>) -> Matching {
        Matching { edges }
    }

    /// Matching from a mate array (`mate[v] == usize::MAX` means unmatched).
    pub(crate) fn from_mates(mate: &[usize]) -> Matching {
        let mut edges: Vec<(usize, usize)> =
            mate.iter().enumerate().filter(|&(v, &w)| w != usize::MAX && v < w).map(|(v, &w)| (v, w)).collect();
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covered(&self) -> u64 {
        self.edges.iter().fold(0, |m, &(u, v)| m | bit(u) | bit(v))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&norm_edge(u, v)).is_ok()
    }

    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        self.covered() == g.vertex_mask() && self.edges.iter().all(|&(u, v)| g.has_edge(u, v))
    }
}

/// A cycle given by its cyclic vertex order.
///
/// Values produced by this crate are in canonical form: the sequence starts
/// at its least vertex and its second vertex is the smaller of the two
/// neighbours of that vertex on the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Validates `vertices` as a cycle of `g` and canonicalizes it.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Cycle> {
        if vertices.len() < 3 {
            return Err(Error::NotACycle("a cycle needs at least 3 vertices".into()));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
            }
            if seen & bit(v) != 0 {
                return Err(Error::NotACycle(format!("vertex {v} repeated")));
            }
            seen |= bit(v);
        }
        for i in 0..vertices.len() {
            let (u, v) = (vertices[i], vertices[(i + 1) % vertices.len()]);
            if !g.has_edge(u, v) {
                return Err(Error::NotACycle(format!("{u}-{v} is not an edge")));
            }
        }
        Ok(Cycle::canonical(vertices))
    }

    pub(crate) fn canonical(mut vertices: Vec<usize>) -> Cycle {
        let len = vertices.len();
        let start = (0..len).min_by_key(|&i| vertices[i]).unwrap_or(0);
        vertices.rotate_left(start);
        if len > 2 && vertices[len - 1] < vertices[1] {
            vertices[1..].reverse();
        }
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.vertices.len() % 2 == 0
    }

    pub fn vertex_mask(&self) -> u64 {
        mask_of(&self.vertices)
    }

    /// Edges in traversal order, each as `(from, to)`.
    pub fn traversal(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |i| (self.vertices[i], self.vertices[(i + 1) % len]))
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        self.traversal().any(|(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }
}

/// An ordered sequence of distinct vertices with consecutive ones adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::Precondition("a path has at least one vertex".into()));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            g.check_vertex(v)?;
            if seen & bit(v) != 0 {
                return Err(Error::Precondition(format!("vertex {v} repeated on path")));
            }
            seen |= bit(v);
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::EdgeAbsent(w[0], w[1]));
            }
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], self.vertices[self.vertices.len() - 1])
    }

    pub fn internal(&self) -> &[usize] {
        if self.vertices.len() <= 2 {
            &[]
        } else {
            &self.vertices[1..self.vertices.len() - 1]
        }
    }
}

/// BFS distances from `s` (usize::MAX when unreachable).
pub fn distances(g: &Graph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of a shortest cycle, if any.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}
