//! Pfaffian orientations: verification, brute-force search and the signed
//! biadjacency determinant.
//!
//! An orientation is Pfaffian when every conformal even cycle has an odd
//! number of edges agreeing with a traversal direction. For even cycles the
//! parity does not depend on the direction.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, enumerate_cycles, Bits, Cycle, Graph, Parity};
use crate::matching::has_perfect_matching_within;

/// Largest cycle-space dimension the brute-force search accepts.
pub const MAX_SEARCH_DIMENSION: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub base: Graph,
    /// One ordered pair per edge of `base`, in `base.edges()` order.
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    /// Orientation from a list of arcs covering each edge exactly once.
    pub fn new(base: &Graph, arcs: &[(usize, usize)]) -> Result<Orientation> {
        let edges = base.edges();
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            let fwd = arcs.contains(&(u, v));
            let back = arcs.contains(&(v, u));
            if fwd == back {
                return Err(Error::Parameter(format!("edge {u}{v} needs exactly one direction")));
            }
            out.push(if fwd { (u, v) } else { (v, u) });
        }
        if arcs.len() != edges.len() {
            return Err(Error::Parameter("arcs do not match the edges of the graph".into()));
        }
        Ok(Orientation { base: base.clone(), arcs: out })
    }

    /// Every edge from its smaller to its larger end.
    pub fn ascending(base: &Graph) -> Orientation {
        Orientation { base: base.clone(), arcs: base.edges() }
    }

    fn from_reversed(base: &Graph, edges: &[(usize, usize)], reversed: u128) -> Orientation {
        let arcs =
            edges.iter().enumerate().map(|(i, &(u, v))| if reversed >> i & 1 == 1 { (v, u) } else { (u, v) }).collect();
        Orientation { base: base.clone(), arcs }
    }

    /// Mask of edges (by index) pointing from the larger to the smaller end.
    fn reversed(&self) -> u128 {
        self.arcs.iter().enumerate().fold(0, |m, (i, &(u, v))| if u > v { m | 1 << i } else { m })
    }

    /// Reverse every arc at `v`.
    pub fn flip_vertex(&self, v: usize) -> Orientation {
        let arcs = self.arcs.iter().map(|&(a, b)| if a == v || b == v { (b, a) } else { (a, b) }).collect();
        Orientation { base: self.base.clone(), arcs }
    }

    pub fn points(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    /// Edges of `c` traversed along their arc, walking `c` in the given
    /// direction.
    pub fn agreement(&self, c: &Cycle, forward: bool) -> usize {
        let steps: Vec<(usize, usize)> = c.traversal().collect();
        steps.iter().filter(|&&(a, b)| if forward { self.points(a, b) } else { self.points(b, a) }).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationCheck {
    pub pfaffian: bool,
    /// First conformal even cycle with even agreement.
    pub violation: Option<Cycle>,
    pub conformal_cycles: usize,
    pub non_conformal_cycles: usize,
}

struct EdgeIndex {
    n: usize,
    index: Vec<usize>,
}

impl EdgeIndex {
    fn new(g: &Graph, edges: &[(usize, usize)]) -> EdgeIndex {
        let n = g.n();
        let mut index = vec![usize::MAX; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            index[u * n + v] = i;
            index[v * n + u] = i;
        }
        EdgeIndex { n, index }
    }

    /// Edge mask of a cycle and the mask of edges it walks upwards.
    fn cycle_masks(&self, c: &Cycle) -> (u128, u128) {
        let (mut all, mut up) = (0u128, 0u128);
        for (a, b) in c.traversal() {
            let i = self.index[a * self.n + b];
            all |= 1 << i;
            if a < b {
                up |= 1 << i;
            }
        }
        (all, up)
    }
}

/// The agreement parity of a cycle is `|up| + |all ∩ reversed|`.
fn odd_agreement((all, up): (u128, u128), reversed: u128) -> bool {
    (up.count_ones() + (all & reversed).count_ones()) % 2 == 1
}

fn conformal_even_cycles(g: &Graph) -> (Vec<Cycle>, usize) {
    let all = g.vertex_mask();
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut conformal = Vec::new();
    let mut other = 0;
    for c in enumerate_cycles(g, Parity::Even) {
        let mask = c.vertex_mask();
        if *memo.entry(mask).or_insert_with(|| has_perfect_matching_within(g, all & !mask)) {
            conformal.push(c);
        } else {
            other += 1;
        }
    }
    (conformal, other)
}

pub fn verify_pfaffian_orientation(o: &Orientation) -> Result<OrientationCheck> {
    let g = &o.base;
    if g.m() > 128 {
        return Err(Error::Scale(format!("{} edges exceed the 128-edge limit", g.m())));
    }
    if !has_perfect_matching_within(g, g.vertex_mask()) {
        return Err(Error::NotMatchable);
    }
    let edges = g.edges();
    let index = EdgeIndex::new(g, &edges);
    let reversed = o.reversed();
    let (cycles, non_conformal_cycles) = conformal_even_cycles(g);
    let conformal_cycles = cycles.len();
    for c in cycles {
        let fwd = o.agreement(&c, true);
        let back = o.agreement(&c, false);
        assert_eq!(fwd % 2, back % 2, "agreement parity of an even cycle depends on direction");
        assert_eq!(fwd % 2 == 1, odd_agreement(index.cycle_masks(&c), reversed));
        if fwd % 2 == 0 {
            return Ok(OrientationCheck {
                pfaffian: false,
                violation: Some(c),
                conformal_cycles,
                non_conformal_cycles,
            });
        }
    }
    Ok(OrientationCheck { pfaffian: true, violation: None, conformal_cycles, non_conformal_cycles })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfaffianSearch {
    pub pfaffian: bool,
    pub orientation: Option<Orientation>,
    /// Cycle-space dimension; `2^dimension` assignments were available.
    pub dimension: usize,
    pub assignments_tried: u64,
}

/// Decides whether `g` has a Pfaffian orientation.
///
/// Reversing all arcs at a vertex keeps every cycle's parity, so every
/// orientation is equivalent to one agreeing with a fixed orientation of a
/// spanning forest. Only the orientations of the remaining edges are
/// enumerated.
pub fn is_pfaffian_bruteforce(g: &Graph) -> Result<PfaffianSearch> {
    if !has_perfect_matching_within(g, g.vertex_mask()) {
        return Err(Error::NotMatchable);
    }
    let edges = g.edges();
    let dimension = g.m() + g.components().len() - g.n();
    if dimension > MAX_SEARCH_DIMENSION || g.m() > 128 {
        return Err(Error::Scale(format!(
            "cycle space dimension {dimension} exceeds the search limit {MAX_SEARCH_DIMENSION}"
        )));
    }
    let index = EdgeIndex::new(g, &edges);
    let co_tree = co_tree_edges(g, &index);
    let (cycles, _) = conformal_even_cycles(g);
    let masks: Vec<(u128, u128)> = cycles.iter().map(|c| index.cycle_masks(c)).collect();
    let mut tried = 0;
    for assignment in 0u64..1 << co_tree.len() {
        tried += 1;
        let reversed = Bits(assignment).fold(0u128, |m, j| m | 1 << co_tree[j]);
        if masks.iter().all(|&cm| odd_agreement(cm, reversed)) {
            let orientation = Orientation::from_reversed(g, &edges, reversed);
            return Ok(PfaffianSearch {
                pfaffian: true,
                orientation: Some(orientation),
                dimension,
                assignments_tried: tried,
            });
        }
    }
    Ok(PfaffianSearch { pfaffian: false, orientation: None, dimension, assignments_tried: tried })
}

/// Edge indices outside a BFS spanning forest, ascending.
fn co_tree_edges(g: &Graph, index: &EdgeIndex) -> Vec<usize> {
    let mut tree = vec![false; g.m()];
    let mut seen = 0u64;
    for root in 0..g.n() {
        if seen & bit(root) != 0 {
            continue;
        }
        seen |= bit(root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in Bits(g.neighbor_mask(v) & !seen) {
                seen |= bit(w);
                tree[index.index[v * index.n + w]] = true;
                queue.push_back(w);
            }
        }
    }
    (0..g.m()).filter(|&i| !tree[i]).collect()
}

/// Determinant of the signed biadjacency matrix: rows are white vertices,
/// columns black vertices, entry `+1` for an arc white to black, `-1` for
/// black to white.
pub fn signed_biadjacency_determinant(o: &Orientation) -> Result<i128> {
    let g = &o.base;
    let parts = g.bipartition().ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
    let (whites, blacks) = (parts.white_vertices(), parts.black_vertices());
    if whites.len() != blacks.len() {
        return Ok(0);
    }
    let mut a: Vec<Vec<i128>> = whites
        .iter()
        .map(|&w| {
            blacks
                .iter()
                .map(|&b| match (o.points(w, b), o.points(b, w)) {
                    (true, _) => 1,
                    (_, true) => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    Ok(bareiss(&mut a))
}

/// Fraction-free Gaussian elimination.
fn bareiss(a: &mut [Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, cycle, heawood};
    use crate::matching::count_perfect_matchings;

    #[test]
    fn c4_orientations() {
        let c4 = cycle(4).unwrap();
        let three = Orientation::new(&c4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(verify_pfaffian_orientation(&three).unwrap().pfaffian);
        let all = Orientation::new(&c4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let check = verify_pfaffian_orientation(&all).unwrap();
        assert!(!check.pfaffian);
        assert_eq!(check.violation.unwrap().vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn search_examples() {
        let c4 = is_pfaffian_bruteforce(&cycle(4).unwrap()).unwrap();
        assert!(c4.pfaffian);
        let k33 = is_pfaffian_bruteforce(&complete_bipartite(3, 3).unwrap()).unwrap();
        assert!(!k33.pfaffian);
        assert_eq!((k33.dimension, k33.assignments_tried), (4, 16));
        let h = is_pfaffian_bruteforce(&heawood()).unwrap();
        assert!(h.pfaffian && h.dimension == 8);
        assert!(verify_pfaffian_orientation(h.orientation.as_ref().unwrap()).unwrap().pfaffian);
    }

    #[test]
    fn determinant_counts_matchings() {
        let h = heawood();
        let o = is_pfaffian_bruteforce(&h).unwrap().orientation.unwrap();
        assert_eq!(signed_biadjacency_determinant(&o).unwrap().unsigned_abs(), count_perfect_matchings(&h));
    }

    #[test]
    fn bareiss_small() {
        let mut a = vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]];
        assert_eq!(bareiss(&mut a), 2 * (3 - 2) + (1 - 3));
        let mut b = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(bareiss(&mut b), -1);
    }

    #[test]
    fn flips_keep_verdicts() {
        let c4 = cycle(4).unwrap();
        let o = Orientation::new(&c4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        for v in 0..4 {
            assert!(verify_pfaffian_orientation(&o.flip_vertex(v)).unwrap().pfaffian);
        }
    }
}
