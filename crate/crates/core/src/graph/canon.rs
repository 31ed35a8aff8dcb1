//! Canonical labelling by partition refinement and exhaustive
//! individualization.
//!
//! The search tree is the usual one: refine an ordered vertex partition to
//! an equitable one, branch on every vertex of the first non-singleton cell,
//! and read an adjacency certificate off each discrete leaf. The least leaf
//! certificate is the canonical form. The only pruning is twin pruning: two
//! vertices of the target cell with the same neighbourhood (apart from each
//! other) are swapped by an automorphism that fixes the current branch, so
//! only one of them is branched on.

use serde::{Deserialize, Serialize};

use super::{bit, Bits, Graph};

/// Isomorphism certificate: equal for two graphs iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: usize,
    rows: Vec<u64>,
}

impl CanonicalForm {
    /// The certificate as a byte string (vertex count, then each adjacency
    /// row of the canonical labelling in little-endian order).
    pub fn bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + self.rows.len() * 8);
        out.push(self.n as u8);
        for r in &self.rows {
            out.extend_from_slice(&r.to_le_bytes());
        }
        out
    }

    /// The canonically labelled graph this certificate describes.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for (u, &row) in self.rows.iter().enumerate() {
            for v in Bits(row) {
                if u < v {
                    g.add_edge(u, v).expect("certificate rows are a simple graph");
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labelling(g).0
}

/// Canonical form plus a labelling `perm` with `g.relabel(&perm)` equal to
/// the canonical graph.
pub fn canonical_labelling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (CanonicalForm { n: 0, rows: Vec::new() }, Vec::new());
    }
    let mut search = Search { g, best: None };
    let initial = degree_partition(g);
    search.descend(initial);
    let (rows, order) = search.best.expect("search reaches at least one leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    (CanonicalForm { n, rows }, perm)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

type Partition = Vec<Vec<usize>>;

fn degree_partition(g: &Graph) -> Partition {
    let mut by_degree: Vec<(usize, usize)> = (0..g.n()).map(|v| (g.degree(v), v)).collect();
    by_degree.sort_unstable();
    let mut cells: Partition = Vec::new();
    let mut last = usize::MAX;
    for (d, v) in by_degree {
        if d != last {
            cells.push(Vec::new());
            last = d;
        }
        cells.last_mut().unwrap().push(v);
    }
    cells
}

/// Splits cells by neighbour counts into every cell until stable. Sub-cells
/// are ordered by their count vectors, so the result depends only on the
/// structure and the order of the input cells.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | bit(v))).collect();
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|&m| (g.neighbor_mask(v) & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut i = 0;
            while i < keyed.len() {
                let mut j = i + 1;
                while j < keyed.len() && keyed[j].0 == keyed[i].0 {
                    j += 1;
                }
                next.push(keyed[i..j].iter().map(|(_, v)| *v).collect());
                i = j;
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbor_mask(u) & !bit(v) == g.neighbor_mask(v) & !bit(u)
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Partition) {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(cells.iter().map(|c| c[0]).collect());
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        let mut members = cells[target].clone();
        members.sort_unstable();
        for &v in &members {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.descend(child);
        }
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let n = order.len();
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let rows: Vec<u64> =
            order.iter().map(|&v| Bits(self.g.neighbor_mask(v)).fold(0, |m, w| m | bit(pos[w]))).collect();
        match &self.best {
            Some((best, _)) if *best <= rows => {}
            _ => self.best = Some((rows, order)),
        }
    }
}
